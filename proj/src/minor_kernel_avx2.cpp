#include "netrecon/graphcore.hpp"
#include "netrecon/minor_kernels.hpp"

#include <algorithm>
#include <stdexcept>
#include <vector>

#if defined(__x86_64__) || defined(__i386__)
#include <immintrin.h>
#define NETRECON_HAVE_AVX2_KERNEL 1
#endif

namespace netrecon::kernels {

#if NETRECON_HAVE_AVX2_KERNEL
namespace {

constexpr int kLanes = 4;
constexpr int kMax = kMaxSimdNodes;

// Four topologies per register. Bareiss without pivoting; lanes hitting a
// zero pivot are masked to det 0 and continue with pivot 1.
__attribute__((target("avx2"))) void minors_block(int n, const std::uint64_t* w, std::span<const MinorSpec> specs,
                                                  const int (&index)[kMax][kMax], double* result) {
  alignas(32) double lane_vals[kLanes];
  __m256d adj[kMax][kMax];
  __m256d deg[kMax];
  const __m256d zero = _mm256_setzero_pd();
  const __m256d one = _mm256_set1_pd(1.0);
  for (int u = 0; u < n; ++u) adj[u][u] = zero;
  for (int u = 0; u < n; ++u) {
    for (int v = u + 1; v < n; ++v) {
      for (int l = 0; l < kLanes; ++l) lane_vals[l] = static_cast<double>((w[l] >> index[u][v]) & 1U);
      adj[u][v] = adj[v][u] = _mm256_load_pd(lane_vals);
    }
  }
  for (int u = 0; u < n; ++u) {
    deg[u] = zero;
    for (int v = 0; v < n; ++v) deg[u] = _mm256_add_pd(deg[u], adj[u][v]);
  }

  int kept[graphcore::kMaxNodes];
  __m256d m[kMax][kMax];
  for (std::size_t sp = 0; sp < specs.size(); ++sp) {
    const int s = detail::kept_nodes(n, specs[sp], kept);
    for (int r = 0; r < s; ++r) {
      for (int c = 0; c < s; ++c) {
        m[r][c] = (r == c) ? deg[kept[r]] : _mm256_sub_pd(zero, adj[kept[r]][kept[c]]);
      }
    }
    __m256d det = one;
    if (s > 0) {
      __m256d prev = one;
      __m256d dead = zero;
      for (int k = 0; k < s - 1; ++k) {
        const __m256d is_zero = _mm256_cmp_pd(m[k][k], zero, _CMP_EQ_OQ);
        dead = _mm256_or_pd(dead, is_zero);
        const __m256d pivot = _mm256_blendv_pd(m[k][k], one, is_zero);
        for (int i = k + 1; i < s; ++i) {
          for (int j = k + 1; j < s; ++j) {
            const __m256d num = _mm256_sub_pd(_mm256_mul_pd(pivot, m[i][j]), _mm256_mul_pd(m[i][k], m[k][j]));
            m[i][j] = _mm256_div_pd(num, prev);
          }
        }
        prev = pivot;
      }
      det = _mm256_blendv_pd(m[s - 1][s - 1], zero, dead);
    }
    _mm256_store_pd(lane_vals, det);
    for (int l = 0; l < kLanes; ++l) result[sp * kLanes + l] = lane_vals[l];
  }
}

}  // namespace

void laplacian_minors_avx2(int n, std::span<const std::uint64_t> bits, std::span<const MinorSpec> specs,
                           std::span<std::int64_t> out) {
  detail::validate(n, bits, specs, out);
  if (n > kMaxSimdNodes) throw std::invalid_argument("avx2 minor kernel supports n <= 9");
  if (!isa_available(Isa::avx2)) throw std::runtime_error("avx2 not available on this CPU");
  int index[kMax][kMax] = {};
  for (int e = 0; e < graphcore::edge_count(n); ++e) {
    auto [i, j] = graphcore::edge_nodes(n, e);
    index[i - 1][j - 1] = index[j - 1][i - 1] = e;
  }
  const std::size_t count = bits.size();
  std::vector<double> result(specs.size() * kLanes);
  for (std::size_t base = 0; base < count; base += kLanes) {
    std::uint64_t w[kLanes];
    const std::size_t live = std::min<std::size_t>(kLanes, count - base);
    for (std::size_t l = 0; l < kLanes; ++l) w[l] = bits[base + (l < live ? l : live - 1)];
    minors_block(n, w, specs, index, result.data());
    for (std::size_t s = 0; s < specs.size(); ++s) {
      for (std::size_t l = 0; l < live; ++l) {
        out[(base + l) * specs.size() + s] = static_cast<std::int64_t>(result[s * kLanes + l]);
      }
    }
  }
}

#else

void laplacian_minors_avx2(int, std::span<const std::uint64_t>, std::span<const MinorSpec>,
                           std::span<std::int64_t>) {
  throw std::runtime_error("avx2 minor kernel not compiled for this architecture");
}

#endif

}  // namespace netrecon::kernels
