#include "netrecon/graphcore.hpp"
#include "netrecon/minor_kernels.hpp"

#include <algorithm>
#include <stdexcept>
#include <vector>

#if defined(__aarch64__)
#include <arm_neon.h>
#endif

namespace netrecon::kernels {

#if defined(__aarch64__)
namespace {

constexpr int kLanes = 2;
constexpr int kMax = kMaxSimdNodes;

void minors_block(int n, const std::uint64_t* w, std::span<const MinorSpec> specs, const int (&index)[kMax][kMax],
                  double* result) {
  float64x2_t adj[kMax][kMax];
  float64x2_t deg[kMax];
  const float64x2_t zero = vdupq_n_f64(0.0);
  const float64x2_t one = vdupq_n_f64(1.0);
  for (int u = 0; u < n; ++u) adj[u][u] = zero;
  for (int u = 0; u < n; ++u) {
    for (int v = u + 1; v < n; ++v) {
      const double vals[kLanes] = {static_cast<double>((w[0] >> index[u][v]) & 1U),
                                   static_cast<double>((w[1] >> index[u][v]) & 1U)};
      adj[u][v] = adj[v][u] = vld1q_f64(vals);
    }
  }
  for (int u = 0; u < n; ++u) {
    deg[u] = zero;
    for (int v = 0; v < n; ++v) deg[u] = vaddq_f64(deg[u], adj[u][v]);
  }

  int kept[graphcore::kMaxNodes];
  float64x2_t m[kMax][kMax];
  for (std::size_t sp = 0; sp < specs.size(); ++sp) {
    const int s = detail::kept_nodes(n, specs[sp], kept);
    for (int r = 0; r < s; ++r) {
      for (int c = 0; c < s; ++c) m[r][c] = (r == c) ? deg[kept[r]] : vnegq_f64(adj[kept[r]][kept[c]]);
    }
    float64x2_t det = one;
    if (s > 0) {
      float64x2_t prev = one;
      uint64x2_t dead = vdupq_n_u64(0);
      for (int k = 0; k < s - 1; ++k) {
        const uint64x2_t is_zero = vceqq_f64(m[k][k], zero);
        dead = vorrq_u64(dead, is_zero);
        const float64x2_t pivot = vbslq_f64(is_zero, one, m[k][k]);
        for (int i = k + 1; i < s; ++i) {
          for (int j = k + 1; j < s; ++j) {
            const float64x2_t num = vsubq_f64(vmulq_f64(pivot, m[i][j]), vmulq_f64(m[i][k], m[k][j]));
            m[i][j] = vdivq_f64(num, prev);
          }
        }
        prev = pivot;
      }
      det = vbslq_f64(dead, zero, m[s - 1][s - 1]);
    }
    result[sp * kLanes] = vgetq_lane_f64(det, 0);
    result[sp * kLanes + 1] = vgetq_lane_f64(det, 1);
  }
}

}  // namespace

void laplacian_minors_neon(int n, std::span<const std::uint64_t> bits, std::span<const MinorSpec> specs,
                           std::span<std::int64_t> out) {
  detail::validate(n, bits, specs, out);
  if (n > kMaxSimdNodes) throw std::invalid_argument("neon minor kernel supports n <= 9");
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

void laplacian_minors_neon(int, std::span<const std::uint64_t>, std::span<const MinorSpec>,
                           std::span<std::int64_t>) {
  throw std::runtime_error("neon minor kernel not compiled for this architecture");
}

#endif

}  // namespace netrecon::kernels
