#include "netrecon/graphcore.hpp"
#include "netrecon/minor_kernels.hpp"

namespace netrecon::kernels {
namespace {

constexpr int kMax = graphcore::kMaxNodes;

// Bareiss without pivoting. Valid for principal minors of a Laplacian: those
// are positive semidefinite, so a vanishing leading minor forces det = 0.
std::int64_t bareiss_psd(std::int64_t (&m)[kMax][kMax], int s) {
  if (s == 0) return 1;
  std::int64_t prev = 1;
  for (int k = 0; k < s - 1; ++k) {
    const std::int64_t pivot = m[k][k];
    if (pivot == 0) return 0;
    for (int i = k + 1; i < s; ++i) {
      for (int j = k + 1; j < s; ++j) {
        const __int128 num = static_cast<__int128>(pivot) * m[i][j] - static_cast<__int128>(m[i][k]) * m[k][j];
        m[i][j] = static_cast<std::int64_t>(num / prev);
      }
    }
    prev = pivot;
  }
  return m[s - 1][s - 1];
}

}  // namespace

void laplacian_minors_scalar(int n, std::span<const std::uint64_t> bits, std::span<const MinorSpec> specs,
                             std::span<std::int64_t> out) {
  detail::validate(n, bits, specs, out);
  int index[kMax][kMax] = {};
  for (int e = 0; e < graphcore::edge_count(n); ++e) {
    auto [i, j] = graphcore::edge_nodes(n, e);
    index[i - 1][j - 1] = index[j - 1][i - 1] = e;
  }
  std::int64_t adj[kMax][kMax];
  std::int64_t deg[kMax];
  std::int64_t m[kMax][kMax];
  int kept[kMax];
  for (std::size_t t = 0; t < bits.size(); ++t) {
    const std::uint64_t w = bits[t];
    for (int u = 0; u < n; ++u) {
      deg[u] = 0;
      for (int v = 0; v < n; ++v) {
        adj[u][v] = (u != v) ? static_cast<std::int64_t>((w >> index[u][v]) & 1U) : 0;
        deg[u] += adj[u][v];
      }
    }
    for (std::size_t s = 0; s < specs.size(); ++s) {
      const int size = detail::kept_nodes(n, specs[s], kept);
      for (int r = 0; r < size; ++r) {
        for (int c = 0; c < size; ++c) {
          m[r][c] = (r == c) ? deg[kept[r]] : -adj[kept[r]][kept[c]];
        }
      }
      out[t * specs.size() + s] = bareiss_psd(m, size);
    }
  }
}

}  // namespace netrecon::kernels
