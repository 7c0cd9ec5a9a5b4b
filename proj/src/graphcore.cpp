#include "netrecon/graphcore.hpp"

#include "netrecon/minor_kernels.hpp"

#include <algorithm>
#include <bit>
#include <numeric>
#include <stdexcept>

namespace netrecon::graphcore {
namespace {

void check_node_count(int n) {
  if (n < 3 || n > kMaxNodes) {
    throw std::invalid_argument("node count " + std::to_string(n) + " outside [3, " +
                                std::to_string(kMaxNodes) + "]");
  }
}

}  // namespace

int edge_index(int n, int i, int j) {
  if (i > j) std::swap(i, j);
  if (i < 1 || j > n || i == j) {
    throw std::out_of_range("invalid node pair (" + std::to_string(i) + "," + std::to_string(j) + ")");
  }
  // pairs before row i: sum_{r=1}^{i-1} (n - r)
  return (i - 1) * n - (i - 1) * i / 2 + (j - i - 1);
}

std::pair<int, int> edge_nodes(int n, int index) {
  if (index < 0 || index >= edge_count(n)) throw std::out_of_range("edge index out of range");
  int i = 1;
  while (index >= n - i) {
    index -= n - i;
    ++i;
  }
  return {i, i + 1 + index};
}

Topology::Topology(int n, std::uint64_t bits) : n_(n), bits_(bits) {
  check_node_count(n);
  const int m = edge_count(n);
  if (m < 64 && (bits >> m) != 0) throw std::invalid_argument("edge pattern has bits beyond w_l length");
}

Topology Topology::from_edges(int n, std::span<const std::pair<int, int>> edges) {
  check_node_count(n);
  std::uint64_t bits = 0;
  for (auto [i, j] : edges) bits |= std::uint64_t{1} << edge_index(n, i, j);
  return Topology(n, bits);
}

Topology Topology::from_vector(int n, std::span<const int> w) {
  check_node_count(n);
  if (static_cast<int>(w.size()) != edge_count(n)) throw std::invalid_argument("w_l length mismatch");
  std::uint64_t bits = 0;
  for (std::size_t e = 0; e < w.size(); ++e) {
    if (w[e] != 0 && w[e] != 1) throw std::invalid_argument("w_l entries must be 0 or 1");
    if (w[e]) bits |= std::uint64_t{1} << e;
  }
  return Topology(n, bits);
}

Topology Topology::complete(int n) { return Topology(n, full_mask(n)); }

bool Topology::has_edge(int i, int j) const { return (bits_ >> edge_index(n_, i, j)) & 1U; }

int Topology::degree(int i) const {
  int d = 0;
  for (int j = 1; j <= n_; ++j) {
    if (j != i && has_edge(i, j)) ++d;
  }
  return d;
}

int Topology::edge_total() const { return std::popcount(bits_); }

std::vector<int> Topology::edge_vector() const {
  std::vector<int> w(edge_count(n_));
  for (std::size_t e = 0; e < w.size(); ++e) w[e] = static_cast<int>((bits_ >> e) & 1U);
  return w;
}

std::vector<std::pair<int, int>> Topology::edges() const {
  std::vector<std::pair<int, int>> out;
  for (int e = 0; e < edge_count(n_); ++e) {
    if ((bits_ >> e) & 1U) out.push_back(edge_nodes(n_, e));
  }
  return out;
}

std::string Topology::bit_string() const {
  std::string s;
  for (int e = 0; e < edge_count(n_); ++e) s.push_back(((bits_ >> e) & 1U) ? '1' : '0');
  return s;
}

Topology Topology::with_edge_flipped(int i, int j) const {
  return Topology(n_, bits_ ^ (std::uint64_t{1} << edge_index(n_, i, j)));
}

ExactMatrix::ExactMatrix(int rows, int cols) : rows_(rows), cols_(cols) {
  if (rows < 0 || cols < 0) throw std::invalid_argument("negative matrix dimension");
  data_.assign(static_cast<std::size_t>(rows) * cols, Rational(0));
}

bool ExactMatrix::is_symmetric() const {
  if (rows_ != cols_) return false;
  for (int r = 0; r < rows_; ++r) {
    for (int c = r + 1; c < cols_; ++c) {
      if (at(r, c) != at(c, r)) return false;
    }
  }
  return true;
}

ExactMatrix laplacian(const Topology& t) {
  const int n = t.node_count();
  ExactMatrix l(n, n);
  for (auto [i, j] : t.edges()) {
    l.at(i - 1, j - 1) -= 1;
    l.at(j - 1, i - 1) -= 1;
    l.at(i - 1, i - 1) += 1;
    l.at(j - 1, j - 1) += 1;
  }
  return l;
}

Rational determinant(ExactMatrix m) {
  if (m.rows() != m.cols()) throw std::invalid_argument("determinant of non-square matrix");
  const int s = m.rows();
  if (s == 0) return Rational(1);
  Rational prev = 1;
  int sign = 1;
  for (int k = 0; k < s - 1; ++k) {
    if (m.at(k, k) == 0) {
      int swap_row = -1;
      for (int r = k + 1; r < s; ++r) {
        if (m.at(r, k) != 0) {
          swap_row = r;
          break;
        }
      }
      if (swap_row < 0) return Rational(0);
      for (int c = 0; c < s; ++c) std::swap(m.at(k, c), m.at(swap_row, c));
      sign = -sign;
    }
    const Rational pivot = m.at(k, k);
    for (int i = k + 1; i < s; ++i) {
      for (int j = k + 1; j < s; ++j) {
        m.at(i, j) = (pivot * m.at(i, j) - m.at(i, k) * m.at(k, j)) / prev;
      }
      m.at(i, k) = 0;
    }
    prev = pivot;
  }
  Rational det = m.at(s - 1, s - 1);
  return sign > 0 ? det : Rational(-det);
}

Rational minor_det(const ExactMatrix& m, std::span<const int> drop_rows, std::span<const int> drop_cols) {
  if (drop_rows.size() != drop_cols.size()) throw std::invalid_argument("minor_det: drop sets differ in size");
  if (m.rows() != m.cols()) throw std::invalid_argument("minor_det: matrix not square");
  auto keep = [&](std::span<const int> drop, int size) {
    std::vector<bool> dropped(size, false);
    for (int idx : drop) {
      if (idx < 1 || idx > size) throw std::out_of_range("minor_det: index " + std::to_string(idx) + " out of range");
      if (dropped[idx - 1]) throw std::invalid_argument("minor_det: duplicate index " + std::to_string(idx));
      dropped[idx - 1] = true;
    }
    std::vector<int> kept;
    for (int i = 0; i < size; ++i) {
      if (!dropped[i]) kept.push_back(i);
    }
    return kept;
  };
  const auto rows = keep(drop_rows, m.rows());
  const auto cols = keep(drop_cols, m.cols());
  ExactMatrix sub(static_cast<int>(rows.size()), static_cast<int>(cols.size()));
  for (std::size_t r = 0; r < rows.size(); ++r) {
    for (std::size_t c = 0; c < cols.size(); ++c) sub.at(r, c) = m.at(rows[r], cols[c]);
  }
  return determinant(std::move(sub));
}

std::int64_t spanning_tree_count(const Topology& t) {
  return kernels::principal_minor_scalar(t.node_count(), t.bits(), t.node_count());
}

bool is_connected(const Topology& t) {
  const int n = t.node_count();
  std::vector<int> parent(n);
  std::iota(parent.begin(), parent.end(), 0);
  auto find = [&](int x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  };
  int components = n;
  for (auto [i, j] : t.edges()) {
    int a = find(i - 1), b = find(j - 1);
    if (a != b) {
      parent[a] = b;
      --components;
    }
  }
  return components == 1;
}

std::uint64_t full_mask(int n) {
  const int m = edge_count(n);
  return m >= 64 ? ~std::uint64_t{0} : (std::uint64_t{1} << m) - 1;
}

std::uint64_t mask_from_vector(int n, std::span<const int> mask) {
  return Topology::from_vector(n, mask).bits();
}

TopologyRange::TopologyRange(int n, std::uint64_t mask) : n_(n), mask_(mask) {
  check_node_count(n);
  if ((mask & ~full_mask(n)) != 0) throw std::invalid_argument("edge mask has bits beyond w_l length");
  for (int e = 0; e < edge_count(n); ++e) {
    if ((mask >> e) & 1U) positions_.push_back(e);
  }
  free_bits_ = static_cast<int>(positions_.size());
}

std::uint64_t TopologyRange::pattern(std::uint64_t index) const {
  std::uint64_t bits = 0;
  for (int b = 0; b < free_bits_; ++b) {
    if ((index >> b) & 1U) bits |= std::uint64_t{1} << positions_[b];
  }
  return bits;
}

std::vector<Topology> TopologyRange::materialize() const {
  std::vector<Topology> out;
  out.reserve(size());
  for (std::uint64_t i = 0; i < size(); ++i) out.push_back(at(i));
  return out;
}

TopologyRange enumerate_topologies(int n, std::optional<std::uint64_t> edge_mask, int cap) {
  check_node_count(n);
  const std::uint64_t mask = edge_mask.value_or(full_mask(n));
  const int free_bits = std::popcount(mask);
  if (free_bits > cap) {
    throw std::length_error("enumeration of 2^" + std::to_string(free_bits) +
                            " topologies exceeds the enumeration cap of 2^" + std::to_string(cap));
  }
  return TopologyRange(n, mask);
}

MinorTable::MinorTable(int n, std::int64_t trees, std::vector<std::int64_t> pair_minors)
    : n_(n), trees_(trees), pair_(std::move(pair_minors)) {
  if (static_cast<int>(pair_.size()) != edge_count(n)) throw std::invalid_argument("MinorTable: wrong pair count");
}

MinorTable MinorTable::compute(const Topology& t) {
  const std::uint64_t bits = t.bits();
  return compute_minor_tables(t.node_count(), std::span(&bits, 1)).front();
}

std::int64_t MinorTable::pair_minor(int a, int b) const {
  if (a == b) return trees_;
  return pair_[edge_index(n_, a, b)];
}

std::vector<MinorTable> compute_minor_tables(int n, std::span<const std::uint64_t> bits) {
  const int m = edge_count(n);
  std::vector<kernels::MinorSpec> specs;
  specs.reserve(m + 1);
  specs.push_back({n, n});
  for (int e = 0; e < m; ++e) {
    auto [i, j] = edge_nodes(n, e);
    specs.push_back({i, j});
  }
  std::vector<std::int64_t> raw(bits.size() * specs.size());
  kernels::laplacian_minors(n, bits, specs, raw);
  std::vector<MinorTable> out;
  out.reserve(bits.size());
  for (std::size_t t = 0; t < bits.size(); ++t) {
    const auto* row = raw.data() + t * specs.size();
    out.emplace_back(n, row[0], std::vector<std::int64_t>(row + 1, row + specs.size()));
  }
  return out;
}

}  // namespace netrecon::graphcore
