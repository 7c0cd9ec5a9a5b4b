#pragma once

#include "netrecon/rational.hpp"

#include <cstdint>
#include <functional>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

namespace netrecon::graphcore {

// Largest node count representable in a 64-bit edge pattern.
inline constexpr int kMaxNodes = 11;
// Default enumeration envelope: at most 2^21 patterns (n <= 7).
inline constexpr int kDefaultEnumerationCap = 21;

constexpr int edge_count(int n) { return n * (n - 1) / 2; }

// 0-based position of pair (i, j) in w_l, nodes 1-based, order (1,2),(1,3),...,(n-1,n).
int edge_index(int n, int i, int j);
std::pair<int, int> edge_nodes(int n, int index);

// Simple graph on nodes 1..n. Bit e of the pattern is w_l[e].
class Topology {
 public:
  Topology(int n, std::uint64_t bits);

  static Topology from_edges(int n, std::span<const std::pair<int, int>> edges);
  static Topology from_vector(int n, std::span<const int> w);
  static Topology complete(int n);
  static Topology empty(int n) { return Topology(n, 0); }

  int node_count() const { return n_; }
  int edge_slots() const { return edge_count(n_); }
  std::uint64_t bits() const { return bits_; }
  bool has_edge(int i, int j) const;
  int degree(int i) const;
  int edge_total() const;
  std::vector<int> edge_vector() const;
  std::vector<std::pair<int, int>> edges() const;
  // "1001101111" in w_l index order.
  std::string bit_string() const;
  Topology with_edge_flipped(int i, int j) const;

  friend bool operator==(const Topology&, const Topology&) = default;
  friend auto operator<=>(const Topology& a, const Topology& b) {
    if (a.n_ != b.n_) return a.n_ <=> b.n_;
    return a.bits_ <=> b.bits_;
  }

 private:
  int n_;
  std::uint64_t bits_;
};

// Dense exact matrix, row-major, 0-based element access.
class ExactMatrix {
 public:
  ExactMatrix() = default;
  ExactMatrix(int rows, int cols);

  int rows() const { return rows_; }
  int cols() const { return cols_; }
  Rational& at(int r, int c) { return data_[static_cast<std::size_t>(r) * cols_ + c]; }
  const Rational& at(int r, int c) const { return data_[static_cast<std::size_t>(r) * cols_ + c]; }

  bool is_symmetric() const;
  friend bool operator==(const ExactMatrix&, const ExactMatrix&) = default;

 private:
  int rows_ = 0;
  int cols_ = 0;
  std::vector<Rational> data_;
};

ExactMatrix laplacian(const Topology& t);

// Determinant of a square matrix by fraction-free elimination with row pivoting.
// The 0x0 determinant is 1.
Rational determinant(ExactMatrix m);

// det of M with the listed rows and columns removed. Indices are 1-based
// (matching node labels). Empty result matrix has determinant 1.
Rational minor_det(const ExactMatrix& m, std::span<const int> drop_rows, std::span<const int> drop_cols);

// det L[k,k]; returned exactly. Uses k = n.
std::int64_t spanning_tree_count(const Topology& t);
bool is_connected(const Topology& t);

// Sequence of all 2^k patterns allowed by the mask, ascending by bit pattern.
class TopologyRange {
 public:
  TopologyRange(int n, std::uint64_t mask);

  int node_count() const { return n_; }
  std::uint64_t mask() const { return mask_; }
  std::uint64_t size() const { return std::uint64_t{1} << free_bits_; }
  // The index-th pattern: bits of index scattered into the mask positions.
  std::uint64_t pattern(std::uint64_t index) const;
  Topology at(std::uint64_t index) const { return Topology(n_, pattern(index)); }
  std::vector<Topology> materialize() const;

 private:
  int n_;
  std::uint64_t mask_;
  int free_bits_;
  std::vector<int> positions_;
};

std::uint64_t full_mask(int n);
std::uint64_t mask_from_vector(int n, std::span<const int> mask);

// Throws std::length_error naming the cap when the number of free edges exceeds it.
TopologyRange enumerate_topologies(int n, std::optional<std::uint64_t> edge_mask = std::nullopt,
                                   int cap = kDefaultEnumerationCap);

// T = det L[k,k] and det L[a,b] for every pair of one topology.
class MinorTable {
 public:
  MinorTable() = default;
  MinorTable(int n, std::int64_t trees, std::vector<std::int64_t> pair_minors);

  static MinorTable compute(const Topology& t);

  int node_count() const { return n_; }
  std::int64_t tree_count() const { return trees_; }
  std::int64_t pair_minor(int a, int b) const;

 private:
  int n_ = 0;
  std::int64_t trees_ = 0;
  std::vector<std::int64_t> pair_;
};

// Minor tables for a batch of patterns through the dispatched kernel.
std::vector<MinorTable> compute_minor_tables(int n, std::span<const std::uint64_t> bits);

}  // namespace netrecon::graphcore
