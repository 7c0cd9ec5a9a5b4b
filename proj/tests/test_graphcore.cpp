#include "netrecon/graphcore.hpp"

#include "support.hpp"

#include <gtest/gtest.h>

#include <functional>
#include <map>
#include <random>
#include <stdexcept>

using namespace netrecon;
using namespace netrecon::graphcore;
using netrecon::fixtures::q;
using netrecon::fixtures::topo;

namespace {

ExactMatrix ints(std::vector<std::vector<long>> rows) {
  ExactMatrix m(static_cast<int>(rows.size()), static_cast<int>(rows[0].size()));
  for (int r = 0; r < m.rows(); ++r) {
    for (int c = 0; c < m.cols(); ++c) m.at(r, c) = rows[r][c];
  }
  return m;
}

// Spanning trees by deletion-contraction on a multigraph edge list.
long trees_dc(int nodes, std::vector<std::pair<int, int>> edges) {
  if (nodes == 1) return 1;
  if (edges.empty()) return 0;
  auto [a, b] = edges.back();
  edges.pop_back();
  if (a == b) return trees_dc(nodes, edges);
  const long without = trees_dc(nodes, edges);
  std::vector<std::pair<int, int>> merged;
  for (auto [x, y] : edges) {
    if (x == b) x = a;
    if (y == b) y = a;
    if (x == nodes) x = b;
    if (y == nodes) y = b;
    if (x != y) merged.push_back({x, y});
  }
  // relabel: node b now unused, the last node moved into its slot
  return without + trees_dc(nodes - 1, merged);
}

long trees_dc(const Topology& t) {
  std::vector<std::pair<int, int>> e;
  for (auto [a, b] : t.edges()) e.push_back({a, b});
  return trees_dc(t.node_count(), e);
}

}  // namespace

TEST(EdgeIndex, OrderAndInverse) {
  EXPECT_EQ(edge_index(5, 1, 2), 0);
  EXPECT_EQ(edge_index(5, 1, 5), 3);
  EXPECT_EQ(edge_index(5, 2, 3), 4);
  EXPECT_EQ(edge_index(5, 4, 5), 9);
  EXPECT_EQ(edge_index(5, 3, 1), edge_index(5, 1, 3));
  for (int n = 3; n <= 8; ++n) {
    for (int e = 0; e < edge_count(n); ++e) {
      auto [i, j] = edge_nodes(n, e);
      EXPECT_EQ(edge_index(n, i, j), e);
    }
  }
  EXPECT_THROW(edge_index(4, 1, 1), std::out_of_range);
  EXPECT_THROW(edge_index(4, 0, 2), std::out_of_range);
}

TEST(Topology, Basics) {
  const Topology k3 = Topology::complete(3);
  EXPECT_EQ(k3.bit_string(), "111");
  EXPECT_EQ(k3.edge_total(), 3);
  const Topology p = fixtures::path3();
  EXPECT_EQ(p.bit_string(), "101");
  EXPECT_EQ(p.degree(2), 2);
  EXPECT_TRUE(p.with_edge_flipped(1, 3) == k3);
  const std::vector<int> w{1, 0, 1};
  EXPECT_TRUE(Topology::from_vector(3, w) == p);
  EXPECT_EQ(p.edge_vector(), w);
}

TEST(Laplacian, Examples) {
  EXPECT_EQ(laplacian(Topology::complete(3)), ints({{2, -1, -1}, {-1, 2, -1}, {-1, -1, 2}}));
  EXPECT_EQ(laplacian(Topology::empty(3)), ints({{0, 0, 0}, {0, 0, 0}, {0, 0, 0}}));
  EXPECT_EQ(laplacian(fixtures::path3()), ints({{1, -1, 0}, {-1, 2, -1}, {0, -1, 1}}));
}

TEST(Laplacian, SymmetricWithZeroRowSums) {
  for (int n = 3; n <= 5; ++n) {
    for (const Topology& t : enumerate_topologies(n).materialize()) {
      const ExactMatrix l = laplacian(t);
      ASSERT_TRUE(l.is_symmetric());
      for (int r = 0; r < n; ++r) {
        Rational sum = 0;
        for (int c = 0; c < n; ++c) sum += l.at(r, c);
        ASSERT_EQ(sum, 0);
      }
    }
  }
}

TEST(MinorDet, Examples) {
  const ExactMatrix k3 = laplacian(Topology::complete(3));
  const int one[] = {1};
  const int onetwo[] = {1, 2};
  const int onethree[] = {1, 3};
  EXPECT_EQ(minor_det(k3, one, one), 3);
  EXPECT_EQ(minor_det(k3, onetwo, onetwo), 2);
  EXPECT_EQ(minor_det(laplacian(fixtures::path3()), onethree, onethree), 2);
  const int all[] = {1, 2, 3};
  EXPECT_EQ(minor_det(k3, all, all), 1);
  const int bad[] = {4};
  EXPECT_THROW(minor_det(k3, bad, bad), std::out_of_range);
  EXPECT_THROW(minor_det(k3, one, onetwo), std::invalid_argument);
}

TEST(Determinant, RationalMatrices) {
  ExactMatrix m(2, 2);
  m.at(0, 0) = q(1, 2);
  m.at(0, 1) = q(1, 3);
  m.at(1, 0) = q(1, 4);
  m.at(1, 1) = q(1, 5);
  EXPECT_EQ(determinant(m), q(1, 10) - q(1, 12));
  EXPECT_EQ(determinant(ExactMatrix(0, 0)), 1);
  EXPECT_EQ(determinant(ints({{0, 1}, {1, 0}})), -1);
  EXPECT_EQ(determinant(ints({{1, 2}, {2, 4}})), 0);
}

TEST(MinorDet, IntegerMatricesGiveIntegers) {
  std::mt19937_64 rng(7);
  for (int it = 0; it < 100; ++it) {
    const Topology t = fixtures::random_connected(6, rng);
    const ExactMatrix l = laplacian(t);
    const int rows[] = {1, 4};
    const int cols[] = {2, 6};
    const Rational d = minor_det(l, rows, cols);
    ASSERT_EQ(d.get_den(), 1);
  }
}

TEST(SpanningTrees, Examples) {
  EXPECT_EQ(spanning_tree_count(Topology::complete(4)), 16);
  EXPECT_EQ(spanning_tree_count(Topology::complete(5)), 125);
  EXPECT_EQ(spanning_tree_count(fixtures::path3()), 1);
  EXPECT_EQ(spanning_tree_count(topo(4, {{1, 2}, {3, 4}})), 0);
}

TEST(SpanningTrees, MatchDeletionContractionForEveryK) {
  for (int n = 3; n <= 5; ++n) {
    for (const Topology& t : enumerate_topologies(n).materialize()) {
      const long expected = trees_dc(t);
      const ExactMatrix l = laplacian(t);
      for (int k = 1; k <= n; ++k) {
        const int drop[] = {k};
        ASSERT_EQ(minor_det(l, drop, drop), expected) << t.bit_string() << " k=" << k;
      }
      ASSERT_EQ(spanning_tree_count(t), expected);
    }
  }
  std::mt19937_64 rng(11);
  for (int it = 0; it < 30; ++it) {
    const Topology t = fixtures::random_connected(6, rng);
    ASSERT_EQ(spanning_tree_count(t), trees_dc(t)) << t.bit_string();
  }
}

TEST(Connectivity, AgreesWithTreeCount) {
  EXPECT_TRUE(is_connected(Topology::complete(3)));
  EXPECT_FALSE(is_connected(Topology::empty(3)));
  EXPECT_FALSE(is_connected(topo(4, {{1, 2}, {3, 4}})));
  for (int n = 3; n <= 5; ++n) {
    for (const Topology& t : enumerate_topologies(n).materialize()) {
      ASSERT_EQ(is_connected(t), spanning_tree_count(t) > 0) << t.bit_string();
    }
  }
}

TEST(Enumeration, CountsAndOrder) {
  const auto all3 = enumerate_topologies(3).materialize();
  ASSERT_EQ(all3.size(), 8u);
  int connected = 0;
  for (std::size_t i = 0; i < all3.size(); ++i) {
    if (is_connected(all3[i])) ++connected;
    if (i > 0) {
      EXPECT_LT(all3[i - 1].bits(), all3[i].bits());
    }
  }
  EXPECT_EQ(connected, 4);

  const std::vector<int> nine{1, 1, 1, 1, 1, 1, 1, 1, 1, 0};
  EXPECT_EQ(enumerate_topologies(5, mask_from_vector(5, nine)).size(), 512u);
  const std::vector<int> single{1, 0, 0};
  const auto two = enumerate_topologies(3, mask_from_vector(3, single)).materialize();
  ASSERT_EQ(two.size(), 2u);
  EXPECT_EQ(two[0].bits(), 0u);
  EXPECT_EQ(two[1].bit_string(), "100");
}

TEST(Enumeration, ConnectedCounts) {
  const std::map<int, int> expected{{3, 4}, {4, 38}, {5, 728}};
  for (auto [n, count] : expected) {
    int c = 0;
    const TopologyRange r = enumerate_topologies(n);
    for (std::uint64_t i = 0; i < r.size(); ++i) c += is_connected(r.at(i)) ? 1 : 0;
    EXPECT_EQ(c, count) << n;
  }
}

TEST(Enumeration, CapNamesTheLimit) {
  try {
    enumerate_topologies(8);
    FAIL() << "expected length_error";
  } catch (const std::length_error& e) {
    EXPECT_NE(std::string(e.what()).find("21"), std::string::npos) << e.what();
  }
  EXPECT_NO_THROW(enumerate_topologies(8, std::nullopt, 28));
}

TEST(MinorTable, MatchesExactMinors) {
  for (int n = 3; n <= 5; ++n) {
    for (const Topology& t : enumerate_topologies(n).materialize()) {
      const MinorTable m = MinorTable::compute(t);
      const ExactMatrix l = laplacian(t);
      const int kk[] = {n};
      ASSERT_EQ(m.tree_count(), minor_det(l, kk, kk));
      for (int a = 1; a <= n; ++a) {
        for (int b = a + 1; b <= n; ++b) {
          const int ab[] = {a, b};
          ASSERT_EQ(m.pair_minor(a, b), minor_det(l, ab, ab));
          ASSERT_EQ(m.pair_minor(b, a), m.pair_minor(a, b));
        }
      }
    }
  }
}
