#include "netrecon/oracle.hpp"

#include "support.hpp"

#include <gtest/gtest.h>

#include <algorithm>

using namespace netrecon;
using namespace netrecon::oracle;
using netrecon::fixtures::q;
using netrecon::fixtures::topo;

TEST(PlanarTemplate, CycleAndFan) {
  for (int n = 3; n <= 9; ++n) {
    const Topology t = planar_template(n);
    EXPECT_EQ(t.edge_total(), 2 * n - 3) << n;
    EXPECT_TRUE(is_circular_planar(t));
    for (int i = 1; i < n; ++i) EXPECT_TRUE(t.has_edge(i, i + 1));
    EXPECT_TRUE(t.has_edge(1, n));
  }
}

TEST(RandomCircularPlanar, ConnectedPlanarDeterministic) {
  for (int n = 3; n <= 8; ++n) {
    for (std::uint64_t seed = 0; seed < 50; ++seed) {
      const Topology t = random_circular_planar(n, seed);
      ASSERT_TRUE(graphcore::is_connected(t)) << n << "/" << seed;
      ASSERT_TRUE(is_circular_planar(t));
      ASSERT_TRUE(t == random_circular_planar(n, seed));
    }
  }
  EXPECT_FALSE(random_circular_planar(7, 1) == random_circular_planar(7, 2) &&
               random_circular_planar(7, 2) == random_circular_planar(7, 3));
}

TEST(DisjointPaths, Examples) {
  const Topology cycle = topo(4, {{1, 2}, {2, 3}, {3, 4}, {4, 1}});
  EXPECT_TRUE(has_disjoint_paths(cycle, 1, 2, 4, 3));
  EXPECT_FALSE(has_disjoint_paths(cycle, 1, 3, 2, 4));
  const Topology star = topo(5, {{5, 1}, {5, 2}, {5, 3}, {5, 4}});
  EXPECT_FALSE(has_disjoint_paths(star, 1, 2, 3, 4));
  EXPECT_TRUE(has_disjoint_paths(Topology::complete(4), 1, 3, 2, 4));
  EXPECT_FALSE(has_disjoint_paths(topo(4, {{1, 2}}), 1, 2, 3, 4));
}

TEST(BruteForce, MatchesSolverOnSmallCases) {
  std::mt19937_64 rng(17);
  for (int it = 0; it < 20; ++it) {
    const int n = 3 + static_cast<int>(rng() % 3);
    const Topology t = fixtures::random_connected(n, rng);
    const auto cls = static_cast<circuit::NetworkClass>(rng() % 3);
    const auto ms = fixtures::measure(circuit::CandidateNetwork(t, cls, q(3, 2)), fixtures::random_available(n, rng, false));
    const auto brute = brute_force(ms, {});
    const auto report = solver::reconstruct(ms);
    ASSERT_EQ(brute.networks(), report.feasible_candidates) << t.bit_string();
    for (const auto& c : brute.candidates) {
      for (int a = 1; a <= n; ++a) {
        for (int b = a + 1; b <= n; ++b) {
          const auto z = circuit::thevenin_direct(circuit::CandidateNetwork(c.network.topology(), circuit::NetworkClass::R, 1), a, b);
          ASSERT_EQ(c.r(a, b), z.re);
        }
      }
    }
  }
}

TEST(CrossCheck, PublishedScenariosAgree) {
  for (const auto& ms : {fixtures::scenario1(), fixtures::scenario2()}) {
    const auto diff = cross_check(solver::reconstruct(ms), brute_force(ms, {}));
    EXPECT_TRUE(diff.empty()) << diff.describe();
  }
}

TEST(CrossCheck, DetectsInjectedFault) {
  const auto ms = fixtures::scenario1();
  const auto brute = brute_force(ms, {});
  auto report = solver::reconstruct(ms);
  ASSERT_FALSE(report.solutions.empty());
  report.solutions[0].networks.clear();
  const auto diff = cross_check(report, brute);
  ASSERT_EQ(diff.size(), 1u);
  EXPECT_EQ(diff.entries[0].missing.size(), 1u);
  EXPECT_TRUE(diff.entries[0].extra.empty());
  EXPECT_NE(diff.describe().find("N[0]"), std::string::npos);
}

TEST(CrossCheck, PlanarFilterMismatchShows) {
  const auto ms = fixtures::scenario1();
  solver::SolverConfig planar;
  planar.planar_filter = true;
  const auto filtered = solver::reconstruct(ms, planar);
  const auto brute = brute_force(ms, {});
  if (filtered.feasible_candidates.size() == brute.candidates.size()) GTEST_SKIP() << "filter removes nothing here";
  const auto diff = cross_check(filtered, brute);
  EXPECT_FALSE(diff.empty());
  EXPECT_EQ(diff.entries[0].scope, "P");
  EXPECT_FALSE(diff.entries[0].missing.empty());
}

TEST(CrossCheck, DirectCompositeMatchesMinors) {
  const auto ms = fixtures::scenario2();
  const auto brute = brute_force(ms, {});
  const auto quads = constraints::index_sets(5, ms.available).quads;
  for (const auto& c : brute.candidates) {
    const auto m = graphcore::MinorTable::compute(c.network.topology());
    for (const auto& qd : quads) {
      for (const auto& comp : constraints::composites(qd)) {
        ASSERT_EQ(eval_composite_direct(comp, c), constraints::eval_composite(comp, m)) << comp.label();
      }
    }
  }
}

TEST(NetworkKey, Format) {
  EXPECT_EQ(network_key(fixtures::scenario_network()), "1001101111:2");
}
