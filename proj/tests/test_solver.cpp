#include "netrecon/solver.hpp"

#include "netrecon/oracle.hpp"
#include "support.hpp"

#include <gtest/gtest.h>

#include <algorithm>
#include <random>

using namespace netrecon;
using namespace netrecon::solver;
using netrecon::fixtures::q;
using netrecon::fixtures::topo;

namespace {

MeasurementSet real_pair(int n, int a, int b, const Rational& z, std::vector<int> available) {
  MeasurementSet ms;
  ms.n = n;
  ms.available = std::move(available);
  ms.items = {{a, b, ComplexRational(z)}};
  return ms;
}

ProblemSpec spec_for(const MeasurementSet& ms, const SolverConfig& config = {}) {
  const auto ix = constraints::index_sets(ms.n, ms.available);
  return ProblemSpec{ms, circuit::infer_class(ms), constraints::triangle_set(ix, ms), std::nullopt, config};
}

std::vector<std::string> bit_strings(const std::vector<CandidateNetwork>& v) {
  std::vector<std::string> out;
  for (const auto& c : v) out.push_back(c.topology().bit_string());
  return out;
}

}  // namespace

TEST(SolveBeta, Examples) {
  const auto k3 = fixtures::measure(CandidateNetwork(Topology::complete(3), NetworkClass::R, 1), {1, 2, 3});
  EXPECT_EQ(solve_beta(Topology::complete(3), k3), q(1));
  EXPECT_FALSE(solve_beta(Topology::complete(3), k3, q(2)).has_value());
  EXPECT_EQ(solve_beta(Topology::complete(3), k3, q(1)), q(1));

  const auto path = real_pair(3, 1, 3, q(2), {1, 3});
  EXPECT_EQ(solve_beta(fixtures::path3(), path), q(1));

  MeasurementSet clash = k3;
  clash.items = {{1, 2, ComplexRational(q(2, 3))}, {1, 3, ComplexRational(q(1))}};
  EXPECT_FALSE(solve_beta(Topology::complete(3), clash).has_value());

  EXPECT_FALSE(solve_beta(topo(3, {{1, 2}}), path).has_value());
}

TEST(SolveBeta, VacuousSystems) {
  MeasurementSet none;
  none.n = 3;
  none.available = {1, 2};
  EXPECT_EQ(beta_solutions(MinorTable::compute(Topology::complete(3)), none).kind, BetaKind::any);
  EXPECT_FALSE(solve_beta(Topology::complete(3), none).has_value());
  EXPECT_EQ(solve_beta(Topology::complete(3), none, q(5, 2)), q(5, 2));
}

TEST(SolveBeta, RecoversGeneratingBeta) {
  std::mt19937_64 rng(21);
  for (int it = 0; it < 100; ++it) {
    const int n = 4 + static_cast<int>(rng() % 3);
    const Topology t = fixtures::random_connected(n, rng);
    const Rational beta = q(1 + static_cast<long>(rng() % 7), 1 + static_cast<long>(rng() % 4));
    const auto cls = static_cast<NetworkClass>(rng() % 3);
    const auto avail = fixtures::random_available(n, rng, true);
    const auto ms = fixtures::measure(CandidateNetwork(t, cls, beta), avail);
    ASSERT_EQ(solve_beta(t, ms), beta) << t.bit_string();
  }
}

TEST(EnumerateP, ThreeNodeSinglePair) {
  const auto ms = real_pair(3, 1, 2, q(2, 3), {1, 2});
  const auto p = enumerate_P(spec_for(ms));
  ASSERT_EQ(p.size(), 4u);
  EXPECT_EQ(p[0].topology().bits(), 3u);
  EXPECT_EQ(p[1].topology().bits(), 5u);
  EXPECT_EQ(p[2].topology().bits(), 6u);
  EXPECT_EQ(p[3].topology().bits(), 7u);
  EXPECT_EQ(p[0].beta(), q(2, 3));
  EXPECT_EQ(p[1].beta(), q(2, 3));
  EXPECT_EQ(p[2].beta(), q(1, 3));
  EXPECT_EQ(p[3].beta(), q(1));
  for (const auto& c : p) EXPECT_EQ(c.network_class(), NetworkClass::R);

  const RawVariety raw = raw_variety(ms, {});
  EXPECT_EQ(raw.patterns, 8u);
  EXPECT_EQ(raw.vacuous_disconnected, 2u);
  EXPECT_EQ(raw.nonpositive_disconnected, 2u);
  EXPECT_EQ(raw.positive_connected, 4u);
  EXPECT_EQ(raw.count(), 6u);
  EXPECT_EQ(raw.count_any_beta(), 8u);
}

TEST(EnumerateP, FullAvailabilityPinsK3) {
  const auto ms = fixtures::measure(CandidateNetwork(Topology::complete(3), NetworkClass::RC, q(3, 2)), {1, 2, 3});
  const auto p = enumerate_P(spec_for(ms));
  ASSERT_EQ(p.size(), 1u);
  EXPECT_EQ(p[0], CandidateNetwork(Topology::complete(3), NetworkClass::RC, q(3, 2)));
}

TEST(EnumerateP, EdgeMaskAndPlanarFilter) {
  const auto ms = real_pair(3, 1, 2, q(2, 3), {1, 2});
  SolverConfig cfg;
  cfg.edge_mask = 0b011;  // edge 23 forced off
  EXPECT_EQ(bit_strings(enumerate_P(spec_for(ms, cfg))), (std::vector<std::string>{"110"}));

  const auto net = fixtures::scenario_network();
  const auto ms5 = fixtures::measure(net, {1, 4, 5});
  SolverConfig planar;
  planar.planar_filter = true;
  const auto all = enumerate_P(spec_for(ms5));
  const auto kept = enumerate_P(spec_for(ms5, planar));
  EXPECT_LE(kept.size(), all.size());
  for (const auto& c : kept) EXPECT_TRUE(is_circular_planar(c.topology()));
  for (const auto& c : all) {
    const bool listed = std::find(kept.begin(), kept.end(), c) != kept.end();
    EXPECT_EQ(listed, is_circular_planar(c.topology())) << c.topology().bit_string();
  }
}

TEST(EnumerateP, CompositeRestricts) {
  const auto ms = fixtures::scenario1();
  ProblemSpec spec = spec_for(ms);
  const auto p = enumerate_P(spec);
  spec.composite = constraints::composites(constraints::make_quad(5, {1, 2, 3, 4}))[3];
  const auto restricted = enumerate_P(spec);
  EXPECT_LE(restricted.size(), p.size());
  for (const auto& c : restricted) EXPECT_TRUE(constraints::eval_composite(*spec.composite, c));
  EXPECT_EQ(feasible(spec), !restricted.empty());
}

TEST(Scenario, PublishedFirstExample) {
  const auto report = reconstruct(fixtures::scenario1());
  EXPECT_EQ(report.cls, NetworkClass::RL);
  EXPECT_EQ(bit_strings(report.feasible_candidates), (std::vector<std::string>{"0101111011", "1001101111"}));
  for (const auto& c : report.feasible_candidates) EXPECT_EQ(c.beta(), q(2));
  const auto truth = fixtures::scenario_network();
  EXPECT_NE(std::find(report.feasible_candidates.begin(), report.feasible_candidates.end(), truth),
            report.feasible_candidates.end());

  std::vector<std::size_t> sizes;
  for (const auto& k : report.k_hat) sizes.push_back(k.size());
  // quads in sorted-node order: 1234, 1235, 1245, 1345, 2345
  EXPECT_EQ(sizes, (std::vector<std::size_t>{2, 2, 1, 1, 2}));
  EXPECT_EQ(report.k_hat[0][0].label(), "K^{2314}_{>0} & K^{1243}_{>0}");
  EXPECT_EQ(report.k_hat[0][1].label(), "K^{2314}_{<0} & K^{1243}_{<0}");
  EXPECT_EQ(report.k_hat[4][1].label(), "K^{3425}_{<0} & K^{2354}_{<0}");
  EXPECT_EQ(report.c_aux_size, 8u);
  EXPECT_EQ(report.c_hat.size(), 2u);
  ASSERT_EQ(report.solutions.size(), report.c_hat.size());
  for (const auto& s : report.solutions) EXPECT_EQ(s.networks.size(), 1u);
  EXPECT_EQ(report.raw.count(), 148u);
  EXPECT_EQ(report.raw.count_any_beta(), 298u);
  EXPECT_EQ(report.patterns_enumerated, 1024u);
}

TEST(Scenario, PublishedSecondExample) {
  const auto report = reconstruct(fixtures::scenario2());
  EXPECT_EQ(report.index.quads.size(), 5u);
  EXPECT_EQ(report.c_aux_size, 1024u);
  EXPECT_EQ(report.c_hat.size(), 1024u);
  const auto truth = fixtures::scenario_network();
  EXPECT_NE(std::find(report.feasible_candidates.begin(), report.feasible_candidates.end(), truth),
            report.feasible_candidates.end());
  // every member of P lies in the solution set of its own sign-true composite
  for (const auto& c : report.feasible_candidates) {
    std::size_t hits = 0;
    for (const auto& s : report.solutions) {
      hits += std::count(s.networks.begin(), s.networks.end(), c);
    }
    EXPECT_GE(hits, 1u);
  }
}

TEST(Stages, StageOneKeepsFeasibleOnly) {
  const auto ms = fixtures::scenario1();
  const auto pool = candidate_pool(spec_for(ms));
  std::vector<std::vector<CompositeInequality>> k;
  for (const auto& qd : constraints::index_sets(5, ms.available).quads) k.push_back(constraints::composites(qd));
  const auto k_hat = stage1(k, pool);
  ASSERT_EQ(k_hat.size(), k.size());
  for (std::size_t i = 0; i < k.size(); ++i) {
    for (const auto& comp : k[i]) {
      const bool kept = std::find(k_hat[i].begin(), k_hat[i].end(), comp) != k_hat[i].end();
      EXPECT_EQ(kept, feasible(pool, comp)) << comp.label();
    }
  }
  const auto c_hat = stage2(constraints::combine(k_hat), pool);
  for (const auto& comp : c_hat) EXPECT_TRUE(feasible(pool, comp));
  EXPECT_TRUE(stage2({}, pool).empty());
}

TEST(Determinism, JobsDoNotChangeResults) {
  for (const auto& ms : {fixtures::scenario1(), fixtures::scenario2()}) {
    SolverConfig one;
    one.jobs = 1;
    SolverConfig many;
    many.jobs = 7;
    const auto a = reconstruct(ms, one);
    const auto b = reconstruct(ms, many);
    EXPECT_EQ(a.feasible_candidates, b.feasible_candidates);
    EXPECT_EQ(a.c_hat, b.c_hat);
    EXPECT_EQ(a.raw.count(), b.raw.count());
    EXPECT_EQ(a.raw.count_any_beta(), b.raw.count_any_beta());
    ASSERT_EQ(a.solutions.size(), b.solutions.size());
    for (std::size_t i = 0; i < a.solutions.size(); ++i) EXPECT_EQ(a.solutions[i].networks, b.solutions[i].networks);
  }
}

TEST(Reconstruct, RejectsInvalidInput) {
  MeasurementSet bad = fixtures::scenario1();
  bad.items.push_back({2, 3, fixtures::rl(q(1))});
  EXPECT_ANY_THROW(reconstruct(bad));
  MeasurementSet mixed = fixtures::scenario1();
  mixed.items[0].z = ComplexRational(q(16, 7));
  EXPECT_ANY_THROW(reconstruct(mixed));
}

TEST(Planarity, MaximalMask) {
  for (int n = 3; n <= 11; ++n) {
    const Topology t(n, maximal_planar_mask(n));
    EXPECT_EQ(t.edge_total(), 3 * n - 6) << n;
    // template chords drawn inside the cycle, the rest outside
    const Topology inner = oracle::planar_template(n);
    EXPECT_EQ(t.bits() & inner.bits(), inner.bits()) << n;
    const Topology outer(n, t.bits() & ~inner.bits());
    EXPECT_TRUE(is_circular_planar(inner));
    EXPECT_TRUE(is_circular_planar(outer)) << n;
  }
  EXPECT_THROW(maximal_planar_mask(2), std::invalid_argument);
}

TEST(Planarity, Examples) {
  EXPECT_TRUE(is_circular_planar(topo(4, {{1, 3}, {1, 2}, {2, 3}, {3, 4}, {4, 1}})));
  EXPECT_FALSE(is_circular_planar(topo(4, {{1, 3}, {2, 4}})));
  EXPECT_TRUE(is_circular_planar(Topology::complete(3)));
  EXPECT_FALSE(is_circular_planar(Topology::complete(4)));
  EXPECT_TRUE(is_circular_planar(topo(6, {{1, 6}, {2, 5}, {3, 4}})));
  EXPECT_FALSE(is_circular_planar(topo(6, {{1, 4}, {2, 6}})));
}

TEST(Planarity, AgreesWithOracleCheck) {
  for (int n = 4; n <= 6; ++n) {
    const auto range = graphcore::enumerate_topologies(n);
    for (std::uint64_t i = 0; i < range.size(); ++i) {
      const Topology t = range.at(i);
      ASSERT_EQ(is_circular_planar(t), oracle::is_circular_planar(t)) << t.bit_string();
    }
  }
}

TEST(Stages, PoolDrivenStageTwoMatchesProduct) {
  std::mt19937_64 rng(4);
  for (int it = 0; it < 25; ++it) {
    const int n = 4 + static_cast<int>(rng() % 2);
    const Topology t = oracle::random_circular_planar(n, rng());
    const auto ms = fixtures::measure(CandidateNetwork(t, NetworkClass::RL, 1), fixtures::random_available(n, rng, false));
    const auto pool = candidate_pool(spec_for(ms));
    std::vector<std::vector<CompositeInequality>> k;
    for (const auto& qd : constraints::index_sets(n, ms.available).quads) k.push_back(constraints::composites(qd));
    const auto k_hat = stage1(k, pool);
    const auto size = product_size(k_hat);
    ASSERT_TRUE(size.has_value());
    std::vector<CompositeInequality> expected;
    if (*size > 0) expected = stage2(constraints::combine(k_hat), pool);
    ASSERT_EQ(stage2(k_hat, pool, kDefaultMaxComposites), expected) << t.bit_string();
  }
}

TEST(Stages, CompositeLimit) {
  const auto ms = fixtures::scenario2();
  SolverConfig tight;
  tight.max_composites = 1000;
  EXPECT_THROW(reconstruct(ms, tight), std::length_error);
  tight.max_composites = 1024;
  EXPECT_EQ(reconstruct(ms, tight).c_hat.size(), 1024u);

  const std::vector<std::vector<CompositeInequality>> none;
  EXPECT_EQ(product_size(none), 1u);
  std::vector<std::vector<CompositeInequality>> huge(40, constraints::composites(constraints::make_quad(4, {1, 2, 3, 4})));
  EXPECT_FALSE(product_size(huge).has_value());
}

TEST(Reconstruct, SixNodesWithTwoHiddenNodes) {
  const Topology t = oracle::random_circular_planar(6, 9);
  const CandidateNetwork net(t, NetworkClass::RC, q(3, 2));
  const auto ms = fixtures::measure(net, {1, 3, 4, 6});
  const auto p = enumerate_P(spec_for(ms));
  EXPECT_EQ(p.size(), 10u);
  EXPECT_NE(std::find(p.begin(), p.end(), net), p.end());
  // sparse candidates tie on most quads, so the feasible product is huge
  try {
    reconstruct(ms);
    FAIL() << "expected the composite limit";
  } catch (const std::length_error& e) {
    EXPECT_NE(std::string(e.what()).find("100000"), std::string::npos);
  }
}
