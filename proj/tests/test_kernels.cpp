#include "netrecon/minor_kernels.hpp"

#include "netrecon/graphcore.hpp"

#include <gtest/gtest.h>

#include <random>
#include <stdexcept>
#include <vector>

using namespace netrecon;
using namespace netrecon::kernels;

namespace {

std::vector<MinorSpec> all_specs(int n) {
  std::vector<MinorSpec> s;
  for (int a = 1; a <= n; ++a) s.push_back({a, a});
  for (int a = 1; a <= n; ++a) {
    for (int b = a + 1; b <= n; ++b) s.push_back({a, b});
  }
  return s;
}

std::vector<std::int64_t> run(Isa isa, int n, const std::vector<std::uint64_t>& bits, const std::vector<MinorSpec>& s) {
  std::vector<std::int64_t> out(bits.size() * s.size());
  laplacian_minors(isa, n, bits, s, out);
  return out;
}

std::vector<std::uint64_t> all_patterns(int n) {
  std::vector<std::uint64_t> bits(std::uint64_t{1} << graphcore::edge_count(n));
  for (std::uint64_t i = 0; i < bits.size(); ++i) bits[i] = i;
  return bits;
}

std::vector<std::uint64_t> random_patterns(int n, std::size_t count, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  const std::uint64_t mask = (std::uint64_t{1} << graphcore::edge_count(n)) - 1;
  std::vector<std::uint64_t> bits(count);
  for (auto& b : bits) b = rng() & mask;
  bits.push_back(mask);
  bits.push_back(0);
  return bits;
}

}  // namespace

TEST(Kernels, IsaNames) {
  EXPECT_EQ(isa_name(Isa::scalar), "scalar");
  EXPECT_EQ(parse_isa("avx2"), Isa::avx2);
  EXPECT_EQ(parse_isa("neon"), Isa::neon);
  EXPECT_FALSE(parse_isa("sse9").has_value());
  EXPECT_TRUE(isa_available(Isa::scalar));
}

TEST(Kernels, ScalarMatchesExactMinorsExhaustively) {
  for (int n = 3; n <= 5; ++n) {
    const auto bits = all_patterns(n);
    const auto specs = all_specs(n);
    const auto out = run(Isa::scalar, n, bits, specs);
    for (std::size_t t = 0; t < bits.size(); ++t) {
      const graphcore::ExactMatrix l = graphcore::laplacian(graphcore::Topology(n, bits[t]));
      for (std::size_t s = 0; s < specs.size(); ++s) {
        const int drop[] = {specs[s].a, specs[s].b};
        const std::span<const int> d(drop, specs[s].a == specs[s].b ? 1 : 2);
        ASSERT_EQ(out[t * specs.size() + s], graphcore::minor_det(l, d, d));
      }
    }
  }
}

TEST(Kernels, ScalarMatchesExactMinorsRandom) {
  for (int n = 6; n <= 9; ++n) {
    const auto bits = random_patterns(n, 60, 100 + n);
    const auto specs = all_specs(n);
    const auto out = run(Isa::scalar, n, bits, specs);
    for (std::size_t t = 0; t < bits.size(); ++t) {
      const graphcore::ExactMatrix l = graphcore::laplacian(graphcore::Topology(n, bits[t]));
      for (std::size_t s = 0; s < specs.size(); ++s) {
        const int drop[] = {specs[s].a, specs[s].b};
        const std::span<const int> d(drop, specs[s].a == specs[s].b ? 1 : 2);
        ASSERT_EQ(out[t * specs.size() + s], graphcore::minor_det(l, d, d));
      }
    }
  }
}

TEST(Kernels, ScalarHelpersAgreeWithBatch) {
  const int n = 6;
  const auto bits = random_patterns(n, 50, 3);
  for (auto b : bits) {
    const MinorSpec specs[] = {{2, 2}, {1, 4}};
    std::int64_t out[2];
    laplacian_minors_scalar(n, std::span<const std::uint64_t>(&b, 1), specs, out);
    EXPECT_EQ(out[0], principal_minor_scalar(n, b, 2));
    EXPECT_EQ(out[1], pair_minor_scalar(n, b, 1, 4));
  }
}

class SimdEquivalence : public ::testing::TestWithParam<Isa> {};

TEST_P(SimdEquivalence, MatchesScalarExhaustivelyUpTo5) {
  const Isa isa = GetParam();
  if (!isa_available(isa)) GTEST_SKIP() << isa_name(isa) << " not available on this host";
  for (int n = 3; n <= 5; ++n) {
    const auto bits = all_patterns(n);
    const auto specs = all_specs(n);
    ASSERT_EQ(run(isa, n, bits, specs), run(Isa::scalar, n, bits, specs)) << n;
  }
}

TEST_P(SimdEquivalence, MatchesScalarRandom6To9) {
  const Isa isa = GetParam();
  if (!isa_available(isa)) GTEST_SKIP() << isa_name(isa) << " not available on this host";
  for (int n = 6; n <= kMaxSimdNodes; ++n) {
    // odd batch sizes exercise the lane tail
    const auto bits = random_patterns(n, 997, 40 + n);
    const auto specs = all_specs(n);
    ASSERT_EQ(run(isa, n, bits, specs), run(Isa::scalar, n, bits, specs)) << n;
  }
}

INSTANTIATE_TEST_SUITE_P(Kernels, SimdEquivalence, ::testing::Values(Isa::avx2, Isa::neon),
                         [](const auto& info) { return std::string(isa_name(info.param)); });

TEST(Kernels, LargeNFallsBackToScalar) {
  const int n = 10;
  const auto bits = random_patterns(n, 20, 9);
  const auto specs = all_specs(n);
  std::vector<std::int64_t> a(bits.size() * specs.size()), b(a.size());
  laplacian_minors(n, bits, specs, a);
  laplacian_minors_scalar(n, bits, specs, b);
  EXPECT_EQ(a, b);
}

TEST(Kernels, OverrideSelectsIsa) {
  set_isa_override(Isa::scalar);
  EXPECT_EQ(active_isa(), Isa::scalar);
  set_isa_override(std::nullopt);
  EXPECT_TRUE(isa_available(active_isa()));
}

TEST(Kernels, ValidateRejectsBadShapes) {
  const std::uint64_t bits[] = {7};
  const MinorSpec specs[] = {{1, 2}};
  std::int64_t out[1];
  const MinorSpec bad[] = {{1, 4}};
  EXPECT_THROW(laplacian_minors_scalar(3, bits, bad, out), std::out_of_range);
  std::span<std::int64_t> empty;
  EXPECT_THROW(laplacian_minors_scalar(3, bits, specs, empty), std::invalid_argument);
}

TEST(Kernels, BatchTablesMatchExactMinors) {
  for (int n : {4, 5, 7}) {
    const auto bits = random_patterns(n, 300, n);
    const auto tables = graphcore::compute_minor_tables(n, bits);
    ASSERT_EQ(tables.size(), bits.size());
    for (std::size_t i = 0; i < bits.size(); ++i) {
      const graphcore::ExactMatrix l = graphcore::laplacian(graphcore::Topology(n, bits[i]));
      ASSERT_EQ(tables[i].tree_count(), graphcore::spanning_tree_count(graphcore::Topology(n, bits[i])));
      for (int a = 1; a <= n; ++a) {
        for (int b = a + 1; b <= n; ++b) {
          const int drop[] = {a, b};
          ASSERT_EQ(tables[i].pair_minor(a, b), graphcore::minor_det(l, drop, drop));
        }
      }
    }
  }
}
