#pragma once

#include "netrecon/circuit.hpp"
#include "netrecon/constraints.hpp"
#include "netrecon/graphcore.hpp"
#include "netrecon/polysys.hpp"

#include <cstdint>
#include <optional>
#include <vector>

namespace netrecon::solver {

using circuit::CandidateNetwork;
using circuit::MeasurementSet;
using circuit::NetworkClass;
using constraints::CompositeInequality;
using constraints::TriangleConstraint;
using graphcore::MinorTable;
using graphcore::Topology;

inline constexpr std::size_t kDefaultMaxComposites = 100000;

struct GroebnerOptions {
  polysys::OrderKind order = polysys::OrderKind::grevlex;
  polysys::GroebnerLimits limits;
};

struct SolverConfig {
  int jobs = 0;  // 0: hardware concurrency
  bool planar_filter = false;
  std::optional<std::uint64_t> edge_mask;
  int cap = graphcore::kDefaultEnumerationCap;
  std::optional<Rational> beta_known;
  // Required to agree with the measurements; used as is when there are none.
  std::optional<NetworkClass> cls;
  // Largest feasible composite set Stage 2 may produce.
  std::size_t max_composites = kDefaultMaxComposites;
  GroebnerOptions groebner;
};

struct ProblemSpec {
  MeasurementSet measurements;
  NetworkClass cls = NetworkClass::R;
  std::vector<TriangleConstraint> triangle;
  std::optional<CompositeInequality> composite;
  SolverConfig config;
};

// Per-pattern solution of F(w, beta) = 0 in beta.
enum class BetaKind { inconsistent, unique, any };
struct BetaSolution {
  BetaKind kind = BetaKind::inconsistent;
  Rational value;  // set when kind == unique
};
BetaSolution beta_solutions(const MinorTable& minors, const MeasurementSet& ms);

// The beta > 0 consistent with every measurement of a connected topology.
std::optional<Rational> solve_beta(const Topology& t, const MeasurementSet& ms,
                                   const std::optional<Rational>& beta_known = std::nullopt);
std::optional<Rational> solve_beta(const MinorTable& minors, const MeasurementSet& ms,
                                   const std::optional<Rational>& beta_known = std::nullopt);

// Candidates of P (the composite, if any, is ignored) with their minor tables.
struct Candidate {
  CandidateNetwork network;
  MinorTable minors;
};
std::vector<Candidate> candidate_pool(const ProblemSpec& spec);

// P, or P with the composite when spec.composite is set. Ascending bit order.
std::vector<CandidateNetwork> enumerate_P(const ProblemSpec& spec);
bool feasible(const ProblemSpec& spec);
bool feasible(const std::vector<Candidate>& pool, const CompositeInequality& comp);

std::vector<std::vector<CompositeInequality>> stage1(const std::vector<std::vector<CompositeInequality>>& k,
                                                     const std::vector<Candidate>& pool);
std::vector<CompositeInequality> stage2(const std::vector<CompositeInequality>& c_aux,
                                        const std::vector<Candidate>& pool);
// Same result as stage2(combine(k_hat), pool) without building the product:
// each candidate contributes the combinations it satisfies. Throws
// std::length_error when more than max_composites are feasible.
std::vector<CompositeInequality> stage2(const std::vector<std::vector<CompositeInequality>>& k_hat,
                                        const std::vector<Candidate>& pool, std::size_t max_composites);

// Product of the list sizes; empty when it does not fit in 64 bits.
std::optional<std::uint64_t> product_size(const std::vector<std::vector<CompositeInequality>>& sets);

struct SolutionSet {
  std::size_t composite_id;  // index into c_hat
  std::vector<CandidateNetwork> networks;
};

// Binary patterns w for which F(w, beta) = 0 has a solution.
struct RawVariety {
  std::uint64_t patterns = 0;
  std::uint64_t vacuous_connected = 0;  // every equation 0 = 0
  std::uint64_t vacuous_disconnected = 0;
  std::uint64_t positive_connected = 0;  // unique beta > 0
  std::uint64_t positive_disconnected = 0;
  std::uint64_t nonpositive_connected = 0;  // unique beta <= 0
  std::uint64_t nonpositive_disconnected = 0;

  // exists beta > 0
  std::uint64_t count() const {
    return vacuous_connected + vacuous_disconnected + positive_connected + positive_disconnected;
  }
  std::uint64_t count_any_beta() const {
    return count() + nonpositive_connected + nonpositive_disconnected;
  }
};
RawVariety raw_variety(const MeasurementSet& ms, const SolverConfig& config);

struct ReconstructionReport {
  NetworkClass cls = NetworkClass::R;
  constraints::IndexSets index;
  std::vector<TriangleConstraint> triangles;
  std::vector<CandidateNetwork> feasible_candidates;  // P
  std::vector<std::vector<CompositeInequality>> k_hat;
  std::optional<std::uint64_t> c_aux_size;  // empty on overflow
  std::vector<CompositeInequality> c_hat;
  std::vector<SolutionSet> solutions;  // one per member of c_hat
  RawVariety raw;
  std::uint64_t patterns_enumerated = 0;
  SolverConfig config;
  double elapsed_seconds = 0;  // not part of any serialized output
};

ReconstructionReport reconstruct(const MeasurementSet& ms, const SolverConfig& config = {});

// Inner fan from node 1 plus outer fan from node 2: 3n - 6 edges.
std::uint64_t maximal_planar_mask(int n);
// Nodes on a circle in label order, edges as chords, no two chords crossing.
bool is_circular_planar(const Topology& t);

}  // namespace netrecon::solver
