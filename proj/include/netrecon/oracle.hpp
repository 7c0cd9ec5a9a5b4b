#pragma once

#include "netrecon/circuit.hpp"
#include "netrecon/constraints.hpp"
#include "netrecon/solver.hpp"

#include <cstdint>
#include <string>
#include <vector>

namespace netrecon::oracle {

using circuit::CandidateNetwork;
using circuit::MeasurementSet;
using constraints::CompositeInequality;
using graphcore::Topology;

// A candidate with its pairwise effective resistances (unit edges), indexed
// like w_l. Built from direct KCL solves only.
struct OracleCandidate {
  CandidateNetwork network;
  std::vector<Rational> resistance;

  const Rational& r(int a, int b) const;
};

struct BruteForceResult {
  std::vector<OracleCandidate> candidates;

  std::vector<CandidateNetwork> networks() const;
};

BruteForceResult brute_force(const MeasurementSet& ms, const solver::SolverConfig& config);

bool eval_composite_direct(const CompositeInequality& comp, const OracleCandidate& cand);

// Boundary cycle 1..n plus a fan from node 1.
Topology planar_template(int n);
Topology random_circular_planar(int n, std::uint64_t seed);
bool is_circular_planar(const Topology& t);
// Vertex-disjoint paths s1 -> t1 and s2 -> t2.
bool has_disjoint_paths(const Topology& t, int s1, int t1, int s2, int t2);

struct DiffEntry {
  std::string scope;
  std::vector<std::string> missing;  // in the oracle, not in the report
  std::vector<std::string> extra;    // in the report, not in the oracle
};

struct DiffReport {
  std::vector<DiffEntry> entries;  // mismatching scopes only

  bool empty() const { return entries.empty(); }
  std::size_t size() const { return entries.size(); }
  std::string describe() const;
};

// Compares P, the composite set and every solution set of the report with
// the oracle's own Stage-1/Stage-2 run over the brute-force candidates. The
// oracle walks every combination; std::length_error past max_combinations.
DiffReport cross_check(const solver::ReconstructionReport& report, const BruteForceResult& brute,
                       std::uint64_t max_combinations = std::uint64_t{1} << 22);

// "bits:beta" identity used in diff listings.
std::string network_key(const CandidateNetwork& c);

}  // namespace netrecon::oracle
