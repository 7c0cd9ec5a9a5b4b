#pragma once

#include "netrecon/circuit.hpp"
#include "netrecon/graphcore.hpp"

#include <array>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

namespace netrecon::constraints {

using circuit::CandidateNetwork;
using circuit::MeasurementSet;
using graphcore::MinorTable;
using graphcore::Topology;

using Triple = std::array<int, 3>;

// A 4-subset of boundary nodes. 'nodes' is sorted; 'roles' is the circular
// rotation read as (j,k,l,m): it starts at the member following the longest
// circular gap, smallest member on ties.
struct Quad {
  std::array<int, 4> nodes;
  std::array<int, 4> roles;

  friend bool operator==(const Quad& a, const Quad& b) { return a.nodes == b.nodes && a.roles == b.roles; }
};

Quad make_quad(int n, std::array<int, 4> nodes);

struct IndexSets {
  std::vector<Triple> triples;
  std::vector<Quad> quads;
};

IndexSets index_sets(int n, std::span<const int> available);

enum class TriangleForm { pure_determinant, measurement_anchored };

// det L[j,l] <= det L[j,k] + det L[k,l] for the sorted triple (j,k,l).
struct TriangleConstraint {
  Triple triple;
  TriangleForm form = TriangleForm::pure_determinant;
  std::optional<std::pair<int, int>> measured_pair;
  std::optional<ComplexRational> measured_value;

  std::string describe() const;
};

std::vector<TriangleConstraint> triangle_set(const IndexSets& ix, const MeasurementSet& ms);

enum class Family { kljm, jkml };
enum class Sign { positive, negative };

// One determinant inequality: sum over lhs pairs <= sum over rhs pairs.
struct KalmansonAtom {
  Quad quad;
  Family family;
  Sign sign;

  using Pair = std::pair<int, int>;
  std::array<Pair, 2> lhs() const;
  std::array<Pair, 2> rhs() const;
  // Superscript digits, e.g. "2314" for family kljm of roles (1,2,3,4).
  std::string superscript() const;
  std::string label() const;

  friend bool operator==(const KalmansonAtom&, const KalmansonAtom&) = default;
};

struct CompositeInequality {
  std::vector<KalmansonAtom> atoms;

  std::string label() const;
  friend bool operator==(const CompositeInequality&, const CompositeInequality&) = default;
};

// (kljm>0 & jkml>0), (kljm>0 & jkml<0), (kljm<0 & jkml>0), (kljm<0 & jkml<0)
std::vector<CompositeInequality> composites(const Quad& q);

// Cartesian product; the first list varies slowest. No lists gives one empty
// composite. Throws on an empty inner list.
std::vector<CompositeInequality> combine(const std::vector<std::vector<CompositeInequality>>& sets);

bool eval_triangle(const TriangleConstraint& c, const MinorTable& minors);
bool eval_triangle(const TriangleConstraint& c, const CandidateNetwork& cand);
bool eval_atom(const KalmansonAtom& atom, const MinorTable& minors);
bool eval_composite(const CompositeInequality& comp, const MinorTable& minors);
bool eval_composite(const CompositeInequality& comp, const CandidateNetwork& cand);

// f1 = e_kl^T L^+ e_jm and f2 = e_jk^T L^+ e_ml over the quad's roles.
Rational boundary_f1(const Topology& t, const Quad& q);
Rational boundary_f2(const Topology& t, const Quad& q);
// Composite whose atom signs follow f1 and f2 (zero counts as positive).
CompositeInequality sign_true_composite(const Topology& t, const Quad& q);

}  // namespace netrecon::constraints
