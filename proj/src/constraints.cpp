#include "netrecon/constraints.hpp"

#include <algorithm>
#include <stdexcept>

namespace netrecon::constraints {
namespace {

std::string node_seq(std::span<const int> nodes) {
  const bool wide = std::any_of(nodes.begin(), nodes.end(), [](int v) { return v >= 10; });
  std::string s;
  for (std::size_t i = 0; i < nodes.size(); ++i) {
    if (wide && i > 0) s += ",";
    s += std::to_string(nodes[i]);
  }
  return s;
}

std::string det_term(int a, int b) { return "det L[" + std::to_string(a) + "," + std::to_string(b) + "]"; }

std::int64_t pair_sum(const MinorTable& m, const std::array<KalmansonAtom::Pair, 2>& pairs) {
  return m.pair_minor(pairs[0].first, pairs[0].second) + m.pair_minor(pairs[1].first, pairs[1].second);
}

MinorTable connected_minors(const CandidateNetwork& cand) {
  MinorTable m = MinorTable::compute(cand.topology());
  if (m.tree_count() == 0) throw std::domain_error("constraint evaluation on a disconnected candidate");
  return m;
}

}  // namespace

Quad make_quad(int n, std::array<int, 4> nodes) {
  std::sort(nodes.begin(), nodes.end());
  if (nodes[0] < 1 || nodes[3] > n) throw std::out_of_range("quad node outside 1..n");
  for (int i = 0; i < 3; ++i) {
    if (nodes[i] == nodes[i + 1]) throw std::invalid_argument("quad nodes must be distinct");
  }
  int start = 0;
  int best_gap = -1;
  for (int i = 0; i < 4; ++i) {
    const int next = (i + 1) % 4;
    const int gap = (nodes[next] - nodes[i] + n) % n;
    // rotation would begin at 'next'; keep the smallest start node on ties
    if (gap > best_gap || (gap == best_gap && nodes[next] < nodes[start])) {
      best_gap = gap;
      start = next;
    }
  }
  Quad q{nodes, {}};
  for (int i = 0; i < 4; ++i) q.roles[i] = nodes[(start + i) % 4];
  return q;
}

IndexSets index_sets(int n, std::span<const int> available) {
  std::vector<bool> avail(n + 1, false);
  for (int v : available) {
    if (v < 1 || v > n) throw std::out_of_range("available node outside 1..n");
    avail[v] = true;
  }
  IndexSets ix;
  for (int a = 1; a <= n; ++a) {
    for (int b = a + 1; b <= n; ++b) {
      for (int c = b + 1; c <= n; ++c) {
        if (!avail[a] || !avail[b] || !avail[c]) ix.triples.push_back({a, b, c});
        for (int d = c + 1; d <= n; ++d) {
          if (!avail[a] || !avail[b] || !avail[c] || !avail[d]) ix.quads.push_back(make_quad(n, {a, b, c, d}));
        }
      }
    }
  }
  return ix;
}

std::string TriangleConstraint::describe() const {
  const auto [j, k, l] = triple;
  if (form == TriangleForm::pure_determinant || !measured_pair) {
    return det_term(j, l) + " <= " + det_term(j, k) + " + " + det_term(k, l);
  }
  const auto [a, b] = *measured_pair;
  const std::string anchored = "(" + to_string(measured_value ? measured_value->re : Rational(0)) + ")*T";
  auto beta_term = [&](int x, int y) {
    return (std::minmax(x, y) == std::minmax(a, b)) ? anchored : "beta*" + det_term(x, y);
  };
  return beta_term(j, l) + " - (" + beta_term(j, k) + " + " + beta_term(k, l) + ") <= 0";
}

std::vector<TriangleConstraint> triangle_set(const IndexSets& ix, const MeasurementSet& ms) {
  std::vector<TriangleConstraint> out;
  out.reserve(ix.triples.size());
  for (const auto& tri : ix.triples) {
    TriangleConstraint c;
    c.triple = tri;
    std::vector<int> avail_nodes;
    for (int v : tri) {
      if (ms.is_available(v)) avail_nodes.push_back(v);
    }
    if (avail_nodes.size() == 2) {
      const auto key = std::minmax(avail_nodes[0], avail_nodes[1]);
      for (const auto& m : ms.items) {
        if (std::minmax(m.a, m.b) == key) {
          c.form = TriangleForm::measurement_anchored;
          c.measured_pair = std::pair<int, int>(key);
          c.measured_value = m.z;
        }
      }
    }
    out.push_back(std::move(c));
  }
  return out;
}

std::array<KalmansonAtom::Pair, 2> KalmansonAtom::lhs() const {
  const auto [j, k, l, m] = quad.roles;
  const std::array<Pair, 2> diag{{{j, l}, {k, m}}};
  const std::array<Pair, 2> side = family == Family::kljm ? std::array<Pair, 2>{{{j, k}, {l, m}}}
                                                          : std::array<Pair, 2>{{{k, l}, {j, m}}};
  return sign == Sign::positive ? side : diag;
}

std::array<KalmansonAtom::Pair, 2> KalmansonAtom::rhs() const {
  const auto [j, k, l, m] = quad.roles;
  const std::array<Pair, 2> diag{{{j, l}, {k, m}}};
  const std::array<Pair, 2> side = family == Family::kljm ? std::array<Pair, 2>{{{j, k}, {l, m}}}
                                                          : std::array<Pair, 2>{{{k, l}, {j, m}}};
  return sign == Sign::positive ? diag : side;
}

std::string KalmansonAtom::superscript() const {
  const auto [j, k, l, m] = quad.roles;
  const std::array<int, 4> seq = family == Family::kljm ? std::array<int, 4>{k, l, j, m} : std::array<int, 4>{j, k, m, l};
  return node_seq(seq);
}

std::string KalmansonAtom::label() const {
  return "K^{" + superscript() + "}_{" + (sign == Sign::positive ? ">0" : "<0") + "}";
}

std::string CompositeInequality::label() const {
  std::string s;
  for (std::size_t i = 0; i < atoms.size(); ++i) {
    if (i > 0) s += " & ";
    s += atoms[i].label();
  }
  return s;
}

std::vector<CompositeInequality> composites(const Quad& q) {
  std::vector<CompositeInequality> out;
  for (Sign a : {Sign::positive, Sign::negative}) {
    for (Sign b : {Sign::positive, Sign::negative}) {
      out.push_back({{KalmansonAtom{q, Family::kljm, a}, KalmansonAtom{q, Family::jkml, b}}});
    }
  }
  return out;
}

std::vector<CompositeInequality> combine(const std::vector<std::vector<CompositeInequality>>& sets) {
  for (std::size_t i = 0; i < sets.size(); ++i) {
    if (sets[i].empty()) throw std::invalid_argument("combine: list " + std::to_string(i + 1) + " is empty");
  }
  std::vector<CompositeInequality> out;
  std::size_t total = 1;
  for (const auto& s : sets) total *= s.size();
  out.reserve(total);
  std::vector<std::size_t> digit(sets.size(), 0);
  for (std::size_t count = 0; count < total; ++count) {
    CompositeInequality c;
    for (std::size_t i = 0; i < sets.size(); ++i) {
      const auto& atoms = sets[i][digit[i]].atoms;
      c.atoms.insert(c.atoms.end(), atoms.begin(), atoms.end());
    }
    out.push_back(std::move(c));
    for (std::size_t i = sets.size(); i-- > 0;) {
      if (++digit[i] < sets[i].size()) break;
      digit[i] = 0;
    }
  }
  return out;
}

bool eval_triangle(const TriangleConstraint& c, const MinorTable& m) {
  const auto [j, k, l] = c.triple;
  return m.pair_minor(j, l) <= m.pair_minor(j, k) + m.pair_minor(k, l);
}

bool eval_triangle(const TriangleConstraint& c, const CandidateNetwork& cand) {
  return eval_triangle(c, connected_minors(cand));
}

bool eval_atom(const KalmansonAtom& atom, const MinorTable& m) {
  return pair_sum(m, atom.lhs()) <= pair_sum(m, atom.rhs());
}

bool eval_composite(const CompositeInequality& comp, const MinorTable& m) {
  return std::all_of(comp.atoms.begin(), comp.atoms.end(), [&](const KalmansonAtom& a) { return eval_atom(a, m); });
}

bool eval_composite(const CompositeInequality& comp, const CandidateNetwork& cand) {
  return eval_composite(comp, connected_minors(cand));
}

Rational boundary_f1(const Topology& t, const Quad& q) {
  const auto [j, k, l, m] = q.roles;
  return circuit::boundary_potential(t, k, l, j, m);
}

Rational boundary_f2(const Topology& t, const Quad& q) {
  const auto [j, k, l, m] = q.roles;
  return circuit::boundary_potential(t, j, k, m, l);
}

CompositeInequality sign_true_composite(const Topology& t, const Quad& q) {
  const Sign a = boundary_f1(t, q) >= 0 ? Sign::positive : Sign::negative;
  const Sign b = boundary_f2(t, q) >= 0 ? Sign::positive : Sign::negative;
  return {{KalmansonAtom{q, Family::kljm, a}, KalmansonAtom{q, Family::jkml, b}}};
}

}  // namespace netrecon::constraints
