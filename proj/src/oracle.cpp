#include "netrecon/oracle.hpp"

#include <algorithm>
#include <functional>
#include <random>
#include <set>
#include <stack>
#include <stdexcept>

namespace netrecon::oracle {
namespace {

using constraints::KalmansonAtom;

Rational pair_sum(const OracleCandidate& c, const std::array<KalmansonAtom::Pair, 2>& pairs) {
  return c.r(pairs[0].first, pairs[0].second) + c.r(pairs[1].first, pairs[1].second);
}

bool triangle_direct(const constraints::TriangleConstraint& t, const OracleCandidate& c) {
  const auto [j, k, l] = t.triple;
  return c.r(j, l) <= c.r(j, k) + c.r(k, l);
}

std::set<std::string> keys_of(const std::vector<CandidateNetwork>& v) {
  std::set<std::string> s;
  for (const auto& c : v) s.insert(network_key(c));
  return s;
}

void compare(const std::string& scope, const std::set<std::string>& oracle_side, const std::set<std::string>& report_side,
             DiffReport& out) {
  DiffEntry e{scope, {}, {}};
  std::set_difference(oracle_side.begin(), oracle_side.end(), report_side.begin(), report_side.end(),
                      std::back_inserter(e.missing));
  std::set_difference(report_side.begin(), report_side.end(), oracle_side.begin(), oracle_side.end(),
                      std::back_inserter(e.extra));
  if (!e.missing.empty() || !e.extra.empty()) out.entries.push_back(std::move(e));
}

}  // namespace

const Rational& OracleCandidate::r(int a, int b) const {
  static const Rational zero(0);
  if (a == b) return zero;
  return resistance[graphcore::edge_index(network.topology().node_count(), a, b)];
}

std::vector<CandidateNetwork> BruteForceResult::networks() const {
  std::vector<CandidateNetwork> out;
  for (const auto& c : candidates) out.push_back(c.network);
  return out;
}

BruteForceResult brute_force(const MeasurementSet& ms, const solver::SolverConfig& config) {
  ms.validate();
  const int n = ms.n;
  circuit::NetworkClass cls = config.cls.value_or(circuit::NetworkClass::R);
  if (!ms.items.empty()) cls = circuit::infer_class(ms);
  const auto index = constraints::index_sets(n, ms.available);
  const auto triangles = constraints::triangle_set(index, ms);
  const auto range = graphcore::enumerate_topologies(n, config.edge_mask, config.cap);

  BruteForceResult out;
  for (std::uint64_t i = 0; i < range.size(); ++i) {
    const Topology t = range.at(i);
    if (!graphcore::is_connected(t)) continue;
    if (config.planar_filter && !is_circular_planar(t)) continue;

    // Impedance is linear in beta: solve at beta = 1 and scale.
    const CandidateNetwork unit(t, cls, 1);
    std::optional<Rational> beta = config.beta_known;
    bool ok = true;
    for (const auto& m : ms.items) {
      const ComplexRational z1 = circuit::thevenin_direct(unit, m.a, m.b);
      const Rational b = m.z.re / z1.re;
      if (!(b * z1 == m.z) || (beta && *beta != b)) {
        ok = false;
        break;
      }
      beta = b;
    }
    if (!ok || !beta || *beta <= 0) continue;

    const CandidateNetwork resistive(t, circuit::NetworkClass::R, 1);
    OracleCandidate cand{CandidateNetwork(t, cls, *beta), {}};
    cand.resistance.reserve(graphcore::edge_count(n));
    for (int a = 1; a <= n; ++a) {
      for (int b = a + 1; b <= n; ++b) cand.resistance.push_back(circuit::thevenin_direct(resistive, a, b).re);
    }
    const bool triangles_ok = std::all_of(triangles.begin(), triangles.end(),
                                          [&](const auto& tc) { return triangle_direct(tc, cand); });
    if (triangles_ok) out.candidates.push_back(std::move(cand));
  }
  return out;
}

bool eval_composite_direct(const CompositeInequality& comp, const OracleCandidate& cand) {
  return std::all_of(comp.atoms.begin(), comp.atoms.end(), [&](const KalmansonAtom& a) {
    return pair_sum(cand, a.lhs()) <= pair_sum(cand, a.rhs());
  });
}

Topology planar_template(int n) {
  if (n < 3 || n > graphcore::kMaxNodes) throw std::invalid_argument("planar_template: n out of range");
  std::vector<std::pair<int, int>> edges;
  for (int i = 1; i < n; ++i) edges.push_back({i, i + 1});
  edges.push_back({1, n});
  for (int j = 3; j < n; ++j) edges.push_back({1, j});
  return Topology::from_edges(n, edges);
}

Topology random_circular_planar(int n, std::uint64_t seed) {
  const Topology tmpl = planar_template(n);
  std::mt19937_64 rng(seed);
  std::vector<std::pair<int, int>> chosen;
  for (const auto& e : tmpl.edges()) {
    if (rng() & 1u) chosen.push_back(e);
  }
  Topology t = Topology::from_edges(n, chosen);
  for (int i = 1; i < n && !graphcore::is_connected(t); ++i) {
    if (!t.has_edge(i, i + 1)) t = t.with_edge_flipped(i, i + 1);
  }
  return t;
}

bool is_circular_planar(const Topology& t) {
  // Chords must nest like brackets: sort by left end, longer first, and keep
  // a stack of open intervals.
  auto edges = t.edges();
  std::sort(edges.begin(), edges.end(), [](const auto& x, const auto& y) {
    if (x.first != y.first) return x.first < y.first;
    return x.second > y.second;
  });
  std::stack<std::pair<int, int>> open;
  for (const auto& [a, b] : edges) {
    while (!open.empty() && open.top().second <= a) open.pop();
    if (!open.empty() && b > open.top().second) return false;
    open.push({a, b});
  }
  return true;
}

bool has_disjoint_paths(const Topology& t, int s1, int t1, int s2, int t2) {
  const int n = t.node_count();
  std::vector<bool> used(n + 1, false);

  auto reachable_avoiding = [&](int from, int to) {
    if (used[from] || used[to]) return false;
    std::vector<bool> seen(n + 1, false);
    std::vector<int> todo{from};
    seen[from] = true;
    while (!todo.empty()) {
      const int v = todo.back();
      todo.pop_back();
      if (v == to) return true;
      for (int w = 1; w <= n; ++w) {
        if (!seen[w] && !used[w] && t.has_edge(v, w)) {
          seen[w] = true;
          todo.push_back(w);
        }
      }
    }
    return false;
  };

  std::function<bool(int)> walk = [&](int v) -> bool {
    used[v] = true;
    if (v == t1) {
      const bool found = reachable_avoiding(s2, t2);
      used[v] = false;
      return found;
    }
    for (int w = 1; w <= n; ++w) {
      if (!used[w] && t.has_edge(v, w) && walk(w)) {
        used[v] = false;
        return true;
      }
    }
    used[v] = false;
    return false;
  };
  return walk(s1);
}

std::string network_key(const CandidateNetwork& c) {
  return c.topology().bit_string() + ":" + to_string(c.beta());
}

std::string DiffReport::describe() const {
  std::string s;
  for (const auto& e : entries) {
    s += e.scope + "\n";
    for (const auto& m : e.missing) s += "  missing " + m + "\n";
    for (const auto& x : e.extra) s += "  extra   " + x + "\n";
  }
  return s;
}

DiffReport cross_check(const solver::ReconstructionReport& report, const BruteForceResult& brute,
                       std::uint64_t max_combinations) {
  DiffReport out;
  compare("P", keys_of(brute.networks()), keys_of(report.feasible_candidates), out);

  auto feasible = [&](const CompositeInequality& comp) {
    return std::any_of(brute.candidates.begin(), brute.candidates.end(),
                       [&](const OracleCandidate& c) { return eval_composite_direct(comp, c); });
  };
  std::vector<std::vector<CompositeInequality>> k_hat;
  bool any_empty = false;
  for (const auto& q : report.index.quads) {
    std::vector<CompositeInequality> kept;
    for (const auto& comp : constraints::composites(q)) {
      if (feasible(comp)) kept.push_back(comp);
    }
    any_empty = any_empty || kept.empty();
    k_hat.push_back(std::move(kept));
  }
  std::set<std::string> oracle_c_hat;
  if (!any_empty) {
    const auto total = solver::product_size(k_hat);
    if (!total || *total > max_combinations) {
      throw std::length_error("cross_check: composite product exceeds " + std::to_string(max_combinations));
    }
    // Walk the product one composite at a time, first list slowest.
    std::vector<std::size_t> digit(k_hat.size(), 0);
    for (std::uint64_t c = 0; c < *total; ++c) {
      CompositeInequality comp;
      for (std::size_t i = 0; i < k_hat.size(); ++i) {
        const auto& atoms = k_hat[i][digit[i]].atoms;
        comp.atoms.insert(comp.atoms.end(), atoms.begin(), atoms.end());
      }
      if (feasible(comp)) oracle_c_hat.insert(comp.label());
      for (std::size_t i = k_hat.size(); i-- > 0;) {
        if (++digit[i] < k_hat[i].size()) break;
        digit[i] = 0;
      }
    }
  }
  std::set<std::string> report_c_hat;
  for (const auto& comp : report.c_hat) report_c_hat.insert(comp.label());
  compare("C_hat", oracle_c_hat, report_c_hat, out);

  for (const auto& s : report.solutions) {
    const CompositeInequality& comp = report.c_hat.at(s.composite_id);
    std::set<std::string> expected;
    for (const auto& c : brute.candidates) {
      if (eval_composite_direct(comp, c)) expected.insert(network_key(c.network));
    }
    compare("N[" + std::to_string(s.composite_id) + "] " + comp.label(), expected, keys_of(s.networks), out);
  }
  return out;
}

}  // namespace netrecon::oracle
