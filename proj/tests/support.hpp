#pragma once

#include "netrecon/circuit.hpp"
#include "netrecon/graphcore.hpp"
#include "netrecon/rational.hpp"

#include <cstdint>
#include <random>
#include <utility>
#include <vector>

namespace netrecon::fixtures {

inline Rational q(long p, long d = 1) {
  Rational r(p, d);
  r.canonicalize();
  return r;
}

inline graphcore::Topology topo(int n, std::vector<std::pair<int, int>> edges) {
  return graphcore::Topology::from_edges(n, edges);
}

inline graphcore::Topology path3() { return topo(3, {{1, 2}, {2, 3}}); }

// Edges 12 15 23 25 34 35 45, beta = 2, RL.
inline circuit::CandidateNetwork scenario_network() {
  return {topo(5, {{1, 2}, {1, 5}, {2, 3}, {2, 5}, {3, 4}, {3, 5}, {4, 5}}), circuit::NetworkClass::RL, q(2)};
}

inline ComplexRational rl(const Rational& x) { return {x, x}; }

inline circuit::MeasurementSet scenario1() {
  circuit::MeasurementSet ms;
  ms.n = 5;
  ms.available = {1, 4, 5};
  ms.items = {{1, 4, rl(q(16, 7))}, {1, 5, rl(q(26, 21))}, {4, 5, rl(q(26, 21))}};
  return ms;
}

inline circuit::MeasurementSet scenario2() {
  circuit::MeasurementSet ms;
  ms.n = 5;
  ms.available = {1, 5};
  ms.items = {{1, 5, rl(q(26, 21))}};
  return ms;
}

// Exact measurements of every available pair.
inline circuit::MeasurementSet measure(const circuit::CandidateNetwork& net, const std::vector<int>& available) {
  circuit::MeasurementSet ms;
  ms.n = net.topology().node_count();
  ms.available = available;
  for (std::size_t x = 0; x < available.size(); ++x) {
    for (std::size_t y = x + 1; y < available.size(); ++y) {
      ms.items.push_back({available[x], available[y], circuit::thevenin_direct(net, available[x], available[y])});
    }
  }
  return ms;
}

inline graphcore::Topology random_connected(int n, std::mt19937_64& rng) {
  const int m = graphcore::edge_count(n);
  for (;;) {
    const std::uint64_t bits = rng() & ((std::uint64_t{1} << m) - 1);
    graphcore::Topology t(n, bits);
    if (graphcore::is_connected(t)) return t;
  }
}

// Nonempty proper subset of 1..n with at least two members; sorted.
inline std::vector<int> random_available(int n, std::mt19937_64& rng, bool allow_full) {
  for (;;) {
    std::vector<int> a;
    for (int v = 1; v <= n; ++v) {
      if (rng() % 3 != 0) a.push_back(v);
    }
    if (a.size() >= 2 && (allow_full || static_cast<int>(a.size()) < n)) return a;
  }
}

}  // namespace netrecon::fixtures
