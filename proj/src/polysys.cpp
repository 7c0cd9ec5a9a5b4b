#include "netrecon/polysys.hpp"

#include "netrecon/graphcore.hpp"

#include <algorithm>
#include <functional>
#include <map>

namespace netrecon::polysys {
namespace {

using Univariate = std::vector<Rational>;  // ascending coefficients

void trim(Univariate& p) {
  while (!p.empty() && p.back() == 0) p.pop_back();
}

Univariate poly_mod(Univariate a, const Univariate& b) {
  trim(a);
  while (a.size() >= b.size()) {
    const Rational c = a.back() / b.back();
    const std::size_t shift = a.size() - b.size();
    for (std::size_t i = 0; i < b.size(); ++i) a[shift + i] -= c * b[i];
    trim(a);
  }
  return a;
}

Univariate poly_div(Univariate a, const Univariate& b) {
  trim(a);
  if (a.size() < b.size()) return {};
  Univariate q(a.size() - b.size() + 1);
  while (a.size() >= b.size()) {
    const Rational c = a.back() / b.back();
    const std::size_t shift = a.size() - b.size();
    q[shift] = c;
    for (std::size_t i = 0; i < b.size(); ++i) a[shift + i] -= c * b[i];
    trim(a);
  }
  return q;
}

Univariate make_monic(Univariate p) {
  trim(p);
  const Rational lead = p.back();
  for (auto& c : p) c /= lead;
  return p;
}

Univariate poly_gcd(Univariate a, Univariate b) {
  trim(a);
  trim(b);
  while (!b.empty()) {
    Univariate r = poly_mod(a, b);
    a = std::move(b);
    b = std::move(r);
  }
  return a.empty() ? a : make_monic(a);
}

Univariate derivative(const Univariate& p) {
  Univariate d;
  for (std::size_t i = 1; i < p.size(); ++i) d.push_back(Rational(static_cast<long>(i)) * p[i]);
  trim(d);
  return d;
}

}  // namespace

Polynomial symbolic_laplacian_minor(const RingPtr& ring, int n, std::span<const int> drop) {
  std::vector<bool> dropped(n + 1, false);
  for (int d : drop) {
    if (d < 1 || d > n) throw std::out_of_range("symbolic_laplacian_minor: node out of range");
    dropped[d] = true;
  }
  std::vector<int> kept;
  for (int v = 1; v <= n; ++v) {
    if (!dropped[v]) kept.push_back(v);
  }
  const int s = static_cast<int>(kept.size());
  if (s == 0) return Polynomial::constant(ring, 1);

  auto var = [&](int a, int b) {
    if (a > b) std::swap(a, b);
    return Polynomial::variable(ring, graphcore::edge_index(n, a, b));
  };
  auto entry = [&](int r, int c) {
    const int a = kept[r], b = kept[c];
    if (a != b) return -var(a, b);
    Polynomial sum(ring);
    for (int o = 1; o <= n; ++o) {
      if (o != a) sum = sum + var(a, o);
    }
    return sum;
  };

  // Laplace expansion along rows, memoised on the set of used columns.
  std::map<unsigned, Polynomial> memo;
  std::function<Polynomial(unsigned)> expand = [&](unsigned used) -> Polynomial {
    const int row = __builtin_popcount(used);
    if (row == s) return Polynomial::constant(ring, 1);
    if (auto it = memo.find(used); it != memo.end()) return it->second;
    Polynomial acc(ring);
    int sign = 1;
    for (int c = 0; c < s; ++c) {
      if (used & (1u << c)) continue;
      Polynomial e = entry(row, c);
      if (!e.is_zero()) {
        Polynomial term = e * expand(used | (1u << c));
        acc = sign > 0 ? acc + term : acc - term;
      }
      sign = -sign;
    }
    memo.emplace(used, acc);
    return acc;
  };
  return expand(0);
}

std::vector<Polynomial> build_system(const circuit::MeasurementSet& ms, const RingPtr& ring) {
  ms.validate();
  const int n = ms.n;
  if (ring->nvars() != graphcore::edge_count(n) + 1) {
    throw std::invalid_argument("build_system: ring does not match node count " + std::to_string(n));
  }
  const int beta = beta_index(*ring);
  std::vector<Polynomial> out;
  std::size_t number = 0;
  for (const auto& m : ms.items) {
    ++number;
    if (m.z.im != 0 && abs(m.z.re) != abs(m.z.im)) {
      throw std::invalid_argument("measurement " + std::to_string(number) + " (" + std::to_string(m.a) + "," +
                                  std::to_string(m.b) + "): |Re| must equal |Im| or Im must be 0");
    }
    const int kk[] = {m.b};
    const int jk[] = {m.a, m.b};
    Polynomial trees = symbolic_laplacian_minor(ring, n, kk);
    Polynomial pair = symbolic_laplacian_minor(ring, n, jk);
    out.push_back(trees.scaled(m.z.re) - Polynomial::variable(ring, beta) * pair);
  }
  return out;
}

std::vector<Polynomial> build_system(const circuit::MeasurementSet& ms, int n) {
  if (ms.n != n) throw std::invalid_argument("build_system: measurement set has n = " + std::to_string(ms.n));
  return build_system(ms, edge_ring(n));
}

std::vector<Polynomial> extend(std::vector<Polynomial> f, const RingPtr& ring) {
  const int beta = beta_index(*ring);
  for (int v = 0; v < ring->nvars(); ++v) {
    if (v == beta) continue;
    Polynomial x = Polynomial::variable(ring, v);
    f.push_back(x * x - x);
  }
  return f;
}

BetaFiber beta_fiber(std::span<const Polynomial> f, std::span<const int> w) {
  BetaFiber fiber;
  if (f.empty()) {
    fiber.everything = true;
    return fiber;
  }
  const RingPtr& ring = f.front().ring();
  const int beta = beta_index(*ring);
  if (static_cast<int>(w.size()) != ring->nvars() - 1) {
    throw std::invalid_argument("beta_fiber: assignment length mismatch");
  }
  Univariate g;
  for (const auto& p : f) {
    Polynomial q = p;
    int slot = 0;
    for (int v = 0; v < ring->nvars(); ++v) {
      if (v == beta) continue;
      q = q.substitute(v, Rational(w[slot++]));
    }
    if (q.is_zero()) continue;
    Univariate u;
    for (const auto& t : q.terms()) {
      const unsigned d = t.mono[beta];
      if (u.size() <= d) u.resize(d + 1);
      u[d] += t.coef;
    }
    trim(u);
    g = g.empty() ? make_monic(u) : poly_gcd(g, u);
    if (g.size() == 1) break;
  }
  if (g.empty()) {
    fiber.everything = true;
    return fiber;
  }
  const Univariate d = derivative(g);
  if (!d.empty()) g = make_monic(poly_div(g, poly_gcd(g, d)));
  fiber.poly = std::move(g);
  return fiber;
}

}  // namespace netrecon::polysys
