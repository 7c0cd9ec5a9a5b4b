#include "netrecon/polysys.hpp"

#include <algorithm>
#include <functional>
#include <set>

namespace netrecon::polysys {
namespace {

std::uint64_t signature(const Monomial& m) {
  std::uint64_t s = 0;
  for (int v = 0; v < m.nvars(); ++v) {
    if (m[v] != 0) s |= std::uint64_t{1} << (v % 64);
  }
  return s;
}

struct Reducer {
  const Polynomial* poly;
  std::uint64_t sig;
};

std::vector<Reducer> make_reducers(std::span<const Polynomial> divisors) {
  std::vector<Reducer> out;
  for (const auto& d : divisors) {
    if (!d.is_zero()) out.push_back({&d, signature(d.leading().mono)});
  }
  return out;
}

const Reducer* find_reducer(const Monomial& m, const std::vector<Reducer>& reducers) {
  const std::uint64_t sig = signature(m);
  for (const auto& r : reducers) {
    if ((r.sig & ~sig) == 0 && r.poly->leading().mono.divides(m)) return &r;
  }
  return nullptr;
}

// a[from..] - c * shift * g[1..]; g's leading term is the one being cancelled.
std::vector<Term> cancel_lead(std::vector<Term>& a, std::size_t from, const Rational& c, const Monomial& shift,
                              const std::vector<Term>& g, const MonomialOrder& order) {
  std::vector<Term> out;
  out.reserve(a.size() - from + g.size());
  std::size_t i = from, j = 1;
  while (i < a.size() || j < g.size()) {
    if (j == g.size()) {
      out.push_back(std::move(a[i++]));
      continue;
    }
    Monomial gm = g[j].mono * shift;
    const int cmp = i == a.size() ? -1 : order.compare(a[i].mono, gm);
    if (cmp > 0) {
      out.push_back(std::move(a[i++]));
    } else if (cmp < 0) {
      out.push_back({std::move(gm), Rational(-c * g[j].coef)});
      ++j;
    } else {
      Rational sum = a[i].coef - c * g[j].coef;
      if (sum != 0) out.push_back({std::move(gm), std::move(sum)});
      ++i;
      ++j;
    }
  }
  return out;
}

// Reduces until the leading term (top) or every term (full) is irreducible.
// steps counts single-term cancellations.
Polynomial reduce(const Polynomial& p, const std::vector<Reducer>& reducers, bool full, std::size_t* steps = nullptr) {
  const MonomialOrder& order = p.ring()->order;
  std::vector<Term> cur = p.terms();
  std::vector<Term> rest;
  std::size_t start = 0;
  while (start < cur.size()) {
    const Reducer* r = find_reducer(cur[start].mono, reducers);
    if (r == nullptr) {
      if (!full) break;
      rest.push_back(std::move(cur[start++]));
      continue;
    }
    const Term& dl = r->poly->leading();
    const Rational c = cur[start].coef / dl.coef;
    const Monomial shift = cur[start].mono / dl.mono;
    cur = cancel_lead(cur, start + 1, c, shift, r->poly->terms(), order);
    if (steps != nullptr) ++*steps;
    start = 0;
  }
  for (std::size_t i = start; i < cur.size(); ++i) rest.push_back(std::move(cur[i]));
  return Polynomial::from_sorted_terms(p.ring(), std::move(rest));
}

struct PairKey {
  Monomial lcm;
  std::size_t i;
  std::size_t j;
};

}  // namespace

Division divide(const Polynomial& p, std::span<const Polynomial> divisors) {
  Division d{std::vector<Polynomial>(divisors.size(), Polynomial(p.ring())), Polynomial(p.ring())};
  Polynomial cur = p;
  std::vector<Term> rest;
  while (!cur.is_zero()) {
    const Term lead = cur.leading();
    std::size_t i = 0;
    while (i < divisors.size() && (divisors[i].is_zero() || !divisors[i].leading().mono.divides(lead.mono))) ++i;
    if (i < divisors.size()) {
      const Term& dl = divisors[i].leading();
      const Rational c = lead.coef / dl.coef;
      const Monomial shift = lead.mono / dl.mono;
      d.quotients[i] = d.quotients[i] + Polynomial::from_terms(p.ring(), {{shift, c}});
      cur = cur.minus_scaled(c, shift, divisors[i]);
    } else {
      rest.push_back(lead);
      cur = cur - Polynomial::from_terms(p.ring(), {lead});
    }
  }
  d.remainder = Polynomial::from_sorted_terms(p.ring(), std::move(rest));
  return d;
}

Polynomial normal_form(const Polynomial& p, std::span<const Polynomial> divisors) {
  return reduce(p, make_reducers(divisors), true);
}

Polynomial normal_form(const Polynomial& p, const GroebnerBasis& g) { return normal_form(p, g.generators); }

Polynomial s_polynomial(const Polynomial& f, const Polynomial& g) {
  const Term& lf = f.leading();
  const Term& lg = g.leading();
  const Monomial l = lcm(lf.mono, lg.mono);
  return f.times_term(l / lf.mono, Rational(1) / lf.coef) - g.times_term(l / lg.mono, Rational(1) / lg.coef);
}

GroebnerBasis buchberger(const std::vector<Polynomial>& input, GroebnerLimits limits) {
  if (input.empty()) throw std::invalid_argument("buchberger: empty generating set");
  const RingPtr ring = input.front().ring();
  const MonomialOrder& order = ring->order;

  std::vector<Polynomial> polys;  // every element ever added; pairs refer to indices
  std::vector<std::size_t> active;

  auto key_less = [&](const PairKey& a, const PairKey& b) {
    const int c = order.compare(a.lcm, b.lcm);
    if (c != 0) return c < 0;
    if (a.i != b.i) return a.i < b.i;
    return a.j < b.j;
  };
  std::set<PairKey, decltype(key_less)> pairs(key_less);

  auto lm = [&](std::size_t i) -> const Monomial& { return polys[i].leading().mono; };

  // Gebauer-Moeller update: product (coprime) and chain criteria.
  auto update = [&](std::size_t h) {
    const Monomial& lh = lm(h);
    struct Cand {
      std::size_t g;
      Monomial l;
      bool coprime;
    };
    std::vector<Cand> c;
    for (std::size_t g : active) c.push_back({g, lcm(lh, lm(g)), coprime(lh, lm(g))});
    std::vector<Cand> d;
    for (std::size_t x = 0; x < c.size(); ++x) {
      bool keep = c[x].coprime;
      if (!keep) {
        keep = true;
        for (std::size_t y = x + 1; y < c.size() && keep; ++y) {
          if (c[y].l.divides(c[x].l)) keep = false;
        }
        for (std::size_t y = 0; y < d.size() && keep; ++y) {
          if (d[y].l.divides(c[x].l)) keep = false;
        }
      }
      if (keep) d.push_back(c[x]);
    }
    for (auto it = pairs.begin(); it != pairs.end();) {
      if (lh.divides(it->lcm) && !(lcm(lm(it->i), lh) == it->lcm) && !(lcm(lh, lm(it->j)) == it->lcm)) {
        it = pairs.erase(it);
      } else {
        ++it;
      }
    }
    for (auto& x : d) {
      if (x.coprime) continue;
      pairs.insert(PairKey{std::move(x.l), x.g, h});
    }
    std::vector<std::size_t> kept;
    for (std::size_t g : active) {
      if (!lh.divides(lm(g))) kept.push_back(g);
    }
    kept.push_back(h);
    active = std::move(kept);
    if (active.size() > limits.max_basis) {
      throw GroebnerLimitExceeded("max_basis",
                                  "buchberger: basis size exceeds max_basis " + std::to_string(limits.max_basis));
    }
  };

  auto reducers = [&] {
    std::vector<Reducer> r;
    for (std::size_t g : active) r.push_back({&polys[g], signature(lm(g))});
    return r;
  };

  std::vector<Polynomial> start;
  for (const auto& p : input) {
    if (p.is_zero()) continue;
    if (p.is_constant()) return {ring, {Polynomial::constant(ring, 1)}};
    start.push_back(p.monic());
  }
  if (start.empty()) return {ring, {}};
  std::sort(start.begin(), start.end(), [&](const Polynomial& a, const Polynomial& b) {
    return order.compare(a.leading().mono, b.leading().mono) < 0;
  });
  for (const auto& p : start) {
    Polynomial h = reduce(p, reducers(), true);
    if (h.is_zero()) continue;
    if (h.is_constant()) return {ring, {Polynomial::constant(ring, 1)}};
    polys.push_back(h.monic());
    update(polys.size() - 1);
  }

  std::size_t steps = 0;
  while (!pairs.empty()) {
    const PairKey key = *pairs.begin();
    pairs.erase(pairs.begin());
    Polynomial h = reduce(s_polynomial(polys[key.i], polys[key.j]), reducers(), true, &steps);
    if (limits.max_reductions != 0 && steps > limits.max_reductions) {
      throw GroebnerLimitExceeded("max_reductions", "buchberger: more than " + std::to_string(limits.max_reductions) +
                                                        " reduction steps");
    }
    if (h.is_zero()) continue;
    if (h.is_constant()) return {ring, {Polynomial::constant(ring, 1)}};
    if (h.total_degree() > limits.max_degree) {
      throw GroebnerLimitExceeded("max_degree", "buchberger: intermediate degree " + std::to_string(h.total_degree()) +
                                                    " exceeds max_degree " + std::to_string(limits.max_degree));
    }
    polys.push_back(h.monic());
    update(polys.size() - 1);
  }

  // active is already minimal; interreduce tails
  std::vector<Polynomial> minimal;
  for (std::size_t g : active) minimal.push_back(polys[g]);
  std::vector<Polynomial> reduced;
  for (std::size_t i = 0; i < minimal.size(); ++i) {
    std::vector<Polynomial> others;
    for (std::size_t k = 0; k < minimal.size(); ++k) {
      if (k != i) others.push_back(minimal[k]);
    }
    reduced.push_back(normal_form(minimal[i], others).monic());
  }
  std::sort(reduced.begin(), reduced.end(), [&](const Polynomial& a, const Polynomial& b) {
    return order.compare(a.leading().mono, b.leading().mono) > 0;
  });
  return {ring, std::move(reduced)};
}

bool is_groebner_basis(std::span<const Polynomial> g) {
  for (std::size_t i = 0; i < g.size(); ++i) {
    for (std::size_t j = i + 1; j < g.size(); ++j) {
      if (!normal_form(s_polynomial(g[i], g[j]), g).is_zero()) return false;
    }
  }
  return true;
}

bool is_reduced(std::span<const Polynomial> g) {
  for (std::size_t i = 0; i < g.size(); ++i) {
    if (g[i].is_zero() || g[i].leading().coef != 1) return false;
    for (std::size_t k = 0; k < g.size(); ++k) {
      if (k == i) continue;
      const Monomial& lk = g[k].leading().mono;
      for (const auto& t : g[i].terms()) {
        if (lk.divides(t.mono)) return false;
      }
    }
  }
  return true;
}

std::string GroebnerBasis::dump() const {
  std::string s;
  for (const auto& p : generators) s += p.to_string() + "\n";
  return s;
}

StandardMonomials standard_monomials(const GroebnerBasis& g, std::size_t cap) {
  StandardMonomials out;
  if (g.is_inconsistent()) return out;
  const int nv = g.ring->nvars();
  std::vector<Monomial> leads;
  for (const auto& p : g.generators) leads.push_back(p.leading().mono);

  std::vector<unsigned> bound(nv, 0);
  for (int v = 0; v < nv; ++v) {
    for (const auto& m : leads) {
      if (m[v] > 0 && m.degree() == m[v] && (bound[v] == 0 || m[v] < bound[v])) bound[v] = m[v];
    }
    if (bound[v] == 0) {
      out.finite = false;
      return out;
    }
  }

  std::vector<std::uint16_t> e(nv, 0);
  std::function<void(int)> walk = [&](int v) {
    if (v == nv) {
      Monomial m(e);
      for (const auto& l : leads) {
        if (l.divides(m)) return;
      }
      if (out.monomials.size() >= cap) {
        throw std::length_error("standard monomial count exceeds cap " + std::to_string(cap));
      }
      out.monomials.push_back(std::move(m));
      return;
    }
    for (unsigned k = 0; k < bound[v]; ++k) {
      e[v] = static_cast<std::uint16_t>(k);
      // prune: any multiple of a divisible monomial is divisible too
      Monomial partial(e);
      bool dead = false;
      for (const auto& l : leads) {
        if (l.divides(partial)) {
          dead = true;
          break;
        }
      }
      if (dead) break;
      walk(v + 1);
    }
    e[v] = 0;
  };
  walk(0);
  std::sort(out.monomials.begin(), out.monomials.end(),
            [&](const Monomial& a, const Monomial& b) { return g.ring->order.compare(a, b) < 0; });
  return out;
}

}  // namespace netrecon::polysys
