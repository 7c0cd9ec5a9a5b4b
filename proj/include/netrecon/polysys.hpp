#pragma once

#include "netrecon/circuit.hpp"
#include "netrecon/rational.hpp"

#include <cstdint>
#include <memory>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace netrecon::polysys {

class Monomial {
 public:
  Monomial() = default;
  explicit Monomial(std::vector<std::uint16_t> exponents);
  static Monomial one(int nvars) { return Monomial(std::vector<std::uint16_t>(nvars, 0)); }
  static Monomial variable(int nvars, int var, unsigned exponent = 1);

  int nvars() const { return static_cast<int>(e_.size()); }
  unsigned degree() const { return deg_; }
  std::uint16_t operator[](int var) const { return e_[var]; }
  const std::vector<std::uint16_t>& exponents() const { return e_; }
  bool is_one() const { return deg_ == 0; }

  bool divides(const Monomial& other) const;
  Monomial operator*(const Monomial& other) const;
  // Exact quotient; precondition divisor.divides(*this).
  Monomial operator/(const Monomial& divisor) const;

  friend bool operator==(const Monomial& a, const Monomial& b) { return a.e_ == b.e_; }

 private:
  std::vector<std::uint16_t> e_;
  unsigned deg_ = 0;
};

Monomial lcm(const Monomial& a, const Monomial& b);
bool coprime(const Monomial& a, const Monomial& b);

enum class OrderKind { grevlex, lex };

std::string_view order_name(OrderKind kind);
OrderKind parse_order(std::string_view name);

class MonomialOrder {
 public:
  // precedence[0] is the greatest variable.
  MonomialOrder(OrderKind kind, std::vector<int> precedence);
  static MonomialOrder natural(OrderKind kind, int nvars);

  OrderKind kind() const { return kind_; }
  const std::vector<int>& precedence() const { return precedence_; }
  // Negative, zero or positive as a <, ==, > b.
  int compare(const Monomial& a, const Monomial& b) const;
  bool less(const Monomial& a, const Monomial& b) const { return compare(a, b) < 0; }

 private:
  OrderKind kind_;
  std::vector<int> precedence_;
};

struct Ring {
  std::vector<std::string> names;
  MonomialOrder order;

  int nvars() const { return static_cast<int>(names.size()); }
  int index_of(std::string_view name) const;  // -1 when absent
};

using RingPtr = std::shared_ptr<const Ring>;

RingPtr make_ring(std::vector<std::string> names, MonomialOrder order);
// Variables l12..l(n-1)n in edge-index order, then beta. Precedence puts beta
// first, then the edge variables in index order.
RingPtr edge_ring(int n, OrderKind kind = OrderKind::grevlex);
int beta_index(const Ring& ring);

struct Term {
  Monomial mono;
  Rational coef;
};

class Polynomial {
 public:
  explicit Polynomial(RingPtr ring) : ring_(std::move(ring)) {}
  static Polynomial constant(RingPtr ring, const Rational& c);
  static Polynomial variable(RingPtr ring, int var);
  // Combines like terms, drops zeros, sorts descending.
  static Polynomial from_terms(RingPtr ring, std::vector<Term> terms);
  // Terms already strictly descending with nonzero coefficients.
  static Polynomial from_sorted_terms(RingPtr ring, std::vector<Term> terms);

  const RingPtr& ring() const { return ring_; }
  const std::vector<Term>& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  bool is_constant() const { return terms_.empty() || (terms_.size() == 1 && terms_[0].mono.is_one()); }
  const Term& leading() const;
  unsigned total_degree() const;

  Polynomial operator+(const Polynomial& o) const;
  Polynomial operator-(const Polynomial& o) const;
  Polynomial operator*(const Polynomial& o) const;
  Polynomial operator-() const;
  Polynomial scaled(const Rational& c) const;
  Polynomial times_term(const Monomial& m, const Rational& c) const;
  // this - c * m * g, merged in one pass.
  Polynomial minus_scaled(const Rational& c, const Monomial& m, const Polynomial& g) const;
  Polynomial monic() const;

  Rational evaluate(std::span<const Rational> point) const;
  Polynomial substitute(int var, const Rational& value) const;
  // Same terms re-sorted for another ring with identical variables.
  Polynomial in_ring(RingPtr other) const;

  // "3/2*l12^2*beta - l13 + 1"; "0" for the zero polynomial.
  std::string to_string() const;

  friend bool operator==(const Polynomial& a, const Polynomial& b);

 private:
  RingPtr ring_;
  std::vector<Term> terms_;  // descending under ring_->order
};

// Grammar: sums of products of numbers, variables, parenthesised
// expressions and integer powers; '/' only by a nonzero constant.
Polynomial parse_polynomial(const RingPtr& ring, std::string_view text);

struct GroebnerLimits {
  std::size_t max_basis = 5000;
  unsigned max_degree = 12;
  // Single-term reduction steps inside the pair loop; 0 means unlimited.
  std::size_t max_reductions = 0;
};

class GroebnerLimitExceeded : public std::runtime_error {
 public:
  GroebnerLimitExceeded(std::string limit, const std::string& what)
      : std::runtime_error(what), limit_(std::move(limit)) {}
  const std::string& limit() const { return limit_; }

 private:
  std::string limit_;
};

struct GroebnerBasis {
  RingPtr ring;
  std::vector<Polynomial> generators;  // reduced, monic, descending by leading monomial

  bool is_inconsistent() const { return generators.size() == 1 && generators[0].is_constant(); }
  std::string dump() const;
};

struct Division {
  std::vector<Polynomial> quotients;
  Polynomial remainder;
};

Division divide(const Polynomial& p, std::span<const Polynomial> divisors);
Polynomial normal_form(const Polynomial& p, std::span<const Polynomial> divisors);
Polynomial normal_form(const Polynomial& p, const GroebnerBasis& g);
Polynomial s_polynomial(const Polynomial& f, const Polynomial& g);

GroebnerBasis buchberger(const std::vector<Polynomial>& f, GroebnerLimits limits = {});
// Every S-polynomial of generator pairs reduces to zero.
bool is_groebner_basis(std::span<const Polynomial> g);
bool is_reduced(std::span<const Polynomial> g);

struct StandardMonomials {
  bool finite = true;
  std::vector<Monomial> monomials;
};

// Throws std::length_error when more than cap standard monomials exist.
StandardMonomials standard_monomials(const GroebnerBasis& g, std::size_t cap);

// One polynomial per measurement: Re(z) * det L[k,k] - beta * det L[j,k].
std::vector<Polynomial> build_system(const circuit::MeasurementSet& ms, const RingPtr& ring);
std::vector<Polynomial> build_system(const circuit::MeasurementSet& ms, int n);
// Appends l^2 - l for every edge variable of the ring.
std::vector<Polynomial> extend(std::vector<Polynomial> f, const RingPtr& ring);

// Symbolic det L[drop...] with entries -l_ij and diagonal sums.
Polynomial symbolic_laplacian_minor(const RingPtr& ring, int n, std::span<const int> drop);

// The set of beta values solving every polynomial of f once the edge
// variables are fixed to w: either everything, or the roots of a monic
// squarefree univariate polynomial (coefficients ascending; {1} = no root).
struct BetaFiber {
  bool everything = false;
  std::vector<Rational> poly;

  friend bool operator==(const BetaFiber&, const BetaFiber&) = default;
  bool empty() const { return !everything && poly.size() == 1; }
};

BetaFiber beta_fiber(std::span<const Polynomial> f, std::span<const int> w);

}  // namespace netrecon::polysys
