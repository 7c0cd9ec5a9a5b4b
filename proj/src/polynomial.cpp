#include "netrecon/polysys.hpp"

#include "netrecon/graphcore.hpp"

#include <algorithm>
#include <cctype>
#include <limits>
#include <numeric>

namespace netrecon::polysys {

Monomial::Monomial(std::vector<std::uint16_t> exponents) : e_(std::move(exponents)) {
  deg_ = std::accumulate(e_.begin(), e_.end(), 0U);
}

Monomial Monomial::variable(int nvars, int var, unsigned exponent) {
  if (var < 0 || var >= nvars) throw std::out_of_range("variable index out of range");
  std::vector<std::uint16_t> e(nvars, 0);
  e[var] = static_cast<std::uint16_t>(exponent);
  return Monomial(std::move(e));
}

bool Monomial::divides(const Monomial& other) const {
  if (deg_ > other.deg_) return false;
  for (std::size_t i = 0; i < e_.size(); ++i) {
    if (e_[i] > other.e_[i]) return false;
  }
  return true;
}

Monomial Monomial::operator*(const Monomial& other) const {
  std::vector<std::uint16_t> e(e_.size());
  for (std::size_t i = 0; i < e_.size(); ++i) {
    const unsigned sum = static_cast<unsigned>(e_[i]) + other.e_[i];
    if (sum > std::numeric_limits<std::uint16_t>::max()) throw std::overflow_error("monomial exponent overflow");
    e[i] = static_cast<std::uint16_t>(sum);
  }
  return Monomial(std::move(e));
}

Monomial Monomial::operator/(const Monomial& divisor) const {
  std::vector<std::uint16_t> e(e_.size());
  for (std::size_t i = 0; i < e_.size(); ++i) e[i] = static_cast<std::uint16_t>(e_[i] - divisor.e_[i]);
  return Monomial(std::move(e));
}

Monomial lcm(const Monomial& a, const Monomial& b) {
  std::vector<std::uint16_t> e(a.nvars());
  for (int i = 0; i < a.nvars(); ++i) e[i] = std::max(a[i], b[i]);
  return Monomial(std::move(e));
}

bool coprime(const Monomial& a, const Monomial& b) {
  for (int i = 0; i < a.nvars(); ++i) {
    if (a[i] != 0 && b[i] != 0) return false;
  }
  return true;
}

std::string_view order_name(OrderKind kind) { return kind == OrderKind::lex ? "lex" : "grevlex"; }

OrderKind parse_order(std::string_view name) {
  if (name == "grevlex") return OrderKind::grevlex;
  if (name == "lex") return OrderKind::lex;
  throw std::invalid_argument("unknown monomial order '" + std::string(name) + "' (expected grevlex or lex)");
}

MonomialOrder::MonomialOrder(OrderKind kind, std::vector<int> precedence)
    : kind_(kind), precedence_(std::move(precedence)) {
  std::vector<int> sorted = precedence_;
  std::sort(sorted.begin(), sorted.end());
  for (std::size_t i = 0; i < sorted.size(); ++i) {
    if (sorted[i] != static_cast<int>(i)) throw std::invalid_argument("precedence must be a permutation");
  }
}

MonomialOrder MonomialOrder::natural(OrderKind kind, int nvars) {
  std::vector<int> p(nvars);
  std::iota(p.begin(), p.end(), 0);
  return MonomialOrder(kind, std::move(p));
}

int MonomialOrder::compare(const Monomial& a, const Monomial& b) const {
  if (kind_ == OrderKind::grevlex) {
    if (a.degree() != b.degree()) return a.degree() < b.degree() ? -1 : 1;
    // smaller exponent in the least variable that differs wins
    for (auto it = precedence_.rbegin(); it != precedence_.rend(); ++it) {
      if (a[*it] != b[*it]) return a[*it] < b[*it] ? 1 : -1;
    }
    return 0;
  }
  for (int v : precedence_) {
    if (a[v] != b[v]) return a[v] < b[v] ? -1 : 1;
  }
  return 0;
}

int Ring::index_of(std::string_view name) const {
  for (std::size_t i = 0; i < names.size(); ++i) {
    if (names[i] == name) return static_cast<int>(i);
  }
  return -1;
}

RingPtr make_ring(std::vector<std::string> names, MonomialOrder order) {
  if (order.precedence().size() != names.size()) throw std::invalid_argument("order and variable count differ");
  return std::make_shared<const Ring>(Ring{std::move(names), std::move(order)});
}

RingPtr edge_ring(int n, OrderKind kind) {
  const int m = graphcore::edge_count(n);
  std::vector<std::string> names;
  for (int e = 0; e < m; ++e) {
    auto [i, j] = graphcore::edge_nodes(n, e);
    names.push_back(n < 10 ? "l" + std::to_string(i) + std::to_string(j)
                           : "l" + std::to_string(i) + "_" + std::to_string(j));
  }
  names.push_back("beta");
  std::vector<int> precedence{m};
  for (int e = 0; e < m; ++e) precedence.push_back(e);
  return make_ring(std::move(names), MonomialOrder(kind, std::move(precedence)));
}

int beta_index(const Ring& ring) {
  const int idx = ring.index_of("beta");
  if (idx < 0) throw std::invalid_argument("ring has no beta variable");
  return idx;
}

Polynomial Polynomial::constant(RingPtr ring, const Rational& c) {
  Polynomial p(ring);
  if (c != 0) p.terms_.push_back({Monomial::one(ring->nvars()), c});
  return p;
}

Polynomial Polynomial::variable(RingPtr ring, int var) {
  Polynomial p(ring);
  p.terms_.push_back({Monomial::variable(ring->nvars(), var), Rational(1)});
  return p;
}

Polynomial Polynomial::from_terms(RingPtr ring, std::vector<Term> terms) {
  const auto& order = ring->order;
  for (const auto& t : terms) {
    if (t.mono.nvars() != ring->nvars()) throw std::invalid_argument("term arity differs from ring");
  }
  std::sort(terms.begin(), terms.end(),
            [&](const Term& a, const Term& b) { return order.compare(a.mono, b.mono) > 0; });
  Polynomial p(ring);
  for (auto& t : terms) {
    if (!p.terms_.empty() && p.terms_.back().mono == t.mono) {
      p.terms_.back().coef += t.coef;
      if (p.terms_.back().coef == 0) p.terms_.pop_back();
    } else if (t.coef != 0) {
      p.terms_.push_back(std::move(t));
    }
  }
  return p;
}

const Term& Polynomial::leading() const {
  if (terms_.empty()) throw std::logic_error("leading term of the zero polynomial");
  return terms_.front();
}

unsigned Polynomial::total_degree() const {
  unsigned d = 0;
  for (const auto& t : terms_) d = std::max(d, t.mono.degree());
  return d;
}

namespace {

void check_same_ring(const Polynomial& a, const Polynomial& b) {
  if (a.ring() == b.ring()) return;
  const auto& ra = *a.ring();
  const auto& rb = *b.ring();
  if (ra.names != rb.names || ra.order.kind() != rb.order.kind() ||
      ra.order.precedence() != rb.order.precedence()) {
    throw std::invalid_argument("polynomials from different rings");
  }
}

// a + s * b where s is +1 or -1, merging descending term lists.
std::vector<Term> merge(const std::vector<Term>& a, const std::vector<Term>& b, int s, const MonomialOrder& order) {
  std::vector<Term> out;
  out.reserve(a.size() + b.size());
  std::size_t i = 0, j = 0;
  while (i < a.size() || j < b.size()) {
    int c;
    if (i == a.size()) {
      c = -1;
    } else if (j == b.size()) {
      c = 1;
    } else {
      c = order.compare(a[i].mono, b[j].mono);
    }
    if (c > 0) {
      out.push_back(a[i++]);
    } else if (c < 0) {
      out.push_back({b[j].mono, s > 0 ? Rational(b[j].coef) : Rational(-b[j].coef)});
      ++j;
    } else {
      Rational sum = s > 0 ? Rational(a[i].coef + b[j].coef) : Rational(a[i].coef - b[j].coef);
      if (sum != 0) out.push_back({a[i].mono, std::move(sum)});
      ++i;
      ++j;
    }
  }
  return out;
}

}  // namespace

Polynomial Polynomial::from_sorted_terms(RingPtr ring, std::vector<Term> terms) {
  Polynomial p(std::move(ring));
  p.terms_ = std::move(terms);
  return p;
}

Polynomial Polynomial::operator+(const Polynomial& o) const {
  check_same_ring(*this, o);
  Polynomial p(ring_);
  p.terms_ = merge(terms_, o.terms_, 1, ring_->order);
  return p;
}

Polynomial Polynomial::operator-(const Polynomial& o) const {
  check_same_ring(*this, o);
  Polynomial p(ring_);
  p.terms_ = merge(terms_, o.terms_, -1, ring_->order);
  return p;
}

Polynomial Polynomial::operator-() const { return scaled(Rational(-1)); }

Polynomial Polynomial::scaled(const Rational& c) const {
  Polynomial p(ring_);
  if (c == 0) return p;
  p.terms_.reserve(terms_.size());
  for (const auto& t : terms_) p.terms_.push_back({t.mono, t.coef * c});
  return p;
}

Polynomial Polynomial::times_term(const Monomial& m, const Rational& c) const {
  Polynomial p(ring_);
  if (c == 0) return p;
  p.terms_.reserve(terms_.size());
  // multiplication by a monomial preserves the order
  for (const auto& t : terms_) p.terms_.push_back({t.mono * m, t.coef * c});
  return p;
}

Polynomial Polynomial::minus_scaled(const Rational& c, const Monomial& m, const Polynomial& g) const {
  check_same_ring(*this, g);
  Polynomial p(ring_);
  p.terms_ = merge(terms_, g.times_term(m, c).terms_, -1, ring_->order);
  return p;
}

Polynomial Polynomial::operator*(const Polynomial& o) const {
  check_same_ring(*this, o);
  Polynomial acc(ring_);
  if (terms_.size() < o.terms_.size()) return o * *this;
  for (const auto& t : o.terms_) acc.terms_ = merge(acc.terms_, times_term(t.mono, t.coef).terms_, 1, ring_->order);
  return acc;
}

Polynomial Polynomial::monic() const {
  if (terms_.empty()) return *this;
  const Rational lc = terms_.front().coef;
  return scaled(Rational(1) / lc);
}

Rational Polynomial::evaluate(std::span<const Rational> point) const {
  if (static_cast<int>(point.size()) != ring_->nvars()) throw std::invalid_argument("evaluation point arity");
  Rational total = 0;
  for (const auto& t : terms_) {
    Rational v = t.coef;
    for (int i = 0; i < t.mono.nvars(); ++i) {
      for (unsigned k = 0; k < t.mono[i]; ++k) v *= point[i];
    }
    total += v;
  }
  return total;
}

Polynomial Polynomial::substitute(int var, const Rational& value) const {
  std::vector<Term> out;
  out.reserve(terms_.size());
  for (const auto& t : terms_) {
    std::vector<std::uint16_t> e = t.mono.exponents();
    Rational c = t.coef;
    for (unsigned k = 0; k < e[var]; ++k) c *= value;
    e[var] = 0;
    out.push_back({Monomial(std::move(e)), std::move(c)});
  }
  return from_terms(ring_, std::move(out));
}

Polynomial Polynomial::in_ring(RingPtr other) const {
  if (other->names != ring_->names) throw std::invalid_argument("in_ring: variable lists differ");
  return from_terms(std::move(other), terms_);
}

std::string Polynomial::to_string() const {
  if (terms_.empty()) return "0";
  std::string s;
  for (std::size_t i = 0; i < terms_.size(); ++i) {
    const auto& t = terms_[i];
    const bool negative = t.coef < 0;
    const Rational mag = negative ? Rational(-t.coef) : t.coef;
    if (i == 0) {
      if (negative) s += "-";
    } else {
      s += negative ? " - " : " + ";
    }
    std::string mono;
    for (int v = 0; v < t.mono.nvars(); ++v) {
      if (t.mono[v] == 0) continue;
      if (!mono.empty()) mono += "*";
      mono += ring_->names[v];
      if (t.mono[v] > 1) mono += "^" + std::to_string(t.mono[v]);
    }
    if (mono.empty()) {
      s += netrecon::to_string(mag);
    } else if (mag == 1) {
      s += mono;
    } else {
      s += netrecon::to_string(mag) + "*" + mono;
    }
  }
  return s;
}

bool operator==(const Polynomial& a, const Polynomial& b) {
  if (a.terms_.size() != b.terms_.size()) return false;
  for (std::size_t i = 0; i < a.terms_.size(); ++i) {
    if (!(a.terms_[i].mono == b.terms_[i].mono) || a.terms_[i].coef != b.terms_[i].coef) return false;
  }
  return true;
}

namespace {

class Parser {
 public:
  Parser(const RingPtr& ring, std::string_view text) : ring_(ring), text_(text) {}

  Polynomial parse() {
    Polynomial p = expr();
    skip();
    if (pos_ != text_.size()) fail("unexpected '" + std::string(1, text_[pos_]) + "'");
    return p;
  }

 private:
  [[noreturn]] void fail(const std::string& msg) const {
    throw std::invalid_argument("polynomial parse error at offset " + std::to_string(pos_) + ": " + msg + " in '" +
                                std::string(text_) + "'");
  }
  void skip() {
    while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
  }
  bool accept(char c) {
    skip();
    if (pos_ < text_.size() && text_[pos_] == c) {
      ++pos_;
      return true;
    }
    return false;
  }

  Polynomial expr() {
    Polynomial acc(ring_);
    bool negate = false;
    if (accept('-')) {
      negate = true;
    } else {
      accept('+');
    }
    Polynomial first = term();
    acc = negate ? -first : first;
    while (true) {
      if (accept('+')) {
        acc = acc + term();
      } else if (accept('-')) {
        acc = acc - term();
      } else {
        return acc;
      }
    }
  }

  Polynomial term() {
    Polynomial acc = power();
    while (true) {
      if (accept('*')) {
        acc = acc * power();
      } else if (accept('/')) {
        Polynomial d = power();
        if (!d.is_constant() || d.is_zero()) fail("division only by a nonzero constant");
        acc = acc.scaled(Rational(1) / d.leading().coef);
      } else {
        return acc;
      }
    }
  }

  Polynomial power() {
    Polynomial base = unary();
    if (accept('^')) {
      skip();
      std::size_t start = pos_;
      while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) ++pos_;
      if (start == pos_) fail("expected exponent");
      const unsigned long k = std::stoul(std::string(text_.substr(start, pos_ - start)));
      if (k > 1000) fail("exponent too large");
      Polynomial r = Polynomial::constant(ring_, Rational(1));
      for (unsigned long i = 0; i < k; ++i) r = r * base;
      return r;
    }
    return base;
  }

  Polynomial unary() {
    if (accept('-')) return -unary();
    return primary();
  }

  Polynomial primary() {
    skip();
    if (pos_ >= text_.size()) fail("unexpected end of input");
    const char c = text_[pos_];
    if (c == '(') {
      ++pos_;
      Polynomial p = expr();
      if (!accept(')')) fail("expected ')'");
      return p;
    }
    if (std::isdigit(static_cast<unsigned char>(c)) || c == '.') {
      std::size_t start = pos_;
      while (pos_ < text_.size() && (std::isdigit(static_cast<unsigned char>(text_[pos_])) || text_[pos_] == '.')) {
        ++pos_;
      }
      return Polynomial::constant(ring_, parse_decimal(text_.substr(start, pos_ - start)));
    }
    if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
      std::size_t start = pos_;
      while (pos_ < text_.size() &&
             (std::isalnum(static_cast<unsigned char>(text_[pos_])) || text_[pos_] == '_')) {
        ++pos_;
      }
      const std::string name(text_.substr(start, pos_ - start));
      const int idx = ring_->index_of(name);
      if (idx < 0) fail("unknown variable '" + name + "'");
      return Polynomial::variable(ring_, idx);
    }
    fail("unexpected '" + std::string(1, c) + "'");
  }

  const RingPtr& ring_;
  std::string_view text_;
  std::size_t pos_ = 0;
};

}  // namespace

Polynomial parse_polynomial(const RingPtr& ring, std::string_view text) { return Parser(ring, text).parse(); }

}  // namespace netrecon::polysys
