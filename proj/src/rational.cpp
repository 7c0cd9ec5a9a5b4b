#include "netrecon/rational.hpp"

#include <cctype>
#include <stdexcept>

namespace netrecon {
namespace {

bool is_integer_literal(std::string_view s) {
  if (s.empty()) return false;
  std::size_t i = (s[0] == '-' || s[0] == '+') ? 1 : 0;
  if (i == s.size()) return false;
  for (; i < s.size(); ++i) {
    if (!std::isdigit(static_cast<unsigned char>(s[i]))) return false;
  }
  return true;
}

Integer parse_integer(std::string_view s) {
  if (!is_integer_literal(s)) {
    throw std::invalid_argument("not an integer literal: '" + std::string(s) + "'");
  }
  if (s[0] == '+') s.remove_prefix(1);
  return Integer(std::string(s), 10);
}

}  // namespace

Rational parse_decimal(std::string_view s) {
  std::string_view body = s;
  bool negative = false;
  if (!body.empty() && (body[0] == '-' || body[0] == '+')) {
    negative = body[0] == '-';
    body.remove_prefix(1);
  }
  const auto dot = body.find('.');
  std::string_view whole = body.substr(0, dot);
  std::string_view frac = dot == std::string_view::npos ? std::string_view{} : body.substr(dot + 1);
  if (whole.empty() && frac.empty()) {
    throw std::invalid_argument("unparsable number: '" + std::string(s) + "'");
  }
  for (char c : whole) {
    if (!std::isdigit(static_cast<unsigned char>(c))) {
      throw std::invalid_argument("unparsable number: '" + std::string(s) + "'");
    }
  }
  for (char c : frac) {
    if (!std::isdigit(static_cast<unsigned char>(c))) {
      throw std::invalid_argument("unparsable number: '" + std::string(s) + "'");
    }
  }
  std::string digits = std::string(whole) + std::string(frac);
  if (digits.empty()) digits = "0";
  Integer num(digits, 10);
  Integer den;
  mpz_ui_pow_ui(den.get_mpz_t(), 10, frac.size());
  Rational q(num, den);
  q.canonicalize();
  return negative ? Rational(-q) : q;
}

Rational parse_rational(std::string_view text) {
  const auto slash = text.find('/');
  if (slash == std::string_view::npos) {
    return Rational(parse_integer(text));
  }
  Integer num = parse_integer(text.substr(0, slash));
  std::string_view den_text = text.substr(slash + 1);
  if (!den_text.empty() && den_text[0] == '-') {
    throw std::invalid_argument("negative denominator: '" + std::string(text) + "'");
  }
  Integer den = parse_integer(den_text);
  if (den == 0) throw std::invalid_argument("zero denominator: '" + std::string(text) + "'");
  Rational q(num, den);
  q.canonicalize();
  return q;
}

std::string to_string(const Rational& value) { return value.get_str(10); }

Rational limit_denominator(const Rational& value, const Integer& max_denominator) {
  if (max_denominator < 1) throw std::invalid_argument("max_denominator must be >= 1");
  if (value.get_den() <= max_denominator) return value;

  // Continued-fraction convergents p0/q0, p1/q1 plus the best semiconvergent.
  Integer p0 = 0, q0 = 1, p1 = 1, q1 = 0;
  Integer n = value.get_num(), d = value.get_den();
  while (true) {
    Integer a;
    mpz_fdiv_q(a.get_mpz_t(), n.get_mpz_t(), d.get_mpz_t());
    Integer q2 = q0 + a * q1;
    if (q2 > max_denominator) break;
    Integer p2 = p0 + a * p1;
    p0 = p1;
    q0 = q1;
    p1 = p2;
    q1 = q2;
    Integer r = n - a * d;
    n = d;
    d = r;
    if (d == 0) break;
  }
  Integer k;
  mpz_fdiv_q(k.get_mpz_t(), Integer(max_denominator - q0).get_mpz_t(), q1.get_mpz_t());
  Rational bound1(p0 + k * p1, q0 + k * q1);
  Rational bound2(p1, q1);
  bound1.canonicalize();
  bound2.canonicalize();
  if (abs(bound2 - value) <= abs(bound1 - value)) return bound2;
  return bound1;
}

Rational rationalize(std::string_view text, long max_denominator) {
  if (max_denominator < 1) throw std::invalid_argument("max_denominator must be >= 1");
  while (!text.empty() && std::isspace(static_cast<unsigned char>(text.front()))) text.remove_prefix(1);
  while (!text.empty() && std::isspace(static_cast<unsigned char>(text.back()))) text.remove_suffix(1);
  if (text.empty()) throw std::invalid_argument("empty number string");
  if (text.find('/') != std::string_view::npos) return parse_rational(text);
  return limit_denominator(parse_decimal(text), Integer(max_denominator));
}

}  // namespace netrecon
