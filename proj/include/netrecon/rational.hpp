#pragma once

#include <gmpxx.h>

#include <string>
#include <string_view>

namespace netrecon {

using Rational = mpq_class;
using Integer = mpz_class;

// Parses "p", "-p" or "p/q" into canonical form. Throws std::invalid_argument.
Rational parse_rational(std::string_view text);

// Exact value of a plain decimal such as "-2.2857" or "3".
Rational parse_decimal(std::string_view text);

// "p/q" in lowest terms, or "p" when the denominator is 1.
std::string to_string(const Rational& value);

// Best approximation with denominator <= max_denominator. Accepts plain
// decimals ("2.2857", "-0.5", "3") and exact "p/q" strings.
Rational rationalize(std::string_view text, long max_denominator);

// Best approximation of an exact rational with bounded denominator.
Rational limit_denominator(const Rational& value, const Integer& max_denominator);

}  // namespace netrecon
