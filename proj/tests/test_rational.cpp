#include "netrecon/rational.hpp"

#include <gtest/gtest.h>

#include <stdexcept>

using netrecon::Rational;

namespace {

Rational q(long p, long d = 1) {
  Rational r(p, d);
  r.canonicalize();
  return r;
}

}  // namespace

TEST(Rational, ParsesIntegersAndFractions) {
  EXPECT_EQ(netrecon::parse_rational("7"), q(7));
  EXPECT_EQ(netrecon::parse_rational("-3"), q(-3));
  EXPECT_EQ(netrecon::parse_rational("16/7"), q(16, 7));
  EXPECT_EQ(netrecon::parse_rational("8/8"), q(1));
  EXPECT_EQ(netrecon::parse_rational("-4/6"), q(-2, 3));
}

TEST(Rational, RejectsGarbage) {
  EXPECT_THROW(netrecon::parse_rational(""), std::invalid_argument);
  EXPECT_THROW(netrecon::parse_rational("1/0"), std::invalid_argument);
  EXPECT_THROW(netrecon::parse_rational("abc"), std::invalid_argument);
  EXPECT_THROW(netrecon::parse_decimal("1.2.3"), std::invalid_argument);
  EXPECT_THROW(netrecon::rationalize("x", 100), std::invalid_argument);
}

TEST(Rational, DecimalIsExact) {
  EXPECT_EQ(netrecon::parse_decimal("2.2857"), q(22857, 10000));
  EXPECT_EQ(netrecon::parse_decimal("-0.5"), q(-1, 2));
  EXPECT_EQ(netrecon::parse_decimal("3"), q(3));
}

TEST(Rational, ToStringIsLowestTerms) {
  EXPECT_EQ(netrecon::to_string(q(4, 6)), "2/3");
  EXPECT_EQ(netrecon::to_string(q(6, 3)), "2");
  EXPECT_EQ(netrecon::to_string(q(-1, 2)), "-1/2");
  EXPECT_EQ(netrecon::to_string(q(0)), "0");
}

// Reference values from Python's Fraction.limit_denominator.
TEST(Rational, RationalizeMatchesReference) {
  EXPECT_EQ(netrecon::rationalize("2.2857", 100), q(16, 7));
  EXPECT_EQ(netrecon::rationalize("1.2381", 100), q(26, 21));
  EXPECT_EQ(netrecon::rationalize("0.5", 100), q(1, 2));
  EXPECT_EQ(netrecon::rationalize("2.2857", 10000), q(22857, 10000));
  EXPECT_EQ(netrecon::rationalize("3.14159", 1000), q(355, 113));
  EXPECT_EQ(netrecon::rationalize("-0.333", 10), q(-1, 3));
  EXPECT_EQ(netrecon::rationalize("1.2381", 20), q(21, 17));
  EXPECT_EQ(netrecon::rationalize("0.1", 1), q(0));
  EXPECT_EQ(netrecon::rationalize("2.2857", 21), q(16, 7));
  EXPECT_EQ(netrecon::rationalize("1.2381", 21), q(26, 21));
}

TEST(Rational, RationalizeKeepsExactFractions) {
  EXPECT_EQ(netrecon::rationalize("16/7", 100), q(16, 7));
  EXPECT_EQ(netrecon::limit_denominator(q(22857, 10000), 100), q(16, 7));
}

TEST(Rational, RationalizeRejectsBadCap) { EXPECT_THROW(netrecon::rationalize("0.5", 0), std::invalid_argument); }
