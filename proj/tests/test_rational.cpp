#include <gtest/gtest.h>

#include "reeb/errors.hpp"
#include "reeb/rational.hpp"

using reeb::make_rational;
using reeb::Rational;

TEST(Rational, ParsesSignedFractionsAndIntegers) {
  EXPECT_EQ(reeb::parse_rational("41/100"), make_rational(41, 100));
  EXPECT_EQ(reeb::parse_rational("-3/10"), make_rational(-3, 10));
  EXPECT_EQ(reeb::parse_rational("+7"), make_rational(7));
  EXPECT_EQ(reeb::parse_rational(" 6 / 4 "), make_rational(3, 2));
  EXPECT_EQ(reeb::parse_rational("-0"), make_rational(0));
}

TEST(Rational, RejectsMalformedLiterals) {
  for (const char* bad : {"", "1/0", "1.5", "a/b", "1//2", "/3", "3/", "--1", "1/-2", "1e3"}) {
    EXPECT_THROW(reeb::parse_rational(bad), reeb::InvalidInput) << bad;
  }
}

TEST(Rational, ParsesWideLiterals) {
  const Rational x = reeb::parse_rational("123456789012345678901234567890/11");
  EXPECT_EQ(reeb::to_string(x), "123456789012345678901234567890/11");
}

TEST(Rational, FloorAndCeilOnNegatives) {
  EXPECT_EQ(reeb::floor(make_rational(-3, 10)), -1);
  EXPECT_EQ(reeb::ceil(make_rational(-3, 10)), 0);
  EXPECT_EQ(reeb::floor(make_rational(5, 2)), 2);
  EXPECT_EQ(reeb::ceil(make_rational(5, 2)), 3);
  EXPECT_EQ(reeb::floor(make_rational(-4)), -4);
}

TEST(Rational, DistanceToNearestInteger) {
  EXPECT_EQ(reeb::dist_to_int(make_rational(41, 20)), make_rational(1, 20));
  EXPECT_EQ(reeb::dist_to_int(make_rational(-19, 20)), make_rational(1, 20));
  EXPECT_EQ(reeb::dist_to_int(make_rational(3)), 0);
  EXPECT_EQ(reeb::dist_to_int(make_rational(1, 2)), make_rational(1, 2));
}

TEST(Rational, NearestIntegerFlagsTies) {
  bool tie = false;
  EXPECT_EQ(reeb::nearest_integer(make_rational(41, 10), &tie), 4);
  EXPECT_FALSE(tie);
  EXPECT_EQ(reeb::nearest_integer(make_rational(779, 10), &tie), 78);
  EXPECT_FALSE(tie);
  EXPECT_EQ(reeb::nearest_integer(make_rational(-5, 2), &tie), -2);
  EXPECT_TRUE(tie);
}

TEST(Rational, ToStringIsCanonical) {
  EXPECT_EQ(reeb::to_string(make_rational(10, 4)), "5/2");
  EXPECT_EQ(reeb::to_string(make_rational(-6, 3)), "-2");
}

TEST(Rational, NarrowingChecksRange) {
  EXPECT_EQ(reeb::to_int64(reeb::Integer(42)), 42);
  EXPECT_THROW(reeb::to_int64(reeb::Integer(1) << 70), std::overflow_error);
}
