#include <gtest/gtest.h>

#include <cmath>

#include "cardvote/errors.hpp"
#include "cardvote/rational.hpp"

using namespace cardvote;

TEST(Rational, ParsesFractionsIntegersAndDecimals) {
  EXPECT_EQ(parse_rational("3/6"), Rational(1, 2));
  EXPECT_EQ(parse_rational("-7"), Rational(-7));
  EXPECT_EQ(parse_rational("0.25"), Rational(1, 4));
  EXPECT_EQ(parse_rational("1.5"), Rational(3, 2));
  EXPECT_EQ(parse_rational(" 2/4 "), Rational(1, 2));
}

TEST(Rational, RejectsMalformedText) {
  for (const char* bad : {"", "1/0", "abc", "1/2/3", "0.5.5", "1e3"}) EXPECT_THROW(parse_rational(bad), ParseError) << bad;
}

TEST(Rational, ZeroDenominatorIsAPreconditionError) { EXPECT_THROW(make_rational(1, 0), PreconditionError); }

TEST(Rational, ToStringIsCanonical) {
  EXPECT_EQ(to_string(make_rational(4, 8)), "1/2");
  EXPECT_EQ(to_string(make_rational(6, 3)), "2");
  EXPECT_EQ(to_string(make_rational(-1, 3)), "-1/3");
}

TEST(Rational, IntegerCubeRootMatchesBruteForce) {
  for (std::int64_t x = 0; x <= 5000; ++x) {
    std::int64_t t = 0;
    while ((t + 1) * (t + 1) * (t + 1) <= x) ++t;
    ASSERT_EQ(icbrt(x), t) << x;
  }
  EXPECT_EQ(icbrt(999'999'999'999'999'999LL), 999'999);
  EXPECT_EQ(icbrt(1'000'000'000'000'000'000LL), 1'000'000);
  EXPECT_EQ(floor_cbrt(7), 1);
  EXPECT_EQ(floor_cbrt(8), 2);
  EXPECT_EQ(floor_cbrt(26), 2);
  EXPECT_EQ(floor_cbrt(27), 3);
  EXPECT_EQ(floor_cbrt_sq(27), 9);
  EXPECT_EQ(floor_cbrt_sq(64), 16);
  EXPECT_EQ(floor_cbrt_sq(30), 9);
}
