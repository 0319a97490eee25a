#include "fsp/rational.hpp"

#include <gtest/gtest.h>

#include "test_util.hpp"

namespace fsp {
namespace {

using testing::q;

TEST(RationalTest, ParsesDecimalsExactly) {
  EXPECT_EQ(parse_rational("0.3"), q(3, 10));
  EXPECT_EQ(parse_rational("0.25"), q(1, 4));
  EXPECT_EQ(parse_rational("-.5"), q(-1, 2));
  EXPECT_EQ(parse_rational("3."), q(3));
  EXPECT_EQ(parse_rational("007"), q(7));
}

TEST(RationalTest, ParsesFractionsInLowestTerms) {
  const Rational r = parse_rational("6/20");
  EXPECT_EQ(r, q(3, 10));
  EXPECT_EQ(r.get_num(), 3);
  EXPECT_EQ(r.get_den(), 10);
  EXPECT_EQ(parse_rational("-3/10"), q(-3, 10));
}

TEST(RationalTest, RejectsGarbage) {
  for (const char* bad : {"", "-", ".", "1/0", "abc", "1.2.3", "1/2/3", "1e5", " 1", "0x10"}) {
    EXPECT_THROW(parse_rational(bad), InputError) << bad;
  }
}

TEST(RationalTest, FormatsIntegersWithoutDenominator) {
  EXPECT_EQ(format_rational(q(15)), "15");
  EXPECT_EQ(format_rational(q(11, 10)), "11/10");
  EXPECT_EQ(format_rational(q(-1, 3)), "-1/3");
}

TEST(RationalTest, CeilAndFloor) {
  EXPECT_EQ(ceil_of(q(7, 2)), 4);
  EXPECT_EQ(ceil_of(q(3)), 3);
  EXPECT_EQ(ceil_of(q(-7, 2)), -3);
  EXPECT_EQ(floor_of(q(-7, 2)), -4);
}

TEST(RationalTest, FormatParseRoundTrip) {
  testing::Rng rng(11);
  for (int i = 0; i < 2000; ++i) {
    const Rational r = make_rational(rng.uniform(-1'000'000, 1'000'000), rng.uniform(1, 99'999));
    EXPECT_EQ(parse_rational(format_rational(r)), r);
  }
  // Beyond 64 bits.
  Rational big(BigInt("123456789012345678901234567891"), BigInt("7"));
  big.canonicalize();
  EXPECT_EQ(parse_rational(format_rational(big)), big);
}

}  // namespace
}  // namespace fsp
