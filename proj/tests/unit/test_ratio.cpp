#include <gtest/gtest.h>

#include <limits>
#include <string>

#include "regenalloc/ratio.hpp"
#include "regenalloc/rng.hpp"

using regenalloc::Ratio;
using regenalloc::RatioOverflow;

TEST(Ratio, NormalizesSignAndGcd) {
  Ratio r(6, -4);
  EXPECT_EQ(r.num(), -3);
  EXPECT_EQ(r.den(), 2);
  EXPECT_EQ(Ratio(0, -7), Ratio(0));
  EXPECT_EQ(Ratio(0, -7).den(), 1);
  EXPECT_THROW(Ratio(1, 0), std::invalid_argument);
}

TEST(Ratio, ParsesDecimalAndFractions) {
  EXPECT_EQ(Ratio::parse("3.3"), Ratio(33, 10));
  EXPECT_EQ(Ratio::parse("-0.25"), Ratio(-1, 4));
  EXPECT_EQ(Ratio::parse("+12"), Ratio(12));
  EXPECT_EQ(Ratio::parse(".5"), Ratio(1, 2));
  EXPECT_EQ(Ratio::parse("7."), Ratio(7));
  EXPECT_EQ(Ratio::parse("22/6"), Ratio(11, 3));
  EXPECT_EQ(Ratio::parse("-7/2"), Ratio(-7, 2));
  EXPECT_EQ(Ratio::parse(" 1.5 "), Ratio(3, 2));
}

TEST(Ratio, RejectsMalformedInput) {
  for (const char* bad : {"", "abc", "1.2.3", "1e3", "1/0", "--1", "1/", "/2", "0x10", "."}) {
    EXPECT_THROW(Ratio::parse(bad), std::invalid_argument) << bad;
  }
}

TEST(Ratio, ExactArithmetic) {
  Ratio a = Ratio::parse("11.22");
  EXPECT_EQ(a * 8 + a * 2, Ratio::parse("112.2"));
  EXPECT_EQ(Ratio(1, 3) + Ratio(1, 6), Ratio(1, 2));
  EXPECT_EQ(Ratio(1, 3) - Ratio(1, 2), Ratio(-1, 6));
  EXPECT_EQ(Ratio(2, 3) / Ratio(4, 9), Ratio(3, 2));
  EXPECT_EQ(-Ratio(5, 7), Ratio(-5, 7));
  EXPECT_THROW(Ratio(1) / Ratio(0), std::domain_error);
}

TEST(Ratio, OrderingAndMinMax) {
  EXPECT_LT(Ratio(1, 3), Ratio(1, 2));
  EXPECT_GT(Ratio(-1, 3), Ratio(-1, 2));
  EXPECT_EQ(regenalloc::min(Ratio(3), Ratio(5, 2)), Ratio(5, 2));
  EXPECT_EQ(regenalloc::max(Ratio(3), Ratio(5, 2)), Ratio(3));
}

TEST(Ratio, FloorCeil) {
  EXPECT_EQ(Ratio(7, 2).floor(), 3);
  EXPECT_EQ(Ratio(7, 2).ceil(), 4);
  EXPECT_EQ(Ratio(-7, 2).floor(), -4);
  EXPECT_EQ(Ratio(-7, 2).ceil(), -3);
  EXPECT_EQ(Ratio(4).floor(), 4);
  EXPECT_EQ(Ratio(4).ceil(), 4);
}

TEST(Ratio, DecimalRendering) {
  EXPECT_EQ(Ratio::parse("112.2").to_decimal(), "112.2");
  EXPECT_EQ(Ratio(160).to_decimal(), "160");
  EXPECT_EQ(Ratio(1, 3).to_decimal(), "0.333333333333");
  EXPECT_EQ(Ratio(2, 3).to_decimal(), "0.666666666667");
  EXPECT_EQ(Ratio(-2, 3).to_decimal(4), "-0.6667");
  EXPECT_EQ(Ratio(1, 800).to_decimal(), "0.00125");
  EXPECT_EQ(Ratio(999999, 1000).to_decimal(3), "1000");
  EXPECT_EQ(Ratio(123456789).to_decimal(3), "123000000");
  EXPECT_EQ(Ratio(0).to_decimal(), "0");
}

TEST(Ratio, ExactString) {
  EXPECT_EQ(Ratio::parse("11.22").to_string(), "11.22");
  EXPECT_EQ(Ratio(1, 3).to_string(), "1/3");
  EXPECT_EQ(Ratio(-1, 40).to_string(), "-0.025");
  EXPECT_EQ(Ratio(5).to_string(), "5");
}

TEST(Ratio, OverflowIsReported) {
  const auto big = std::numeric_limits<std::int64_t>::max();
  EXPECT_THROW(Ratio(big) + Ratio(1), RatioOverflow);
  EXPECT_THROW(Ratio(big) * Ratio(2), RatioOverflow);
  EXPECT_EQ(Ratio(big) * Ratio(1, 2) * Ratio(2), Ratio(big));
}

// Decimals with up to nine fractional digits survive parse -> exact string.
TEST(RatioProperty, DecimalRoundTripIsLossless) {
  regenalloc::SplitMix64 rng(42);
  for (int trial = 0; trial < 5000; ++trial) {
    std::string text;
    if (rng.below(2)) text.push_back('-');
    text += std::to_string(rng.below(1'000'000));
    const auto frac_digits = rng.below(10);
    if (frac_digits) {
      text.push_back('.');
      for (std::uint64_t i = 0; i < frac_digits; ++i) text.push_back(static_cast<char>('0' + rng.below(10)));
    }
    Ratio parsed = Ratio::parse(text);
    EXPECT_EQ(Ratio::parse(parsed.to_string()), parsed) << text;
    EXPECT_EQ(Ratio::parse(parsed.to_decimal(18)), parsed) << text;
  }
}
