#include <random>

#include "ietlab/quadreal.hpp"
#include "oracle.hpp"
#include "support.hpp"

using namespace ietlab;
using fixtures::q;

namespace {

QuadReal r2(const Rational& a, const Rational& b) { return QuadReal(a, b, 2); }

}  // namespace

TEST(QuadReal, ArithmeticExamples) {
  EXPECT_EQ(r2(-1, 1) + r2(2, -1), QuadReal(1));
  EXPECT_EQ(r2(-1, 1) * r2(-1, 1), r2(3, -2));
  EXPECT_EQ(-r2(3, -2), r2(-3, 2));
  EXPECT_EQ(r2(-1, 1).inverse(), r2(1, 1));
  EXPECT_EQ(r2(1, 1) / r2(-1, 1), r2(3, 2));
}

TEST(QuadReal, SignIsExact) {
  EXPECT_EQ(r2(3, -2).sign(), Sign::positive);
  EXPECT_EQ(QuadReal().sign(), Sign::zero);
  EXPECT_EQ((r2(-1, 1) - r2(2, -1)).sign(), Sign::negative);
  // 470832^2 * 2 vs 665857^2 differ by 1
  EXPECT_EQ(r2(665857, -470832).sign(), Sign::positive);
  EXPECT_EQ(r2(-665857, 470832).sign(), Sign::negative);
  EXPECT_LT(r2(-1, 1), r2(2, -1));
}

TEST(QuadReal, Approx) {
  EXPECT_EQ(r2(-1, 1).approx(4), "0.4142");
  EXPECT_EQ(r2(2, -1).approx(4), "0.5858");
  EXPECT_EQ(r2(-3, 2).approx(4), "-0.1716");
  EXPECT_EQ(q(1, 20).approx(1), "0.1");
  EXPECT_EQ(q(-1, 20).approx(1), "-0.1");
  EXPECT_IETLAB_ERROR(q(1, 2).approx(0), ErrorCode::invalid_argument);
  EXPECT_EQ(q(-1, 100000).approx(3), "0.000");
}

TEST(QuadReal, ApproxMatchesIntegerSqrtOracle) {
  std::mt19937_64 rng(11);
  std::uniform_int_distribution<long> num(-500, 500), den(1, 97);
  for (int t = 0; t < 400; ++t) {
    long d = std::vector<long>{2, 3, 5, 7, 13}[t % 5];
    QuadReal x(Rational(num(rng), den(rng)), Rational(num(rng), den(rng)), d);
    for (int digits : {1, 4, 12}) EXPECT_EQ(x.approx(digits), oracle::decimal(x, digits)) << x.to_string();
  }
}

TEST(QuadReal, FloorMatchesOracle) {
  std::mt19937_64 rng(5);
  std::uniform_int_distribution<long> num(-1000, 1000), den(1, 50);
  for (int t = 0; t < 300; ++t) {
    QuadReal x(Rational(num(rng), den(rng)), Rational(num(rng), den(rng)), 5);
    auto f = x.floor();
    EXPECT_LE(QuadReal(Rational(f)), x);
    EXPECT_GT(QuadReal(Rational(f + 1)), x);
    EXPECT_EQ(f.get_str(), oracle::BigInt(boost::multiprecision::floor(oracle::to_dec(x))).str());
  }
}

TEST(QuadReal, Errors) {
  EXPECT_IETLAB_ERROR(sqrt_of(2) + sqrt_of(3), ErrorCode::mixed_radicand);
  EXPECT_IETLAB_ERROR(QuadReal(1, 1, 8), ErrorCode::invalid_radicand);
  EXPECT_IETLAB_ERROR(QuadReal().inverse(), ErrorCode::division_by_zero);
  // rationals combine with any radicand
  EXPECT_EQ(sqrt_of(3) + q(1, 2) - sqrt_of(3), q(1, 2));
}

TEST(QuadReal, TextRoundTrip) {
  EXPECT_EQ(r2(-1, 1).to_string(), "-1/1+1/1r");
  EXPECT_EQ(q(2, 3).to_string(), "2/3");
  std::mt19937_64 rng(3);
  std::uniform_int_distribution<long> num(-99, 99), den(1, 30);
  for (int t = 0; t < 200; ++t) {
    QuadReal x(Rational(num(rng), den(rng)), Rational(num(rng), den(rng)), 7);
    EXPECT_EQ(parse_quadreal(x.to_string(), 7), x);
  }
}

TEST(QuadReal, ParseForms) {
  EXPECT_EQ(parse_quadreal("-1/1+1/1r", 2), r2(-1, 1));
  EXPECT_EQ(parse_quadreal("2-1r", 2), r2(2, -1));
  EXPECT_EQ(parse_quadreal(" 1r - 1 ", 2), r2(-1, 1));
  EXPECT_EQ(parse_quadreal("3/2", 0), q(3, 2));
  EXPECT_EQ(parse_quadreal("-r", 5), QuadReal(0, -1, 5));
  EXPECT_EQ(parse_quadreal("010/08", 0), q(10, 8));
}

TEST(QuadReal, ParseErrorsCarryColumn) {
  try {
    parse_quadreal("1+x", 2, 7, 10);
    FAIL();
  } catch (const ParseError& e) {
    EXPECT_EQ(e.line(), 7);
    EXPECT_EQ(e.column(), 13);
  }
  EXPECT_THROW(parse_quadreal("", 2), ParseError);
  EXPECT_THROW(parse_quadreal("1r", 0), ParseError);
  EXPECT_THROW(parse_quadreal("1r+2r", 2), ParseError);
  EXPECT_THROW(parse_quadreal("1/0", 2), ParseError);
}
