// Copyright 2026 The mprefs Authors
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include <gtest/gtest.h>

#include <cstdint>
#include <limits>
#include <random>
#include <vector>

#include "mprefs/rational.hpp"

namespace mprefs {
namespace {

TEST(Rational, ParsesIntegersAndFractions) {
  EXPECT_EQ(Rational::parse("7"), Rational(7));
  EXPECT_EQ(Rational::parse("-3"), Rational(-3));
  EXPECT_EQ(Rational::parse("6/4"), Rational(3, 2));
  EXPECT_EQ(Rational::parse("-6/4").to_string(), "-3/2");
  EXPECT_EQ(Rational::parse("0/5"), Rational(0));
}

TEST(Rational, RejectsMalformedLiterals) {
  EXPECT_THROW(Rational::parse(""), std::invalid_argument);
  EXPECT_THROW(Rational::parse("1.5"), std::invalid_argument);
  EXPECT_THROW(Rational::parse("abc"), std::invalid_argument);
  EXPECT_THROW(Rational::parse("1/0"), std::invalid_argument);
  EXPECT_THROW(Rational(1, 0), std::domain_error);
}

TEST(Rational, NormalizesSignAndLowestTerms) {
  const Rational r(4, -6);
  EXPECT_EQ(r.to_string(), "-2/3");
  EXPECT_EQ(r.sign(), -1);
  EXPECT_FALSE(r.is_integer());
  EXPECT_TRUE(Rational(10, 5).is_integer());
}

TEST(Rational, ArithmeticIsExact) {
  const Rational a(1, 3), b(1, 6);
  EXPECT_EQ(a + b, Rational(1, 2));
  EXPECT_EQ(a - b, Rational(1, 6));
  EXPECT_EQ(a * b, Rational(1, 18));
  EXPECT_EQ(a / b, Rational(2));
  EXPECT_THROW(a / Rational(0), std::domain_error);
  EXPECT_EQ(abs(Rational(-5, 2)), Rational(5, 2));
}

TEST(Rational, PromotesOnOverflowAndDemotesBack) {
  const Rational big = Rational(std::numeric_limits<std::int64_t>::max()) + Rational(1);
  EXPECT_TRUE(big.is_big());
  EXPECT_EQ(big.to_string(), "9223372036854775808");
  const Rational back = big - Rational(1);
  EXPECT_FALSE(back.is_big());
  EXPECT_EQ(back, Rational(std::numeric_limits<std::int64_t>::max()));
  const Rational sq = big * big;
  EXPECT_EQ(sq / big, big);
  EXPECT_LT(Rational(std::numeric_limits<std::int64_t>::max()), big);
}

TEST(Rational, NegatingMinimumPromotes) {
  Rational r(std::numeric_limits<std::int64_t>::min());
  r.negate();
  EXPECT_EQ(r.to_string(), "9223372036854775808");
  EXPECT_EQ(r.sign(), 1);
}

TEST(Rational, OrderingMatchesGmp) {
  std::mt19937_64 rng(11);
  std::uniform_int_distribution<std::int64_t> d(-1000, 1000);
  for (int t = 0; t < 2000; ++t) {
    const std::int64_t p1 = d(rng), p2 = d(rng);
    std::int64_t q1 = d(rng), q2 = d(rng);
    if (q1 == 0) q1 = 1;
    if (q2 == 0) q2 = 1;
    const Rational a(p1, q1), b(p2, q2);
    mpq_class xc{mpz_class(p1), mpz_class(q1)}, yc{mpz_class(p2), mpz_class(q2)};
    xc.canonicalize();
    yc.canonicalize();
    EXPECT_EQ(a < b, xc < yc);
    EXPECT_EQ(a == b, xc == yc);
    EXPECT_EQ((a + b).to_mpq(), mpq_class(xc + yc));
    EXPECT_EQ((a * b).to_mpq(), mpq_class(xc * yc));
  }
}

TEST(Rational, CommonDenominatorIsLcm) {
  const std::vector<Rational> values{Rational(1, 4), Rational(5, 6), Rational(3)};
  EXPECT_EQ(common_denominator(values), mpz_class(12));
}

}  // namespace
}  // namespace mprefs
