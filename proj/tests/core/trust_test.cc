// Copyright 2026 The Amakey Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
//
////////////////////////////////////////////////////////////////////////////////

#include "amakey/core/trust.h"

#include <algorithm>
#include <random>

#include "boost/multiprecision/cpp_int.hpp"
#include "boost/rational.hpp"
#include "gtest/gtest.h"

namespace amakey {
namespace {

using BigRational = boost::rational<boost::multiprecision::cpp_int>;

TrustPolicy Policy(int64_t alpha, int64_t num, int64_t den) {
  return *TrustPolicy::Create(alpha, *Rational::Create(num, den));
}

// Direct evaluation of the inequality in arbitrary precision.
bool OracleTrusted(const AggregateStats& s, int64_t alpha, int64_t num,
                   int64_t den) {
  using boost::multiprecision::cpp_int;
  if (s.s1 == 0) return false;
  if (!(cpp_int(alpha) < cpp_int(s.s1))) return false;
  const cpp_int m = std::min({cpp_int(s.s2) - cpp_int(s.s3),
                              cpp_int(s.s4) - cpp_int(s.s5),
                              cpp_int(s.s6) - cpp_int(s.s7)});
  return BigRational(cpp_int(num), cpp_int(den)) < BigRational(m, cpp_int(s.s1));
}

TEST(TrustTest, WorkedExamples) {
  const AggregateStats s{10, 9, 0, 9, 1, 8, 0};
  EXPECT_EQ(DecideTrust(s, Policy(5, 1, 2)), TrustDecision::kTrusted);
  EXPECT_EQ(*NetConfirmationRatio(s), *Rational::Create(4, 5));
  EXPECT_EQ(DecideTrust(s, Policy(5, 9, 10)), TrustDecision::kNotTrusted);
  const AggregateStats negative{10, 3, 5, 9, 0, 9, 0};
  EXPECT_EQ(DecideTrust(negative, Policy(0, 1, 1000)), TrustDecision::kNotTrusted);
}

TEST(TrustTest, ZeroRatingsNeverTrusted) {
  EXPECT_EQ(DecideTrust({}, Policy(0, 1, 1000000)), TrustDecision::kNotTrusted);
  EXPECT_FALSE(NetConfirmationRatio({}).has_value());
}

TEST(TrustTest, StrictInequalities) {
  const AggregateStats s{10, 10, 0, 10, 0, 10, 0};
  EXPECT_EQ(DecideTrust(s, Policy(10, 1, 2)), TrustDecision::kNotTrusted);
  EXPECT_EQ(DecideTrust(s, Policy(9, 1, 2)), TrustDecision::kTrusted);
  EXPECT_EQ(DecideTrust(s, Policy(9, 1, 1)), TrustDecision::kNotTrusted);
  const AggregateStats half{4, 2, 0, 2, 0, 2, 0};
  EXPECT_EQ(DecideTrust(half, Policy(0, 1, 2)), TrustDecision::kNotTrusted);
}

TEST(TrustTest, PolicyValidation) {
  EXPECT_FALSE(TrustPolicy::Create(-1, *Rational::Create(1, 2)).ok());
  EXPECT_FALSE(TrustPolicy::Create(0, *Rational::Create(0, 1)).ok());
  EXPECT_FALSE(TrustPolicy::Create(0, *Rational::Create(3, 2)).ok());
  EXPECT_TRUE(TrustPolicy::Create(0, *Rational::Create(1, 1)).ok());
  auto parsed = TrustPolicy::Parse("5", "0.5");
  ASSERT_TRUE(parsed.ok());
  EXPECT_EQ(*parsed, Policy(5, 1, 2));
  EXPECT_FALSE(TrustPolicy::Parse("x", "1/2").ok());
}

AggregateStats RandomStats(std::mt19937_64& rng, uint64_t max_s1) {
  AggregateStats s;
  s.s1 = rng() % (max_s1 + 1);
  auto split = [&](uint64_t& yes, uint64_t& no) {
    yes = s.s1 == 0 ? 0 : rng() % (s.s1 + 1);
    no = s.s1 - yes == 0 ? 0 : rng() % (s.s1 - yes + 1);
  };
  split(s.s2, s.s3);
  split(s.s4, s.s5);
  split(s.s6, s.s7);
  return s;
}

TEST(TrustTest, AgreesWithArbitraryPrecisionOracle) {
  std::mt19937_64 rng(17);
  for (int i = 0; i < 10000; ++i) {
    // Mix small values (many ties) with values near the 32-bit range.
    const uint64_t max_s1 = i % 2 == 0 ? 20 : (uint64_t{1} << 40);
    const AggregateStats s = RandomStats(rng, max_s1);
    const int64_t den = 1 + static_cast<int64_t>(rng() % (i % 2 == 0 ? 20 : 1000000007));
    const int64_t num = 1 + static_cast<int64_t>(rng() % den);
    const int64_t alpha = static_cast<int64_t>(rng() % (max_s1 + 2));
    const bool expected = OracleTrusted(s, alpha, num, den);
    ASSERT_EQ(DecideTrust(s, Policy(alpha, num, den)) == TrustDecision::kTrusted,
              expected)
        << s.s1 << " " << s.s2 << " " << s.s3 << " " << s.s4 << " " << s.s5
        << " " << s.s6 << " " << s.s7 << " alpha=" << alpha << " beta=" << num
        << "/" << den;
  }
}

// With alpha < s1 already satisfied, a unanimous rating moves the ratio
// only in its own direction.
TEST(TrustTest, MonotoneUnderAllYesAndAllNoRatings) {
  std::mt19937_64 rng(23);
  for (int i = 0; i < 5000; ++i) {
    const AggregateStats s = RandomStats(rng, 30);
    const int64_t den = 1 + static_cast<int64_t>(rng() % 20);
    const int64_t num = 1 + static_cast<int64_t>(rng() % den);
    const TrustPolicy policy = Policy(static_cast<int64_t>(rng() % 30), num, den);
    const TrustDecision before = DecideTrust(s, policy);
    AggregateStats yes = s;
    ++yes.s1, ++yes.s2, ++yes.s4, ++yes.s6;
    AggregateStats no = s;
    ++no.s1, ++no.s3, ++no.s5, ++no.s7;
    if (before == TrustDecision::kTrusted) {
      ASSERT_EQ(DecideTrust(yes, policy), TrustDecision::kTrusted);
    } else if (policy.alpha() < static_cast<int64_t>(s.s1)) {
      ASSERT_EQ(DecideTrust(no, policy), TrustDecision::kNotTrusted);
    }
  }
}

TEST(TrustTest, NegativeRatingCanLiftTheCountThreshold) {
  // An all-"no" rating still adds to s1, so a card held back only by alpha
  // can cross into Trusted.
  const TrustPolicy policy = Policy(5, 1, 2);
  EXPECT_EQ(DecideTrust({5, 5, 0, 5, 0, 5, 0}, policy), TrustDecision::kNotTrusted);
  EXPECT_EQ(DecideTrust({6, 5, 1, 5, 1, 5, 1}, policy), TrustDecision::kTrusted);
}

}  // namespace
}  // namespace amakey
