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

#include "amakey/core/rational.h"

#include "gtest/gtest.h"

namespace amakey {
namespace {

TEST(RationalTest, ReducesAndNormalizesSign) {
  auto r = Rational::Create(6, -8);
  ASSERT_TRUE(r.ok());
  EXPECT_EQ(r->numerator(), -3);
  EXPECT_EQ(r->denominator(), 4);
  EXPECT_FALSE(Rational::Create(1, 0).ok());
}

TEST(RationalTest, ParsesFractionsAndDecimals) {
  EXPECT_EQ(*Rational::Parse("1/2"), *Rational::Create(1, 2));
  EXPECT_EQ(*Rational::Parse("0.5"), *Rational::Create(1, 2));
  EXPECT_EQ(*Rational::Parse("0.125"), *Rational::Create(1, 8));
  EXPECT_EQ(*Rational::Parse(".9"), *Rational::Create(9, 10));
  EXPECT_EQ(*Rational::Parse("3"), Rational::FromInteger(3));
  EXPECT_EQ(*Rational::Parse("-1.5"), *Rational::Create(-3, 2));
  EXPECT_FALSE(Rational::Parse("1/x").ok());
  EXPECT_FALSE(Rational::Parse("0.").ok());
  EXPECT_FALSE(Rational::Parse("abc").ok());
}

TEST(RationalTest, ComparesExactlyWhereDoublesWouldNot) {
  // 1/3 vs 333333333333333333/10^18: distinct, and doubles round both alike.
  auto third = *Rational::Create(1, 3);
  auto approx = *Rational::Create(333333333333333333LL, 1000000000000000000LL);
  EXPECT_GT(third, approx);
  EXPECT_EQ(third.ToDouble(), approx.ToDouble());
}

}  // namespace
}  // namespace amakey
