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

#include "amakey/server/challenge.h"

#include "gtest/gtest.h"
#include "testing/fixtures.h"

namespace amakey {
namespace {

using ::amakey::testing::T;

TEST(ArithmeticChallengeTest, DistinctIdsAndPuzzleFormat) {
  ArithmeticChallengeProvider provider;
  const Timestamp now = T("2026-03-01T00:00:00Z");
  PublicChallenge a = provider.Issue(now);
  PublicChallenge b = provider.Issue(now);
  EXPECT_NE(a.challenge_id, b.challenge_id);
  EXPECT_EQ(a.expires_at, now + kChallengeLifetime);
  EXPECT_TRUE(SolveArithmeticPuzzle(a.puzzle).ok()) << a.puzzle;
}

TEST(ArithmeticChallengeTest, CorrectAnswerValidatesExactlyOnce) {
  ArithmeticChallengeProvider provider(1);
  const Timestamp now = T("2026-03-01T00:00:00Z");
  PublicChallenge c = provider.Issue(now);
  const std::string answer = *SolveArithmeticPuzzle(c.puzzle);
  EXPECT_TRUE(provider.Redeem(c.challenge_id, " " + answer + "\n", now));
  EXPECT_FALSE(provider.Redeem(c.challenge_id, answer, now));
}

TEST(ArithmeticChallengeTest, WrongAnswerBurnsChallenge) {
  ArithmeticChallengeProvider provider(2);
  const Timestamp now = T("2026-03-01T00:00:00Z");
  PublicChallenge c = provider.Issue(now);
  EXPECT_FALSE(provider.Redeem(c.challenge_id, "0", now));
  EXPECT_FALSE(provider.Redeem(c.challenge_id, *SolveArithmeticPuzzle(c.puzzle), now));
  EXPECT_EQ(provider.outstanding(), 0u);
}

TEST(ArithmeticChallengeTest, ExpiredAnswerIsInvalid) {
  ArithmeticChallengeProvider provider(3);
  const Timestamp now = T("2026-03-01T00:00:00Z");
  PublicChallenge c = provider.Issue(now);
  EXPECT_FALSE(provider.Redeem(c.challenge_id, *SolveArithmeticPuzzle(c.puzzle),
                               now + kChallengeLifetime));
}

TEST(ArithmeticChallengeTest, UnknownIdFails) {
  ArithmeticChallengeProvider provider(4);
  EXPECT_FALSE(provider.Redeem("nope", "2", T("2026-03-01T00:00:00Z")));
}

TEST(SolvePuzzleTest, ParsesOnlyTheIssuedShape) {
  EXPECT_EQ(*SolveArithmeticPuzzle("What is 12 + 30?"), "42");
  EXPECT_FALSE(SolveArithmeticPuzzle("What is 12 * 30?").ok());
  EXPECT_FALSE(SolveArithmeticPuzzle("12 + 30").ok());
}

}  // namespace
}  // namespace amakey
