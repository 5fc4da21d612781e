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

#include <cstring>

#include "absl/strings/ascii.h"
#include "absl/strings/numbers.h"
#include "absl/strings/str_cat.h"
#include "absl/strings/str_split.h"
#include "absl/strings/strip.h"
#include "amakey/core/bytes.h"
#include "amakey/core/crypto.h"

namespace amakey {
namespace {

std::string AnswerDigest(absl::string_view id, absl::string_view answer) {
  return Sha256(absl::StrCat(id, "|", absl::StripAsciiWhitespace(answer)));
}

}  // namespace

ArithmeticChallengeProvider::ArithmeticChallengeProvider() = default;

ArithmeticChallengeProvider::ArithmeticChallengeProvider(uint64_t seed)
    : seeded_(true), rng_(seed) {}

int ArithmeticChallengeProvider::NextOperand() {
  if (seeded_) return 1 + static_cast<int>(rng_() % 99);
  uint32_t r;
  const std::string bytes = SecureRandomBytes(sizeof(r));
  std::memcpy(&r, bytes.data(), sizeof(r));
  return 1 + static_cast<int>(r % 99);
}

PublicChallenge ArithmeticChallengeProvider::Issue(Timestamp now) {
  std::lock_guard lock(mu_);
  std::erase_if(held_, [&](const auto& e) { return now >= e.second.expires_at; });
  const int a = NextOperand();
  const int b = NextOperand();
  PublicChallenge challenge{HexEncode(SecureRandomBytes(16)),
                            absl::StrCat("What is ", a, " + ", b, "?"),
                            now + kChallengeLifetime};
  held_[challenge.challenge_id] =
      Held{AnswerDigest(challenge.challenge_id, absl::StrCat(a + b)),
           challenge.expires_at};
  return challenge;
}

bool ArithmeticChallengeProvider::Redeem(absl::string_view challenge_id,
                                         absl::string_view answer,
                                         Timestamp now) {
  std::lock_guard lock(mu_);
  auto it = held_.find(std::string(challenge_id));
  if (it == held_.end()) return false;
  const Held held = it->second;
  held_.erase(it);
  return now < held.expires_at &&
         AnswerDigest(challenge_id, answer) == held.answer_digest;
}

size_t ArithmeticChallengeProvider::outstanding() const {
  std::lock_guard lock(mu_);
  return held_.size();
}

absl::StatusOr<std::string> SolveArithmeticPuzzle(absl::string_view puzzle) {
  absl::string_view rest = puzzle;
  if (!absl::ConsumePrefix(&rest, "What is ") || !absl::ConsumeSuffix(&rest, "?")) {
    return absl::InvalidArgumentError(absl::StrCat("unrecognized puzzle: ", puzzle));
  }
  std::vector<absl::string_view> parts = absl::StrSplit(rest, " + ");
  int a = 0;
  int b = 0;
  if (parts.size() != 2 || !absl::SimpleAtoi(parts[0], &a) ||
      !absl::SimpleAtoi(parts[1], &b)) {
    return absl::InvalidArgumentError(absl::StrCat("unrecognized puzzle: ", puzzle));
  }
  return absl::StrCat(a + b);
}

}  // namespace amakey
