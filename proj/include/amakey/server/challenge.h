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

#ifndef AMAKEY_SERVER_CHALLENGE_H_
#define AMAKEY_SERVER_CHALLENGE_H_

#include <chrono>
#include <map>
#include <mutex>
#include <random>
#include <string>

#include "absl/status/statusor.h"
#include "absl/strings/string_view.h"
#include "amakey/core/time.h"

namespace amakey {

// The part of a challenge sent to the client.
struct PublicChallenge {
  std::string challenge_id;
  std::string puzzle;
  Timestamp expires_at;
};

// Human-verification gate in front of rating submission.
class ChallengeProvider {
 public:
  virtual ~ChallengeProvider() = default;
  virtual PublicChallenge Issue(Timestamp now) = 0;
  // Consumes the challenge whatever the outcome. True only for a correct
  // answer to an unexpired, unused challenge.
  virtual bool Redeem(absl::string_view challenge_id, absl::string_view answer,
                      Timestamp now) = 0;
};

inline constexpr std::chrono::minutes kChallengeLifetime{10};

// "What is A + B?" with A, B in [1, 99]. The server keeps only a salted
// digest of the answer.
class ArithmeticChallengeProvider : public ChallengeProvider {
 public:
  // Operands come from the CSPRNG unless a seed is given.
  ArithmeticChallengeProvider();
  explicit ArithmeticChallengeProvider(uint64_t seed);

  PublicChallenge Issue(Timestamp now) override;
  bool Redeem(absl::string_view challenge_id, absl::string_view answer,
              Timestamp now) override;

  size_t outstanding() const;

 private:
  struct Held {
    std::string answer_digest;
    Timestamp expires_at;
  };
  int NextOperand();

  mutable std::mutex mu_;
  bool seeded_ = false;
  std::mt19937_64 rng_;
  std::map<std::string, Held> held_;
};

// Answers an ArithmeticChallengeProvider puzzle, standing in for the human.
absl::StatusOr<std::string> SolveArithmeticPuzzle(absl::string_view puzzle);

}  // namespace amakey

#endif  // AMAKEY_SERVER_CHALLENGE_H_
