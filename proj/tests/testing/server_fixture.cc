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

#include "testing/server_fixture.h"

#include <stdexcept>

namespace amakey::testing {
namespace {

template <typename T>
T OrDie(absl::StatusOr<T> value) {
  if (!value.ok()) throw std::runtime_error(value.status().ToString());
  return *std::move(value);
}

void OrDie(const absl::Status& status) {
  if (!status.ok()) throw std::runtime_error(status.ToString());
}

}  // namespace

ServerWorld::ServerWorld() = default;

SignedIdentityCard ServerWorld::RegisterVerified(absl::string_view address,
                                                 const KeyPair& key,
                                                 Timestamp created_at) {
  SignedIdentityCard card = MakeSignedCard(address, key, created_at);
  OrDie(server.BeginRegistration(card));
  auto nonce = mailbox.LatestNonce(card.card.contact_address, NoncePurpose::kRegister);
  if (!nonce) throw std::runtime_error("no nonce delivered");
  OrDie(server.ConfirmRegistration(*nonce));
  return card;
}

absl::Status ServerWorld::SubmitRating(const SignedRatingCard& rating) {
  const PublicChallenge challenge = server.IssueChallenge();
  return server.SubmitRating(rating, challenge.challenge_id,
                             OrDie(SolveArithmeticPuzzle(challenge.puzzle)));
}

SignedRatingCard ServerWorld::Rate(const SignedIdentityCard& subject,
                                   absl::string_view rater,
                                   const KeyPair& rater_key, TriState identity,
                                   TriState hash_match, TriState authentic) {
  SignedRatingCard rating = OrDie(SignRatingCard(
      MakeRating(subject, rater, identity, hash_match, authentic, clock.Now()),
      rater_key));
  OrDie(SubmitRating(rating));
  return rating;
}

}  // namespace amakey::testing
