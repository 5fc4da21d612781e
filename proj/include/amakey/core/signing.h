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

#ifndef AMAKEY_CORE_SIGNING_H_
#define AMAKEY_CORE_SIGNING_H_

#include "absl/status/statusor.h"
#include "amakey/core/cards.h"
#include "amakey/core/keys.h"

namespace amakey {

// Fails when `key` is not the keypair for card.public_key.
absl::StatusOr<SignedIdentityCard> SignIdentityCard(const IdentityCard& card,
                                                    const KeyPair& key);

// True iff the card satisfies its invariants and the signature verifies over
// its canonical bytes under the card's own public key.
bool VerifyIdentityCard(const SignedIdentityCard& signed_card);

absl::StatusOr<SignedRatingCard> SignRatingCard(const RatingCard& rating,
                                                const KeyPair& rater_key);

// True iff the signature over the rating's canonical bytes verifies under
// `rater_key` and the embedded subject card verifies on its own.
bool VerifyRatingCard(const SignedRatingCard& signed_rating,
                      const PublicKeyMaterial& rater_key);

absl::StatusOr<SignedRemovalRequest> SignRemovalRequest(
    const RemovalRequest& request, const KeyPair& key);

bool VerifyRemovalRequest(const SignedRemovalRequest& signed_request,
                          const PublicKeyMaterial& key);

}  // namespace amakey

#endif  // AMAKEY_CORE_SIGNING_H_
