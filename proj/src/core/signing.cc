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

#include "amakey/core/signing.h"

#include <string>

#include "absl/status/status.h"
#include "amakey/core/canonical.h"
#include "amakey/core/status_macros.h"

namespace amakey {

absl::StatusOr<SignedIdentityCard> SignIdentityCard(const IdentityCard& card,
                                                    const KeyPair& key) {
  if (key.public_key() != card.public_key) {
    return absl::InvalidArgumentError(
        "signing key does not match the card's public key");
  }
  AMAKEY_ASSIGN_OR_RETURN(std::string bytes, CanonicalEncode(card));
  AMAKEY_ASSIGN_OR_RETURN(std::string signature, key.Sign(bytes));
  return SignedIdentityCard{card, std::move(signature)};
}

bool VerifyIdentityCard(const SignedIdentityCard& signed_card) {
  const auto bytes = CanonicalEncode(signed_card.card);
  if (!bytes.ok()) return false;
  return VerifySignature(signed_card.card.public_key, *bytes,
                         signed_card.signature);
}

absl::StatusOr<SignedRatingCard> SignRatingCard(const RatingCard& rating,
                                                const KeyPair& rater_key) {
  AMAKEY_ASSIGN_OR_RETURN(std::string bytes, CanonicalEncode(rating));
  AMAKEY_ASSIGN_OR_RETURN(std::string signature, rater_key.Sign(bytes));
  return SignedRatingCard{rating, std::move(signature)};
}

bool VerifyRatingCard(const SignedRatingCard& signed_rating,
                      const PublicKeyMaterial& rater_key) {
  if (!VerifyIdentityCard(signed_rating.rating.subject_card)) return false;
  const auto bytes = CanonicalEncode(signed_rating.rating);
  if (!bytes.ok()) return false;
  return VerifySignature(rater_key, *bytes, signed_rating.signature);
}

absl::StatusOr<SignedRemovalRequest> SignRemovalRequest(
    const RemovalRequest& request, const KeyPair& key) {
  AMAKEY_ASSIGN_OR_RETURN(std::string bytes, CanonicalEncode(request));
  AMAKEY_ASSIGN_OR_RETURN(std::string signature, key.Sign(bytes));
  return SignedRemovalRequest{request, std::move(signature)};
}

bool VerifyRemovalRequest(const SignedRemovalRequest& signed_request,
                          const PublicKeyMaterial& key) {
  const auto bytes = CanonicalEncode(signed_request.request);
  if (!bytes.ok()) return false;
  return VerifySignature(key, *bytes, signed_request.signature);
}

}  // namespace amakey
