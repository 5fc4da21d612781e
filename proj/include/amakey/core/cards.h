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

#ifndef AMAKEY_CORE_CARDS_H_
#define AMAKEY_CORE_CARDS_H_

#include <optional>
#include <string>

#include "absl/status/status.h"
#include "absl/status/statusor.h"
#include "absl/strings/string_view.h"
#include "amakey/core/contact_address.h"
#include "amakey/core/keys.h"
#include "amakey/core/time.h"

namespace amakey {

enum class TriState { kYes, kNo, kUnsure };

absl::string_view TriStateName(TriState value);
absl::StatusOr<TriState> ParseTriState(absl::string_view name);

enum class AttestmentKind { kContentHash, kHostedUrl };

absl::string_view AttestmentKindName(AttestmentKind kind);
absl::StatusOr<AttestmentKind> ParseAttestmentKind(absl::string_view name);

// Self-declared compliance with the recording guidelines. Nothing here is
// checked against the media itself; reviewers judge that by watching.
struct GuidelineChecklist {
  bool single_take = false;
  bool id_shown = false;
  bool spoken_in_groups = false;
  bool background_audio = false;
  bool visual_hash_shown = false;
  bool card_rotated_or_glass_written = false;
  bool horizontally_flipped = false;

  friend bool operator==(const GuidelineChecklist&,
                         const GuidelineChecklist&) = default;
};

// The guidelines a reviewer must see followed before answering "yes" to the
// authenticity question. Horizontal flipping only applies to glass writing.
bool MeetsMandatoryGuidelines(const GuidelineChecklist& checklist);

struct AttestmentRef {
  AttestmentKind kind = AttestmentKind::kContentHash;
  // Lowercase hex digest of the media file, or an absolute URL.
  std::string value;
  GuidelineChecklist checklist;

  friend bool operator==(const AttestmentRef&, const AttestmentRef&) = default;
};

absl::Status ValidateAttestment(const AttestmentRef& attestment);

// Binds exactly one contact address to a public key and its attestment.
struct IdentityCard {
  ContactAddress contact_address;
  PublicKeyMaterial public_key;
  AttestmentRef attestment;
  std::optional<std::string> display_name;
  Timestamp created_at;

  friend bool operator==(const IdentityCard&, const IdentityCard&) = default;
};

absl::Status ValidateIdentityCard(const IdentityCard& card);

struct SignedIdentityCard {
  IdentityCard card;
  // Over CanonicalEncode(card), by the key in card.public_key.
  std::string signature;

  friend bool operator==(const SignedIdentityCard&,
                         const SignedIdentityCard&) = default;
};

struct RatingCard {
  // Can you recognize the person as the actual owner of the contact address?
  TriState q_identity = TriState::kUnsure;
  // Does the hash communicated in the video match the card?
  TriState q_hash_match = TriState::kUnsure;
  // Does the video meet all mandatory guidelines and appear authentic?
  TriState q_authentic = TriState::kUnsure;
  std::string comment;
  ContactAddress rater_address;
  SignedIdentityCard subject_card;
  Timestamp rated_at;

  friend bool operator==(const RatingCard&, const RatingCard&) = default;
};

absl::Status ValidateRatingCard(const RatingCard& rating);

struct SignedRatingCard {
  RatingCard rating;
  std::string signature;

  friend bool operator==(const SignedRatingCard&,
                         const SignedRatingCard&) = default;
};

// Request to delete the registration for `address`, signed with the key on
// file. `card_digest` pins the exact card being removed, so a captured
// request cannot remove a later re-registration that reuses the key.
struct RemovalRequest {
  ContactAddress address;
  std::string card_digest;  // CardDigest() of the card being removed
  Timestamp requested_at;

  friend bool operator==(const RemovalRequest&, const RemovalRequest&) = default;
};

absl::Status ValidateRemovalRequest(const RemovalRequest& request);

struct SignedRemovalRequest {
  RemovalRequest request;
  std::string signature;

  friend bool operator==(const SignedRemovalRequest&,
                         const SignedRemovalRequest&) = default;
};

}  // namespace amakey

#endif  // AMAKEY_CORE_CARDS_H_
