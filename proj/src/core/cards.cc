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

#include "amakey/core/cards.h"

#include <string>

#include "absl/status/status.h"
#include "absl/strings/ascii.h"
#include "absl/strings/str_cat.h"
#include "amakey/core/bytes.h"
#include "amakey/core/status_macros.h"
#include "amakey/core/text.h"

namespace amakey {
namespace {

// scheme "://" authority [path], no whitespace or control characters.
bool IsAbsoluteUrl(absl::string_view url) {
  const size_t sep = url.find("://");
  if (sep == absl::string_view::npos || sep == 0) return false;
  if (!absl::ascii_isalpha(static_cast<unsigned char>(url[0]))) return false;
  for (char c : url.substr(0, sep)) {
    const auto u = static_cast<unsigned char>(c);
    if (!absl::ascii_isalnum(u) && c != '+' && c != '-' && c != '.') return false;
  }
  const absl::string_view rest = url.substr(sep + 3);
  const absl::string_view authority = rest.substr(0, rest.find_first_of("/?#"));
  if (authority.empty()) return false;
  for (char c : url) {
    const auto u = static_cast<unsigned char>(c);
    if (absl::ascii_isspace(u) || absl::ascii_iscntrl(u)) return false;
  }
  return true;
}

absl::Status ValidateAddress(const ContactAddress& address) {
  AMAKEY_ASSIGN_OR_RETURN(
      std::string normalized,
      NormalizeAddressValue(address.scheme(), address.value()));
  if (normalized != address.value()) {
    return absl::InvalidArgumentError("contact address is not normalized");
  }
  return absl::OkStatus();
}

absl::Status ValidateFreeText(absl::string_view text, absl::string_view what) {
  if (!IsValidUtf8(text)) {
    return absl::InvalidArgumentError(absl::StrCat(what, " is not UTF-8"));
  }
  return absl::OkStatus();
}

}  // namespace

absl::string_view TriStateName(TriState value) {
  switch (value) {
    case TriState::kYes:
      return "yes";
    case TriState::kNo:
      return "no";
    case TriState::kUnsure:
      return "unsure";
  }
  return "unknown";
}

absl::StatusOr<TriState> ParseTriState(absl::string_view name) {
  const std::string lower = absl::AsciiStrToLower(name);
  if (lower == "yes" || lower == "y") return TriState::kYes;
  if (lower == "no" || lower == "n") return TriState::kNo;
  if (lower == "unsure" || lower == "u") return TriState::kUnsure;
  return absl::InvalidArgumentError(
      absl::StrCat("expected yes/no/unsure, got '", name, "'"));
}

absl::string_view AttestmentKindName(AttestmentKind kind) {
  return kind == AttestmentKind::kContentHash ? "content-hash" : "hosted-url";
}

absl::StatusOr<AttestmentKind> ParseAttestmentKind(absl::string_view name) {
  if (name == "content-hash") return AttestmentKind::kContentHash;
  if (name == "hosted-url") return AttestmentKind::kHostedUrl;
  return absl::InvalidArgumentError(
      absl::StrCat("unknown attestment kind '", name, "'"));
}

bool MeetsMandatoryGuidelines(const GuidelineChecklist& c) {
  return c.single_take && c.id_shown && c.spoken_in_groups &&
         c.background_audio && c.visual_hash_shown &&
         c.card_rotated_or_glass_written;
}

absl::Status ValidateAttestment(const AttestmentRef& attestment) {
  switch (attestment.kind) {
    case AttestmentKind::kContentHash:
      if (attestment.value.size() < 32 || attestment.value.size() > 128 ||
          attestment.value.size() % 2 != 0 || !IsLowerHex(attestment.value)) {
        return absl::InvalidArgumentError(
            "content-hash attestment must be a lowercase hex digest");
      }
      return absl::OkStatus();
    case AttestmentKind::kHostedUrl:
      if (!IsAbsoluteUrl(attestment.value)) {
        return absl::InvalidArgumentError(
            "hosted-url attestment must be an absolute URL");
      }
      return ValidateFreeText(attestment.value, "attestment url");
  }
  return absl::InvalidArgumentError("unknown attestment kind");
}

absl::Status ValidateIdentityCard(const IdentityCard& card) {
  AMAKEY_RETURN_IF_ERROR(ValidateAddress(card.contact_address));
  AMAKEY_RETURN_IF_ERROR(ValidatePublicKey(card.public_key));
  AMAKEY_RETURN_IF_ERROR(ValidateAttestment(card.attestment));
  if (card.display_name.has_value()) {
    AMAKEY_RETURN_IF_ERROR(ValidateFreeText(*card.display_name, "display name"));
  }
  return absl::OkStatus();
}

absl::Status ValidateRatingCard(const RatingCard& rating) {
  AMAKEY_RETURN_IF_ERROR(ValidateAddress(rating.rater_address));
  AMAKEY_RETURN_IF_ERROR(ValidateFreeText(rating.comment, "comment"));
  AMAKEY_RETURN_IF_ERROR(ValidateIdentityCard(rating.subject_card.card));
  if (rating.subject_card.signature.empty()) {
    return absl::InvalidArgumentError("subject card is unsigned");
  }
  return absl::OkStatus();
}

absl::Status ValidateRemovalRequest(const RemovalRequest& request) {
  AMAKEY_RETURN_IF_ERROR(ValidateAddress(request.address));
  if (request.card_digest.size() != 64 || !IsLowerHex(request.card_digest)) {
    return absl::InvalidArgumentError(
        "card digest must be 64 lowercase hex characters");
  }
  return absl::OkStatus();
}

}  // namespace amakey
