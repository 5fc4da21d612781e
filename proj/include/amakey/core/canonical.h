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

#ifndef AMAKEY_CORE_CANONICAL_H_
#define AMAKEY_CORE_CANONICAL_H_

#include <string>

#include "absl/status/statusor.h"
#include "absl/strings/string_view.h"
#include "amakey/core/cards.h"
#include "json.hpp"

namespace amakey {

// Canonical form: UTF-8 JSON with object keys sorted bytewise, no
// insignificant whitespace, every string NFC-normalized, integers only, and
// timestamps as RFC 3339 UTC strings. Byte strings are lowercase hex. Each
// top-level document carries a "type" tag so a signature over one kind of
// document never verifies as another.
inline constexpr absl::string_view kIdentityCardType = "amakey.identity-card.v1";
inline constexpr absl::string_view kRatingCardType = "amakey.rating-card.v1";
inline constexpr absl::string_view kRemovalRequestType =
    "amakey.removal-request.v1";

// Serializes `value` canonically. Rejects floating-point numbers and
// malformed UTF-8.
absl::StatusOr<std::string> CanonicalJson(const nlohmann::json& value);

absl::StatusOr<std::string> CanonicalEncode(const IdentityCard& card);
absl::StatusOr<std::string> CanonicalEncode(const RatingCard& rating);
absl::StatusOr<std::string> CanonicalEncode(const RemovalRequest& request);

// Decoders accept only bytes that re-encode to themselves.
absl::StatusOr<IdentityCard> DecodeIdentityCard(absl::string_view bytes);
absl::StatusOr<RatingCard> DecodeRatingCard(absl::string_view bytes);
absl::StatusOr<RemovalRequest> DecodeRemovalRequest(absl::string_view bytes);

// SHA-256 (hex) of CanonicalEncode(card). Names one exact card version.
absl::StatusOr<std::string> CardDigest(const IdentityCard& card);

// Structured forms. The *FromJson functions validate type invariants.
nlohmann::json AddressToJson(const ContactAddress& address);
absl::StatusOr<ContactAddress> AddressFromJson(const nlohmann::json& j);
nlohmann::json ToJson(const IdentityCard& card);
nlohmann::json ToJson(const SignedIdentityCard& signed_card);
nlohmann::json ToJson(const RatingCard& rating);
nlohmann::json ToJson(const RemovalRequest& request);
absl::StatusOr<IdentityCard> IdentityCardFromJson(const nlohmann::json& j);
absl::StatusOr<SignedIdentityCard> SignedIdentityCardFromJson(
    const nlohmann::json& j);
absl::StatusOr<RatingCard> RatingCardFromJson(const nlohmann::json& j);
absl::StatusOr<RemovalRequest> RemovalRequestFromJson(const nlohmann::json& j);

// Typed field access for hand-written decoders.
absl::StatusOr<std::string> GetString(const nlohmann::json& j,
                                      absl::string_view key);
absl::StatusOr<bool> GetBool(const nlohmann::json& j, absl::string_view key);
absl::StatusOr<int64_t> GetInt(const nlohmann::json& j, absl::string_view key);
absl::StatusOr<const nlohmann::json*> GetObject(const nlohmann::json& j,
                                                absl::string_view key);
absl::StatusOr<nlohmann::json> ParseJson(absl::string_view text);

}  // namespace amakey

#endif  // AMAKEY_CORE_CANONICAL_H_
