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

#include "amakey/core/wire.h"

#include <string>

#include "absl/status/status.h"
#include "absl/strings/str_cat.h"
#include "amakey/core/bytes.h"
#include "amakey/core/canonical.h"
#include "amakey/core/status_macros.h"

namespace amakey {
namespace {

using nlohmann::json;

template <typename Doc>
absl::StatusOr<json> Envelope(const Doc& doc, absl::string_view field,
                              const std::string& signature) {
  AMAKEY_ASSIGN_OR_RETURN(std::string bytes, CanonicalEncode(doc));
  return json{{std::string(field), Base64Encode(bytes)},
              {"signature", HexEncode(signature)}};
}

struct Opened {
  std::string bytes;
  std::string signature;
};

absl::StatusOr<Opened> Open(const json& j, absl::string_view field) {
  AMAKEY_ASSIGN_OR_RETURN(std::string b64, GetString(j, field));
  AMAKEY_ASSIGN_OR_RETURN(std::string sig_hex, GetString(j, "signature"));
  AMAKEY_ASSIGN_OR_RETURN(std::string bytes, Base64Decode(b64));
  AMAKEY_ASSIGN_OR_RETURN(std::string signature, HexDecode(sig_hex));
  return Opened{std::move(bytes), std::move(signature)};
}

}  // namespace

absl::StatusOr<json> ToWire(const SignedIdentityCard& signed_card) {
  return Envelope(signed_card.card, "card", signed_card.signature);
}

absl::StatusOr<json> ToWire(const SignedRatingCard& signed_rating) {
  return Envelope(signed_rating.rating, "rating", signed_rating.signature);
}

absl::StatusOr<json> ToWire(const SignedRemovalRequest& request) {
  return Envelope(request.request, "request", request.signature);
}

json ToWire(const AggregateStats& s) {
  return json{{"s1", s.s1}, {"s2", s.s2}, {"s3", s.s3}, {"s4", s.s4},
              {"s5", s.s5}, {"s6", s.s6}, {"s7", s.s7}};
}

absl::StatusOr<SignedIdentityCard> SignedIdentityCardFromWire(const json& j) {
  AMAKEY_ASSIGN_OR_RETURN(Opened opened, Open(j, "card"));
  AMAKEY_ASSIGN_OR_RETURN(IdentityCard card, DecodeIdentityCard(opened.bytes));
  return SignedIdentityCard{std::move(card), std::move(opened.signature)};
}

absl::StatusOr<SignedRatingCard> SignedRatingCardFromWire(const json& j) {
  AMAKEY_ASSIGN_OR_RETURN(Opened opened, Open(j, "rating"));
  AMAKEY_ASSIGN_OR_RETURN(RatingCard rating, DecodeRatingCard(opened.bytes));
  return SignedRatingCard{std::move(rating), std::move(opened.signature)};
}

absl::StatusOr<SignedRemovalRequest> SignedRemovalRequestFromWire(
    const json& j) {
  AMAKEY_ASSIGN_OR_RETURN(Opened opened, Open(j, "request"));
  AMAKEY_ASSIGN_OR_RETURN(RemovalRequest request,
                          DecodeRemovalRequest(opened.bytes));
  return SignedRemovalRequest{std::move(request), std::move(opened.signature)};
}

absl::StatusOr<AggregateStats> AggregateStatsFromWire(const json& j) {
  AggregateStats s;
  uint64_t* fields[] = {&s.s1, &s.s2, &s.s3, &s.s4, &s.s5, &s.s6, &s.s7};
  for (int i = 0; i < 7; ++i) {
    AMAKEY_ASSIGN_OR_RETURN(int64_t v, GetInt(j, absl::StrCat("s", i + 1)));
    if (v < 0) return absl::InvalidArgumentError("negative statistic");
    *fields[i] = static_cast<uint64_t>(v);
  }
  return s;
}

absl::StatusOr<json> ToWire(const LookupResponse& response) {
  AMAKEY_ASSIGN_OR_RETURN(json card, ToWire(response.signed_card));
  json ratings = json::array();
  for (const SignedRatingCard& rating : response.ratings) {
    AMAKEY_ASSIGN_OR_RETURN(json r, ToWire(rating));
    ratings.push_back(std::move(r));
  }
  return json{{"signed_identity_card", std::move(card)},
              {"fingerprint", response.fingerprint},
              {"ratings", std::move(ratings)},
              {"stats", ToWire(response.stats)}};
}

ParsedLookup ParseLookupWire(const json& j) {
  ParsedLookup parsed;
  if (!j.is_object()) {
    parsed.signed_card = absl::InvalidArgumentError("lookup body is not an object");
    parsed.stats = parsed.signed_card.status();
    return parsed;
  }
  auto card = GetObject(j, "signed_identity_card");
  parsed.signed_card = card.ok() ? SignedIdentityCardFromWire(**card)
                                 : absl::StatusOr<SignedIdentityCard>(card.status());
  auto stats = GetObject(j, "stats");
  parsed.stats = stats.ok() ? AggregateStatsFromWire(**stats)
                            : absl::StatusOr<AggregateStats>(stats.status());
  if (auto fp = GetString(j, "fingerprint"); fp.ok()) parsed.fingerprint = *fp;
  if (auto it = j.find("ratings"); it != j.end() && it->is_array()) {
    for (const json& r : *it) parsed.ratings.push_back(SignedRatingCardFromWire(r));
  }
  return parsed;
}

}  // namespace amakey
