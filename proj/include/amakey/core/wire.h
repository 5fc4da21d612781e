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

#ifndef AMAKEY_CORE_WIRE_H_
#define AMAKEY_CORE_WIRE_H_

#include <string>
#include <vector>

#include "absl/status/statusor.h"
#include "amakey/core/cards.h"
#include "amakey/core/stats.h"
#include "json.hpp"

namespace amakey {

// HTTP/JSON representations. A signed document travels as its exact canonical
// bytes (base64) next to a detached hex signature, so verification never
// depends on how a transport re-serializes JSON:
//
//   {"card": "<base64>", "signature": "<hex>"}        SignedIdentityCard
//   {"rating": "<base64>", "signature": "<hex>"}      SignedRatingCard
//   {"request": "<base64>", "signature": "<hex>"}     SignedRemovalRequest
//   {"s1": n, ..., "s7": n}                           AggregateStats

absl::StatusOr<nlohmann::json> ToWire(const SignedIdentityCard& signed_card);
absl::StatusOr<nlohmann::json> ToWire(const SignedRatingCard& signed_rating);
absl::StatusOr<nlohmann::json> ToWire(const SignedRemovalRequest& request);
nlohmann::json ToWire(const AggregateStats& stats);

absl::StatusOr<SignedIdentityCard> SignedIdentityCardFromWire(
    const nlohmann::json& j);
absl::StatusOr<SignedRatingCard> SignedRatingCardFromWire(
    const nlohmann::json& j);
absl::StatusOr<SignedRemovalRequest> SignedRemovalRequestFromWire(
    const nlohmann::json& j);
absl::StatusOr<AggregateStats> AggregateStatsFromWire(const nlohmann::json& j);

// GET /v1/lookup body.
struct LookupResponse {
  SignedIdentityCard signed_card;
  std::vector<SignedRatingCard> ratings;
  AggregateStats stats;
  // Server-claimed fingerprint of signed_card's key. Clients recompute it.
  std::string fingerprint;
};

absl::StatusOr<nlohmann::json> ToWire(const LookupResponse& response);

// Lenient parse for clients: each part is decoded independently so one
// malformed rating is reported instead of voiding the whole response.
struct ParsedLookup {
  absl::StatusOr<SignedIdentityCard> signed_card =
      absl::UnknownError("unparsed");
  std::vector<absl::StatusOr<SignedRatingCard>> ratings;
  absl::StatusOr<AggregateStats> stats = absl::UnknownError("unparsed");
  std::string fingerprint;
};

ParsedLookup ParseLookupWire(const nlohmann::json& j);

}  // namespace amakey

#endif  // AMAKEY_CORE_WIRE_H_
