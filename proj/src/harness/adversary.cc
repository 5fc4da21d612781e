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

#include "amakey/harness/adversary.h"

#include <algorithm>

#include "absl/strings/str_cat.h"
#include "amakey/core/canonical.h"
#include "amakey/core/fingerprint.h"
#include "amakey/core/stats.h"
#include "amakey/core/status_macros.h"
#include "amakey/core/wire.h"
#include "amakey/net/protocol.h"

namespace amakey::harness {
namespace {

using json = nlohmann::json;

constexpr std::pair<BehaviorKind, absl::string_view> kNames[] = {
    {BehaviorKind::kHonest, "honest"},
    {BehaviorKind::kSubstituteKey, "substitute_key"},
    {BehaviorKind::kStripRatings, "strip_ratings"},
    {BehaviorKind::kForgeStats, "forge_stats"},
    {BehaviorKind::kReplayRemovedCard, "replay_removed_card"},
    {BehaviorKind::kImpostorCard, "impostor_card"},
};

absl::StatusOr<json> ConsistentLookup(const SignedIdentityCard& card,
                                      const std::vector<SignedRatingCard>& ratings) {
  LookupResponse response;
  response.signed_card = card;
  response.ratings = ratings;
  response.stats = Aggregate(std::span<const SignedRatingCard>(ratings));
  AMAKEY_ASSIGN_OR_RETURN(KeyFingerprint fp, Fingerprint(card.card.public_key));
  response.fingerprint = fp.hex();
  return ToWire(response);
}

absl::Status MissingPayload(absl::string_view what) {
  return absl::FailedPreconditionError(
      absl::StrCat("adversary armed without ", what));
}

}  // namespace

absl::string_view BehaviorKindName(BehaviorKind kind) {
  for (const auto& [k, name] : kNames) {
    if (k == kind) return name;
  }
  return "unknown";
}

absl::StatusOr<BehaviorKind> ParseBehaviorKind(absl::string_view name) {
  for (const auto& [k, n] : kNames) {
    if (n == name) return k;
  }
  return absl::InvalidArgumentError(absl::StrCat("unknown behavior '", name, "'"));
}

std::vector<BehaviorKind> AdversarialKinds() {
  return {BehaviorKind::kSubstituteKey, BehaviorKind::kStripRatings,
          BehaviorKind::kForgeStats, BehaviorKind::kReplayRemovedCard,
          BehaviorKind::kImpostorCard};
}

ApiResponse AdversarialServer::Handle(const ApiRequest& request) {
  ApiResponse honest = honest_(request);
  if (!armed_ || behavior_.kind == BehaviorKind::kHonest ||
      request.method != "GET" || request.path != paths::kLookup) {
    return honest;
  }
  auto address = ContactAddress::Parse(request.Query("address"));
  if (!address.ok() || *address != behavior_.target) return honest;
  absl::StatusOr<ApiResponse> tampered = Tamper(request, std::move(honest));
  if (!tampered.ok()) return ErrorResponse(tampered.status());
  return *std::move(tampered);
}

absl::StatusOr<ApiResponse> AdversarialServer::Tamper(const ApiRequest& request,
                                                      ApiResponse honest) {
  json body;
  switch (behavior_.kind) {
    case BehaviorKind::kHonest:
      return honest;
    case BehaviorKind::kSubstituteKey: {
      if (!behavior_.spared_client_id.empty() &&
          request.Header(kClientIdHeader) == behavior_.spared_client_id) {
        return honest;
      }
      if (!payload_.fake_card) return MissingPayload("a substitute card");
      AMAKEY_ASSIGN_OR_RETURN(body, ConsistentLookup(*payload_.fake_card, {}));
      break;
    }
    case BehaviorKind::kImpostorCard: {
      if (!payload_.fake_card) return MissingPayload("an impostor card");
      AMAKEY_ASSIGN_OR_RETURN(
          body, ConsistentLookup(*payload_.fake_card, payload_.forged_ratings));
      break;
    }
    case BehaviorKind::kStripRatings: {
      if (honest.status != 200) return honest;
      AMAKEY_ASSIGN_OR_RETURN(body, ParseJson(honest.body));
      body["ratings"] = json::array();
      break;
    }
    case BehaviorKind::kForgeStats: {
      if (honest.status != 200) return honest;
      AMAKEY_ASSIGN_OR_RETURN(body, ParseJson(honest.body));
      const int64_t served = static_cast<int64_t>(body["ratings"].size());
      const int64_t s1 = std::max<int64_t>(behavior_.forged_s1, served + 1);
      body["stats"] = {{"s1", s1}, {"s2", s1}, {"s3", 0}, {"s4", s1},
                       {"s5", 0},  {"s6", s1}, {"s7", 0}};
      break;
    }
    case BehaviorKind::kReplayRemovedCard: {
      if (!payload_.replayed_lookup) return MissingPayload("a captured lookup");
      body = *payload_.replayed_lookup;
      break;
    }
  }
  return JsonResponse(200, body);
}

}  // namespace amakey::harness
