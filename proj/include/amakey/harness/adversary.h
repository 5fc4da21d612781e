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

#ifndef AMAKEY_HARNESS_ADVERSARY_H_
#define AMAKEY_HARNESS_ADVERSARY_H_

#include <optional>
#include <string>
#include <vector>

#include "absl/status/statusor.h"
#include "absl/strings/string_view.h"
#include "amakey/core/cards.h"
#include "amakey/core/contact_address.h"
#include "amakey/net/api.h"
#include "json.hpp"

namespace amakey::harness {

enum class BehaviorKind {
  kHonest,
  kSubstituteKey,
  kStripRatings,
  kForgeStats,
  kReplayRemovedCard,
  kImpostorCard,
};

// snake_case names as used in scripts and reports.
absl::string_view BehaviorKindName(BehaviorKind kind);
absl::StatusOr<BehaviorKind> ParseBehaviorKind(absl::string_view name);
// The five misbehaviors, without the honest control.
std::vector<BehaviorKind> AdversarialKinds();

struct AdversarialBehavior {
  BehaviorKind kind = BehaviorKind::kHonest;
  ContactAddress target;
  // forge_stats: claimed s1 (at least one more than the ratings served).
  int forged_s1 = 10;
  // impostor_card: verifiable ratings of the impostor card by sybil raters.
  int forged_ratings = 0;
  // substitute_key: identified requests carrying this client id get the
  // genuine card, so only anonymous self-queries reveal the substitution.
  std::string spared_client_id;
};

// Material an adversary serves in place of the honest answer.
struct AdversarialPayload {
  // substitute_key and impostor_card.
  std::optional<SignedIdentityCard> fake_card;
  // impostor_card.
  std::vector<SignedRatingCard> forged_ratings;
  // replay_removed_card: a lookup body captured before removal.
  std::optional<nlohmann::json> replayed_lookup;
};

// Keyserver front end that answers honestly except for lookups of the
// target address once armed.
class AdversarialServer {
 public:
  AdversarialServer(ApiHandler honest, AdversarialBehavior behavior)
      : honest_(std::move(honest)), behavior_(std::move(behavior)) {}

  void set_payload(AdversarialPayload payload) { payload_ = std::move(payload); }
  void Arm() { armed_ = true; }
  bool armed() const { return armed_; }
  const AdversarialBehavior& behavior() const { return behavior_; }

  ApiResponse Handle(const ApiRequest& request);
  ApiHandler AsHandler() {
    return [this](const ApiRequest& r) { return Handle(r); };
  }

 private:
  absl::StatusOr<ApiResponse> Tamper(const ApiRequest& request,
                                     ApiResponse honest);

  ApiHandler honest_;
  AdversarialBehavior behavior_;
  AdversarialPayload payload_;
  bool armed_ = false;
};

}  // namespace amakey::harness

#endif  // AMAKEY_HARNESS_ADVERSARY_H_
