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

#ifndef AMAKEY_CLIENT_KEY_CLIENT_H_
#define AMAKEY_CLIENT_KEY_CLIENT_H_

#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "absl/status/status.h"
#include "absl/status/statusor.h"
#include "amakey/client/card_cache.h"
#include "amakey/client/findings.h"
#include "amakey/client/transport.h"
#include "amakey/core/cards.h"
#include "amakey/core/keys.h"
#include "amakey/core/stats.h"
#include "amakey/core/time.h"
#include "amakey/core/trust.h"
#include "json.hpp"

namespace amakey {

enum class TrustOutcome { kAutoTrusted, kNeedsHumanReview, kInvalid };
absl::string_view TrustOutcomeName(TrustOutcome outcome);

struct TrustReport {
  TrustOutcome outcome = TrustOutcome::kInvalid;
  std::optional<SignedIdentityCard> card;
  std::string fingerprint;  // recomputed, when the card parsed
  int verified_rating_count = 0;
  int served_rating_count = 0;
  AggregateStats recomputed_stats;
  std::optional<AggregateStats> claimed_stats;
  // Empty whenever outcome is kAutoTrusted.
  std::vector<Finding> discrepancies;
  // Only meaningful without discrepancies.
  TrustDecision decision = TrustDecision::kNotTrusted;
};

nlohmann::json ToJson(const TrustReport& report);

enum class SelfCheckResult { kClean, kMitmDetected, kNotRegistered };
absl::string_view SelfCheckResultName(SelfCheckResult result);

struct RatingQuestion {
  std::string id;  // identity, hash_match, authentic
  std::string text;
};

// The three questions a reviewer answers after watching an attestment, in
// RatingAnswers field order.
const std::vector<RatingQuestion>& RatingQuestions();

struct RatingAnswers {
  TriState identity = TriState::kUnsure;
  TriState hash_match = TriState::kUnsure;
  TriState authentic = TriState::kUnsure;
  std::string comment;
};

// Answers a challenge puzzle; in interactive use this asks the human.
using ChallengeSolver = std::function<absl::StatusOr<std::string>(absl::string_view)>;

struct PendingChallenge {
  std::string challenge_id;
  std::string puzzle;
};

struct LocalIdentity {
  ContactAddress address;
  KeyPair key;
};

struct KeyClientOptions {
  // Needed to rate, register and remove; lookups work without it.
  const LocalIdentity* identity = nullptr;
  // Consulted for key-change and rollback detection; AutoTrusted cards are
  // written back when cache_auto_trusted is set.
  CardCache* cache = nullptr;
  bool cache_auto_trusted = true;
  Clock clock = SystemClock();
};

// Verifying client. Treats every keyserver response as untrusted input.
class KeyClient {
 public:
  KeyClient(Transport& transport, KeyClientOptions options);

  // NotFound when no key is registered, Unavailable when the server cannot
  // be reached. Everything else, including malicious responses, yields a
  // report.
  absl::StatusOr<TrustReport> FetchAndValidate(const ContactAddress& address,
                                               const TrustPolicy& policy);
  // Caches the card after a person has watched the attestment and accepted.
  absl::StatusOr<CacheEntry> ConfirmAfterReview(const TrustReport& report);

  absl::StatusOr<PendingChallenge> FetchChallenge();
  // Rates exactly `subject` (the card that was reviewed).
  absl::Status SubmitRating(const SignedIdentityCard& subject,
                            const RatingAnswers& answers,
                            const PendingChallenge& challenge,
                            absl::string_view challenge_answer);
  absl::Status ReviewAndRate(const SignedIdentityCard& subject,
                             const RatingAnswers& answers,
                             const ChallengeSolver& solver);

  // Signs `card` with the local key and uploads it.
  absl::Status Register(const IdentityCard& card);
  absl::Status ConfirmRegistration(absl::string_view nonce);
  // Removal signed by the local key of the currently registered card.
  absl::Status RemoveOwnCard();
  absl::Status BeginLostKeyRemoval(const ContactAddress& address);
  absl::Status ConfirmLostKeyRemoval(absl::string_view nonce);

  // Looks up `own_address` over the anonymous profile and compares the
  // served key with `own_key` byte for byte.
  absl::StatusOr<SelfCheckResult> SelfCheck(const ContactAddress& own_address,
                                            const PublicKeyMaterial& own_key);

 private:
  struct RaterKey {
    absl::Status status;
    PublicKeyMaterial key;
  };

  absl::StatusOr<ApiResponse> Call(const ApiRequest& request,
                                   TransportProfile profile);
  absl::StatusOr<nlohmann::json> CallJson(const ApiRequest& request);
  absl::StatusOr<nlohmann::json> LookupJson(const ContactAddress& address,
                                            TransportProfile profile);
  RaterKey FetchRaterKey(const ContactAddress& rater);
  absl::StatusOr<const LocalIdentity*> RequireIdentity() const;

  Transport& transport_;
  KeyClientOptions options_;
};

}  // namespace amakey

#endif  // AMAKEY_CLIENT_KEY_CLIENT_H_
