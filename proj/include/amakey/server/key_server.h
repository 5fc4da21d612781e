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

#ifndef AMAKEY_SERVER_KEY_SERVER_H_
#define AMAKEY_SERVER_KEY_SERVER_H_

#include <array>
#include <mutex>
#include <string>

#include "absl/status/status.h"
#include "absl/status/statusor.h"
#include "absl/strings/string_view.h"
#include "amakey/core/cards.h"
#include "amakey/core/contact_address.h"
#include "amakey/core/time.h"
#include "amakey/core/wire.h"
#include "amakey/server/challenge.h"
#include "amakey/server/delivery.h"
#include "amakey/server/store.h"

namespace amakey {

struct RegistrationAck {
  ContactAddress address;
  Timestamp nonce_expires_at;
};

// Registration, lookup, rating and removal over a Store. Mutations for one
// address are serialized; reads run concurrently.
//
// Error codes:
//   InvalidArgument     malformed or self-inconsistent input
//   PermissionDenied    signature or challenge does not check out
//   NotFound            no such verified address, or unknown/expired nonce
//   AlreadyExists       address already has a verified registration
//   FailedPrecondition  rating against a stale card, or out of order
class KeyServer {
 public:
  KeyServer(Store& store, DeliveryChannel& delivery,
            ChallengeProvider& challenges, Clock clock);

  absl::StatusOr<RegistrationAck> BeginRegistration(
      const SignedIdentityCard& signed_card);
  absl::Status ConfirmRegistration(absl::string_view nonce);

  absl::StatusOr<LookupResponse> Lookup(const ContactAddress& address) const;

  PublicChallenge IssueChallenge();
  absl::Status SubmitRating(const SignedRatingCard& signed_rating,
                            absl::string_view challenge_id,
                            absl::string_view challenge_answer);

  absl::Status RemoveSigned(const ContactAddress& address,
                            const SignedRemovalRequest& request);
  absl::Status BeginRemovalByAddress(const ContactAddress& address);
  absl::Status ConfirmRemoval(absl::string_view nonce);

  Timestamp Now() const { return clock_(); }

 private:
  static constexpr size_t kStripes = 64;
  std::mutex& StripeFor(const ContactAddress& address) const;
  // Locks the stripes of both addresses in a fixed order.
  class PairLock;

  absl::StatusOr<RegistrationRecord> VerifiedRecord(
      const ContactAddress& address) const;

  Store& store_;
  DeliveryChannel& delivery_;
  ChallengeProvider& challenges_;
  Clock clock_;
  mutable std::array<std::mutex, kStripes> stripes_;
};

}  // namespace amakey

#endif  // AMAKEY_SERVER_KEY_SERVER_H_
