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

#include "amakey/server/key_server.h"

#include <functional>
#include <utility>

#include "absl/strings/str_cat.h"
#include "amakey/core/canonical.h"
#include "amakey/core/fingerprint.h"
#include "amakey/core/nonce.h"
#include "amakey/core/signing.h"
#include "amakey/core/stats.h"
#include "amakey/core/status_macros.h"

namespace amakey {
namespace {

absl::Status UnknownNonce() {
  return absl::NotFoundError("unknown, used or expired nonce");
}

}  // namespace

class KeyServer::PairLock {
 public:
  PairLock(const KeyServer& server, const ContactAddress& a,
           const ContactAddress& b) {
    std::mutex* first = &server.StripeFor(a);
    std::mutex* second = &server.StripeFor(b);
    if (std::less<std::mutex*>()(second, first)) std::swap(first, second);
    first_ = std::unique_lock(*first);
    if (second != first) second_ = std::unique_lock(*second);
  }

 private:
  std::unique_lock<std::mutex> first_;
  std::unique_lock<std::mutex> second_;
};

KeyServer::KeyServer(Store& store, DeliveryChannel& delivery,
                     ChallengeProvider& challenges, Clock clock)
    : store_(store),
      delivery_(delivery),
      challenges_(challenges),
      clock_(std::move(clock)) {}

std::mutex& KeyServer::StripeFor(const ContactAddress& address) const {
  return stripes_[std::hash<std::string>()(address.ToString()) % kStripes];
}

absl::StatusOr<RegistrationRecord> KeyServer::VerifiedRecord(
    const ContactAddress& address) const {
  std::optional<RegistrationRecord> record = store_.GetRecord(address);
  if (!record || record->state != RegistrationState::kVerified) {
    return absl::NotFoundError(
        absl::StrCat("no verified registration for ", address.ToString()));
  }
  return *std::move(record);
}

absl::StatusOr<RegistrationAck> KeyServer::BeginRegistration(
    const SignedIdentityCard& signed_card) {
  if (!VerifyIdentityCard(signed_card)) {
    return absl::InvalidArgumentError(
        "identity card is malformed or its signature does not verify");
  }
  const ContactAddress& address = signed_card.card.contact_address;
  std::lock_guard lock(StripeFor(address));
  std::optional<RegistrationRecord> existing = store_.GetRecord(address);
  if (existing && existing->state == RegistrationState::kVerified) {
    return absl::AlreadyExistsError(absl::StrCat(
        address.ToString(), " is already registered; remove it first"));
  }
  const Timestamp now = clock_();
  Nonce nonce = GenerateNonce(NoncePurpose::kRegister, now);
  RegistrationRecord record{signed_card, RegistrationState::kPending, nonce, now,
                            std::nullopt};
  AMAKEY_RETURN_IF_ERROR(store_.PutRecord(record));
  AMAKEY_RETURN_IF_ERROR(delivery_.Deliver(
      DeliveryMessage{address, NoncePurpose::kRegister, nonce.value,
                      absl::StrCat("/v1/verify?nonce=", nonce.value), now}));
  return RegistrationAck{address, nonce.issued_at + kNonceLifetime};
}

absl::Status KeyServer::ConfirmRegistration(absl::string_view nonce) {
  if (!IsWellFormedNonce(nonce)) {
    return absl::InvalidArgumentError("nonce must be 32 lowercase hex characters");
  }
  const std::string value(nonce);
  std::optional<ContactAddress> address = store_.FindPendingNonce(value);
  if (!address) return UnknownNonce();
  std::lock_guard lock(StripeFor(*address));
  std::optional<RegistrationRecord> record = store_.GetRecord(*address);
  const Timestamp now = clock_();
  if (!record || record->state != RegistrationState::kPending ||
      !record->pending_nonce || record->pending_nonce->value != value ||
      record->pending_nonce->purpose != NoncePurpose::kRegister ||
      record->pending_nonce->ExpiredAt(now)) {
    return UnknownNonce();
  }
  record->state = RegistrationState::kVerified;
  record->pending_nonce.reset();
  record->verified_at = now;
  return store_.PutRecord(*record);
}

absl::StatusOr<LookupResponse> KeyServer::Lookup(
    const ContactAddress& address) const {
  AMAKEY_ASSIGN_OR_RETURN(RegistrationRecord record, VerifiedRecord(address));
  LookupResponse response;
  response.signed_card = std::move(record.signed_card);
  for (StoredRating& stored : store_.RatingsFor(address)) {
    if (stored.signed_rating.rating.subject_card == response.signed_card) {
      response.ratings.push_back(std::move(stored.signed_rating));
    }
  }
  response.stats = Aggregate(response.ratings);
  AMAKEY_ASSIGN_OR_RETURN(KeyFingerprint fp,
                          Fingerprint(response.signed_card.card.public_key));
  response.fingerprint = fp.hex();
  return response;
}

PublicChallenge KeyServer::IssueChallenge() { return challenges_.Issue(clock_()); }

absl::Status KeyServer::SubmitRating(const SignedRatingCard& signed_rating,
                                     absl::string_view challenge_id,
                                     absl::string_view challenge_answer) {
  if (!challenges_.Redeem(challenge_id, challenge_answer, clock_())) {
    return absl::PermissionDeniedError(
        "challenge answer is wrong, expired or already used");
  }
  const RatingCard& rating = signed_rating.rating;
  AMAKEY_RETURN_IF_ERROR(ValidateRatingCard(rating));
  const ContactAddress& rater = rating.rater_address;
  const ContactAddress& subject = rating.subject_card.card.contact_address;
  if (rater == subject) {
    return absl::InvalidArgumentError("an address cannot rate its own card");
  }

  PairLock lock(*this, rater, subject);
  absl::StatusOr<RegistrationRecord> rater_record = VerifiedRecord(rater);
  if (!rater_record.ok()) {
    return absl::FailedPreconditionError(absl::StrCat(
        "rater ", rater.ToString(), " has no verified registration"));
  }
  if (!VerifyRatingCard(signed_rating, rater_record->signed_card.card.public_key)) {
    return absl::PermissionDeniedError(
        "rating signature does not verify under the rater's registered key");
  }
  AMAKEY_ASSIGN_OR_RETURN(RegistrationRecord subject_record, VerifiedRecord(subject));
  if (!(rating.subject_card == subject_record.signed_card)) {
    return absl::FailedPreconditionError(
        "rating is for a card that is no longer the registered one");
  }
  for (const StoredRating& stored : store_.RatingsFor(subject)) {
    if (stored.rater() == rater &&
        stored.signed_rating.rating.rated_at >= rating.rated_at) {
      return absl::FailedPreconditionError(
          "a rating from this rater with the same or later time is stored");
    }
  }
  return store_.PutRating(StoredRating{signed_rating, clock_()});
}

absl::Status KeyServer::RemoveSigned(const ContactAddress& address,
                                     const SignedRemovalRequest& request) {
  AMAKEY_RETURN_IF_ERROR(ValidateRemovalRequest(request.request));
  if (request.request.address != address) {
    return absl::InvalidArgumentError("removal request names a different address");
  }
  std::lock_guard lock(StripeFor(address));
  AMAKEY_ASSIGN_OR_RETURN(RegistrationRecord record, VerifiedRecord(address));
  if (!VerifyRemovalRequest(request, record.signed_card.card.public_key)) {
    return absl::PermissionDeniedError(
        "removal request signature does not match the key on file");
  }
  AMAKEY_ASSIGN_OR_RETURN(std::string digest, CardDigest(record.signed_card.card));
  if (request.request.card_digest != digest) {
    return absl::PermissionDeniedError(
        "removal request is for a different version of the card");
  }
  return store_.DeleteAddress(address);
}

absl::Status KeyServer::BeginRemovalByAddress(const ContactAddress& address) {
  std::lock_guard lock(StripeFor(address));
  AMAKEY_RETURN_IF_ERROR(VerifiedRecord(address).status());
  const Timestamp now = clock_();
  Nonce nonce = GenerateNonce(NoncePurpose::kRemove, now);
  AMAKEY_RETURN_IF_ERROR(store_.PutRemovalTicket(RemovalTicket{address, nonce}));
  return delivery_.Deliver(
      DeliveryMessage{address, NoncePurpose::kRemove, nonce.value,
                      absl::StrCat("/v1/remove/confirm?nonce=", nonce.value), now});
}

absl::Status KeyServer::ConfirmRemoval(absl::string_view nonce) {
  if (!IsWellFormedNonce(nonce)) {
    return absl::InvalidArgumentError("nonce must be 32 lowercase hex characters");
  }
  const std::string value(nonce);
  std::optional<RemovalTicket> ticket = store_.GetRemovalTicket(value);
  if (!ticket) return UnknownNonce();
  std::lock_guard lock(StripeFor(ticket->address));
  ticket = store_.GetRemovalTicket(value);
  if (!ticket || ticket->nonce.purpose != NoncePurpose::kRemove) {
    return UnknownNonce();
  }
  if (ticket->nonce.ExpiredAt(clock_())) {
    AMAKEY_RETURN_IF_ERROR(store_.DeleteRemovalTicket(value));
    return UnknownNonce();
  }
  return store_.DeleteAddress(ticket->address);
}

}  // namespace amakey
