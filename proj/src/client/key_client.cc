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

#include "amakey/client/key_client.h"

#include <map>
#include <set>

#include "absl/strings/str_cat.h"
#include "amakey/core/canonical.h"
#include "amakey/core/fingerprint.h"
#include "amakey/core/signing.h"
#include "amakey/core/status_macros.h"
#include "amakey/core/wire.h"
#include "amakey/net/protocol.h"

namespace amakey {
namespace {

using json = nlohmann::json;

ApiRequest Get(absl::string_view path, std::map<std::string, std::string> query = {}) {
  ApiRequest request;
  request.path = std::string(path);
  request.query = std::move(query);
  return request;
}

ApiRequest Post(absl::string_view path, const json& body) {
  ApiRequest request;
  request.method = "POST";
  request.path = std::string(path);
  request.body = body.dump();
  return request;
}

json StatsJson(const AggregateStats& s) {
  return {{"s1", s.s1}, {"s2", s.s2}, {"s3", s.s3}, {"s4", s.s4},
          {"s5", s.s5}, {"s6", s.s6}, {"s7", s.s7}};
}

}  // namespace

absl::string_view TrustOutcomeName(TrustOutcome outcome) {
  switch (outcome) {
    case TrustOutcome::kAutoTrusted:
      return "AutoTrusted";
    case TrustOutcome::kNeedsHumanReview:
      return "NeedsHumanReview";
    case TrustOutcome::kInvalid:
      return "Invalid";
  }
  return "unknown";
}

absl::string_view SelfCheckResultName(SelfCheckResult result) {
  switch (result) {
    case SelfCheckResult::kClean:
      return "Clean";
    case SelfCheckResult::kMitmDetected:
      return "MitmDetected";
    case SelfCheckResult::kNotRegistered:
      return "NotRegistered";
  }
  return "unknown";
}

const std::vector<RatingQuestion>& RatingQuestions() {
  static const auto* questions = new std::vector<RatingQuestion>{
      {"identity",
       "Can you recognize the person in this video as the owner of this "
       "contact address?"},
      {"hash_match",
       "Does the key hash spoken and shown in the video match the fingerprint "
       "of this card?"},
      {"authentic",
       "Does the video follow all mandatory recording guidelines and appear "
       "authentic?"}};
  return *questions;
}

json ToJson(const TrustReport& report) {
  json j = {{"outcome", std::string(TrustOutcomeName(report.outcome))},
            {"fingerprint", report.fingerprint},
            {"verified_rating_count", report.verified_rating_count},
            {"served_rating_count", report.served_rating_count},
            {"recomputed_stats", StatsJson(report.recomputed_stats)},
            {"decision", std::string(TrustDecisionName(report.decision))}};
  j["claimed_stats"] =
      report.claimed_stats ? StatsJson(*report.claimed_stats) : json(nullptr);
  json findings = json::array();
  for (const Finding& f : report.discrepancies) findings.push_back(ToJson(f));
  j["discrepancies"] = std::move(findings);
  j["card"] = report.card ? ToJson(*report.card) : json(nullptr);
  return j;
}

KeyClient::KeyClient(Transport& transport, KeyClientOptions options)
    : transport_(transport), options_(std::move(options)) {}

absl::StatusOr<ApiResponse> KeyClient::Call(const ApiRequest& request,
                                            TransportProfile profile) {
  return transport_.RoundTrip(request, profile);
}

absl::StatusOr<json> KeyClient::CallJson(const ApiRequest& request) {
  AMAKEY_ASSIGN_OR_RETURN(ApiResponse response,
                          Call(request, TransportProfile::kIdentified));
  AMAKEY_RETURN_IF_ERROR(StatusFromResponse(response));
  auto body = json::parse(response.body, nullptr, false);
  if (body.is_discarded()) {
    return absl::DataLossError("keyserver response is not JSON");
  }
  return body;
}

absl::StatusOr<json> KeyClient::LookupJson(const ContactAddress& address,
                                           TransportProfile profile) {
  AMAKEY_ASSIGN_OR_RETURN(
      ApiResponse response,
      Call(Get(paths::kLookup, {{"address", address.ToString()}}), profile));
  if (response.status == 404) {
    return absl::NotFoundError(
        absl::StrCat("no key registered for ", address.ToString()));
  }
  AMAKEY_RETURN_IF_ERROR(StatusFromResponse(response));
  auto body = json::parse(response.body, nullptr, false);
  if (body.is_discarded() || !body.is_object()) {
    return json(nullptr);  // reported as malformed by the caller
  }
  return body;
}

KeyClient::RaterKey KeyClient::FetchRaterKey(const ContactAddress& rater) {
  absl::StatusOr<json> body = LookupJson(rater, TransportProfile::kIdentified);
  if (!body.ok()) return {body.status(), {}};
  ParsedLookup parsed = ParseLookupWire(*body);
  if (!parsed.signed_card.ok()) return {parsed.signed_card.status(), {}};
  const SignedIdentityCard& card = *parsed.signed_card;
  if (!VerifyIdentityCard(card)) {
    return {absl::DataLossError("rater card signature does not verify"), {}};
  }
  if (card.card.contact_address != rater) {
    return {absl::DataLossError("server returned a card for another address"), {}};
  }
  return {absl::OkStatus(), card.card.public_key};
}

absl::StatusOr<TrustReport> KeyClient::FetchAndValidate(
    const ContactAddress& address, const TrustPolicy& policy) {
  AMAKEY_ASSIGN_OR_RETURN(json body,
                          LookupJson(address, TransportProfile::kIdentified));
  TrustReport report;
  auto flag = [&report](FindingKind kind, std::string detail) {
    report.discrepancies.push_back(Finding{kind, std::move(detail)});
  };
  auto finish = [&]() {
    bool invalid = false;
    for (const Finding& f : report.discrepancies) {
      invalid = invalid || InvalidatesResponse(f.kind);
    }
    if (invalid) {
      report.outcome = TrustOutcome::kInvalid;
    } else if (!report.discrepancies.empty() ||
               report.decision != TrustDecision::kTrusted) {
      report.outcome = TrustOutcome::kNeedsHumanReview;
    } else {
      report.outcome = TrustOutcome::kAutoTrusted;
    }
    return report;
  };

  ParsedLookup parsed = ParseLookupWire(body);
  if (!parsed.signed_card.ok()) {
    flag(FindingKind::kMalformedResponse,
         absl::StrCat("card: ", parsed.signed_card.status().message()));
    return finish();
  }
  const SignedIdentityCard& card = *parsed.signed_card;
  report.card = card;
  if (!VerifyIdentityCard(card)) {
    flag(FindingKind::kBadCardSignature, "identity card self-signature does not verify");
  }
  if (card.card.contact_address != address) {
    flag(FindingKind::kAddressMismatch,
         absl::StrCat("asked for ", address.ToString(), ", got ",
                      card.card.contact_address.ToString()));
  }
  if (absl::StatusOr<KeyFingerprint> fp = Fingerprint(card.card.public_key); fp.ok()) {
    report.fingerprint = fp->hex();
    if (parsed.fingerprint != fp->hex()) {
      flag(FindingKind::kFingerprintMismatch,
           absl::StrCat("server claims ", parsed.fingerprint, ", key hashes to ",
                        fp->hex()));
    }
  } else {
    flag(FindingKind::kFingerprintMismatch, "card key cannot be fingerprinted");
  }

  // Ratings: each must embed this exact card, come from a distinct rater
  // and verify under that rater's registered key (one level deep).
  report.served_rating_count = static_cast<int>(parsed.ratings.size());
  std::vector<SignedRatingCard> verified;
  std::map<ContactAddress, RaterKey> rater_keys;
  std::set<ContactAddress> seen_raters;
  for (size_t i = 0; i < parsed.ratings.size(); ++i) {
    const auto& entry = parsed.ratings[i];
    const std::string where = absl::StrCat("rating ", i);
    if (!entry.ok()) {
      flag(FindingKind::kMalformedRating,
           absl::StrCat(where, ": ", entry.status().message()));
      continue;
    }
    const RatingCard& rating = entry->rating;
    if (!(rating.subject_card == card)) {
      flag(FindingKind::kRatingSubjectMismatch,
           absl::StrCat(where, " rates a different card"));
      continue;
    }
    if (!seen_raters.insert(rating.rater_address).second) {
      flag(FindingKind::kDuplicateRater,
           absl::StrCat(where, ": second rating from ",
                        rating.rater_address.ToString()));
      continue;
    }
    auto it = rater_keys.find(rating.rater_address);
    if (it == rater_keys.end()) {
      it = rater_keys.emplace(rating.rater_address,
                              FetchRaterKey(rating.rater_address)).first;
    }
    if (!it->second.status.ok()) {
      flag(FindingKind::kRaterUnverifiable,
           absl::StrCat(where, " by ", rating.rater_address.ToString(), ": ",
                        it->second.status.message()));
      continue;
    }
    if (!VerifyRatingCard(*entry, it->second.key)) {
      flag(FindingKind::kBadRatingSignature,
           absl::StrCat(where, " by ", rating.rater_address.ToString(),
                        " does not verify under the rater's key"));
      continue;
    }
    verified.push_back(*entry);
  }
  report.verified_rating_count = static_cast<int>(verified.size());
  report.recomputed_stats = Aggregate(verified);

  if (!parsed.stats.ok()) {
    flag(FindingKind::kMalformedResponse,
         absl::StrCat("stats: ", parsed.stats.status().message()));
  } else {
    report.claimed_stats = *parsed.stats;
    if (!WithinBounds(*parsed.stats)) {
      flag(FindingKind::kStatsOutOfBounds, "claimed stats violate s2+s3 <= s1 etc.");
    }
    if (!(*parsed.stats == report.recomputed_stats)) {
      flag(FindingKind::kStatsMismatch,
           absl::StrCat("server claims s1=", parsed.stats->s1, ", verified ratings give s1=",
                        report.recomputed_stats.s1));
    }
  }

  if (options_.cache != nullptr) {
    CacheLookup cached = options_.cache->Get(address);
    if (cached.tamper) report.discrepancies.push_back(*cached.tamper);
    if (cached.entry && !(cached.entry->signed_card == card)) {
      if (card.card.created_at <= cached.entry->signed_card.card.created_at) {
        flag(FindingKind::kRollback,
             absl::StrCat("server card dated ", FormatRfc3339(card.card.created_at),
                          " is not newer than the cached card dated ",
                          FormatRfc3339(cached.entry->signed_card.card.created_at)));
      } else {
        flag(FindingKind::kKeyChanged,
             "card differs from the locally cached one; watch the new attestment");
      }
    }
  }

  report.decision = DecideTrust(report.recomputed_stats, policy);
  finish();
  if (report.outcome == TrustOutcome::kAutoTrusted && options_.cache != nullptr &&
      options_.cache_auto_trusted) {
    AMAKEY_RETURN_IF_ERROR(options_.cache->Put(card).status());
  }
  return report;
}

absl::StatusOr<CacheEntry> KeyClient::ConfirmAfterReview(const TrustReport& report) {
  if (options_.cache == nullptr) {
    return absl::FailedPreconditionError("no cache configured");
  }
  if (!report.card || report.outcome == TrustOutcome::kInvalid) {
    return absl::FailedPreconditionError("an invalid response cannot be confirmed");
  }
  return options_.cache->Put(*report.card);
}

absl::StatusOr<const LocalIdentity*> KeyClient::RequireIdentity() const {
  if (options_.identity == nullptr) {
    return absl::FailedPreconditionError("no local key configured");
  }
  return options_.identity;
}

absl::StatusOr<PendingChallenge> KeyClient::FetchChallenge() {
  AMAKEY_ASSIGN_OR_RETURN(json body, CallJson(Get(paths::kChallenge)));
  PendingChallenge challenge;
  AMAKEY_ASSIGN_OR_RETURN(challenge.challenge_id, GetString(body, "challenge_id"));
  AMAKEY_ASSIGN_OR_RETURN(challenge.puzzle, GetString(body, "puzzle"));
  return challenge;
}

absl::Status KeyClient::SubmitRating(const SignedIdentityCard& subject,
                                     const RatingAnswers& answers,
                                     const PendingChallenge& challenge,
                                     absl::string_view challenge_answer) {
  AMAKEY_ASSIGN_OR_RETURN(const LocalIdentity* me, RequireIdentity());
  RatingCard rating{answers.identity, answers.hash_match, answers.authentic,
                    answers.comment,  me->address,        subject,
                    options_.clock()};
  AMAKEY_ASSIGN_OR_RETURN(SignedRatingCard signed_rating,
                          SignRatingCard(rating, me->key));
  AMAKEY_ASSIGN_OR_RETURN(json wire, ToWire(signed_rating));
  return CallJson(Post(paths::kRating,
                       {{"signed_rating_card", std::move(wire)},
                        {"challenge_id", challenge.challenge_id},
                        {"challenge_answer", std::string(challenge_answer)}}))
      .status();
}

absl::Status KeyClient::ReviewAndRate(const SignedIdentityCard& subject,
                                      const RatingAnswers& answers,
                                      const ChallengeSolver& solver) {
  AMAKEY_ASSIGN_OR_RETURN(PendingChallenge challenge, FetchChallenge());
  AMAKEY_ASSIGN_OR_RETURN(std::string answer, solver(challenge.puzzle));
  return SubmitRating(subject, answers, challenge, answer);
}

absl::Status KeyClient::Register(const IdentityCard& card) {
  AMAKEY_ASSIGN_OR_RETURN(const LocalIdentity* me, RequireIdentity());
  if (card.contact_address != me->address) {
    return absl::InvalidArgumentError("card address differs from the local identity");
  }
  AMAKEY_ASSIGN_OR_RETURN(SignedIdentityCard signed_card,
                          SignIdentityCard(card, me->key));
  AMAKEY_ASSIGN_OR_RETURN(json wire, ToWire(signed_card));
  return CallJson(Post(paths::kRegister, {{"signed_identity_card", std::move(wire)}}))
      .status();
}

absl::Status KeyClient::ConfirmRegistration(absl::string_view nonce) {
  return CallJson(Get(paths::kVerify, {{"nonce", std::string(nonce)}})).status();
}

absl::Status KeyClient::RemoveOwnCard() {
  AMAKEY_ASSIGN_OR_RETURN(const LocalIdentity* me, RequireIdentity());
  AMAKEY_ASSIGN_OR_RETURN(json body, LookupJson(me->address, TransportProfile::kIdentified));
  ParsedLookup parsed = ParseLookupWire(body);
  AMAKEY_RETURN_IF_ERROR(parsed.signed_card.status());
  if (!(parsed.signed_card->card.public_key == me->key.public_key())) {
    return absl::FailedPreconditionError(
        "the registered card carries a different key; use lost-key removal");
  }
  AMAKEY_ASSIGN_OR_RETURN(std::string digest, CardDigest(parsed.signed_card->card));
  AMAKEY_ASSIGN_OR_RETURN(
      SignedRemovalRequest request,
      SignRemovalRequest(RemovalRequest{me->address, digest, options_.clock()}, me->key));
  AMAKEY_ASSIGN_OR_RETURN(json wire, ToWire(request));
  return CallJson(Post(paths::kRemove, {{"address", me->address.ToString()},
                                        {"signed_removal_request", std::move(wire)}}))
      .status();
}

absl::Status KeyClient::BeginLostKeyRemoval(const ContactAddress& address) {
  return CallJson(Post(paths::kRemoveBegin, {{"address", address.ToString()}})).status();
}

absl::Status KeyClient::ConfirmLostKeyRemoval(absl::string_view nonce) {
  return CallJson(Post(paths::kRemoveConfirm, {{"nonce", std::string(nonce)}})).status();
}

absl::StatusOr<SelfCheckResult> KeyClient::SelfCheck(
    const ContactAddress& own_address, const PublicKeyMaterial& own_key) {
  absl::StatusOr<json> body = LookupJson(own_address, TransportProfile::kAnonymous);
  if (absl::IsNotFound(body.status())) return SelfCheckResult::kNotRegistered;
  AMAKEY_RETURN_IF_ERROR(body.status());
  ParsedLookup parsed = ParseLookupWire(*body);
  if (!parsed.signed_card.ok()) {
    return absl::DataLossError(absl::StrCat("unparseable lookup response: ",
                                            parsed.signed_card.status().message()));
  }
  return parsed.signed_card->card.public_key == own_key
             ? SelfCheckResult::kClean
             : SelfCheckResult::kMitmDetected;
}

}  // namespace amakey
