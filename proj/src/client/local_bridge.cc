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

#include "amakey/client/local_bridge.h"

#include "absl/strings/match.h"
#include "absl/strings/str_cat.h"
#include "amakey/core/canonical.h"
#include "amakey/core/fingerprint.h"
#include "amakey/core/status_macros.h"
#include "amakey/net/protocol.h"

namespace amakey {
namespace {

using json = nlohmann::json;

bool IsLoopbackPeer(const std::string& remote) {
  return remote.empty() || remote == "127.0.0.1" || remote == "::1" ||
         absl::StartsWith(remote, "::ffff:127.");
}

json Questions() {
  json out = json::array();
  for (const RatingQuestion& q : RatingQuestions()) {
    out.push_back({{"id", q.id}, {"text", q.text}});
  }
  return out;
}

absl::StatusOr<TriState> Answer(const json& answers, const char* key) {
  AMAKEY_ASSIGN_OR_RETURN(std::string text, GetString(answers, key));
  return ParseTriState(text);
}

}  // namespace

ApiResponse LocalBridge::Handle(const ApiRequest& request) {
  if (!IsLoopbackPeer(request.remote_addr)) {
    return ErrorResponse(absl::PermissionDeniedError("loopback clients only"));
  }
  if (request.method == "GET" && request.path == paths::kLocalReview) {
    return Review(request);
  }
  if (request.method == "GET" && request.path == paths::kLocalChallenge) {
    return Challenge();
  }
  if (request.method == "POST" && request.path == paths::kLocalRate) {
    return Rate(request);
  }
  return ErrorResponse(absl::NotFoundError("no route for " + request.path));
}

ApiResponse LocalBridge::Review(const ApiRequest& request) {
  auto run = [&]() -> absl::StatusOr<json> {
    AMAKEY_ASSIGN_OR_RETURN(ContactAddress address,
                            ContactAddress::Parse(request.Query("address")));
    AMAKEY_ASSIGN_OR_RETURN(TrustReport report,
                            client_.FetchAndValidate(address, policy_));
    json out = {{"address", address.ToString()},
                {"outcome", std::string(TrustOutcomeName(report.outcome))},
                {"questions", Questions()}};
    json report_json = ToJson(report);
    out["stats"] = report_json["recomputed_stats"];
    out["claimed_stats"] = report_json["claimed_stats"];
    out["discrepancies"] = report_json["discrepancies"];
    out["fingerprint"] = report.fingerprint;
    if (report.card) {
      const IdentityCard& card = report.card->card;
      AMAKEY_ASSIGN_OR_RETURN(out["card_digest"], CardDigest(card));
      if (auto fp = KeyFingerprint::FromHex(report.fingerprint); fp.ok()) {
        AMAKEY_ASSIGN_OR_RETURN(out["fingerprint_groups"],
                                FormatFingerprintGroups(*fp, 4));
      }
      json attestment = ToJson(card)["attestment"];
      attestment["meets_mandatory_guidelines"] =
          MeetsMandatoryGuidelines(card.attestment.checklist);
      out["attestment"] = std::move(attestment);
      out["display_name"] =
          card.display_name ? json(*card.display_name) : json(nullptr);
      out["created_at"] = FormatRfc3339(card.created_at);
      out["key_algorithm"] = card.public_key.algorithm;
    }
    return out;
  };
  absl::StatusOr<json> out = run();
  if (!out.ok()) return ErrorResponse(out.status());
  return JsonResponse(200, *out);
}

ApiResponse LocalBridge::Challenge() {
  absl::StatusOr<PendingChallenge> challenge = client_.FetchChallenge();
  if (!challenge.ok()) return ErrorResponse(challenge.status());
  return JsonResponse(200, {{"challenge_id", challenge->challenge_id},
                            {"puzzle", challenge->puzzle}});
}

ApiResponse LocalBridge::Rate(const ApiRequest& request) {
  auto run = [&]() -> absl::Status {
    AMAKEY_ASSIGN_OR_RETURN(json body, ParseJsonBody(request.body));
    AMAKEY_ASSIGN_OR_RETURN(std::string address_text, GetString(body, "address"));
    AMAKEY_ASSIGN_OR_RETURN(ContactAddress address, ContactAddress::Parse(address_text));
    AMAKEY_ASSIGN_OR_RETURN(std::string reviewed_digest, GetString(body, "card_digest"));
    AMAKEY_ASSIGN_OR_RETURN(const json* answers_json, GetObject(body, "answers"));
    RatingAnswers answers;
    AMAKEY_ASSIGN_OR_RETURN(answers.identity, Answer(*answers_json, "identity"));
    AMAKEY_ASSIGN_OR_RETURN(answers.hash_match, Answer(*answers_json, "hash_match"));
    AMAKEY_ASSIGN_OR_RETURN(answers.authentic, Answer(*answers_json, "authentic"));
    if (body.contains("comment")) {
      AMAKEY_ASSIGN_OR_RETURN(answers.comment, GetString(body, "comment"));
    }
    PendingChallenge challenge;
    AMAKEY_ASSIGN_OR_RETURN(challenge.challenge_id, GetString(body, "challenge_id"));
    AMAKEY_ASSIGN_OR_RETURN(std::string answer, GetString(body, "challenge_answer"));

    // Rate only the card the person actually reviewed.
    AMAKEY_ASSIGN_OR_RETURN(TrustReport report,
                            client_.FetchAndValidate(address, policy_));
    if (report.outcome == TrustOutcome::kInvalid || !report.card) {
      return absl::FailedPreconditionError(
          "the keyserver response for this address does not verify");
    }
    AMAKEY_ASSIGN_OR_RETURN(std::string digest, CardDigest(report.card->card));
    if (digest != reviewed_digest) {
      return absl::FailedPreconditionError("the card changed since it was reviewed");
    }
    return client_.SubmitRating(*report.card, answers, challenge, answer);
  };
  absl::Status status = run();
  if (!status.ok()) return ErrorResponse(status);
  return JsonResponse(201, {{"accepted", true}});
}

LocalBridgeServer::LocalBridgeServer(LocalBridge& bridge)
    : server_(std::make_unique<HttpServer>(bridge.AsHandler())) {}

absl::StatusOr<int> LocalBridgeServer::Start(int port) {
  return server_->Start(std::string(kLoopbackHost), port);
}

absl::Status LocalBridgeServer::Run(int port) {
  return server_->Run(std::string(kLoopbackHost), port);
}

void LocalBridgeServer::Stop() { server_->Stop(); }

}  // namespace amakey
