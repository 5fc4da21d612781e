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

#include "amakey/server/api.h"

#include <string>

#include "amakey/core/canonical.h"
#include "amakey/core/status_macros.h"
#include "amakey/core/wire.h"
#include "amakey/net/protocol.h"

namespace amakey {
namespace {

using json = nlohmann::json;

ApiResponse Respond(const absl::Status& status, int ok_code, const json& body) {
  if (!status.ok()) return ErrorResponse(status);
  return JsonResponse(ok_code, body);
}

absl::StatusOr<ContactAddress> AddressParam(const json& value) {
  if (value.is_string()) return ContactAddress::Parse(value.get<std::string>());
  if (value.is_object()) return AddressFromJson(value);
  return absl::InvalidArgumentError("address must be a string or object");
}

absl::StatusOr<json> Member(const json& body, const char* key) {
  auto it = body.find(key);
  if (it == body.end()) {
    return absl::InvalidArgumentError(std::string("missing field ") + key);
  }
  return *it;
}

}  // namespace

ApiResponse KeyServerApi::Handle(const ApiRequest& request) {
  const std::string& p = request.path;
  const bool get = request.method == "GET";
  const bool post = request.method == "POST";
  if (post && p == paths::kRegister) return Register(request);
  if (get && p == paths::kVerify) return Verify(request);
  if (get && p == paths::kLookup) return Lookup(request);
  if (get && p == paths::kChallenge) return Challenge();
  if (post && p == paths::kRating) return Rating(request);
  if (post && p == paths::kRemove) return Remove(request);
  if (post && p == paths::kRemoveBegin) return RemoveBegin(request);
  if (post && p == paths::kRemoveConfirm) return RemoveConfirm(request);
  return ErrorResponse(absl::NotFoundError("no route for " + request.method + " " + p));
}

ApiResponse KeyServerApi::Register(const ApiRequest& request) {
  auto run = [&]() -> absl::StatusOr<json> {
    AMAKEY_ASSIGN_OR_RETURN(json body, ParseJsonBody(request.body));
    AMAKEY_ASSIGN_OR_RETURN(json card, Member(body, "signed_identity_card"));
    AMAKEY_ASSIGN_OR_RETURN(SignedIdentityCard signed_card,
                            SignedIdentityCardFromWire(card));
    AMAKEY_ASSIGN_OR_RETURN(RegistrationAck ack,
                            server_.BeginRegistration(signed_card));
    return json{{"pending", true},
                {"address", ack.address.ToString()},
                {"nonce_expires_at", FormatRfc3339(ack.nonce_expires_at)}};
  };
  auto result = run();
  return Respond(result.status(), 202, result.ok() ? *result : json());
}

ApiResponse KeyServerApi::Verify(const ApiRequest& request) {
  return Respond(server_.ConfirmRegistration(request.Query("nonce")), 200,
                 {{"verified", true}});
}

ApiResponse KeyServerApi::Lookup(const ApiRequest& request) {
  auto run = [&]() -> absl::StatusOr<json> {
    AMAKEY_ASSIGN_OR_RETURN(ContactAddress address,
                            ContactAddress::Parse(request.Query("address")));
    AMAKEY_ASSIGN_OR_RETURN(LookupResponse response, server_.Lookup(address));
    return ToWire(response);
  };
  auto result = run();
  return Respond(result.status(), 200, result.ok() ? *result : json());
}

ApiResponse KeyServerApi::Challenge() {
  const PublicChallenge c = server_.IssueChallenge();
  return JsonResponse(200, {{"challenge_id", c.challenge_id},
                            {"puzzle", c.puzzle},
                            {"expires_at", FormatRfc3339(c.expires_at)}});
}

ApiResponse KeyServerApi::Rating(const ApiRequest& request) {
  auto run = [&]() -> absl::Status {
    AMAKEY_ASSIGN_OR_RETURN(json body, ParseJsonBody(request.body));
    AMAKEY_ASSIGN_OR_RETURN(json rating, Member(body, "signed_rating_card"));
    AMAKEY_ASSIGN_OR_RETURN(SignedRatingCard signed_rating,
                            SignedRatingCardFromWire(rating));
    AMAKEY_ASSIGN_OR_RETURN(std::string id, GetString(body, "challenge_id"));
    AMAKEY_ASSIGN_OR_RETURN(std::string answer, GetString(body, "challenge_answer"));
    return server_.SubmitRating(signed_rating, id, answer);
  };
  return Respond(run(), 201, {{"accepted", true}});
}

ApiResponse KeyServerApi::Remove(const ApiRequest& request) {
  auto run = [&]() -> absl::Status {
    AMAKEY_ASSIGN_OR_RETURN(json body, ParseJsonBody(request.body));
    AMAKEY_ASSIGN_OR_RETURN(json address_json, Member(body, "address"));
    AMAKEY_ASSIGN_OR_RETURN(ContactAddress address, AddressParam(address_json));
    AMAKEY_ASSIGN_OR_RETURN(json signed_request,
                            Member(body, "signed_removal_request"));
    AMAKEY_ASSIGN_OR_RETURN(SignedRemovalRequest removal,
                            SignedRemovalRequestFromWire(signed_request));
    return server_.RemoveSigned(address, removal);
  };
  return Respond(run(), 200, {{"removed", true}});
}

ApiResponse KeyServerApi::RemoveBegin(const ApiRequest& request) {
  auto run = [&]() -> absl::Status {
    AMAKEY_ASSIGN_OR_RETURN(json body, ParseJsonBody(request.body));
    AMAKEY_ASSIGN_OR_RETURN(json address_json, Member(body, "address"));
    AMAKEY_ASSIGN_OR_RETURN(ContactAddress address, AddressParam(address_json));
    return server_.BeginRemovalByAddress(address);
  };
  return Respond(run(), 202, {{"pending", true}});
}

ApiResponse KeyServerApi::RemoveConfirm(const ApiRequest& request) {
  auto run = [&]() -> absl::Status {
    std::string nonce = request.Query("nonce");
    if (nonce.empty()) {
      AMAKEY_ASSIGN_OR_RETURN(json body, ParseJsonBody(request.body));
      AMAKEY_ASSIGN_OR_RETURN(nonce, GetString(body, "nonce"));
    }
    return server_.ConfirmRemoval(nonce);
  };
  return Respond(run(), 200, {{"removed", true}});
}

}  // namespace amakey
