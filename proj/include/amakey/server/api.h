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

#ifndef AMAKEY_SERVER_API_H_
#define AMAKEY_SERVER_API_H_

#include "amakey/net/api.h"
#include "amakey/server/key_server.h"

namespace amakey {

// Maps the keyserver HTTP API onto a KeyServer:
//
//   POST /v1/register        {signed_identity_card}          202 {pending}
//   GET  /v1/verify?nonce=   200 {verified}
//   GET  /v1/lookup?address= 200 {signed_identity_card, fingerprint, ratings, stats}
//   GET  /v1/challenge       200 {challenge_id, puzzle, expires_at}
//   POST /v1/rating          {signed_rating_card, challenge_id, challenge_answer}  201
//   POST /v1/remove          {address, signed_removal_request}  200
//   POST /v1/remove/begin    {address}                          202
//   POST /v1/remove/confirm  {nonce} (or ?nonce=)               200
class KeyServerApi {
 public:
  explicit KeyServerApi(KeyServer& server) : server_(server) {}

  ApiResponse Handle(const ApiRequest& request);
  ApiHandler AsHandler() {
    return [this](const ApiRequest& r) { return Handle(r); };
  }

 private:
  ApiResponse Register(const ApiRequest& request);
  ApiResponse Verify(const ApiRequest& request);
  ApiResponse Lookup(const ApiRequest& request);
  ApiResponse Challenge();
  ApiResponse Rating(const ApiRequest& request);
  ApiResponse Remove(const ApiRequest& request);
  ApiResponse RemoveBegin(const ApiRequest& request);
  ApiResponse RemoveConfirm(const ApiRequest& request);

  KeyServer& server_;
};

}  // namespace amakey

#endif  // AMAKEY_SERVER_API_H_
