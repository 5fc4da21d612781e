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

#ifndef AMAKEY_CLIENT_LOCAL_BRIDGE_H_
#define AMAKEY_CLIENT_LOCAL_BRIDGE_H_

#include <memory>
#include <string>

#include "absl/status/statusor.h"
#include "amakey/client/key_client.h"
#include "amakey/core/trust.h"
#include "amakey/net/api.h"
#include "amakey/net/http.h"

namespace amakey {

// Loopback HTTP API through which a rating UI drives the client. Private key
// material never leaves this process; the UI only sees public cards,
// findings and challenge puzzles.
//
//   GET  /local/review?address=A
//        200 {address, outcome, card_digest, fingerprint, fingerprint_groups,
//             attestment {kind, value, checklist, meets_mandatory_guidelines},
//             display_name, created_at, stats, discrepancies, questions}
//   GET  /local/challenge
//        200 {challenge_id, puzzle}
//   POST /local/rate
//        {address, card_digest, answers {identity, hash_match, authentic},
//         comment, challenge_id, challenge_answer}
//        201 {accepted: true}; 409 when the card changed since review
class LocalBridge {
 public:
  LocalBridge(KeyClient& client, TrustPolicy policy)
      : client_(client), policy_(policy) {}

  ApiResponse Handle(const ApiRequest& request);
  ApiHandler AsHandler() {
    return [this](const ApiRequest& r) { return Handle(r); };
  }

 private:
  ApiResponse Review(const ApiRequest& request);
  ApiResponse Challenge();
  ApiResponse Rate(const ApiRequest& request);

  KeyClient& client_;
  TrustPolicy policy_;
};

// Serves a LocalBridge on 127.0.0.1 only.
class LocalBridgeServer {
 public:
  explicit LocalBridgeServer(LocalBridge& bridge);
  absl::StatusOr<int> Start(int port);
  absl::Status Run(int port);
  void Stop();

 private:
  std::unique_ptr<HttpServer> server_;
};

inline constexpr absl::string_view kLoopbackHost = "127.0.0.1";

}  // namespace amakey

#endif  // AMAKEY_CLIENT_LOCAL_BRIDGE_H_
