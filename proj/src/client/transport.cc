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

#include "amakey/client/transport.h"

#include "absl/strings/str_cat.h"
#include "amakey/core/bytes.h"
#include "amakey/core/crypto.h"

namespace amakey {

ApiRequest WithProfile(ApiRequest request, TransportProfile profile,
                       const std::string& client_id) {
  request.headers.erase("user-agent");
  request.headers.erase(std::string(kClientIdHeader));
  if (profile == TransportProfile::kIdentified) {
    request.headers["user-agent"] = std::string(kClientUserAgent);
    if (!client_id.empty()) request.headers[std::string(kClientIdHeader)] = client_id;
  }
  return request;
}

absl::StatusOr<ApiResponse> HttpTransport::RoundTrip(const ApiRequest& request,
                                                     TransportProfile profile) {
  HttpClientOptions http;
  http.timeout = options_.timeout;
  if (profile == TransportProfile::kAnonymous) http.proxy = options_.anonymous_proxy;
  return HttpRoundTrip(base_, WithProfile(request, profile, options_.client_id), http);
}

absl::StatusOr<ApiResponse> InProcessTransport::RoundTrip(
    const ApiRequest& request, TransportProfile profile) {
  if (!reachable_) return absl::UnavailableError("keyserver unreachable");
  ApiRequest routed = WithProfile(request, profile, client_id_);
  routed.remote_addr =
      profile == TransportProfile::kAnonymous
          ? absl::StrCat("anon-", HexEncode(SecureRandomBytes(6)))
          : absl::StrCat("peer-", DigestHex(DigestAlgorithm::kSha256, client_id_).substr(0, 12));
  return handler_(routed);
}

}  // namespace amakey
