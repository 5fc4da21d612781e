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

#ifndef AMAKEY_NET_API_H_
#define AMAKEY_NET_API_H_

#include <functional>
#include <map>
#include <string>

#include "absl/status/status.h"
#include "absl/status/statusor.h"
#include "absl/strings/string_view.h"
#include "json.hpp"

namespace amakey {

// Transport-neutral request/response pair. The HTTP server, the HTTP client
// and in-process transports all speak this shape, so handlers are testable
// without sockets.
struct ApiRequest {
  std::string method = "GET";
  std::string path;
  std::map<std::string, std::string> query;
  // Header names are stored lowercase.
  std::map<std::string, std::string> headers;
  std::string body;
  // Peer address as seen by the server; empty for in-process calls.
  std::string remote_addr;

  std::string Header(absl::string_view name) const;
  std::string Query(absl::string_view name) const;
};

struct ApiResponse {
  int status = 200;
  std::string body;
  std::string content_type = "application/json";
};

using ApiHandler = std::function<ApiResponse(const ApiRequest&)>;

// HTTP header used by clients that choose to identify themselves. Anonymous
// requests omit it.
inline constexpr absl::string_view kClientIdHeader = "x-client-id";

int HttpStatusFor(const absl::Status& status);
// Inverse of ErrorResponse for non-2xx responses.
absl::Status StatusFromResponse(const ApiResponse& response);

ApiResponse JsonResponse(int status, const nlohmann::json& body);
// {"error": {"code": "...", "message": "..."}}
ApiResponse ErrorResponse(const absl::Status& status);

// Parses a JSON request body, mapping failures to InvalidArgument.
absl::StatusOr<nlohmann::json> ParseJsonBody(absl::string_view body);

// Builds "/path?k=v&..." with percent-encoded values.
std::string PathWithQuery(const ApiRequest& request);
std::string PercentEncode(absl::string_view text);

}  // namespace amakey

#endif  // AMAKEY_NET_API_H_
