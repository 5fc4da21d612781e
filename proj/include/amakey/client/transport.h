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

#ifndef AMAKEY_CLIENT_TRANSPORT_H_
#define AMAKEY_CLIENT_TRANSPORT_H_

#include <string>

#include "absl/status/statusor.h"
#include "amakey/net/api.h"
#include "amakey/net/http.h"

namespace amakey {

// kIdentified requests carry the client's User-Agent and client id.
// kAnonymous requests carry neither, use a fresh connection and go through
// the configured proxy, so the server cannot tell whose query it is serving.
enum class TransportProfile { kIdentified, kAnonymous };

inline constexpr absl::string_view kClientUserAgent = "amakey-client/0.1";

// How a client reaches the keyserver. Failures to reach it are Unavailable;
// HTTP error statuses are returned as responses.
class Transport {
 public:
  virtual ~Transport() = default;
  virtual absl::StatusOr<ApiResponse> RoundTrip(const ApiRequest& request,
                                                TransportProfile profile) = 0;
};

struct HttpTransportOptions {
  std::string client_id;
  std::chrono::milliseconds timeout{5000};
  // host:port of the proxy used by kAnonymous requests; empty goes direct.
  std::string anonymous_proxy;
};

class HttpTransport : public Transport {
 public:
  HttpTransport(BaseUrl base, HttpTransportOptions options)
      : base_(std::move(base)), options_(std::move(options)) {}

  absl::StatusOr<ApiResponse> RoundTrip(const ApiRequest& request,
                                        TransportProfile profile) override;

 private:
  BaseUrl base_;
  HttpTransportOptions options_;
};

// Calls a handler directly. Anonymous requests get a random peer address;
// identified ones a stable one derived from the client id.
class InProcessTransport : public Transport {
 public:
  InProcessTransport(ApiHandler handler, std::string client_id)
      : handler_(std::move(handler)), client_id_(std::move(client_id)) {}

  absl::StatusOr<ApiResponse> RoundTrip(const ApiRequest& request,
                                        TransportProfile profile) override;

  void set_reachable(bool reachable) { reachable_ = reachable; }

 private:
  ApiHandler handler_;
  std::string client_id_;
  bool reachable_ = true;
};

// Applies the profile's identifying headers to `request`.
ApiRequest WithProfile(ApiRequest request, TransportProfile profile,
                       const std::string& client_id);

}  // namespace amakey

#endif  // AMAKEY_CLIENT_TRANSPORT_H_
