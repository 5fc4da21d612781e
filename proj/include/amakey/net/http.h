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

#ifndef AMAKEY_NET_HTTP_H_
#define AMAKEY_NET_HTTP_H_

#include <chrono>
#include <memory>
#include <optional>
#include <string>
#include <thread>

#include "absl/status/statusor.h"
#include "absl/strings/string_view.h"
#include "amakey/net/api.h"

namespace httplib {
class Server;
}  // namespace httplib

namespace amakey {

// Serves an ApiHandler over plain HTTP on a background thread.
class HttpServer {
 public:
  explicit HttpServer(ApiHandler handler);
  HttpServer(const HttpServer&) = delete;
  HttpServer& operator=(const HttpServer&) = delete;
  ~HttpServer();

  // Binds and starts serving. Port 0 picks a free port. Returns the port.
  absl::StatusOr<int> Start(const std::string& host, int port);
  // Blocks on the calling thread until Stop() is called elsewhere.
  absl::Status Run(const std::string& host, int port);
  void Stop();

  int port() const { return port_; }

 private:
  void Install();

  ApiHandler handler_;
  std::unique_ptr<httplib::Server> server_;
  std::thread thread_;
  int port_ = 0;
};

struct HttpClientOptions {
  std::chrono::milliseconds timeout{5000};
  // "host:port" of an HTTP proxy, or empty for a direct connection.
  std::string proxy;
};

// "http://host:port" with an optional path prefix.
struct BaseUrl {
  std::string host;
  int port = 80;
  std::string prefix;

  static absl::StatusOr<BaseUrl> Parse(absl::string_view url);
  std::string ToString() const;
};

// One request over a fresh connection. Connection failures and timeouts are
// Unavailable; any HTTP response, including errors, is returned as-is.
absl::StatusOr<ApiResponse> HttpRoundTrip(const BaseUrl& base,
                                          const ApiRequest& request,
                                          const HttpClientOptions& options);

}  // namespace amakey

#endif  // AMAKEY_NET_HTTP_H_
