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

#include "amakey/net/http.h"

#include <utility>

#include "absl/strings/ascii.h"
#include "absl/strings/match.h"
#include "absl/strings/numbers.h"
#include "absl/strings/str_cat.h"
#include "absl/strings/strip.h"
// Requests carry only the headers the caller sets.
#define CPPHTTPLIB_NO_DEFAULT_USER_AGENT
#include "httplib.h"

namespace amakey {
namespace {

ApiRequest FromHttplib(const httplib::Request& req) {
  ApiRequest request;
  request.method = req.method;
  request.path = req.path;
  for (const auto& [key, value] : req.params) request.query[key] = value;
  for (const auto& [key, value] : req.headers) {
    request.headers[absl::AsciiStrToLower(key)] = value;
  }
  request.body = req.body;
  request.remote_addr = req.remote_addr;
  return request;
}

}  // namespace

HttpServer::HttpServer(ApiHandler handler)
    : handler_(std::move(handler)),
      server_(std::make_unique<httplib::Server>()) {
  Install();
}

HttpServer::~HttpServer() { Stop(); }

void HttpServer::Install() {
  auto serve = [this](const httplib::Request& req, httplib::Response& res) {
    const ApiResponse response = handler_(FromHttplib(req));
    res.status = response.status;
    res.set_content(response.body, response.content_type);
  };
  server_->Get(".*", serve);
  server_->Post(".*", serve);
  server_->Put(".*", serve);
  server_->Delete(".*", serve);
}

absl::StatusOr<int> HttpServer::Start(const std::string& host, int port) {
  if (thread_.joinable()) return absl::FailedPreconditionError("already started");
  if (port == 0) {
    port_ = server_->bind_to_any_port(host);
    if (port_ <= 0) return absl::UnavailableError("cannot bind " + host);
  } else {
    if (!server_->bind_to_port(host, port)) {
      return absl::UnavailableError(absl::StrCat("cannot bind ", host, ":", port));
    }
    port_ = port;
  }
  thread_ = std::thread([this] { server_->listen_after_bind(); });
  server_->wait_until_ready();
  return port_;
}

absl::Status HttpServer::Run(const std::string& host, int port) {
  if (!server_->bind_to_port(host, port)) {
    return absl::UnavailableError(absl::StrCat("cannot bind ", host, ":", port));
  }
  port_ = port;
  server_->listen_after_bind();
  return absl::OkStatus();
}

void HttpServer::Stop() {
  if (server_) server_->stop();
  if (thread_.joinable()) thread_.join();
}

absl::StatusOr<BaseUrl> BaseUrl::Parse(absl::string_view url) {
  absl::string_view rest = url;
  if (!absl::ConsumePrefix(&rest, "http://")) {
    return absl::InvalidArgumentError(
        absl::StrCat("server URL must start with http://: ", url));
  }
  BaseUrl base;
  const size_t slash = rest.find('/');
  absl::string_view authority = rest.substr(0, slash);
  if (slash != absl::string_view::npos) {
    base.prefix = std::string(rest.substr(slash));
    while (!base.prefix.empty() && base.prefix.back() == '/') base.prefix.pop_back();
  }
  const size_t colon = authority.rfind(':');
  if (colon != absl::string_view::npos) {
    if (!absl::SimpleAtoi(authority.substr(colon + 1), &base.port) ||
        base.port <= 0 || base.port > 65535) {
      return absl::InvalidArgumentError(absl::StrCat("bad port in ", url));
    }
    authority = authority.substr(0, colon);
  }
  if (authority.empty()) {
    return absl::InvalidArgumentError(absl::StrCat("missing host in ", url));
  }
  base.host = std::string(authority);
  return base;
}

std::string BaseUrl::ToString() const {
  return absl::StrCat("http://", host, ":", port, prefix);
}

absl::StatusOr<ApiResponse> HttpRoundTrip(const BaseUrl& base,
                                          const ApiRequest& request,
                                          const HttpClientOptions& options) {
  httplib::Client client(base.host, base.port);
  const auto secs = std::chrono::duration_cast<std::chrono::seconds>(options.timeout);
  const auto usecs = std::chrono::duration_cast<std::chrono::microseconds>(
      options.timeout - secs);
  client.set_connection_timeout(secs.count(), usecs.count());
  client.set_read_timeout(secs.count(), usecs.count());
  client.set_write_timeout(secs.count(), usecs.count());
  client.set_keep_alive(false);
  if (!options.proxy.empty()) {
    const size_t colon = options.proxy.rfind(':');
    int proxy_port = 0;
    if (colon == std::string::npos ||
        !absl::SimpleAtoi(options.proxy.substr(colon + 1), &proxy_port)) {
      return absl::InvalidArgumentError("proxy must be host:port");
    }
    client.set_proxy(options.proxy.substr(0, colon), proxy_port);
  }
  httplib::Headers headers;
  for (const auto& [key, value] : request.headers) headers.emplace(key, value);
  ApiRequest routed = request;
  routed.path = base.prefix + request.path;
  const std::string target = PathWithQuery(routed);

  httplib::Result result;
  if (request.method == "GET") {
    result = client.Get(target, headers);
  } else if (request.method == "POST") {
    result = client.Post(target, headers, request.body, "application/json");
  } else {
    return absl::InvalidArgumentError("unsupported method " + request.method);
  }
  if (!result) {
    return absl::UnavailableError(absl::StrCat(
        "cannot reach ", base.ToString(), ": ", httplib::to_string(result.error())));
  }
  ApiResponse response;
  response.status = result->status;
  response.body = result->body;
  response.content_type = result->get_header_value("Content-Type");
  return response;
}

}  // namespace amakey
