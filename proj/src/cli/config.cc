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

#include "amakey/cli/config.h"

#include <fstream>
#include <sstream>

#include "absl/strings/numbers.h"
#include "absl/strings/str_cat.h"
#include "absl/strings/str_split.h"
#include "absl/strings/strip.h"
#include "amakey/core/status_macros.h"
#include "amakey/net/http.h"

namespace amakey::cli {

absl::Status ApplyConfigText(absl::string_view text, CliConfig& config) {
  int line_no = 0;
  for (absl::string_view raw : absl::StrSplit(text, '\n')) {
    ++line_no;
    absl::string_view line = absl::StripAsciiWhitespace(raw.substr(0, raw.find('#')));
    if (line.empty()) continue;
    const size_t eq = line.find('=');
    if (eq == absl::string_view::npos) {
      return absl::InvalidArgumentError(
          absl::StrCat("config line ", line_no, ": expected 'key = value'"));
    }
    const std::string key(absl::StripAsciiWhitespace(line.substr(0, eq)));
    const std::string value(absl::StripAsciiWhitespace(line.substr(eq + 1)));
    if (key == "server") {
      config.server = value;
    } else if (key == "cache_dir") {
      config.cache_dir = value;
    } else if (key == "alpha") {
      config.alpha = value;
    } else if (key == "beta") {
      config.beta = value;
    } else if (key == "address") {
      config.address = value;
    } else if (key == "salt") {
      config.salt = value;
    } else if (key == "anonymous_proxy") {
      config.anonymous_proxy = value;
    } else if (key == "client_id") {
      config.client_id = value;
    } else if (key == "kdf_iterations") {
      if (!absl::SimpleAtoi(value, &config.kdf_iterations) || config.kdf_iterations == 0) {
        return absl::InvalidArgumentError(
            absl::StrCat("config line ", line_no, ": bad kdf_iterations"));
      }
    } else {
      return absl::InvalidArgumentError(
          absl::StrCat("config line ", line_no, ": unknown key '", key, "'"));
    }
  }
  return absl::OkStatus();
}

absl::Status ApplyConfigFile(const std::string& path, CliConfig& config) {
  std::ifstream in(path);
  if (!in) return absl::NotFoundError(absl::StrCat("cannot read config ", path));
  std::stringstream buffer;
  buffer << in.rdbuf();
  return ApplyConfigText(buffer.str(), config);
}

void ApplyEnvironment(const EnvLookup& env, CliConfig& config) {
  if (auto v = env(kEnvServer); v && !v->empty()) config.server = *v;
  if (auto v = env(kEnvCacheDir); v && !v->empty()) config.cache_dir = *v;
}

absl::Status ValidateConfig(const CliConfig& config) {
  AMAKEY_RETURN_IF_ERROR(PolicyOf(config).status());
  return BaseUrl::Parse(config.server).status();
}

absl::StatusOr<TrustPolicy> PolicyOf(const CliConfig& config) {
  return TrustPolicy::Parse(config.alpha, config.beta);
}

std::string SaltFor(const CliConfig& config, absl::string_view normalized_address) {
  if (!config.salt.empty()) return config.salt;
  return absl::StrCat("amakey.v1|", normalized_address);
}

}  // namespace amakey::cli
