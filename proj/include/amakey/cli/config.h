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

#ifndef AMAKEY_CLI_CONFIG_H_
#define AMAKEY_CLI_CONFIG_H_

#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <string>

#include "absl/status/status.h"
#include "absl/status/statusor.h"
#include "absl/strings/string_view.h"
#include "amakey/core/trust.h"

namespace amakey::cli {

inline constexpr absl::string_view kEnvServer = "AMAKEY_SERVER";
inline constexpr absl::string_view kEnvCacheDir = "AMAKEY_CACHE_DIR";

// Settings shared by the subcommands. Precedence, lowest first: defaults,
// config file, environment, flags.
struct CliConfig {
  std::string server = "http://127.0.0.1:8080";
  std::string cache_dir;  // empty disables the signed cache
  std::string alpha = "5";
  std::string beta = "1/2";
  // Own contact address, for commands that act as its owner.
  std::string address;
  // Key derivation salt; empty derives one from the address.
  std::string salt;
  uint32_t kdf_iterations = 200000;
  // host:port used for anonymous self-queries; empty goes direct.
  std::string anonymous_proxy;
  std::string client_id = "amakey-cli";
};

using EnvLookup = std::function<std::optional<std::string>(absl::string_view)>;

// "key = value" lines; "#" starts a comment. Unknown keys are errors.
absl::Status ApplyConfigText(absl::string_view text, CliConfig& config);
absl::Status ApplyConfigFile(const std::string& path, CliConfig& config);
void ApplyEnvironment(const EnvLookup& env, CliConfig& config);

// Policy bounds and an absolute http URL.
absl::Status ValidateConfig(const CliConfig& config);
absl::StatusOr<TrustPolicy> PolicyOf(const CliConfig& config);

// "amakey.v1|" followed by the normalized address, unless overridden.
std::string SaltFor(const CliConfig& config, absl::string_view normalized_address);

}  // namespace amakey::cli

#endif  // AMAKEY_CLI_CONFIG_H_
