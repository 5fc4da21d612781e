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

#ifndef AMAKEY_CLI_CLI_H_
#define AMAKEY_CLI_CLI_H_

#include <atomic>
#include <functional>
#include <iosfwd>
#include <string>
#include <vector>

#include "absl/status/status.h"
#include "amakey/cli/config.h"

namespace amakey::cli {

enum ExitCode : int {
  kExitOk = 0,
  kExitValidation = 1,
  kExitDetection = 2,
  kExitTransport = 3,
};

// Version tag carried by every --format=json document.
inline constexpr absl::string_view kJsonSchema = "amakey.cli.v1";

struct CliIo {
  std::istream* in = nullptr;
  std::ostream* out = nullptr;
  std::ostream* err = nullptr;
  EnvLookup env = [](absl::string_view) { return std::nullopt; };
  // serve and bridge return once this becomes true.
  const std::atomic<bool>* stop = nullptr;
  // Called with the bound port once serve or bridge is listening.
  std::function<void(int)> on_listening;
};

// Unavailable and DeadlineExceeded map to kExitTransport, everything else to
// kExitValidation.
int ExitCodeFor(const absl::Status& status);

// args excludes the program name.
int RunCli(const std::vector<std::string>& args, CliIo& io);

}  // namespace amakey::cli

#endif  // AMAKEY_CLI_CLI_H_
