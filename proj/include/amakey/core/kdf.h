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

#ifndef AMAKEY_CORE_KDF_H_
#define AMAKEY_CORE_KDF_H_

#include <cstdint>
#include <string>

#include "absl/status/statusor.h"
#include "absl/strings/string_view.h"
#include "amakey/core/crypto.h"
#include "amakey/core/keys.h"

namespace amakey {

// Passphrase stretching parameters. The defaults are the ones the CLI uses;
// scenario worlds lower `iterations` to keep thousands of derivations cheap.
struct ExpansionParams {
  DigestAlgorithm digest = DigestAlgorithm::kSha256;
  uint32_t iterations = 200000;
  size_t seed_length = 32;
  std::string key_algorithm = std::string(kDefaultKeyAlgorithm);
};

inline constexpr size_t kMinSaltLength = 16;

// PBKDF2 stage alone: the seed for the key generator's byte stream.
absl::StatusOr<std::string> ExpandPassphrase(absl::string_view passphrase,
                                             absl::string_view salt,
                                             const ExpansionParams& params);

// passphrase -> PBKDF2 seed -> DeterministicStream -> KeyPair::Generate.
// The passphrase never leaves the process; identical inputs give an
// identical keypair on every run.
absl::StatusOr<KeyPair> DeriveKeypairFromPassphrase(
    absl::string_view passphrase, absl::string_view salt,
    const ExpansionParams& params = {});

}  // namespace amakey

#endif  // AMAKEY_CORE_KDF_H_
