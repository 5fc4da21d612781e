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

#include "amakey/core/kdf.h"

#include <openssl/crypto.h>

#include "absl/status/status.h"
#include "absl/strings/str_cat.h"
#include "amakey/core/status_macros.h"

namespace amakey {

absl::StatusOr<std::string> ExpandPassphrase(absl::string_view passphrase,
                                             absl::string_view salt,
                                             const ExpansionParams& params) {
  if (params.seed_length < 16) {
    return absl::InvalidArgumentError("seed length below 16 bytes");
  }
  return Pbkdf2Hmac(params.digest, passphrase, salt, params.iterations,
                    params.seed_length);
}

absl::StatusOr<KeyPair> DeriveKeypairFromPassphrase(
    absl::string_view passphrase, absl::string_view salt,
    const ExpansionParams& params) {
  if (passphrase.empty()) {
    return absl::InvalidArgumentError("passphrase is empty");
  }
  if (salt.size() < kMinSaltLength) {
    return absl::InvalidArgumentError(
        absl::StrCat("salt must be at least ", kMinSaltLength, " bytes"));
  }
  AMAKEY_ASSIGN_OR_RETURN(std::string seed,
                          ExpandPassphrase(passphrase, salt, params));
  DeterministicStream stream(seed);
  OPENSSL_cleanse(seed.data(), seed.size());
  return KeyPair::Generate(params.key_algorithm, stream);
}

}  // namespace amakey
