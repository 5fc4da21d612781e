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

#include "amakey/core/fingerprint.h"

#include <string>

#include "absl/status/status.h"
#include "absl/strings/ascii.h"
#include "absl/strings/str_cat.h"
#include "amakey/core/bytes.h"
#include "amakey/core/crypto.h"

namespace amakey {

absl::StatusOr<KeyFingerprint> KeyFingerprint::FromHex(absl::string_view hex) {
  if (hex.size() != 32 || !IsLowerHex(hex)) {
    return absl::InvalidArgumentError(
        "fingerprint must be 32 lowercase hex characters");
  }
  return KeyFingerprint(std::string(hex));
}

KeyFingerprint FingerprintOfBytes(absl::string_view bytes) {
  return *KeyFingerprint::FromHex(DigestHex(DigestAlgorithm::kMd5, bytes));
}

absl::StatusOr<KeyFingerprint> Fingerprint(const PublicKeyMaterial& key) {
  if (key.key_bytes.empty()) {
    return absl::InvalidArgumentError("public key bytes are empty");
  }
  return FingerprintOfBytes(key.key_bytes);
}

absl::StatusOr<std::string> FormatFingerprintGroups(const KeyFingerprint& fp,
                                                    int group_size) {
  if (group_size < kMinFingerprintGroup || group_size > kMaxFingerprintGroup) {
    return absl::InvalidArgumentError(absl::StrCat(
        "group size must be in [", kMinFingerprintGroup, ", ",
        kMaxFingerprintGroup, "]"));
  }
  std::string out;
  const std::string& hex = fp.hex();
  for (size_t i = 0; i < hex.size(); i += group_size) {
    if (!out.empty()) out.push_back(' ');
    out += hex.substr(i, group_size);
  }
  return out;
}

absl::StatusOr<KeyFingerprint> UngroupFingerprint(absl::string_view grouped) {
  std::string hex;
  for (char c : grouped) {
    if (c == ' ') continue;
    hex.push_back(c);
  }
  return KeyFingerprint::FromHex(hex);
}

}  // namespace amakey
