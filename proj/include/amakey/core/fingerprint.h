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

#ifndef AMAKEY_CORE_FINGERPRINT_H_
#define AMAKEY_CORE_FINGERPRINT_H_

#include <string>

#include "absl/status/statusor.h"
#include "absl/strings/string_view.h"
#include "amakey/core/keys.h"

namespace amakey {

// 128-bit key digest as 32 lowercase hex characters. This is the value a key
// owner reads aloud and writes out in their media attestment.
class KeyFingerprint {
 public:
  static absl::StatusOr<KeyFingerprint> FromHex(absl::string_view hex);

  const std::string& hex() const { return hex_; }

  friend bool operator==(const KeyFingerprint&, const KeyFingerprint&) = default;

 private:
  explicit KeyFingerprint(std::string hex) : hex_(std::move(hex)) {}
  std::string hex_;
};

// MD5 over the key's canonical public encoding (its key_bytes).
absl::StatusOr<KeyFingerprint> Fingerprint(const PublicKeyMaterial& key);

// The digest step alone, over arbitrary bytes.
KeyFingerprint FingerprintOfBytes(absl::string_view bytes);

inline constexpr int kMinFingerprintGroup = 2;
inline constexpr int kMaxFingerprintGroup = 8;

// "9001 5098 3cd2 4fb0 ..." for reading aloud; the last group may be short.
absl::StatusOr<std::string> FormatFingerprintGroups(const KeyFingerprint& fp,
                                                    int group_size);

// Inverse of FormatFingerprintGroups; tolerates any spacing.
absl::StatusOr<KeyFingerprint> UngroupFingerprint(absl::string_view grouped);

}  // namespace amakey

#endif  // AMAKEY_CORE_FINGERPRINT_H_
