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

#ifndef AMAKEY_CORE_CRYPTO_H_
#define AMAKEY_CORE_CRYPTO_H_

#include <cstdint>
#include <string>

#include "absl/status/statusor.h"
#include "absl/strings/string_view.h"

namespace amakey {

enum class DigestAlgorithm { kMd5, kSha1, kSha256 };

absl::string_view DigestName(DigestAlgorithm algorithm);
absl::StatusOr<DigestAlgorithm> ParseDigestName(absl::string_view name);

// Raw digest bytes.
std::string Digest(DigestAlgorithm algorithm, absl::string_view data);
inline std::string Md5(absl::string_view data) {
  return Digest(DigestAlgorithm::kMd5, data);
}
inline std::string Sha256(absl::string_view data) {
  return Digest(DigestAlgorithm::kSha256, data);
}
// Lowercase hex digest.
std::string DigestHex(DigestAlgorithm algorithm, absl::string_view data);

// Bytes from the operating system CSPRNG.
std::string SecureRandomBytes(size_t count);

// PBKDF2 with HMAC over `digest`.
absl::StatusOr<std::string> Pbkdf2Hmac(DigestAlgorithm digest,
                                       absl::string_view passphrase,
                                       absl::string_view salt,
                                       uint32_t iterations, size_t length);

absl::StatusOr<std::string> HkdfSha256(absl::string_view key_material,
                                       absl::string_view salt,
                                       absl::string_view info, size_t length);

// AES-256-GCM. Sealed layout: 12-byte nonce | ciphertext | 16-byte tag.
absl::StatusOr<std::string> AeadSeal(absl::string_view key,
                                     absl::string_view plaintext,
                                     absl::string_view associated_data);
absl::StatusOr<std::string> AeadOpen(absl::string_view key,
                                     absl::string_view sealed,
                                     absl::string_view associated_data);

// Expands a seed into an unbounded byte stream:
//   block_i = SHA-256("amakey.stream.v1" | seed | uint64_be(i)).
// Key generation consumes it in place of the system RNG so that a
// passphrase-derived seed always yields the same keypair.
class DeterministicStream {
 public:
  explicit DeterministicStream(std::string seed) : seed_(std::move(seed)) {}
  DeterministicStream(const DeterministicStream&) = delete;
  DeterministicStream& operator=(const DeterministicStream&) = delete;
  ~DeterministicStream();

  std::string Next(size_t count);

 private:
  std::string seed_;
  std::string buffer_;
  uint64_t counter_ = 0;
};

}  // namespace amakey

#endif  // AMAKEY_CORE_CRYPTO_H_
