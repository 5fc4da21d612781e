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

#ifndef AMAKEY_CORE_KEYS_H_
#define AMAKEY_CORE_KEYS_H_

#include <string>
#include <vector>

#include "absl/status/status.h"
#include "absl/status/statusor.h"
#include "absl/strings/string_view.h"
#include "amakey/core/crypto.h"

namespace amakey {

// Key algorithm registry. Each identifier fixes one signature scheme and one
// content-key wrapping scheme.
//
//   ed25519+x25519      key_bytes = Ed25519 public (32) | X25519 public (32).
//                       Ed25519 signatures; X25519 + HKDF-SHA256 + AES-GCM wrap.
//   rsa2048-pss-sha256  key_bytes = DER SubjectPublicKeyInfo.
//                       RSASSA-PSS (SHA-256, MGF1-SHA-256, 32-byte salt);
//                       RSAES-OAEP (SHA-256) wrap.
inline constexpr absl::string_view kEd25519X25519 = "ed25519+x25519";
inline constexpr absl::string_view kRsa2048PssSha256 = "rsa2048-pss-sha256";
inline constexpr absl::string_view kDefaultKeyAlgorithm = kEd25519X25519;

bool IsKnownKeyAlgorithm(absl::string_view algorithm);
std::vector<std::string> KnownKeyAlgorithms();

struct PublicKeyMaterial {
  std::string algorithm;
  std::string key_bytes;

  friend bool operator==(const PublicKeyMaterial&,
                         const PublicKeyMaterial&) = default;
};

// Registered algorithm, non-empty bytes that parse as a key of that algorithm.
absl::Status ValidatePublicKey(const PublicKeyMaterial& key);

// Owns private key bytes and wipes them on destruction.
class SecretBytes {
 public:
  SecretBytes() = default;
  explicit SecretBytes(std::string bytes) : bytes_(std::move(bytes)) {}
  SecretBytes(const SecretBytes& other) = default;
  SecretBytes(SecretBytes&& other) noexcept;
  SecretBytes& operator=(const SecretBytes& other);
  SecretBytes& operator=(SecretBytes&& other) noexcept;
  ~SecretBytes();

  absl::string_view view() const { return bytes_; }
  bool empty() const { return bytes_.empty(); }

 private:
  void Wipe();
  std::string bytes_;
};

class KeyPair {
 public:
  // Deterministic: all randomness is drawn from `stream`.
  static absl::StatusOr<KeyPair> Generate(absl::string_view algorithm,
                                          DeterministicStream& stream);
  // Fresh keypair from the system CSPRNG.
  static absl::StatusOr<KeyPair> GenerateRandom(absl::string_view algorithm);

  const PublicKeyMaterial& public_key() const { return public_key_; }
  const std::string& algorithm() const { return public_key_.algorithm; }

  absl::StatusOr<std::string> Sign(absl::string_view message) const;

  // Recovers a content key wrapped with WrapContentKey for this key's public
  // half.
  absl::StatusOr<std::string> UnwrapContentKey(absl::string_view wrapped) const;

 private:
  KeyPair(PublicKeyMaterial public_key, SecretBytes signing,
          SecretBytes encryption)
      : public_key_(std::move(public_key)),
        signing_private_(std::move(signing)),
        encryption_private_(std::move(encryption)) {}

  PublicKeyMaterial public_key_;
  // Ed25519 seed, or PKCS#8 DER for RSA.
  SecretBytes signing_private_;
  // X25519 scalar; empty for RSA, which decrypts with the signing key.
  SecretBytes encryption_private_;
};

// False on any malformation of key or signature.
bool VerifySignature(const PublicKeyMaterial& key, absl::string_view message,
                     absl::string_view signature);

absl::StatusOr<std::string> WrapContentKey(const PublicKeyMaterial& recipient,
                                           absl::string_view content_key);

}  // namespace amakey

#endif  // AMAKEY_CORE_KEYS_H_
