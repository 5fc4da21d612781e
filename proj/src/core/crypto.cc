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

#include "amakey/core/crypto.h"

#include <openssl/core_names.h>
#include <openssl/crypto.h>
#include <openssl/evp.h>
#include <openssl/kdf.h>
#include <openssl/params.h>
#include <openssl/rand.h>

#include <memory>
#include <stdexcept>
#include <string>

#include "absl/status/status.h"
#include "absl/strings/str_cat.h"
#include "amakey/core/bytes.h"

namespace amakey {
namespace {

const EVP_MD* MdFor(DigestAlgorithm algorithm) {
  switch (algorithm) {
    case DigestAlgorithm::kMd5:
      return EVP_md5();
    case DigestAlgorithm::kSha1:
      return EVP_sha1();
    case DigestAlgorithm::kSha256:
      return EVP_sha256();
  }
  return nullptr;
}

struct CipherCtxDeleter {
  void operator()(EVP_CIPHER_CTX* ctx) const { EVP_CIPHER_CTX_free(ctx); }
};
using CipherCtx = std::unique_ptr<EVP_CIPHER_CTX, CipherCtxDeleter>;

constexpr size_t kAeadKeySize = 32;
constexpr size_t kAeadNonceSize = 12;
constexpr size_t kAeadTagSize = 16;

}  // namespace

absl::string_view DigestName(DigestAlgorithm algorithm) {
  switch (algorithm) {
    case DigestAlgorithm::kMd5:
      return "md5";
    case DigestAlgorithm::kSha1:
      return "sha1";
    case DigestAlgorithm::kSha256:
      return "sha256";
  }
  return "unknown";
}

absl::StatusOr<DigestAlgorithm> ParseDigestName(absl::string_view name) {
  if (name == "md5") return DigestAlgorithm::kMd5;
  if (name == "sha1") return DigestAlgorithm::kSha1;
  if (name == "sha256") return DigestAlgorithm::kSha256;
  return absl::InvalidArgumentError(absl::StrCat("unknown digest '", name, "'"));
}

std::string Digest(DigestAlgorithm algorithm, absl::string_view data) {
  unsigned char out[EVP_MAX_MD_SIZE];
  unsigned int length = 0;
  if (EVP_Digest(data.data(), data.size(), out, &length, MdFor(algorithm),
                 nullptr) != 1) {
    throw std::runtime_error("EVP_Digest failed");
  }
  return std::string(reinterpret_cast<const char*>(out), length);
}

std::string DigestHex(DigestAlgorithm algorithm, absl::string_view data) {
  return HexEncode(Digest(algorithm, data));
}

std::string SecureRandomBytes(size_t count) {
  std::string out(count, '\0');
  if (count > 0 &&
      RAND_bytes(reinterpret_cast<unsigned char*>(out.data()),
                 static_cast<int>(count)) != 1) {
    throw std::runtime_error("RAND_bytes failed");
  }
  return out;
}

absl::StatusOr<std::string> Pbkdf2Hmac(DigestAlgorithm digest,
                                       absl::string_view passphrase,
                                       absl::string_view salt,
                                       uint32_t iterations, size_t length) {
  if (iterations == 0) return absl::InvalidArgumentError("iterations is zero");
  if (length == 0) return absl::InvalidArgumentError("output length is zero");
  std::string out(length, '\0');
  if (PKCS5_PBKDF2_HMAC(passphrase.data(), static_cast<int>(passphrase.size()),
                        reinterpret_cast<const unsigned char*>(salt.data()),
                        static_cast<int>(salt.size()),
                        static_cast<int>(iterations), MdFor(digest),
                        static_cast<int>(length),
                        reinterpret_cast<unsigned char*>(out.data())) != 1) {
    return absl::InternalError("PBKDF2 failed");
  }
  return out;
}

absl::StatusOr<std::string> HkdfSha256(absl::string_view key_material,
                                       absl::string_view salt,
                                       absl::string_view info, size_t length) {
  EVP_KDF* kdf = EVP_KDF_fetch(nullptr, "HKDF", nullptr);
  if (kdf == nullptr) return absl::InternalError("HKDF unavailable");
  EVP_KDF_CTX* ctx = EVP_KDF_CTX_new(kdf);
  EVP_KDF_free(kdf);
  if (ctx == nullptr) return absl::InternalError("HKDF context failed");
  char digest_name[] = "SHA256";
  OSSL_PARAM params[] = {
      OSSL_PARAM_construct_utf8_string(OSSL_KDF_PARAM_DIGEST, digest_name, 0),
      OSSL_PARAM_construct_octet_string(
          OSSL_KDF_PARAM_KEY, const_cast<char*>(key_material.data()),
          key_material.size()),
      OSSL_PARAM_construct_octet_string(OSSL_KDF_PARAM_SALT,
                                        const_cast<char*>(salt.data()),
                                        salt.size()),
      OSSL_PARAM_construct_octet_string(OSSL_KDF_PARAM_INFO,
                                        const_cast<char*>(info.data()),
                                        info.size()),
      OSSL_PARAM_construct_end()};
  std::string out(length, '\0');
  const int ok = EVP_KDF_derive(
      ctx, reinterpret_cast<unsigned char*>(out.data()), length, params);
  EVP_KDF_CTX_free(ctx);
  if (ok != 1) return absl::InternalError("HKDF derive failed");
  return out;
}

absl::StatusOr<std::string> AeadSeal(absl::string_view key,
                                     absl::string_view plaintext,
                                     absl::string_view associated_data) {
  if (key.size() != kAeadKeySize) {
    return absl::InvalidArgumentError("AEAD key must be 32 bytes");
  }
  const std::string nonce = SecureRandomBytes(kAeadNonceSize);
  CipherCtx ctx(EVP_CIPHER_CTX_new());
  std::string out = nonce;
  out.resize(kAeadNonceSize + plaintext.size() + kAeadTagSize);
  auto* dst = reinterpret_cast<unsigned char*>(out.data()) + kAeadNonceSize;
  int len = 0;
  if (!ctx ||
      EVP_EncryptInit_ex(ctx.get(), EVP_aes_256_gcm(), nullptr,
                         reinterpret_cast<const unsigned char*>(key.data()),
                         reinterpret_cast<const unsigned char*>(nonce.data())) != 1 ||
      EVP_EncryptUpdate(ctx.get(), nullptr, &len,
                        reinterpret_cast<const unsigned char*>(associated_data.data()),
                        static_cast<int>(associated_data.size())) != 1 ||
      EVP_EncryptUpdate(ctx.get(), dst, &len,
                        reinterpret_cast<const unsigned char*>(plaintext.data()),
                        static_cast<int>(plaintext.size())) != 1 ||
      EVP_EncryptFinal_ex(ctx.get(), dst + len, &len) != 1 ||
      EVP_CIPHER_CTX_ctrl(ctx.get(), EVP_CTRL_GCM_GET_TAG, kAeadTagSize,
                          dst + plaintext.size()) != 1) {
    return absl::InternalError("AES-GCM seal failed");
  }
  return out;
}

absl::StatusOr<std::string> AeadOpen(absl::string_view key,
                                     absl::string_view sealed,
                                     absl::string_view associated_data) {
  if (key.size() != kAeadKeySize) {
    return absl::InvalidArgumentError("AEAD key must be 32 bytes");
  }
  if (sealed.size() < kAeadNonceSize + kAeadTagSize) {
    return absl::InvalidArgumentError("sealed box too short");
  }
  const size_t body = sealed.size() - kAeadNonceSize - kAeadTagSize;
  const auto* src = reinterpret_cast<const unsigned char*>(sealed.data());
  std::string tag(sealed.substr(kAeadNonceSize + body));
  std::string out(body, '\0');
  CipherCtx ctx(EVP_CIPHER_CTX_new());
  int len = 0;
  if (!ctx ||
      EVP_DecryptInit_ex(ctx.get(), EVP_aes_256_gcm(), nullptr,
                         reinterpret_cast<const unsigned char*>(key.data()),
                         src) != 1 ||
      EVP_DecryptUpdate(ctx.get(), nullptr, &len,
                        reinterpret_cast<const unsigned char*>(associated_data.data()),
                        static_cast<int>(associated_data.size())) != 1 ||
      EVP_DecryptUpdate(ctx.get(), reinterpret_cast<unsigned char*>(out.data()),
                        &len, src + kAeadNonceSize, static_cast<int>(body)) != 1 ||
      EVP_CIPHER_CTX_ctrl(ctx.get(), EVP_CTRL_GCM_SET_TAG, kAeadTagSize,
                          tag.data()) != 1) {
    return absl::InternalError("AES-GCM open failed");
  }
  if (EVP_DecryptFinal_ex(ctx.get(),
                          reinterpret_cast<unsigned char*>(out.data()) + len,
                          &len) != 1) {
    OPENSSL_cleanse(out.data(), out.size());
    return absl::PermissionDeniedError("authentication tag mismatch");
  }
  return out;
}

DeterministicStream::~DeterministicStream() {
  OPENSSL_cleanse(seed_.data(), seed_.size());
  OPENSSL_cleanse(buffer_.data(), buffer_.size());
}

std::string DeterministicStream::Next(size_t count) {
  while (buffer_.size() < count) {
    std::string block = "amakey.stream.v1";
    block += seed_;
    for (int shift = 56; shift >= 0; shift -= 8) {
      block.push_back(static_cast<char>((counter_ >> shift) & 0xff));
    }
    ++counter_;
    buffer_ += Sha256(block);
    OPENSSL_cleanse(block.data(), block.size());
  }
  std::string out = buffer_.substr(0, count);
  buffer_.erase(0, count);
  return out;
}

}  // namespace amakey
