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

#include "amakey/core/keys.h"

#include <openssl/bn.h>
#include <openssl/core_names.h>
#include <openssl/crypto.h>
#include <openssl/evp.h>
#include <openssl/param_build.h>
#include <openssl/rsa.h>
#include <openssl/x509.h>

#include <memory>
#include <string>
#include <utility>

#include "absl/status/status.h"
#include "absl/strings/str_cat.h"
#include "amakey/core/status_macros.h"

namespace amakey {
namespace {

struct PkeyDeleter {
  void operator()(EVP_PKEY* p) const { EVP_PKEY_free(p); }
};
struct PkeyCtxDeleter {
  void operator()(EVP_PKEY_CTX* p) const { EVP_PKEY_CTX_free(p); }
};
struct MdCtxDeleter {
  void operator()(EVP_MD_CTX* p) const { EVP_MD_CTX_free(p); }
};
struct BnDeleter {
  void operator()(BIGNUM* p) const { BN_clear_free(p); }
};
struct BnCtxDeleter {
  void operator()(BN_CTX* p) const { BN_CTX_free(p); }
};
struct ParamBldDeleter {
  void operator()(OSSL_PARAM_BLD* p) const { OSSL_PARAM_BLD_free(p); }
};
struct ParamDeleter {
  void operator()(OSSL_PARAM* p) const { OSSL_PARAM_free(p); }
};

using Pkey = std::unique_ptr<EVP_PKEY, PkeyDeleter>;
using PkeyCtx = std::unique_ptr<EVP_PKEY_CTX, PkeyCtxDeleter>;
using MdCtx = std::unique_ptr<EVP_MD_CTX, MdCtxDeleter>;
using Bn = std::unique_ptr<BIGNUM, BnDeleter>;
using BnCtx = std::unique_ptr<BN_CTX, BnCtxDeleter>;

constexpr size_t kRawKeySize = 32;
constexpr int kRsaBits = 2048;
constexpr int kPssSaltLength = 32;
constexpr absl::string_view kWrapInfo = "amakey.envelope.x25519-wrap.v1";

const unsigned char* Bytes(absl::string_view s) {
  return reinterpret_cast<const unsigned char*>(s.data());
}

absl::StatusOr<std::string> RawPublic(EVP_PKEY* key) {
  size_t length = kRawKeySize;
  std::string out(length, '\0');
  if (EVP_PKEY_get_raw_public_key(
          key, reinterpret_cast<unsigned char*>(out.data()), &length) != 1 ||
      length != kRawKeySize) {
    return absl::InternalError("cannot extract raw public key");
  }
  return out;
}

Pkey RawPrivateKey(int type, absl::string_view raw) {
  return Pkey(EVP_PKEY_new_raw_private_key(type, nullptr, Bytes(raw), raw.size()));
}

Pkey RawPublicKey(int type, absl::string_view raw) {
  return Pkey(EVP_PKEY_new_raw_public_key(type, nullptr, Bytes(raw), raw.size()));
}

Pkey ParseSpki(absl::string_view der) {
  const unsigned char* p = Bytes(der);
  Pkey key(d2i_PUBKEY(nullptr, &p, static_cast<long>(der.size())));
  if (key && p != Bytes(der) + der.size()) return nullptr;  // trailing bytes
  return key;
}

Pkey ParsePkcs8(absl::string_view der) {
  const unsigned char* p = Bytes(der);
  return Pkey(d2i_AutoPrivateKey(nullptr, &p, static_cast<long>(der.size())));
}

bool IsRsa2048(EVP_PKEY* key) {
  return key != nullptr && EVP_PKEY_is_a(key, "RSA") &&
         EVP_PKEY_get_bits(key) == kRsaBits;
}

absl::StatusOr<std::string> DerPublic(EVP_PKEY* key) {
  unsigned char* der = nullptr;
  const int length = i2d_PUBKEY(key, &der);
  if (length <= 0) return absl::InternalError("cannot encode public key");
  std::string out(reinterpret_cast<char*>(der), static_cast<size_t>(length));
  OPENSSL_free(der);
  return out;
}

absl::StatusOr<std::string> DerPrivate(EVP_PKEY* key) {
  unsigned char* der = nullptr;
  const int length = i2d_PrivateKey(key, &der);
  if (length <= 0) return absl::InternalError("cannot encode private key");
  std::string out(reinterpret_cast<char*>(der), static_cast<size_t>(length));
  OPENSSL_clear_free(der, static_cast<size_t>(length));
  return out;
}

absl::Status ConfigurePss(EVP_PKEY_CTX* pctx) {
  if (EVP_PKEY_CTX_set_rsa_padding(pctx, RSA_PKCS1_PSS_PADDING) != 1 ||
      EVP_PKEY_CTX_set_rsa_pss_saltlen(pctx, kPssSaltLength) != 1 ||
      EVP_PKEY_CTX_set_rsa_mgf1_md(pctx, EVP_sha256()) != 1) {
    return absl::InternalError("cannot configure RSASSA-PSS");
  }
  return absl::OkStatus();
}

absl::Status ConfigureOaep(EVP_PKEY_CTX* pctx) {
  if (EVP_PKEY_CTX_set_rsa_padding(pctx, RSA_PKCS1_OAEP_PADDING) != 1 ||
      EVP_PKEY_CTX_set_rsa_oaep_md(pctx, EVP_sha256()) != 1 ||
      EVP_PKEY_CTX_set_rsa_mgf1_md(pctx, EVP_sha256()) != 1) {
    return absl::InternalError("cannot configure RSAES-OAEP");
  }
  return absl::OkStatus();
}

// Searches upward from a stream-drawn odd 1024-bit candidate for a prime p
// with gcd(p - 1, e) = 1. Deterministic given the stream contents.
absl::StatusOr<Bn> DrawPrime(DeterministicStream& stream, const BIGNUM* e,
                             BN_CTX* ctx) {
  std::string candidate = stream.Next(kRsaBits / 16);
  candidate.front() = static_cast<char>(candidate.front() | 0xc0);
  candidate.back() = static_cast<char>(candidate.back() | 0x01);
  Bn p(BN_bin2bn(Bytes(candidate), static_cast<int>(candidate.size()), nullptr));
  OPENSSL_cleanse(candidate.data(), candidate.size());
  Bn p_minus_1(BN_new());
  Bn g(BN_new());
  if (!p || !p_minus_1 || !g) return absl::InternalError("BN allocation failed");
  for (int attempt = 0; attempt < 100000; ++attempt) {
    const int prime = BN_check_prime(p.get(), ctx, nullptr);
    if (prime < 0) return absl::InternalError("primality test failed");
    if (prime == 1) {
      if (BN_sub(p_minus_1.get(), p.get(), BN_value_one()) != 1 ||
          BN_gcd(g.get(), p_minus_1.get(), e, ctx) != 1) {
        return absl::InternalError("BN arithmetic failed");
      }
      if (BN_is_one(g.get())) return p;
    }
    if (BN_add_word(p.get(), 2) != 1) return absl::InternalError("BN add failed");
  }
  return absl::InternalError("prime search did not terminate");
}

absl::StatusOr<Pkey> DeterministicRsa(DeterministicStream& stream) {
  BnCtx ctx(BN_CTX_new());
  Bn e(BN_new());
  if (!ctx || !e || BN_set_word(e.get(), RSA_F4) != 1) {
    return absl::InternalError("BN setup failed");
  }
  AMAKEY_ASSIGN_OR_RETURN(Bn p, DrawPrime(stream, e.get(), ctx.get()));
  AMAKEY_ASSIGN_OR_RETURN(Bn q, DrawPrime(stream, e.get(), ctx.get()));
  if (BN_cmp(p.get(), q.get()) == 0) {
    return absl::InternalError("degenerate prime pair");
  }
  if (BN_cmp(p.get(), q.get()) < 0) std::swap(p, q);

  Bn n(BN_new()), p1(BN_new()), q1(BN_new()), phi(BN_new()), d(BN_new()),
      dp(BN_new()), dq(BN_new()), qinv(BN_new());
  if (BN_mul(n.get(), p.get(), q.get(), ctx.get()) != 1 ||
      BN_sub(p1.get(), p.get(), BN_value_one()) != 1 ||
      BN_sub(q1.get(), q.get(), BN_value_one()) != 1 ||
      BN_mul(phi.get(), p1.get(), q1.get(), ctx.get()) != 1 ||
      BN_mod_inverse(d.get(), e.get(), phi.get(), ctx.get()) == nullptr ||
      BN_mod(dp.get(), d.get(), p1.get(), ctx.get()) != 1 ||
      BN_mod(dq.get(), d.get(), q1.get(), ctx.get()) != 1 ||
      BN_mod_inverse(qinv.get(), q.get(), p.get(), ctx.get()) == nullptr) {
    return absl::InternalError("RSA parameter derivation failed");
  }

  std::unique_ptr<OSSL_PARAM_BLD, ParamBldDeleter> bld(OSSL_PARAM_BLD_new());
  if (!bld ||
      OSSL_PARAM_BLD_push_BN(bld.get(), OSSL_PKEY_PARAM_RSA_N, n.get()) != 1 ||
      OSSL_PARAM_BLD_push_BN(bld.get(), OSSL_PKEY_PARAM_RSA_E, e.get()) != 1 ||
      OSSL_PARAM_BLD_push_BN(bld.get(), OSSL_PKEY_PARAM_RSA_D, d.get()) != 1 ||
      OSSL_PARAM_BLD_push_BN(bld.get(), OSSL_PKEY_PARAM_RSA_FACTOR1, p.get()) != 1 ||
      OSSL_PARAM_BLD_push_BN(bld.get(), OSSL_PKEY_PARAM_RSA_FACTOR2, q.get()) != 1 ||
      OSSL_PARAM_BLD_push_BN(bld.get(), OSSL_PKEY_PARAM_RSA_EXPONENT1, dp.get()) != 1 ||
      OSSL_PARAM_BLD_push_BN(bld.get(), OSSL_PKEY_PARAM_RSA_EXPONENT2, dq.get()) != 1 ||
      OSSL_PARAM_BLD_push_BN(bld.get(), OSSL_PKEY_PARAM_RSA_COEFFICIENT1, qinv.get()) != 1) {
    return absl::InternalError("cannot assemble RSA parameters");
  }
  std::unique_ptr<OSSL_PARAM, ParamDeleter> params(
      OSSL_PARAM_BLD_to_param(bld.get()));
  PkeyCtx pctx(EVP_PKEY_CTX_new_from_name(nullptr, "RSA", nullptr));
  EVP_PKEY* raw = nullptr;
  if (!params || !pctx || EVP_PKEY_fromdata_init(pctx.get()) != 1 ||
      EVP_PKEY_fromdata(pctx.get(), &raw, EVP_PKEY_KEYPAIR, params.get()) != 1) {
    return absl::InternalError("cannot build RSA key");
  }
  return Pkey(raw);
}

}  // namespace

bool IsKnownKeyAlgorithm(absl::string_view algorithm) {
  return algorithm == kEd25519X25519 || algorithm == kRsa2048PssSha256;
}

std::vector<std::string> KnownKeyAlgorithms() {
  return {std::string(kEd25519X25519), std::string(kRsa2048PssSha256)};
}

absl::Status ValidatePublicKey(const PublicKeyMaterial& key) {
  if (key.key_bytes.empty()) {
    return absl::InvalidArgumentError("public key bytes are empty");
  }
  if (key.algorithm == kEd25519X25519) {
    if (key.key_bytes.size() != 2 * kRawKeySize) {
      return absl::InvalidArgumentError("ed25519+x25519 key must be 64 bytes");
    }
    const absl::string_view bytes = key.key_bytes;
    if (!RawPublicKey(EVP_PKEY_ED25519, bytes.substr(0, kRawKeySize)) ||
        !RawPublicKey(EVP_PKEY_X25519, bytes.substr(kRawKeySize))) {
      return absl::InvalidArgumentError("malformed ed25519+x25519 key");
    }
    return absl::OkStatus();
  }
  if (key.algorithm == kRsa2048PssSha256) {
    Pkey parsed = ParseSpki(key.key_bytes);
    if (!IsRsa2048(parsed.get())) {
      return absl::InvalidArgumentError("not a DER RSA-2048 public key");
    }
    // Only the canonical DER spelling is accepted.
    auto der = DerPublic(parsed.get());
    if (!der.ok() || *der != key.key_bytes) {
      return absl::InvalidArgumentError("non-canonical RSA public key encoding");
    }
    return absl::OkStatus();
  }
  return absl::InvalidArgumentError(
      absl::StrCat("unknown key algorithm '", key.algorithm, "'"));
}

SecretBytes::SecretBytes(SecretBytes&& other) noexcept
    : bytes_(std::move(other.bytes_)) {
  other.Wipe();
}

SecretBytes& SecretBytes::operator=(const SecretBytes& other) {
  if (this != &other) {
    Wipe();
    bytes_ = other.bytes_;
  }
  return *this;
}

SecretBytes& SecretBytes::operator=(SecretBytes&& other) noexcept {
  if (this != &other) {
    Wipe();
    bytes_ = std::move(other.bytes_);
    other.Wipe();
  }
  return *this;
}

SecretBytes::~SecretBytes() { Wipe(); }

void SecretBytes::Wipe() {
  OPENSSL_cleanse(bytes_.data(), bytes_.size());
  bytes_.clear();
}

absl::StatusOr<KeyPair> KeyPair::Generate(absl::string_view algorithm,
                                          DeterministicStream& stream) {
  if (algorithm == kEd25519X25519) {
    SecretBytes signing(stream.Next(kRawKeySize));
    SecretBytes encryption(stream.Next(kRawKeySize));
    Pkey ed = RawPrivateKey(EVP_PKEY_ED25519, signing.view());
    Pkey x = RawPrivateKey(EVP_PKEY_X25519, encryption.view());
    if (!ed || !x) return absl::InternalError("cannot create curve keys");
    AMAKEY_ASSIGN_OR_RETURN(std::string ed_pub, RawPublic(ed.get()));
    AMAKEY_ASSIGN_OR_RETURN(std::string x_pub, RawPublic(x.get()));
    return KeyPair(PublicKeyMaterial{std::string(algorithm), ed_pub + x_pub},
                   std::move(signing), std::move(encryption));
  }
  if (algorithm == kRsa2048PssSha256) {
    AMAKEY_ASSIGN_OR_RETURN(Pkey rsa, DeterministicRsa(stream));
    AMAKEY_ASSIGN_OR_RETURN(std::string pub, DerPublic(rsa.get()));
    AMAKEY_ASSIGN_OR_RETURN(std::string priv, DerPrivate(rsa.get()));
    return KeyPair(PublicKeyMaterial{std::string(algorithm), std::move(pub)},
                   SecretBytes(std::move(priv)), SecretBytes());
  }
  return absl::InvalidArgumentError(
      absl::StrCat("unknown key algorithm '", algorithm, "'"));
}

absl::StatusOr<KeyPair> KeyPair::GenerateRandom(absl::string_view algorithm) {
  DeterministicStream stream(SecureRandomBytes(32));
  return Generate(algorithm, stream);
}

absl::StatusOr<std::string> KeyPair::Sign(absl::string_view message) const {
  Pkey key = algorithm() == kEd25519X25519
                 ? RawPrivateKey(EVP_PKEY_ED25519, signing_private_.view())
                 : ParsePkcs8(signing_private_.view());
  if (!key) return absl::InternalError("cannot load private key");
  MdCtx md(EVP_MD_CTX_new());
  EVP_PKEY_CTX* pctx = nullptr;
  const EVP_MD* digest =
      algorithm() == kEd25519X25519 ? nullptr : EVP_sha256();
  if (!md ||
      EVP_DigestSignInit(md.get(), &pctx, digest, nullptr, key.get()) != 1) {
    return absl::InternalError("signature init failed");
  }
  if (algorithm() == kRsa2048PssSha256) {
    AMAKEY_RETURN_IF_ERROR(ConfigurePss(pctx));
  }
  size_t length = 0;
  if (EVP_DigestSign(md.get(), nullptr, &length, Bytes(message),
                     message.size()) != 1) {
    return absl::InternalError("signature sizing failed");
  }
  std::string signature(length, '\0');
  if (EVP_DigestSign(md.get(), reinterpret_cast<unsigned char*>(signature.data()),
                     &length, Bytes(message), message.size()) != 1) {
    return absl::InternalError("signing failed");
  }
  signature.resize(length);
  return signature;
}

bool VerifySignature(const PublicKeyMaterial& key, absl::string_view message,
                     absl::string_view signature) {
  Pkey pkey;
  const EVP_MD* digest = nullptr;
  if (key.algorithm == kEd25519X25519) {
    if (key.key_bytes.size() != 2 * kRawKeySize || signature.size() != 64) {
      return false;
    }
    pkey = RawPublicKey(EVP_PKEY_ED25519,
                        absl::string_view(key.key_bytes).substr(0, kRawKeySize));
  } else if (key.algorithm == kRsa2048PssSha256) {
    pkey = ParseSpki(key.key_bytes);
    if (!IsRsa2048(pkey.get()) || signature.size() != kRsaBits / 8) return false;
    digest = EVP_sha256();
  } else {
    return false;
  }
  if (!pkey) return false;
  MdCtx md(EVP_MD_CTX_new());
  EVP_PKEY_CTX* pctx = nullptr;
  if (!md ||
      EVP_DigestVerifyInit(md.get(), &pctx, digest, nullptr, pkey.get()) != 1) {
    return false;
  }
  if (key.algorithm == kRsa2048PssSha256 && !ConfigurePss(pctx).ok()) {
    return false;
  }
  return EVP_DigestVerify(md.get(), Bytes(signature), signature.size(),
                          Bytes(message), message.size()) == 1;
}

absl::StatusOr<std::string> WrapContentKey(const PublicKeyMaterial& recipient,
                                           absl::string_view content_key) {
  AMAKEY_RETURN_IF_ERROR(ValidatePublicKey(recipient));
  if (recipient.algorithm == kEd25519X25519) {
    // Ephemeral-static X25519; the wrap key binds both public values.
    const absl::string_view recipient_x =
        absl::string_view(recipient.key_bytes).substr(kRawKeySize);
    Pkey peer = RawPublicKey(EVP_PKEY_X25519, recipient_x);
    SecretBytes ephemeral_secret(SecureRandomBytes(kRawKeySize));
    Pkey ephemeral = RawPrivateKey(EVP_PKEY_X25519, ephemeral_secret.view());
    if (!peer || !ephemeral) return absl::InternalError("X25519 setup failed");
    AMAKEY_ASSIGN_OR_RETURN(std::string ephemeral_pub, RawPublic(ephemeral.get()));
    PkeyCtx ctx(EVP_PKEY_CTX_new(ephemeral.get(), nullptr));
    size_t length = kRawKeySize;
    std::string shared(length, '\0');
    if (!ctx || EVP_PKEY_derive_init(ctx.get()) != 1 ||
        EVP_PKEY_derive_set_peer(ctx.get(), peer.get()) != 1 ||
        EVP_PKEY_derive(ctx.get(), reinterpret_cast<unsigned char*>(shared.data()),
                        &length) != 1) {
      return absl::InternalError("X25519 agreement failed");
    }
    const std::string salt = ephemeral_pub + std::string(recipient_x);
    auto kek = HkdfSha256(shared, salt, kWrapInfo, 32);
    OPENSSL_cleanse(shared.data(), shared.size());
    if (!kek.ok()) return kek.status();
    auto sealed = AeadSeal(*kek, content_key, salt);
    OPENSSL_cleanse(kek->data(), kek->size());
    if (!sealed.ok()) return sealed.status();
    return ephemeral_pub + *sealed;
  }
  Pkey pkey = ParseSpki(recipient.key_bytes);
  PkeyCtx ctx(EVP_PKEY_CTX_new(pkey.get(), nullptr));
  if (!ctx || EVP_PKEY_encrypt_init(ctx.get()) != 1) {
    return absl::InternalError("RSA encrypt init failed");
  }
  AMAKEY_RETURN_IF_ERROR(ConfigureOaep(ctx.get()));
  size_t length = 0;
  if (EVP_PKEY_encrypt(ctx.get(), nullptr, &length, Bytes(content_key),
                       content_key.size()) != 1) {
    return absl::InternalError("RSA encrypt sizing failed");
  }
  std::string out(length, '\0');
  if (EVP_PKEY_encrypt(ctx.get(), reinterpret_cast<unsigned char*>(out.data()),
                       &length, Bytes(content_key), content_key.size()) != 1) {
    return absl::InternalError("RSA encrypt failed");
  }
  out.resize(length);
  return out;
}

absl::StatusOr<std::string> KeyPair::UnwrapContentKey(
    absl::string_view wrapped) const {
  if (algorithm() == kEd25519X25519) {
    if (wrapped.size() <= kRawKeySize) {
      return absl::InvalidArgumentError("wrapped key too short");
    }
    const absl::string_view ephemeral_pub = wrapped.substr(0, kRawKeySize);
    Pkey own = RawPrivateKey(EVP_PKEY_X25519, encryption_private_.view());
    Pkey peer = RawPublicKey(EVP_PKEY_X25519, ephemeral_pub);
    if (!own || !peer) return absl::InvalidArgumentError("malformed wrapped key");
    PkeyCtx ctx(EVP_PKEY_CTX_new(own.get(), nullptr));
    size_t length = kRawKeySize;
    std::string shared(length, '\0');
    if (!ctx || EVP_PKEY_derive_init(ctx.get()) != 1 ||
        EVP_PKEY_derive_set_peer(ctx.get(), peer.get()) != 1 ||
        EVP_PKEY_derive(ctx.get(), reinterpret_cast<unsigned char*>(shared.data()),
                        &length) != 1) {
      return absl::InvalidArgumentError("X25519 agreement failed");
    }
    const std::string salt =
        std::string(ephemeral_pub) + public_key_.key_bytes.substr(kRawKeySize);
    auto kek = HkdfSha256(shared, salt, kWrapInfo, 32);
    OPENSSL_cleanse(shared.data(), shared.size());
    if (!kek.ok()) return kek.status();
    auto opened = AeadOpen(*kek, wrapped.substr(kRawKeySize), salt);
    OPENSSL_cleanse(kek->data(), kek->size());
    return opened;
  }
  Pkey key = ParsePkcs8(signing_private_.view());
  PkeyCtx ctx(EVP_PKEY_CTX_new(key.get(), nullptr));
  if (!key || !ctx || EVP_PKEY_decrypt_init(ctx.get()) != 1) {
    return absl::InternalError("RSA decrypt init failed");
  }
  AMAKEY_RETURN_IF_ERROR(ConfigureOaep(ctx.get()));
  size_t length = 0;
  if (EVP_PKEY_decrypt(ctx.get(), nullptr, &length, Bytes(wrapped),
                       wrapped.size()) != 1) {
    return absl::PermissionDeniedError("RSA unwrap failed");
  }
  std::string out(length, '\0');
  if (EVP_PKEY_decrypt(ctx.get(), reinterpret_cast<unsigned char*>(out.data()),
                       &length, Bytes(wrapped), wrapped.size()) != 1) {
    return absl::PermissionDeniedError("RSA unwrap failed");
  }
  out.resize(length);
  return out;
}

}  // namespace amakey
