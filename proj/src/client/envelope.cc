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

#include "amakey/client/envelope.h"

#include "absl/strings/str_cat.h"
#include "amakey/core/bytes.h"
#include "amakey/core/canonical.h"
#include "amakey/core/crypto.h"
#include "amakey/core/signing.h"
#include "amakey/core/status_macros.h"
#include "amakey/core/wire.h"

namespace amakey {
namespace {

using json = nlohmann::json;

constexpr size_t kContentKeySize = 32;

std::string AssociatedData(const MessageEnvelope& envelope) {
  return absl::StrCat(kEnvelopeType, "|", envelope.recipient_fingerprint, "|",
                      HexEncode(envelope.wrapped_content_key));
}

}  // namespace

absl::StatusOr<MessageEnvelope> EncryptMessage(
    absl::string_view plaintext, const SignedIdentityCard& recipient_card,
    const std::optional<SignedIdentityCard>& sender_card) {
  if (!VerifyIdentityCard(recipient_card)) {
    return absl::InvalidArgumentError("recipient card does not verify");
  }
  json payload = {{"body", Base64Encode(plaintext)}};
  if (sender_card.has_value()) {
    AMAKEY_ASSIGN_OR_RETURN(payload["sender_card"], ToWire(*sender_card));
  }
  AMAKEY_ASSIGN_OR_RETURN(std::string payload_bytes, CanonicalJson(payload));

  const PublicKeyMaterial& recipient = recipient_card.card.public_key;
  AMAKEY_ASSIGN_OR_RETURN(KeyFingerprint fp, Fingerprint(recipient));
  const std::string content_key = SecureRandomBytes(kContentKeySize);
  MessageEnvelope envelope;
  envelope.recipient_fingerprint = fp.hex();
  AMAKEY_ASSIGN_OR_RETURN(envelope.wrapped_content_key,
                          WrapContentKey(recipient, content_key));
  AMAKEY_ASSIGN_OR_RETURN(
      envelope.ciphertext,
      AeadSeal(content_key, payload_bytes, AssociatedData(envelope)));
  return envelope;
}

absl::StatusOr<DecryptedMessage> DecryptMessage(const MessageEnvelope& envelope,
                                                const KeyPair& key) {
  AMAKEY_ASSIGN_OR_RETURN(KeyFingerprint own, Fingerprint(key.public_key()));
  if (own.hex() != envelope.recipient_fingerprint) {
    return absl::PermissionDeniedError("message is addressed to another key");
  }
  AMAKEY_ASSIGN_OR_RETURN(std::string content_key,
                          key.UnwrapContentKey(envelope.wrapped_content_key));
  AMAKEY_ASSIGN_OR_RETURN(
      std::string payload_bytes,
      AeadOpen(content_key, envelope.ciphertext, AssociatedData(envelope)));
  AMAKEY_ASSIGN_OR_RETURN(json payload, ParseJson(payload_bytes));
  AMAKEY_ASSIGN_OR_RETURN(std::string body_b64, GetString(payload, "body"));
  DecryptedMessage message;
  AMAKEY_ASSIGN_OR_RETURN(message.plaintext, Base64Decode(body_b64));
  if (auto it = payload.find("sender_card"); it != payload.end()) {
    absl::StatusOr<SignedIdentityCard> card = SignedIdentityCardFromWire(*it);
    if (card.ok() && VerifyIdentityCard(*card)) {
      message.sender_card = *std::move(card);
    } else {
      message.warnings.push_back(
          Finding{FindingKind::kEmbeddedCardInvalid,
                  "attached sender card does not verify; discarded"});
    }
  }
  return message;
}

json ToJson(const MessageEnvelope& envelope) {
  return {{"type", std::string(kEnvelopeType)},
          {"recipient_fingerprint", envelope.recipient_fingerprint},
          {"wrapped_content_key", HexEncode(envelope.wrapped_content_key)},
          {"ciphertext", HexEncode(envelope.ciphertext)}};
}

absl::StatusOr<MessageEnvelope> EnvelopeFromJson(const json& j) {
  AMAKEY_ASSIGN_OR_RETURN(std::string type, GetString(j, "type"));
  if (type != kEnvelopeType) return absl::InvalidArgumentError("not an envelope");
  MessageEnvelope envelope;
  AMAKEY_ASSIGN_OR_RETURN(envelope.recipient_fingerprint,
                          GetString(j, "recipient_fingerprint"));
  AMAKEY_ASSIGN_OR_RETURN(std::string wrapped, GetString(j, "wrapped_content_key"));
  AMAKEY_ASSIGN_OR_RETURN(envelope.wrapped_content_key, HexDecode(wrapped));
  AMAKEY_ASSIGN_OR_RETURN(std::string ciphertext, GetString(j, "ciphertext"));
  AMAKEY_ASSIGN_OR_RETURN(envelope.ciphertext, HexDecode(ciphertext));
  return envelope;
}

}  // namespace amakey
