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

#ifndef AMAKEY_CLIENT_ENVELOPE_H_
#define AMAKEY_CLIENT_ENVELOPE_H_

#include <optional>
#include <string>
#include <vector>

#include "absl/status/statusor.h"
#include "absl/strings/string_view.h"
#include "amakey/client/findings.h"
#include "amakey/core/cards.h"
#include "amakey/core/fingerprint.h"
#include "amakey/core/keys.h"
#include "json.hpp"

namespace amakey {

inline constexpr absl::string_view kEnvelopeType = "amakey.envelope.v1";

// Hybrid-encrypted message. A fresh AES-256-GCM content key seals the
// payload; the recipient's public key wraps the content key. The sender's
// card, when attached, travels inside the sealed payload so that contacts
// sharing an address can learn each other's keys from mail they receive.
//
// This format is specific to this library and does not interoperate with
// OpenPGP or S/MIME.
struct MessageEnvelope {
  std::string recipient_fingerprint;  // hex
  std::string wrapped_content_key;
  std::string ciphertext;

  friend bool operator==(const MessageEnvelope&, const MessageEnvelope&) = default;
};

struct DecryptedMessage {
  std::string plaintext;
  // Present only if an attached card verified.
  std::optional<SignedIdentityCard> sender_card;
  std::vector<Finding> warnings;
};

absl::StatusOr<MessageEnvelope> EncryptMessage(
    absl::string_view plaintext, const SignedIdentityCard& recipient_card,
    const std::optional<SignedIdentityCard>& sender_card = std::nullopt);

// Fails without returning any plaintext if `key` is not the recipient's or
// the envelope was modified.
absl::StatusOr<DecryptedMessage> DecryptMessage(const MessageEnvelope& envelope,
                                                const KeyPair& key);

nlohmann::json ToJson(const MessageEnvelope& envelope);
absl::StatusOr<MessageEnvelope> EnvelopeFromJson(const nlohmann::json& j);

}  // namespace amakey

#endif  // AMAKEY_CLIENT_ENVELOPE_H_
