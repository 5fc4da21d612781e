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

#ifndef AMAKEY_SERVER_DELIVERY_H_
#define AMAKEY_SERVER_DELIVERY_H_

#include <map>
#include <mutex>
#include <optional>
#include <string>
#include <vector>

#include "absl/status/status.h"
#include "amakey/core/contact_address.h"
#include "amakey/core/nonce.h"
#include "amakey/core/time.h"

namespace amakey {

// A nonce sent to a contact address. Whoever controls the address can read
// it; nobody else can.
struct DeliveryMessage {
  ContactAddress to;
  NoncePurpose purpose = NoncePurpose::kRegister;
  std::string nonce;
  // Relative link that redeems the nonce, e.g. "/v1/verify?nonce=...".
  std::string link;
  Timestamp sent_at;

  friend bool operator==(const DeliveryMessage&, const DeliveryMessage&) = default;
};

// Out-of-band channel to a contact address (email, SMS, ...).
class DeliveryChannel {
 public:
  virtual ~DeliveryChannel() = default;
  virtual absl::Status Deliver(const DeliveryMessage& message) = 0;
};

// Per-address inboxes kept in memory. Tests read nonces from here in place
// of a mailbox; the harness reads a victim's inbox to model a compromised
// address.
class InMemoryMailbox : public DeliveryChannel {
 public:
  absl::Status Deliver(const DeliveryMessage& message) override;

  std::vector<DeliveryMessage> Inbox(const ContactAddress& address) const;
  std::optional<std::string> LatestNonce(const ContactAddress& address,
                                         NoncePurpose purpose) const;
  size_t total_delivered() const;

 private:
  mutable std::mutex mu_;
  std::map<ContactAddress, std::vector<DeliveryMessage>> inboxes_;
};

// Writes each message as a JSON file under a directory, for running a
// server without a real mail gateway.
class SpoolDirChannel : public DeliveryChannel {
 public:
  explicit SpoolDirChannel(std::string dir) : dir_(std::move(dir)) {}
  absl::Status Deliver(const DeliveryMessage& message) override;

 private:
  std::mutex mu_;
  std::string dir_;
  uint64_t sequence_ = 0;
};

}  // namespace amakey

#endif  // AMAKEY_SERVER_DELIVERY_H_
