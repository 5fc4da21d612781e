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

#ifndef AMAKEY_SERVER_STORE_H_
#define AMAKEY_SERVER_STORE_H_

#include <map>
#include <optional>
#include <shared_mutex>
#include <string>
#include <vector>

#include "absl/status/status.h"
#include "absl/status/statusor.h"
#include "amakey/core/cards.h"
#include "amakey/core/contact_address.h"
#include "amakey/core/nonce.h"
#include "amakey/core/time.h"
#include "json.hpp"

namespace amakey {

enum class RegistrationState { kPending, kVerified };

struct RegistrationRecord {
  SignedIdentityCard signed_card;
  RegistrationState state = RegistrationState::kPending;
  std::optional<Nonce> pending_nonce;  // cleared once verified
  Timestamp created_at;
  std::optional<Timestamp> verified_at;

  const ContactAddress& address() const { return signed_card.card.contact_address; }
  friend bool operator==(const RegistrationRecord&,
                         const RegistrationRecord&) = default;
};

struct StoredRating {
  SignedRatingCard signed_rating;
  Timestamp received_at;

  const ContactAddress& rater() const { return signed_rating.rating.rater_address; }
  friend bool operator==(const StoredRating&, const StoredRating&) = default;
};

// Outstanding lost-key removal: deleting `address` once `nonce` comes back.
struct RemovalTicket {
  ContactAddress address;
  Nonce nonce;
  friend bool operator==(const RemovalTicket&, const RemovalTicket&) = default;
};

// Keyserver persistence. Every mutating call is atomic, and durable before it
// returns OK. Implementations are internally synchronized.
class Store {
 public:
  virtual ~Store() = default;

  virtual std::optional<RegistrationRecord> GetRecord(
      const ContactAddress& address) const = 0;
  // Address whose pending registration nonce is `nonce_value`.
  virtual std::optional<ContactAddress> FindPendingNonce(
      const std::string& nonce_value) const = 0;
  // Ratings about `subject`, ordered by (rated_at, rater).
  virtual std::vector<StoredRating> RatingsFor(
      const ContactAddress& subject) const = 0;
  virtual std::optional<RemovalTicket> GetRemovalTicket(
      const std::string& nonce_value) const = 0;

  // Inserts or replaces the record for its address.
  virtual absl::Status PutRecord(const RegistrationRecord& record) = 0;
  // Inserts or replaces the rating from the same rater about the same
  // subject.
  virtual absl::Status PutRating(const StoredRating& rating) = 0;
  virtual absl::Status PutRemovalTicket(const RemovalTicket& ticket) = 0;
  virtual absl::Status DeleteRemovalTicket(const std::string& nonce_value) = 0;
  // Removes the record, every rating about it, every rating it authored and
  // its removal tickets.
  virtual absl::Status DeleteAddress(const ContactAddress& address) = 0;

  // Whole state as canonical JSON, for snapshots and equality checks.
  virtual nlohmann::json ExportState() const = 0;
};

// Plain maps behind a shared mutex.
class InMemoryStore : public Store {
 public:
  InMemoryStore() = default;

  std::optional<RegistrationRecord> GetRecord(
      const ContactAddress& address) const override;
  std::optional<ContactAddress> FindPendingNonce(
      const std::string& nonce_value) const override;
  std::vector<StoredRating> RatingsFor(
      const ContactAddress& subject) const override;
  std::optional<RemovalTicket> GetRemovalTicket(
      const std::string& nonce_value) const override;

  absl::Status PutRecord(const RegistrationRecord& record) override;
  absl::Status PutRating(const StoredRating& rating) override;
  absl::Status PutRemovalTicket(const RemovalTicket& ticket) override;
  absl::Status DeleteRemovalTicket(const std::string& nonce_value) override;
  absl::Status DeleteAddress(const ContactAddress& address) override;

  nlohmann::json ExportState() const override;
  // Replaces all state with an ExportState() document.
  absl::Status ImportState(const nlohmann::json& state);

 protected:
  // Unlocked mutators shared with FileStore's log replay.
  void ApplyPutRecord(const RegistrationRecord& record);
  void ApplyPutRating(const StoredRating& rating);
  void ApplyPutRemovalTicket(const RemovalTicket& ticket);
  void ApplyDeleteRemovalTicket(const std::string& nonce_value);
  void ApplyDeleteAddress(const ContactAddress& address);
  nlohmann::json ExportLocked() const;

  mutable std::shared_mutex mu_;

 private:
  std::map<ContactAddress, RegistrationRecord> records_;
  std::map<std::string, ContactAddress> pending_nonces_;
  // subject -> rater -> rating
  std::map<ContactAddress, std::map<ContactAddress, StoredRating>> ratings_;
  std::map<std::string, RemovalTicket> tickets_;
};

// JSON codecs for the stored types, shared by FileStore and ExportState.
nlohmann::json ToJson(const RegistrationRecord& record);
absl::StatusOr<RegistrationRecord> RegistrationRecordFromJson(
    const nlohmann::json& j);
nlohmann::json ToJson(const StoredRating& rating);
absl::StatusOr<StoredRating> StoredRatingFromJson(const nlohmann::json& j);
nlohmann::json ToJson(const RemovalTicket& ticket);
absl::StatusOr<RemovalTicket> RemovalTicketFromJson(const nlohmann::json& j);

}  // namespace amakey

#endif  // AMAKEY_SERVER_STORE_H_
