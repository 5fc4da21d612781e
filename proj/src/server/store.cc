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

#include "amakey/server/store.h"

#include <algorithm>
#include <mutex>
#include <utility>

#include "absl/strings/str_cat.h"
#include "amakey/core/canonical.h"
#include "amakey/core/status_macros.h"
#include "amakey/core/wire.h"

namespace amakey {
namespace {

using json = nlohmann::json;

json NonceToJson(const Nonce& nonce) {
  return {{"value", nonce.value},
          {"issued_at", FormatRfc3339(nonce.issued_at)},
          {"purpose", std::string(NoncePurposeName(nonce.purpose))}};
}

absl::StatusOr<Nonce> NonceFromJson(const json& j) {
  Nonce nonce;
  AMAKEY_ASSIGN_OR_RETURN(nonce.value, GetString(j, "value"));
  AMAKEY_ASSIGN_OR_RETURN(std::string issued, GetString(j, "issued_at"));
  AMAKEY_ASSIGN_OR_RETURN(nonce.issued_at, ParseRfc3339(issued));
  AMAKEY_ASSIGN_OR_RETURN(std::string purpose, GetString(j, "purpose"));
  if (purpose == "register") {
    nonce.purpose = NoncePurpose::kRegister;
  } else if (purpose == "remove") {
    nonce.purpose = NoncePurpose::kRemove;
  } else {
    return absl::InvalidArgumentError("unknown nonce purpose " + purpose);
  }
  return nonce;
}

absl::StatusOr<Timestamp> GetTime(const json& j, absl::string_view key) {
  AMAKEY_ASSIGN_OR_RETURN(std::string text, GetString(j, key));
  return ParseRfc3339(text);
}

}  // namespace

json ToJson(const RegistrationRecord& record) {
  json j = {{"signed_card", ToWire(record.signed_card).value()},
            {"state", record.state == RegistrationState::kVerified ? "verified"
                                                                  : "pending"},
            {"created_at", FormatRfc3339(record.created_at)}};
  if (record.pending_nonce) j["pending_nonce"] = NonceToJson(*record.pending_nonce);
  if (record.verified_at) j["verified_at"] = FormatRfc3339(*record.verified_at);
  return j;
}

absl::StatusOr<RegistrationRecord> RegistrationRecordFromJson(const json& j) {
  RegistrationRecord record;
  AMAKEY_ASSIGN_OR_RETURN(const json* card, GetObject(j, "signed_card"));
  AMAKEY_ASSIGN_OR_RETURN(record.signed_card, SignedIdentityCardFromWire(*card));
  AMAKEY_ASSIGN_OR_RETURN(std::string state, GetString(j, "state"));
  if (state != "verified" && state != "pending") {
    return absl::InvalidArgumentError("unknown record state " + state);
  }
  record.state = state == "verified" ? RegistrationState::kVerified
                                     : RegistrationState::kPending;
  AMAKEY_ASSIGN_OR_RETURN(record.created_at, GetTime(j, "created_at"));
  if (j.contains("pending_nonce")) {
    AMAKEY_ASSIGN_OR_RETURN(record.pending_nonce, NonceFromJson(j["pending_nonce"]));
  }
  if (j.contains("verified_at")) {
    AMAKEY_ASSIGN_OR_RETURN(record.verified_at, GetTime(j, "verified_at"));
  }
  return record;
}

json ToJson(const StoredRating& rating) {
  return {{"signed_rating", ToWire(rating.signed_rating).value()},
          {"received_at", FormatRfc3339(rating.received_at)}};
}

absl::StatusOr<StoredRating> StoredRatingFromJson(const json& j) {
  StoredRating rating;
  AMAKEY_ASSIGN_OR_RETURN(const json* signed_rating, GetObject(j, "signed_rating"));
  AMAKEY_ASSIGN_OR_RETURN(rating.signed_rating,
                          SignedRatingCardFromWire(*signed_rating));
  AMAKEY_ASSIGN_OR_RETURN(rating.received_at, GetTime(j, "received_at"));
  return rating;
}

json ToJson(const RemovalTicket& ticket) {
  return {{"address", AddressToJson(ticket.address)},
          {"nonce", NonceToJson(ticket.nonce)}};
}

absl::StatusOr<RemovalTicket> RemovalTicketFromJson(const json& j) {
  AMAKEY_ASSIGN_OR_RETURN(const json* address, GetObject(j, "address"));
  AMAKEY_ASSIGN_OR_RETURN(const json* nonce, GetObject(j, "nonce"));
  AMAKEY_ASSIGN_OR_RETURN(ContactAddress parsed_address, AddressFromJson(*address));
  AMAKEY_ASSIGN_OR_RETURN(Nonce parsed_nonce, NonceFromJson(*nonce));
  return RemovalTicket{std::move(parsed_address), std::move(parsed_nonce)};
}

std::optional<RegistrationRecord> InMemoryStore::GetRecord(
    const ContactAddress& address) const {
  std::shared_lock lock(mu_);
  auto it = records_.find(address);
  if (it == records_.end()) return std::nullopt;
  return it->second;
}

std::optional<ContactAddress> InMemoryStore::FindPendingNonce(
    const std::string& nonce_value) const {
  std::shared_lock lock(mu_);
  auto it = pending_nonces_.find(nonce_value);
  if (it == pending_nonces_.end()) return std::nullopt;
  return it->second;
}

std::vector<StoredRating> InMemoryStore::RatingsFor(
    const ContactAddress& subject) const {
  std::shared_lock lock(mu_);
  std::vector<StoredRating> out;
  auto it = ratings_.find(subject);
  if (it == ratings_.end()) return out;
  for (const auto& [rater, rating] : it->second) out.push_back(rating);
  std::stable_sort(out.begin(), out.end(),
                   [](const StoredRating& a, const StoredRating& b) {
                     return a.signed_rating.rating.rated_at <
                            b.signed_rating.rating.rated_at;
                   });
  return out;
}

std::optional<RemovalTicket> InMemoryStore::GetRemovalTicket(
    const std::string& nonce_value) const {
  std::shared_lock lock(mu_);
  auto it = tickets_.find(nonce_value);
  if (it == tickets_.end()) return std::nullopt;
  return it->second;
}

absl::Status InMemoryStore::PutRecord(const RegistrationRecord& record) {
  std::unique_lock lock(mu_);
  ApplyPutRecord(record);
  return absl::OkStatus();
}

absl::Status InMemoryStore::PutRating(const StoredRating& rating) {
  std::unique_lock lock(mu_);
  ApplyPutRating(rating);
  return absl::OkStatus();
}

absl::Status InMemoryStore::PutRemovalTicket(const RemovalTicket& ticket) {
  std::unique_lock lock(mu_);
  ApplyPutRemovalTicket(ticket);
  return absl::OkStatus();
}

absl::Status InMemoryStore::DeleteRemovalTicket(const std::string& nonce_value) {
  std::unique_lock lock(mu_);
  ApplyDeleteRemovalTicket(nonce_value);
  return absl::OkStatus();
}

absl::Status InMemoryStore::DeleteAddress(const ContactAddress& address) {
  std::unique_lock lock(mu_);
  ApplyDeleteAddress(address);
  return absl::OkStatus();
}

void InMemoryStore::ApplyPutRecord(const RegistrationRecord& record) {
  auto it = records_.find(record.address());
  if (it != records_.end() && it->second.pending_nonce) {
    pending_nonces_.erase(it->second.pending_nonce->value);
  }
  records_.insert_or_assign(record.address(), record);
  if (record.pending_nonce) {
    pending_nonces_.insert_or_assign(record.pending_nonce->value, record.address());
  }
}

void InMemoryStore::ApplyPutRating(const StoredRating& rating) {
  ratings_[rating.signed_rating.rating.subject_card.card.contact_address]
      .insert_or_assign(rating.rater(), rating);
}

void InMemoryStore::ApplyPutRemovalTicket(const RemovalTicket& ticket) {
  tickets_.insert_or_assign(ticket.nonce.value, ticket);
}

void InMemoryStore::ApplyDeleteRemovalTicket(const std::string& nonce_value) {
  tickets_.erase(nonce_value);
}

void InMemoryStore::ApplyDeleteAddress(const ContactAddress& address) {
  auto it = records_.find(address);
  if (it != records_.end()) {
    if (it->second.pending_nonce) {
      pending_nonces_.erase(it->second.pending_nonce->value);
    }
    records_.erase(it);
  }
  ratings_.erase(address);
  for (auto subject = ratings_.begin(); subject != ratings_.end();) {
    subject->second.erase(address);
    subject = subject->second.empty() ? ratings_.erase(subject) : std::next(subject);
  }
  std::erase_if(tickets_, [&](const auto& entry) {
    return entry.second.address == address;
  });
}

json InMemoryStore::ExportState() const {
  std::shared_lock lock(mu_);
  return ExportLocked();
}

json InMemoryStore::ExportLocked() const {
  json records = json::array();
  for (const auto& [address, record] : records_) records.push_back(ToJson(record));
  json ratings = json::array();
  for (const auto& [subject, by_rater] : ratings_) {
    for (const auto& [rater, rating] : by_rater) ratings.push_back(ToJson(rating));
  }
  json tickets = json::array();
  for (const auto& [nonce, ticket] : tickets_) tickets.push_back(ToJson(ticket));
  return {{"records", records}, {"ratings", ratings}, {"removal_tickets", tickets}};
}

absl::Status InMemoryStore::ImportState(const json& state) {
  if (!state.is_object()) return absl::InvalidArgumentError("state must be an object");
  InMemoryStore fresh;
  for (const char* key : {"records", "ratings", "removal_tickets"}) {
    if (!state.contains(key) || !state[key].is_array()) {
      return absl::InvalidArgumentError(absl::StrCat("state missing ", key));
    }
  }
  for (const json& r : state["records"]) {
    AMAKEY_ASSIGN_OR_RETURN(RegistrationRecord record, RegistrationRecordFromJson(r));
    fresh.ApplyPutRecord(record);
  }
  for (const json& r : state["ratings"]) {
    AMAKEY_ASSIGN_OR_RETURN(StoredRating rating, StoredRatingFromJson(r));
    fresh.ApplyPutRating(rating);
  }
  for (const json& t : state["removal_tickets"]) {
    AMAKEY_ASSIGN_OR_RETURN(RemovalTicket ticket, RemovalTicketFromJson(t));
    fresh.ApplyPutRemovalTicket(ticket);
  }
  std::unique_lock lock(mu_);
  records_ = std::move(fresh.records_);
  pending_nonces_ = std::move(fresh.pending_nonces_);
  ratings_ = std::move(fresh.ratings_);
  tickets_ = std::move(fresh.tickets_);
  return absl::OkStatus();
}

}  // namespace amakey
