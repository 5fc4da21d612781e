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

#include "amakey/server/delivery.h"

#include <filesystem>
#include <fstream>

#include "absl/strings/str_cat.h"
#include "amakey/core/canonical.h"
#include "amakey/core/crypto.h"

namespace amakey {

absl::Status InMemoryMailbox::Deliver(const DeliveryMessage& message) {
  std::lock_guard lock(mu_);
  inboxes_[message.to].push_back(message);
  return absl::OkStatus();
}

std::vector<DeliveryMessage> InMemoryMailbox::Inbox(
    const ContactAddress& address) const {
  std::lock_guard lock(mu_);
  auto it = inboxes_.find(address);
  return it == inboxes_.end() ? std::vector<DeliveryMessage>{} : it->second;
}

std::optional<std::string> InMemoryMailbox::LatestNonce(
    const ContactAddress& address, NoncePurpose purpose) const {
  std::lock_guard lock(mu_);
  auto it = inboxes_.find(address);
  if (it == inboxes_.end()) return std::nullopt;
  for (auto m = it->second.rbegin(); m != it->second.rend(); ++m) {
    if (m->purpose == purpose) return m->nonce;
  }
  return std::nullopt;
}

size_t InMemoryMailbox::total_delivered() const {
  std::lock_guard lock(mu_);
  size_t total = 0;
  for (const auto& [address, inbox] : inboxes_) total += inbox.size();
  return total;
}

absl::Status SpoolDirChannel::Deliver(const DeliveryMessage& message) {
  std::lock_guard lock(mu_);
  std::error_code ec;
  std::filesystem::create_directories(dir_, ec);
  if (ec) return absl::InternalError(absl::StrCat("spool dir: ", ec.message()));
  const std::string name =
      absl::StrCat(DigestHex(DigestAlgorithm::kSha256, message.to.ToString()).substr(0, 16),
                   "-", FormatRfc3339(message.sent_at), "-", ++sequence_, ".json");
  const nlohmann::json body = {
      {"to", AddressToJson(message.to)},
      {"purpose", std::string(NoncePurposeName(message.purpose))},
      {"nonce", message.nonce},
      {"link", message.link},
      {"sent_at", FormatRfc3339(message.sent_at)}};
  std::ofstream out(std::filesystem::path(dir_) / name);
  out << body.dump(2) << "\n";
  if (!out) return absl::InternalError("cannot write spool file " + name);
  return absl::OkStatus();
}

}  // namespace amakey
