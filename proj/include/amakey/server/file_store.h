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

#ifndef AMAKEY_SERVER_FILE_STORE_H_
#define AMAKEY_SERVER_FILE_STORE_H_

#include <cstdio>
#include <memory>
#include <string>

#include "absl/status/statusor.h"
#include "amakey/server/store.h"

namespace amakey {

// InMemoryStore persisted to a directory:
//
//   snapshot.json  full state as of the last compaction (atomic rename)
//   log.jsonl      one JSON operation per line, fsynced before each
//                  mutation is applied
//
// Opening loads the snapshot and replays the log. A torn final line (crash
// mid-write) is discarded; corruption anywhere else is an error.
class FileStore : public InMemoryStore {
 public:
  static absl::StatusOr<std::unique_ptr<FileStore>> Open(const std::string& dir);
  ~FileStore() override;

  absl::Status PutRecord(const RegistrationRecord& record) override;
  absl::Status PutRating(const StoredRating& rating) override;
  absl::Status PutRemovalTicket(const RemovalTicket& ticket) override;
  absl::Status DeleteRemovalTicket(const std::string& nonce_value) override;
  absl::Status DeleteAddress(const ContactAddress& address) override;

  // Writes a fresh snapshot and truncates the log.
  absl::Status Compact();

  size_t log_entries() const { return log_entries_; }

 private:
  explicit FileStore(std::string dir) : dir_(std::move(dir)) {}
  absl::Status Load();
  absl::Status ApplyLogEntry(const nlohmann::json& entry);
  // Caller holds mu_ exclusively.
  absl::Status Append(const nlohmann::json& entry);
  absl::Status OpenLogForAppend();

  std::string dir_;
  std::FILE* log_ = nullptr;
  size_t log_entries_ = 0;
};

}  // namespace amakey

#endif  // AMAKEY_SERVER_FILE_STORE_H_
