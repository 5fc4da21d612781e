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

#include "amakey/server/file_store.h"

#include <fcntl.h>
#include <unistd.h>

#include <cstring>
#include <filesystem>
#include <fstream>
#include <mutex>
#include <sstream>

#include "absl/strings/str_cat.h"
#include "amakey/core/canonical.h"
#include "amakey/core/status_macros.h"

namespace amakey {
namespace {

namespace fs = std::filesystem;
using json = nlohmann::json;

constexpr char kSnapshotFile[] = "snapshot.json";
constexpr char kLogFile[] = "log.jsonl";

absl::Status ErrnoError(absl::string_view what, const std::string& path) {
  return absl::InternalError(
      absl::StrCat(what, " ", path, ": ", std::strerror(errno)));
}

absl::Status FsyncPath(const std::string& path, int flags) {
  const int fd = ::open(path.c_str(), flags);
  if (fd < 0) return ErrnoError("open", path);
  const int rc = ::fsync(fd);
  ::close(fd);
  if (rc != 0) return ErrnoError("fsync", path);
  return absl::OkStatus();
}

absl::Status WriteFileDurably(const std::string& path, const std::string& data) {
  const std::string tmp = path + ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    out << data;
    out.flush();
    if (!out) return ErrnoError("write", tmp);
  }
  AMAKEY_RETURN_IF_ERROR(FsyncPath(tmp, O_RDONLY));
  std::error_code ec;
  fs::rename(tmp, path, ec);
  if (ec) return absl::InternalError(absl::StrCat("rename ", tmp, ": ", ec.message()));
  return FsyncPath(fs::path(path).parent_path().string(), O_RDONLY | O_DIRECTORY);
}

}  // namespace

absl::StatusOr<std::unique_ptr<FileStore>> FileStore::Open(const std::string& dir) {
  std::error_code ec;
  fs::create_directories(dir, ec);
  if (ec) return absl::InternalError(absl::StrCat("create ", dir, ": ", ec.message()));
  std::unique_ptr<FileStore> store(new FileStore(dir));
  AMAKEY_RETURN_IF_ERROR(store->Load());
  AMAKEY_RETURN_IF_ERROR(store->OpenLogForAppend());
  return store;
}

FileStore::~FileStore() {
  if (log_ != nullptr) std::fclose(log_);
}

absl::Status FileStore::Load() {
  const std::string snapshot = (fs::path(dir_) / kSnapshotFile).string();
  if (fs::exists(snapshot)) {
    std::ifstream in(snapshot, std::ios::binary);
    std::stringstream buffer;
    buffer << in.rdbuf();
    auto state = json::parse(buffer.str(), nullptr, false);
    if (state.is_discarded()) {
      return absl::DataLossError("corrupt snapshot " + snapshot);
    }
    AMAKEY_RETURN_IF_ERROR(ImportState(state));
  }

  const std::string log_path = (fs::path(dir_) / kLogFile).string();
  if (!fs::exists(log_path)) return absl::OkStatus();
  std::ifstream in(log_path, std::ios::binary);
  std::stringstream buffer;
  buffer << in.rdbuf();
  const std::string contents = buffer.str();

  size_t pos = 0;
  size_t good_prefix = 0;
  std::unique_lock lock(mu_);
  while (pos < contents.size()) {
    const size_t end = contents.find('\n', pos);
    if (end == std::string::npos) break;  // torn tail
    auto entry = json::parse(contents.substr(pos, end - pos), nullptr, false);
    if (entry.is_discarded()) {
      return absl::DataLossError(
          absl::StrCat("corrupt log entry at byte ", pos, " of ", log_path));
    }
    AMAKEY_RETURN_IF_ERROR(ApplyLogEntry(entry));
    ++log_entries_;
    pos = end + 1;
    good_prefix = pos;
  }
  if (good_prefix != contents.size()) {
    fs::resize_file(log_path, good_prefix);
  }
  return absl::OkStatus();
}

absl::Status FileStore::ApplyLogEntry(const json& entry) {
  AMAKEY_ASSIGN_OR_RETURN(std::string op, GetString(entry, "op"));
  if (op == "put_record") {
    AMAKEY_ASSIGN_OR_RETURN(const json* j, GetObject(entry, "record"));
    AMAKEY_ASSIGN_OR_RETURN(RegistrationRecord record, RegistrationRecordFromJson(*j));
    ApplyPutRecord(record);
  } else if (op == "put_rating") {
    AMAKEY_ASSIGN_OR_RETURN(const json* j, GetObject(entry, "rating"));
    AMAKEY_ASSIGN_OR_RETURN(StoredRating rating, StoredRatingFromJson(*j));
    ApplyPutRating(rating);
  } else if (op == "put_ticket") {
    AMAKEY_ASSIGN_OR_RETURN(const json* j, GetObject(entry, "ticket"));
    AMAKEY_ASSIGN_OR_RETURN(RemovalTicket ticket, RemovalTicketFromJson(*j));
    ApplyPutRemovalTicket(ticket);
  } else if (op == "delete_ticket") {
    AMAKEY_ASSIGN_OR_RETURN(std::string nonce, GetString(entry, "nonce"));
    ApplyDeleteRemovalTicket(nonce);
  } else if (op == "delete_address") {
    AMAKEY_ASSIGN_OR_RETURN(const json* j, GetObject(entry, "address"));
    AMAKEY_ASSIGN_OR_RETURN(ContactAddress address, AddressFromJson(*j));
    ApplyDeleteAddress(address);
  } else {
    return absl::DataLossError("unknown log operation " + op);
  }
  return absl::OkStatus();
}

absl::Status FileStore::OpenLogForAppend() {
  const std::string log_path = (fs::path(dir_) / kLogFile).string();
  log_ = std::fopen(log_path.c_str(), "ab");
  if (log_ == nullptr) return ErrnoError("open", log_path);
  return absl::OkStatus();
}

absl::Status FileStore::Append(const json& entry) {
  const std::string line = entry.dump() + "\n";
  if (std::fwrite(line.data(), 1, line.size(), log_) != line.size() ||
      std::fflush(log_) != 0 || ::fsync(::fileno(log_)) != 0) {
    return ErrnoError("append", dir_ + "/" + kLogFile);
  }
  ++log_entries_;
  return absl::OkStatus();
}

absl::Status FileStore::PutRecord(const RegistrationRecord& record) {
  std::unique_lock lock(mu_);
  AMAKEY_RETURN_IF_ERROR(Append({{"op", "put_record"}, {"record", ToJson(record)}}));
  ApplyPutRecord(record);
  return absl::OkStatus();
}

absl::Status FileStore::PutRating(const StoredRating& rating) {
  std::unique_lock lock(mu_);
  AMAKEY_RETURN_IF_ERROR(Append({{"op", "put_rating"}, {"rating", ToJson(rating)}}));
  ApplyPutRating(rating);
  return absl::OkStatus();
}

absl::Status FileStore::PutRemovalTicket(const RemovalTicket& ticket) {
  std::unique_lock lock(mu_);
  AMAKEY_RETURN_IF_ERROR(Append({{"op", "put_ticket"}, {"ticket", ToJson(ticket)}}));
  ApplyPutRemovalTicket(ticket);
  return absl::OkStatus();
}

absl::Status FileStore::DeleteRemovalTicket(const std::string& nonce_value) {
  std::unique_lock lock(mu_);
  AMAKEY_RETURN_IF_ERROR(Append({{"op", "delete_ticket"}, {"nonce", nonce_value}}));
  ApplyDeleteRemovalTicket(nonce_value);
  return absl::OkStatus();
}

absl::Status FileStore::DeleteAddress(const ContactAddress& address) {
  std::unique_lock lock(mu_);
  AMAKEY_RETURN_IF_ERROR(
      Append({{"op", "delete_address"}, {"address", AddressToJson(address)}}));
  ApplyDeleteAddress(address);
  return absl::OkStatus();
}

absl::Status FileStore::Compact() {
  std::unique_lock lock(mu_);
  AMAKEY_RETURN_IF_ERROR(WriteFileDurably(
      (fs::path(dir_) / kSnapshotFile).string(), ExportLocked().dump()));
  const std::string log_path = (fs::path(dir_) / kLogFile).string();
  std::fclose(log_);
  log_ = std::fopen(log_path.c_str(), "wb");
  if (log_ == nullptr) return ErrnoError("truncate", log_path);
  log_entries_ = 0;
  return absl::OkStatus();
}

}  // namespace amakey
