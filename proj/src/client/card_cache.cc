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

#include "amakey/client/card_cache.h"

#include <filesystem>
#include <fstream>
#include <sstream>

#include "absl/strings/str_cat.h"
#include "amakey/core/bytes.h"
#include "amakey/core/canonical.h"
#include "amakey/core/crypto.h"
#include "amakey/core/signing.h"
#include "amakey/core/status_macros.h"
#include "amakey/core/wire.h"

namespace amakey {
namespace {

namespace fs = std::filesystem;
using json = nlohmann::json;

absl::StatusOr<json> UnsignedEntry(const CacheEntry& entry) {
  AMAKEY_ASSIGN_OR_RETURN(json card, ToWire(entry.signed_card));
  return json{{"type", std::string(kCacheEntryType)},
              {"cached_at", FormatRfc3339(entry.cached_at)},
              {"signed_card", std::move(card)}};
}

absl::StatusOr<std::string> SignedPayload(const CacheEntry& entry) {
  AMAKEY_ASSIGN_OR_RETURN(json unsigned_entry, UnsignedEntry(entry));
  return CanonicalJson(unsigned_entry);
}

absl::StatusOr<CacheEntry> DecodeEntry(const std::string& bytes) {
  AMAKEY_ASSIGN_OR_RETURN(json j, ParseJson(bytes));
  if (!j.is_object() || j.size() != 4) {
    return absl::InvalidArgumentError("unexpected cache entry shape");
  }
  AMAKEY_ASSIGN_OR_RETURN(std::string type, GetString(j, "type"));
  if (type != kCacheEntryType) return absl::InvalidArgumentError("wrong entry type");
  CacheEntry entry;
  AMAKEY_ASSIGN_OR_RETURN(std::string cached_at, GetString(j, "cached_at"));
  AMAKEY_ASSIGN_OR_RETURN(entry.cached_at, ParseRfc3339(cached_at));
  AMAKEY_ASSIGN_OR_RETURN(const json* card, GetObject(j, "signed_card"));
  AMAKEY_ASSIGN_OR_RETURN(entry.signed_card, SignedIdentityCardFromWire(*card));
  AMAKEY_ASSIGN_OR_RETURN(std::string sig_hex, GetString(j, "client_signature"));
  AMAKEY_ASSIGN_OR_RETURN(entry.client_signature, HexDecode(sig_hex));
  AMAKEY_ASSIGN_OR_RETURN(std::string reencoded, EncodeCacheEntry(entry));
  if (reencoded != bytes) {
    return absl::InvalidArgumentError("cache entry is not canonical");
  }
  return entry;
}

}  // namespace

absl::StatusOr<std::string> EncodeCacheEntry(const CacheEntry& entry) {
  AMAKEY_ASSIGN_OR_RETURN(json j, UnsignedEntry(entry));
  j["client_signature"] = HexEncode(entry.client_signature);
  return CanonicalJson(j);
}

CardCache::CardCache(std::string dir, const KeyPair& owner, Clock clock)
    : dir_(std::move(dir)), owner_(owner), clock_(std::move(clock)) {}

std::string CardCache::PathFor(const ContactAddress& address) const {
  return (fs::path(dir_) /
          (DigestHex(DigestAlgorithm::kSha256, address.ToString()) + ".json"))
      .string();
}

absl::StatusOr<CacheEntry> CardCache::Put(const SignedIdentityCard& signed_card) {
  if (!VerifyIdentityCard(signed_card)) {
    return absl::InvalidArgumentError("refusing to cache a card that does not verify");
  }
  CacheEntry entry{signed_card, clock_(), ""};
  AMAKEY_ASSIGN_OR_RETURN(std::string payload, SignedPayload(entry));
  AMAKEY_ASSIGN_OR_RETURN(entry.client_signature, owner_.Sign(payload));
  AMAKEY_ASSIGN_OR_RETURN(std::string bytes, EncodeCacheEntry(entry));

  std::error_code ec;
  fs::create_directories(dir_, ec);
  if (ec) return absl::InternalError(absl::StrCat("cache dir: ", ec.message()));
  const std::string path = PathFor(signed_card.card.contact_address);
  const std::string tmp =
      absl::StrCat(path, ".", HexEncode(SecureRandomBytes(6)), ".tmp");
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    out << bytes;
    out.flush();
    if (!out) return absl::InternalError("cannot write " + tmp);
  }
  fs::rename(tmp, path, ec);
  if (ec) {
    fs::remove(tmp, ec);
    return absl::InternalError(absl::StrCat("cannot replace ", path));
  }
  return entry;
}

CacheLookup CardCache::Get(const ContactAddress& address) const {
  const std::string path = PathFor(address);
  std::ifstream in(path, std::ios::binary);
  if (!in) return {};
  std::ostringstream buffer;
  buffer << in.rdbuf();
  auto tampered = [&](absl::string_view why) {
    return CacheLookup{std::nullopt,
                       Finding{FindingKind::kCacheTampered,
                               absl::StrCat(path, ": ", why)}};
  };
  absl::StatusOr<CacheEntry> entry = DecodeEntry(buffer.str());
  if (!entry.ok()) return tampered(entry.status().message());
  absl::StatusOr<std::string> payload = SignedPayload(*entry);
  if (!payload.ok() ||
      !VerifySignature(owner_.public_key(), *payload, entry->client_signature)) {
    return tampered("counter-signature does not verify");
  }
  if (!VerifyIdentityCard(entry->signed_card)) {
    return tampered("card self-signature does not verify");
  }
  if (entry->signed_card.card.contact_address != address) {
    return tampered("entry is for a different address");
  }
  return CacheLookup{*std::move(entry), std::nullopt};
}

absl::Status CardCache::Remove(const ContactAddress& address) {
  std::error_code ec;
  fs::remove(PathFor(address), ec);
  if (ec) return absl::InternalError(ec.message());
  return absl::OkStatus();
}

}  // namespace amakey
