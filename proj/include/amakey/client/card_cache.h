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

#ifndef AMAKEY_CLIENT_CARD_CACHE_H_
#define AMAKEY_CLIENT_CARD_CACHE_H_

#include <optional>
#include <string>

#include "absl/status/status.h"
#include "absl/status/statusor.h"
#include "amakey/client/findings.h"
#include "amakey/core/cards.h"
#include "amakey/core/keys.h"
#include "amakey/core/time.h"

namespace amakey {

inline constexpr absl::string_view kCacheEntryType = "amakey.cache-entry.v1";

struct CacheEntry {
  SignedIdentityCard signed_card;
  Timestamp cached_at;
  // By the local user's key, over the canonical entry without this field.
  std::string client_signature;

  friend bool operator==(const CacheEntry&, const CacheEntry&) = default;
};

struct CacheLookup {
  std::optional<CacheEntry> entry;
  // Set when a file existed but failed verification; the entry is absent.
  std::optional<Finding> tamper;
};

// Locally trusted cards, one canonical JSON file per address under `dir`,
// each counter-signed by the owner's key. Writes replace whole files
// atomically, so concurrent sessions see either the old or the new entry.
class CardCache {
 public:
  CardCache(std::string dir, const KeyPair& owner, Clock clock);

  absl::StatusOr<CacheEntry> Put(const SignedIdentityCard& signed_card);
  CacheLookup Get(const ContactAddress& address) const;
  absl::Status Remove(const ContactAddress& address);

  std::string PathFor(const ContactAddress& address) const;
  const std::string& dir() const { return dir_; }

 private:
  std::string dir_;
  const KeyPair& owner_;
  Clock clock_;
};

// Canonical file bytes of an entry, including the signature.
absl::StatusOr<std::string> EncodeCacheEntry(const CacheEntry& entry);

}  // namespace amakey

#endif  // AMAKEY_CLIENT_CARD_CACHE_H_
