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

#include "testing/fixtures.h"

#include <fstream>
#include <sstream>
#include <stdexcept>

#include "absl/strings/str_cat.h"
#include "amakey/core/crypto.h"

namespace amakey::testing {

std::string TestDataPath(absl::string_view relative) {
  return absl::StrCat(AMAKEY_TEST_DATA_DIR, "/", relative);
}

std::string ReadFileOrDie(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open " + path);
  std::ostringstream out;
  out << in.rdbuf();
  return out.str();
}

Timestamp T(absl::string_view rfc3339) { return *ParseRfc3339(rfc3339); }

KeyPair TestKey(absl::string_view seed) {
  DeterministicStream stream{std::string(seed)};
  return *KeyPair::Generate(kEd25519X25519, stream);
}

ContactAddress Addr(absl::string_view text) {
  auto address = ContactAddress::Parse(text);
  if (!address.ok()) throw std::runtime_error(address.status().ToString());
  return *address;
}

GuidelineChecklist FullChecklist() {
  GuidelineChecklist c;
  c.single_take = c.id_shown = c.spoken_in_groups = c.background_audio =
      c.visual_hash_shown = c.card_rotated_or_glass_written = true;
  return c;
}

IdentityCard MakeCard(absl::string_view address, const KeyPair& key,
                      Timestamp created_at) {
  return IdentityCard{
      Addr(address), key.public_key(),
      AttestmentRef{AttestmentKind::kContentHash,
                    DigestHex(DigestAlgorithm::kSha256,
                              absl::StrCat("video of ", address)),
                    FullChecklist()},
      std::string("Owner of ") + std::string(address), created_at};
}

SignedIdentityCard MakeSignedCard(absl::string_view address,
                                  const KeyPair& key, Timestamp created_at) {
  auto signed_card = SignIdentityCard(MakeCard(address, key, created_at), key);
  if (!signed_card.ok()) throw std::runtime_error(signed_card.status().ToString());
  return *signed_card;
}

RatingCard MakeRating(const SignedIdentityCard& subject,
                      absl::string_view rater, TriState identity,
                      TriState hash_match, TriState authentic,
                      Timestamp rated_at) {
  return RatingCard{identity, hash_match, authentic, "", Addr(rater), subject,
                    rated_at};
}

}  // namespace amakey::testing
