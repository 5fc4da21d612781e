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

#ifndef AMAKEY_TESTS_TESTING_FIXTURES_H_
#define AMAKEY_TESTS_TESTING_FIXTURES_H_

#include <string>

#include "absl/strings/string_view.h"
#include "amakey/core/cards.h"
#include "amakey/core/keys.h"
#include "amakey/core/signing.h"
#include "amakey/core/time.h"

namespace amakey::testing {

// Directory holding tests/data.
std::string TestDataPath(absl::string_view relative);
std::string ReadFileOrDie(const std::string& path);

Timestamp T(absl::string_view rfc3339);

// Ed25519+X25519 keypair whose randomness is DeterministicStream(seed).
KeyPair TestKey(absl::string_view seed);

ContactAddress Addr(absl::string_view text);

GuidelineChecklist FullChecklist();

IdentityCard MakeCard(absl::string_view address, const KeyPair& key,
                      Timestamp created_at = T("2026-03-01T12:00:00Z"));
SignedIdentityCard MakeSignedCard(absl::string_view address,
                                  const KeyPair& key,
                                  Timestamp created_at = T("2026-03-01T12:00:00Z"));

RatingCard MakeRating(const SignedIdentityCard& subject,
                      absl::string_view rater, TriState identity,
                      TriState hash_match, TriState authentic,
                      Timestamp rated_at = T("2026-03-02T00:00:00Z"));

}  // namespace amakey::testing

#endif  // AMAKEY_TESTS_TESTING_FIXTURES_H_
