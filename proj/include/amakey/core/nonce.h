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

#ifndef AMAKEY_CORE_NONCE_H_
#define AMAKEY_CORE_NONCE_H_

#include <chrono>
#include <string>

#include "absl/strings/string_view.h"
#include "amakey/core/time.h"

namespace amakey {

enum class NoncePurpose { kRegister, kRemove };

absl::string_view NoncePurposeName(NoncePurpose purpose);

inline constexpr std::chrono::hours kNonceLifetime{24};

// Proof-of-control token mailed to a contact address. Single use; bound to
// the purpose it was issued for.
struct Nonce {
  std::string value;  // 32 lowercase hex characters, 128 bits from the CSPRNG
  Timestamp issued_at;
  NoncePurpose purpose = NoncePurpose::kRegister;

  bool ExpiredAt(Timestamp now) const {
    return now >= issued_at + kNonceLifetime;
  }

  friend bool operator==(const Nonce&, const Nonce&) = default;
};

Nonce GenerateNonce(NoncePurpose purpose, Timestamp now);
bool IsWellFormedNonce(absl::string_view value);

}  // namespace amakey

#endif  // AMAKEY_CORE_NONCE_H_
