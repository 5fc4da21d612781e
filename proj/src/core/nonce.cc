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

#include "amakey/core/nonce.h"

#include "amakey/core/bytes.h"
#include "amakey/core/crypto.h"

namespace amakey {

absl::string_view NoncePurposeName(NoncePurpose purpose) {
  return purpose == NoncePurpose::kRegister ? "register" : "remove";
}

Nonce GenerateNonce(NoncePurpose purpose, Timestamp now) {
  return Nonce{HexEncode(SecureRandomBytes(16)), now, purpose};
}

bool IsWellFormedNonce(absl::string_view value) {
  return value.size() == 32 && IsLowerHex(value);
}

}  // namespace amakey
