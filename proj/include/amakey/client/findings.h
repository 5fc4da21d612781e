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

#ifndef AMAKEY_CLIENT_FINDINGS_H_
#define AMAKEY_CLIENT_FINDINGS_H_

#include <string>
#include <vector>

#include "absl/strings/string_view.h"
#include "json.hpp"

namespace amakey {

enum class FindingKind {
  kMalformedResponse,
  kBadCardSignature,
  kAddressMismatch,
  kFingerprintMismatch,
  kMalformedRating,
  kRatingSubjectMismatch,
  kRaterUnverifiable,
  kBadRatingSignature,
  kDuplicateRater,
  kStatsOutOfBounds,
  kStatsMismatch,
  kKeyChanged,
  kRollback,
  kCacheTampered,
  kEmbeddedCardInvalid,
};

absl::string_view FindingKindName(FindingKind kind);

// Findings of these kinds make the whole response unusable. The rest only
// rule out automatic trust.
bool InvalidatesResponse(FindingKind kind);

struct Finding {
  FindingKind kind;
  std::string detail;

  friend bool operator==(const Finding&, const Finding&) = default;
};

bool HasFinding(const std::vector<Finding>& findings, FindingKind kind);
nlohmann::json ToJson(const Finding& finding);

}  // namespace amakey

#endif  // AMAKEY_CLIENT_FINDINGS_H_
