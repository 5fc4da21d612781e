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

#include "amakey/client/findings.h"

#include <algorithm>

namespace amakey {

absl::string_view FindingKindName(FindingKind kind) {
  switch (kind) {
    case FindingKind::kMalformedResponse:
      return "malformed-response";
    case FindingKind::kBadCardSignature:
      return "bad-card-signature";
    case FindingKind::kAddressMismatch:
      return "address-mismatch";
    case FindingKind::kFingerprintMismatch:
      return "fingerprint-mismatch";
    case FindingKind::kMalformedRating:
      return "malformed-rating";
    case FindingKind::kRatingSubjectMismatch:
      return "rating-subject-mismatch";
    case FindingKind::kRaterUnverifiable:
      return "rater-unverifiable";
    case FindingKind::kBadRatingSignature:
      return "bad-rating-signature";
    case FindingKind::kDuplicateRater:
      return "duplicate-rater";
    case FindingKind::kStatsOutOfBounds:
      return "stats-out-of-bounds";
    case FindingKind::kStatsMismatch:
      return "stats-mismatch";
    case FindingKind::kKeyChanged:
      return "key-changed";
    case FindingKind::kRollback:
      return "rollback";
    case FindingKind::kCacheTampered:
      return "cache-tampered";
    case FindingKind::kEmbeddedCardInvalid:
      return "embedded-card-invalid";
  }
  return "unknown";
}

bool InvalidatesResponse(FindingKind kind) {
  switch (kind) {
    case FindingKind::kMalformedResponse:
    case FindingKind::kBadCardSignature:
    case FindingKind::kAddressMismatch:
    case FindingKind::kFingerprintMismatch:
    case FindingKind::kStatsOutOfBounds:
    case FindingKind::kStatsMismatch:
    case FindingKind::kRollback:
      return true;
    default:
      return false;
  }
}

bool HasFinding(const std::vector<Finding>& findings, FindingKind kind) {
  return std::any_of(findings.begin(), findings.end(),
                     [kind](const Finding& f) { return f.kind == kind; });
}

nlohmann::json ToJson(const Finding& finding) {
  return {{"kind", std::string(FindingKindName(finding.kind))},
          {"detail", finding.detail}};
}

}  // namespace amakey
