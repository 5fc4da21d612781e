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

#include "amakey/core/trust.h"

#include <algorithm>

#include "absl/status/status.h"
#include "amakey/core/status_macros.h"

namespace amakey {

absl::StatusOr<TrustPolicy> TrustPolicy::Create(int64_t alpha, Rational beta) {
  if (alpha < 0) return absl::InvalidArgumentError("alpha must be >= 0");
  if (beta <= Rational::FromInteger(0) || beta > Rational::FromInteger(1)) {
    return absl::InvalidArgumentError("beta must lie in (0, 1]");
  }
  return TrustPolicy(alpha, beta);
}

absl::StatusOr<TrustPolicy> TrustPolicy::Parse(absl::string_view alpha,
                                               absl::string_view beta) {
  AMAKEY_ASSIGN_OR_RETURN(Rational a, Rational::Parse(alpha));
  if (a.denominator() != 1) {
    return absl::InvalidArgumentError("alpha must be an integer");
  }
  AMAKEY_ASSIGN_OR_RETURN(Rational b, Rational::Parse(beta));
  return Create(a.numerator(), b);
}

absl::string_view TrustDecisionName(TrustDecision decision) {
  return decision == TrustDecision::kTrusted ? "Trusted" : "NotTrusted";
}

std::optional<Rational> NetConfirmationRatio(const AggregateStats& s) {
  if (s.s1 == 0) return std::nullopt;
  const int64_t margin = std::min({static_cast<int64_t>(s.s2) - static_cast<int64_t>(s.s3),
                                   static_cast<int64_t>(s.s4) - static_cast<int64_t>(s.s5),
                                   static_cast<int64_t>(s.s6) - static_cast<int64_t>(s.s7)});
  return *Rational::Create(margin, static_cast<int64_t>(s.s1));
}

TrustDecision DecideTrust(const AggregateStats& stats,
                          const TrustPolicy& policy) {
  if (stats.s1 == 0) return TrustDecision::kNotTrusted;
  if (static_cast<uint64_t>(policy.alpha()) >= stats.s1) {
    return TrustDecision::kNotTrusted;
  }
  const Rational ratio = *NetConfirmationRatio(stats);
  return policy.beta() < ratio ? TrustDecision::kTrusted
                               : TrustDecision::kNotTrusted;
}

}  // namespace amakey
