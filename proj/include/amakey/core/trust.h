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

#ifndef AMAKEY_CORE_TRUST_H_
#define AMAKEY_CORE_TRUST_H_

#include <cstdint>
#include <optional>

#include "absl/status/statusor.h"
#include "absl/strings/string_view.h"
#include "amakey/core/rational.h"
#include "amakey/core/stats.h"

namespace amakey {

// Client-side thresholds for trusting a key without watching its attestment.
// alpha >= 0 is the minimum number of ratings to exceed; beta in (0, 1] is
// the minimum net-confirmation ratio to exceed.
class TrustPolicy {
 public:
  static absl::StatusOr<TrustPolicy> Create(int64_t alpha, Rational beta);
  // "5" and "1/2" or "0.5".
  static absl::StatusOr<TrustPolicy> Parse(absl::string_view alpha,
                                           absl::string_view beta);

  int64_t alpha() const { return alpha_; }
  const Rational& beta() const { return beta_; }

  friend bool operator==(const TrustPolicy&, const TrustPolicy&) = default;

 private:
  TrustPolicy(int64_t alpha, Rational beta) : alpha_(alpha), beta_(beta) {}

  int64_t alpha_;
  Rational beta_;
};

enum class TrustDecision { kTrusted, kNotTrusted };

absl::string_view TrustDecisionName(TrustDecision decision);

// min(s2 - s3, s4 - s5, s6 - s7) / s1, or nullopt when s1 = 0.
std::optional<Rational> NetConfirmationRatio(const AggregateStats& stats);

// Trusted iff s1 > 0, alpha < s1 and beta < min(s2-s3, s4-s5, s6-s7) / s1,
// compared exactly.
TrustDecision DecideTrust(const AggregateStats& stats,
                          const TrustPolicy& policy);

}  // namespace amakey

#endif  // AMAKEY_CORE_TRUST_H_
