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

#ifndef AMAKEY_CORE_STATS_H_
#define AMAKEY_CORE_STATS_H_

#include <cstdint>
#include <span>

#include "amakey/core/cards.h"

namespace amakey {

// Community rating counts for one card.
//   s1  total ratings (an "unsure" answer counts here and nowhere else)
//   s2  identity confirmed      s3  identity denied
//   s4  hash match confirmed    s5  hash match denied
//   s6  authenticity confirmed  s7  authenticity denied
struct AggregateStats {
  uint64_t s1 = 0;
  uint64_t s2 = 0;
  uint64_t s3 = 0;
  uint64_t s4 = 0;
  uint64_t s5 = 0;
  uint64_t s6 = 0;
  uint64_t s7 = 0;

  friend bool operator==(const AggregateStats&, const AggregateStats&) = default;
  AggregateStats& operator+=(const AggregateStats& other);
  friend AggregateStats operator+(AggregateStats a, const AggregateStats& b) {
    return a += b;
  }
};

AggregateStats Aggregate(std::span<const RatingCard> ratings);
AggregateStats Aggregate(std::span<const SignedRatingCard> ratings);

// s2+s3, s4+s5 and s6+s7 are each at most s1.
bool WithinBounds(const AggregateStats& stats);

}  // namespace amakey

#endif  // AMAKEY_CORE_STATS_H_
