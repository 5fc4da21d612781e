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

#include "amakey/core/stats.h"

namespace amakey {
namespace {

void Count(TriState answer, uint64_t& confirmed, uint64_t& denied) {
  if (answer == TriState::kYes) ++confirmed;
  if (answer == TriState::kNo) ++denied;
}

void Add(AggregateStats& stats, const RatingCard& rating) {
  ++stats.s1;
  Count(rating.q_identity, stats.s2, stats.s3);
  Count(rating.q_hash_match, stats.s4, stats.s5);
  Count(rating.q_authentic, stats.s6, stats.s7);
}

}  // namespace

AggregateStats& AggregateStats::operator+=(const AggregateStats& other) {
  s1 += other.s1;
  s2 += other.s2;
  s3 += other.s3;
  s4 += other.s4;
  s5 += other.s5;
  s6 += other.s6;
  s7 += other.s7;
  return *this;
}

AggregateStats Aggregate(std::span<const RatingCard> ratings) {
  AggregateStats stats;
  for (const RatingCard& rating : ratings) Add(stats, rating);
  return stats;
}

AggregateStats Aggregate(std::span<const SignedRatingCard> ratings) {
  AggregateStats stats;
  for (const SignedRatingCard& signed_rating : ratings) {
    Add(stats, signed_rating.rating);
  }
  return stats;
}

bool WithinBounds(const AggregateStats& s) {
  return s.s2 + s.s3 <= s.s1 && s.s4 + s.s5 <= s.s1 && s.s6 + s.s7 <= s.s1;
}

}  // namespace amakey
