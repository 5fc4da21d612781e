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

#ifndef AMAKEY_CORE_RATIONAL_H_
#define AMAKEY_CORE_RATIONAL_H_

#include <compare>
#include <cstdint>
#include <string>

#include "absl/status/statusor.h"
#include "absl/strings/string_view.h"

namespace amakey {

// Exact fraction in lowest terms with a positive denominator. Comparisons use
// 128-bit cross multiplication, so no value is ever rounded.
class Rational {
 public:
  constexpr Rational() = default;

  static absl::StatusOr<Rational> Create(int64_t numerator,
                                         int64_t denominator);
  static Rational FromInteger(int64_t value) { return Rational(value, 1); }

  // "3/4", "-2", or a finite decimal such as "0.75".
  static absl::StatusOr<Rational> Parse(absl::string_view text);

  int64_t numerator() const { return num_; }
  int64_t denominator() const { return den_; }

  double ToDouble() const {
    return static_cast<double>(num_) / static_cast<double>(den_);
  }
  std::string ToString() const;

  friend bool operator==(const Rational&, const Rational&) = default;
  friend std::strong_ordering operator<=>(const Rational& a,
                                          const Rational& b) {
    const __int128 lhs = static_cast<__int128>(a.num_) * b.den_;
    const __int128 rhs = static_cast<__int128>(b.num_) * a.den_;
    return lhs <=> rhs;
  }

 private:
  constexpr Rational(int64_t num, int64_t den) : num_(num), den_(den) {}

  int64_t num_ = 0;
  int64_t den_ = 1;
};

}  // namespace amakey

#endif  // AMAKEY_CORE_RATIONAL_H_
