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

#include "amakey/core/rational.h"

#include <numeric>
#include <string>

#include "absl/status/status.h"
#include "absl/strings/ascii.h"
#include "absl/strings/numbers.h"
#include "absl/strings/str_cat.h"
#include "absl/strings/str_split.h"

namespace amakey {

absl::StatusOr<Rational> Rational::Create(int64_t numerator,
                                          int64_t denominator) {
  if (denominator == 0) return absl::InvalidArgumentError("zero denominator");
  if (numerator == INT64_MIN || denominator == INT64_MIN) {
    return absl::OutOfRangeError("rational component out of range");
  }
  if (denominator < 0) {
    numerator = -numerator;
    denominator = -denominator;
  }
  const int64_t g = std::gcd(numerator, denominator);
  return Rational(numerator / g, denominator / g);
}

absl::StatusOr<Rational> Rational::Parse(absl::string_view text) {
  text = absl::StripAsciiWhitespace(text);
  if (const size_t slash = text.find('/'); slash != absl::string_view::npos) {
    int64_t num = 0, den = 0;
    if (!absl::SimpleAtoi(text.substr(0, slash), &num) ||
        !absl::SimpleAtoi(text.substr(slash + 1), &den)) {
      return absl::InvalidArgumentError(
          absl::StrCat("malformed fraction '", text, "'"));
    }
    return Create(num, den);
  }
  const size_t dot = text.find('.');
  if (dot == absl::string_view::npos) {
    int64_t whole = 0;
    if (!absl::SimpleAtoi(text, &whole)) {
      return absl::InvalidArgumentError(
          absl::StrCat("malformed number '", text, "'"));
    }
    return Create(whole, 1);
  }
  // Decimal: digits after the point scale the denominator by powers of ten.
  const absl::string_view fraction = text.substr(dot + 1);
  if (fraction.empty() || fraction.size() > 18) {
    return absl::InvalidArgumentError(
        absl::StrCat("unsupported decimal '", text, "'"));
  }
  for (char c : fraction) {
    if (!absl::ascii_isdigit(static_cast<unsigned char>(c))) {
      return absl::InvalidArgumentError(
          absl::StrCat("malformed decimal '", text, "'"));
    }
  }
  absl::string_view whole_part = text.substr(0, dot);
  const bool negative = !whole_part.empty() && whole_part.front() == '-';
  if (negative || (!whole_part.empty() && whole_part.front() == '+')) {
    whole_part.remove_prefix(1);
  }
  int64_t whole = 0;
  if (!whole_part.empty() && !absl::SimpleAtoi(whole_part, &whole)) {
    return absl::InvalidArgumentError(
        absl::StrCat("malformed decimal '", text, "'"));
  }
  int64_t frac = 0;
  if (!absl::SimpleAtoi(fraction, &frac)) {
    return absl::InvalidArgumentError(
        absl::StrCat("malformed decimal '", text, "'"));
  }
  int64_t scale = 1;
  for (size_t i = 0; i < fraction.size(); ++i) scale *= 10;
  const __int128 num = static_cast<__int128>(whole) * scale + frac;
  if (num > INT64_MAX) return absl::OutOfRangeError("decimal out of range");
  return Create(negative ? -static_cast<int64_t>(num)
                         : static_cast<int64_t>(num),
                scale);
}

std::string Rational::ToString() const {
  if (den_ == 1) return absl::StrCat(num_);
  return absl::StrCat(num_, "/", den_);
}

}  // namespace amakey
