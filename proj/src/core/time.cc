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

#include "amakey/core/time.h"

#include <cstdio>
#include <string>

#include "absl/status/status.h"
#include "absl/strings/str_format.h"

namespace amakey {

Timestamp SystemNow() {
  return std::chrono::floor<std::chrono::seconds>(
      std::chrono::system_clock::now());
}

Clock SystemClock() { return &SystemNow; }

std::string FormatRfc3339(Timestamp t) {
  const auto day = std::chrono::floor<std::chrono::days>(t);
  const std::chrono::year_month_day ymd{day};
  const std::chrono::hh_mm_ss hms{t - day};
  return absl::StrFormat("%04d-%02u-%02uT%02d:%02d:%02dZ",
                         static_cast<int>(ymd.year()),
                         static_cast<unsigned>(ymd.month()),
                         static_cast<unsigned>(ymd.day()),
                         static_cast<int>(hms.hours().count()),
                         static_cast<int>(hms.minutes().count()),
                         static_cast<int>(hms.seconds().count()));
}

absl::StatusOr<Timestamp> ParseRfc3339(absl::string_view text) {
  // Fixed-width form only: YYYY-MM-DDTHH:MM:SSZ.
  static constexpr absl::string_view kShape = "dddd-dd-ddTdd:dd:ddZ";
  if (text.size() != kShape.size()) {
    return absl::InvalidArgumentError("timestamp must be YYYY-MM-DDTHH:MM:SSZ");
  }
  for (size_t i = 0; i < kShape.size(); ++i) {
    const bool ok = kShape[i] == 'd' ? (text[i] >= '0' && text[i] <= '9')
                                     : text[i] == kShape[i];
    if (!ok) {
      return absl::InvalidArgumentError(
          "timestamp must be YYYY-MM-DDTHH:MM:SSZ");
    }
  }
  auto number = [&](size_t pos, size_t len) {
    int v = 0;
    for (size_t i = pos; i < pos + len; ++i) v = v * 10 + (text[i] - '0');
    return v;
  };
  const std::chrono::year_month_day ymd{
      std::chrono::year{number(0, 4)},
      std::chrono::month{static_cast<unsigned>(number(5, 2))},
      std::chrono::day{static_cast<unsigned>(number(8, 2))}};
  if (!ymd.ok()) return absl::InvalidArgumentError("invalid calendar date");
  const int h = number(11, 2), m = number(14, 2), s = number(17, 2);
  if (h > 23 || m > 59 || s > 59) {
    return absl::InvalidArgumentError("invalid time of day");
  }
  return Timestamp{std::chrono::sys_days{ymd}} + std::chrono::hours{h} +
         std::chrono::minutes{m} + std::chrono::seconds{s};
}

}  // namespace amakey
