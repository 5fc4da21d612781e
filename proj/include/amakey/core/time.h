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

#ifndef AMAKEY_CORE_TIME_H_
#define AMAKEY_CORE_TIME_H_

#include <chrono>
#include <functional>
#include <string>

#include "absl/status/statusor.h"
#include "absl/strings/string_view.h"

namespace amakey {

// UTC, whole seconds.
using Timestamp = std::chrono::sys_seconds;

// Injected wherever "now" matters so tests and scenarios run on fixed time.
using Clock = std::function<Timestamp()>;

Timestamp SystemNow();
Clock SystemClock();

// "2026-01-31T09:08:07Z". Only the UTC designator "Z" is produced or accepted.
std::string FormatRfc3339(Timestamp t);
absl::StatusOr<Timestamp> ParseRfc3339(absl::string_view text);

// A clock that starts at `start` and is moved explicitly.
class ManualClock {
 public:
  explicit ManualClock(Timestamp start) : now_(start) {}

  Timestamp Now() const { return now_; }
  void Advance(std::chrono::seconds by) { now_ += by; }
  void Set(Timestamp t) { now_ = t; }
  Clock AsClock() {
    return [this] { return now_; };
  }

 private:
  Timestamp now_;
};

}  // namespace amakey

#endif  // AMAKEY_CORE_TIME_H_
