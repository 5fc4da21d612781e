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

#ifndef AMAKEY_CORE_TEXT_H_
#define AMAKEY_CORE_TEXT_H_

#include <string>

#include "absl/status/statusor.h"
#include "absl/strings/string_view.h"

namespace amakey {

bool IsValidUtf8(absl::string_view text);

// Unicode Normalization Form C. Fails on malformed UTF-8.
absl::StatusOr<std::string> NormalizeNfc(absl::string_view text);

}  // namespace amakey

#endif  // AMAKEY_CORE_TEXT_H_
