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

#ifndef AMAKEY_NET_PROTOCOL_H_
#define AMAKEY_NET_PROTOCOL_H_

#include "absl/strings/string_view.h"

namespace amakey::paths {

// Keyserver HTTP API.
inline constexpr absl::string_view kRegister = "/v1/register";
inline constexpr absl::string_view kVerify = "/v1/verify";
inline constexpr absl::string_view kLookup = "/v1/lookup";
inline constexpr absl::string_view kChallenge = "/v1/challenge";
inline constexpr absl::string_view kRating = "/v1/rating";
inline constexpr absl::string_view kRemove = "/v1/remove";
inline constexpr absl::string_view kRemoveBegin = "/v1/remove/begin";
inline constexpr absl::string_view kRemoveConfirm = "/v1/remove/confirm";

// Client-side loopback bridge for the rating UI.
inline constexpr absl::string_view kLocalReview = "/local/review";
inline constexpr absl::string_view kLocalRate = "/local/rate";
inline constexpr absl::string_view kLocalChallenge = "/local/challenge";

}  // namespace amakey::paths

#endif  // AMAKEY_NET_PROTOCOL_H_
