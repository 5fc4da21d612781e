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

#ifndef AMAKEY_CORE_STATUS_MACROS_H_
#define AMAKEY_CORE_STATUS_MACROS_H_

#include "absl/status/status.h"
#include "absl/status/statusor.h"

#define AMAKEY_CONCAT_INNER_(a, b) a##b
#define AMAKEY_CONCAT_(a, b) AMAKEY_CONCAT_INNER_(a, b)

#define AMAKEY_RETURN_IF_ERROR(expr)              \
  do {                                            \
    const absl::Status amakey_status_ = (expr);   \
    if (!amakey_status_.ok()) return amakey_status_; \
  } while (false)

#define AMAKEY_ASSIGN_OR_RETURN_IMPL_(tmp, lhs, expr) \
  auto tmp = (expr);                                  \
  if (!tmp.ok()) return tmp.status();                 \
  lhs = *std::move(tmp)

#define AMAKEY_ASSIGN_OR_RETURN(lhs, expr) \
  AMAKEY_ASSIGN_OR_RETURN_IMPL_(           \
      AMAKEY_CONCAT_(amakey_statusor_, __LINE__), lhs, expr)

#endif  // AMAKEY_CORE_STATUS_MACROS_H_
