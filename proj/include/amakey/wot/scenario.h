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

#ifndef AMAKEY_WOT_SCENARIO_H_
#define AMAKEY_WOT_SCENARIO_H_

#include <optional>
#include <string>
#include <vector>

#include "absl/status/statusor.h"
#include "amakey/core/rational.h"
#include "amakey/wot/graph.h"
#include "amakey/wot/metrics.h"

namespace amakey::wot {

// Node ids used by BuildEveScenario().
inline constexpr absl::string_view kAlice = "alice";
inline constexpr absl::string_view kBob = "bob";
inline constexpr absl::string_view kEve = "eve";
inline constexpr absl::string_view kImpostorAlice = "impostor-alice";
inline constexpr absl::string_view kImpostorBob = "impostor-bob";
std::vector<std::string> EveAssociates();  // charlie, dave, francis

// Alice and Bob each certify Charlie, Dave and Francis after checking their
// identities. The three associates then certify Eve's two impostor keys, one
// claiming to be Alice's and one claiming to be Bob's.
WotGraph BuildEveScenario();

struct AttackRow {
  std::string querier;
  std::string owner;
  std::string genuine_key;
  std::string impostor_key;
  std::optional<int> genuine_distance;
  std::optional<int> impostor_distance;
  // Shortest hop count from any key the querier certified directly.
  std::optional<int> genuine_hops_from_signee;
  std::optional<int> impostor_hops_from_signee;
  int impostor_disjoint_paths = 0;
  MsdValue genuine_inbound_msd;
  MsdValue impostor_inbound_msd;
};

struct AttackReport {
  std::string convention = std::string(kExcludeUnreachable);
  std::vector<AttackRow> rows;
};

// One row per (genuine querier, impostor key) pair where the querier is not
// the impostor's claimed owner and the owner has a genuine key in the graph.
// FailedPrecondition when the graph has no impostor keys.
absl::StatusOr<AttackReport> BuildAttackReport(const WotGraph& graph);

std::string AttackReportCsv(const AttackReport& report);

}  // namespace amakey::wot

#endif  // AMAKEY_WOT_SCENARIO_H_
