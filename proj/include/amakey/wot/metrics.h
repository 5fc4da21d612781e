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

#ifndef AMAKEY_WOT_METRICS_H_
#define AMAKEY_WOT_METRICS_H_

#include <optional>
#include <string>
#include <vector>

#include "absl/status/statusor.h"
#include "amakey/core/rational.h"
#include "amakey/wot/graph.h"

namespace amakey::wot {

// How unreachable nodes enter a mean shortest distance.
inline constexpr absl::string_view kExcludeUnreachable = "exclude-unreachable";

// Hop counts from `source` along certification edges; nullopt when
// unreachable. The source itself is at distance 0.
std::vector<std::optional<int>> DistancesFrom(const WotGraph& graph,
                                              size_t source);
// Hop counts to `target` from every node.
std::vector<std::optional<int>> DistancesTo(const WotGraph& graph,
                                            size_t target);

absl::StatusOr<std::optional<int>> Distance(const WotGraph& graph,
                                            absl::string_view from,
                                            absl::string_view to);

struct MsdValue {
  Rational mean;  // 0 when nothing is reachable
  int reachable = 0;
  int unreachable = 0;

  friend bool operator==(const MsdValue&, const MsdValue&) = default;
};

// Mean hop count from `node` to every other node it reaches. Unreachable
// nodes are left out of the mean and counted separately.
absl::StatusOr<MsdValue> Msd(const WotGraph& graph, absl::string_view node);
// Mean hop count to `node` from every other node that reaches it.
absl::StatusOr<MsdValue> InboundMsd(const WotGraph& graph,
                                    absl::string_view node);

struct MsdReport {
  std::string convention = std::string(kExcludeUnreachable);
  // Indexed like graph.nodes().
  std::vector<MsdValue> outbound;
  std::vector<MsdValue> inbound;
};

MsdReport ComputeMsdReport(const WotGraph& graph);

// Maximum number of paths from `from` to `to` sharing no intermediate node
// (Menger), with one witness set of paths. A direct edge counts as one path.
struct DisjointPaths {
  int count = 0;
  std::vector<std::vector<std::string>> paths;
};

absl::StatusOr<DisjointPaths> NodeDisjointPaths(const WotGraph& graph,
                                                absl::string_view from,
                                                absl::string_view to);

}  // namespace amakey::wot

#endif  // AMAKEY_WOT_METRICS_H_
