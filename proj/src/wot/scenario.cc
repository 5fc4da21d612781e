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

#include "amakey/wot/scenario.h"

#include "absl/status/status.h"
#include "absl/strings/str_cat.h"
#include "absl/strings/str_join.h"

namespace amakey::wot {
namespace {

std::string Cell(const std::optional<int>& value) {
  return value ? absl::StrCat(*value) : "unreachable";
}

std::string Cell(const MsdValue& value) {
  return value.reachable > 0 ? value.mean.ToString() : "none";
}

// Minimum over the querier's direct signees of their distance to `target`.
std::optional<int> HopsFromSignee(const WotGraph& graph,
                                  const std::vector<std::optional<int>>& to_target,
                                  size_t querier) {
  std::optional<int> best;
  for (size_t s : graph.out(querier)) {
    if (to_target[s] && (!best || *to_target[s] < *best)) best = to_target[s];
  }
  return best;
}

}  // namespace

std::vector<std::string> EveAssociates() { return {"charlie", "dave", "francis"}; }

WotGraph BuildEveScenario() {
  WotGraph g;
  auto add = [&](absl::string_view id, KeyTag tag, absl::string_view owner) {
    (void)g.AddNode({std::string(id), tag, std::string(owner)});
  };
  add(kAlice, KeyTag::kGenuine, "alice");
  add(kBob, KeyTag::kGenuine, "bob");
  for (const std::string& a : EveAssociates()) add(a, KeyTag::kGenuine, a);
  add(kEve, KeyTag::kGenuine, "eve");
  add(kImpostorAlice, KeyTag::kImpostor, "alice");
  add(kImpostorBob, KeyTag::kImpostor, "bob");
  for (const std::string& a : EveAssociates()) {
    (void)g.AddEdge(kAlice, a);
    (void)g.AddEdge(kBob, a);
    (void)g.AddEdge(a, kImpostorAlice);
    (void)g.AddEdge(a, kImpostorBob);
  }
  return g;
}

absl::StatusOr<AttackReport> BuildAttackReport(const WotGraph& graph) {
  std::vector<size_t> impostors;
  for (size_t i = 0; i < graph.size(); ++i) {
    if (graph.node(i).tag == KeyTag::kImpostor) impostors.push_back(i);
  }
  if (impostors.empty()) {
    return absl::FailedPreconditionError("graph has no impostor keys");
  }
  const MsdReport msd = ComputeMsdReport(graph);
  AttackReport report;
  for (size_t imp : impostors) {
    const std::string& owner = graph.node(imp).owner;
    std::optional<size_t> genuine;
    for (size_t i = 0; i < graph.size(); ++i) {
      if (graph.node(i).tag == KeyTag::kGenuine && graph.node(i).owner == owner) {
        genuine = i;
        break;
      }
    }
    if (!genuine) continue;
    const auto to_impostor = DistancesTo(graph, imp);
    const auto to_genuine = DistancesTo(graph, *genuine);
    for (size_t q = 0; q < graph.size(); ++q) {
      const WotNode& querier = graph.node(q);
      if (querier.tag != KeyTag::kGenuine || querier.owner == owner) continue;
      AttackRow row;
      row.querier = querier.id;
      row.owner = owner;
      row.genuine_key = graph.node(*genuine).id;
      row.impostor_key = graph.node(imp).id;
      row.genuine_distance = to_genuine[q];
      row.impostor_distance = to_impostor[q];
      row.genuine_hops_from_signee = HopsFromSignee(graph, to_genuine, q);
      row.impostor_hops_from_signee = HopsFromSignee(graph, to_impostor, q);
      auto paths = NodeDisjointPaths(graph, querier.id, row.impostor_key);
      if (!paths.ok()) return paths.status();
      row.impostor_disjoint_paths = paths->count;
      row.genuine_inbound_msd = msd.inbound[*genuine];
      row.impostor_inbound_msd = msd.inbound[imp];
      report.rows.push_back(std::move(row));
    }
  }
  return report;
}

std::string AttackReportCsv(const AttackReport& report) {
  std::string out =
      "querier,owner,genuine_key,impostor_key,genuine_distance,"
      "impostor_distance,genuine_hops_from_signee,impostor_hops_from_signee,"
      "impostor_disjoint_paths,genuine_inbound_msd,impostor_inbound_msd,"
      "msd_convention\n";
  for (const AttackRow& r : report.rows) {
    absl::StrAppend(
        &out,
        absl::StrJoin({r.querier, r.owner, r.genuine_key, r.impostor_key,
                       Cell(r.genuine_distance), Cell(r.impostor_distance),
                       Cell(r.genuine_hops_from_signee),
                       Cell(r.impostor_hops_from_signee),
                       absl::StrCat(r.impostor_disjoint_paths),
                       Cell(r.genuine_inbound_msd), Cell(r.impostor_inbound_msd),
                       report.convention},
                      ","),
        "\n");
  }
  return out;
}

}  // namespace amakey::wot
