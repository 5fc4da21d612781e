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

#include "amakey/wot/metrics.h"

#include <deque>
#include <limits>

#include "absl/status/status.h"
#include "absl/strings/str_cat.h"
#include "amakey/core/status_macros.h"

namespace amakey::wot {
namespace {

std::vector<std::vector<size_t>> Reverse(const WotGraph& graph) {
  std::vector<std::vector<size_t>> in(graph.size());
  for (size_t i = 0; i < graph.size(); ++i) {
    for (size_t j : graph.out(i)) in[j].push_back(i);
  }
  return in;
}

template <typename Neighbors>
std::vector<std::optional<int>> Bfs(size_t n, size_t source, Neighbors&& next) {
  std::vector<std::optional<int>> dist(n);
  dist[source] = 0;
  std::deque<size_t> queue{source};
  while (!queue.empty()) {
    const size_t u = queue.front();
    queue.pop_front();
    for (size_t v : next(u)) {
      if (!dist[v]) {
        dist[v] = *dist[u] + 1;
        queue.push_back(v);
      }
    }
  }
  return dist;
}

MsdValue MeanOver(const std::vector<std::optional<int>>& dist, size_t self) {
  MsdValue value;
  int64_t total = 0;
  for (size_t i = 0; i < dist.size(); ++i) {
    if (i == self) continue;
    if (dist[i]) {
      total += *dist[i];
      ++value.reachable;
    } else {
      ++value.unreachable;
    }
  }
  if (value.reachable > 0) value.mean = *Rational::Create(total, value.reachable);
  return value;
}

// Unit-capacity max flow on the node-split graph.
class FlowNetwork {
 public:
  explicit FlowNetwork(size_t n) : adj_(n) {}

  void Add(size_t u, size_t v, int capacity) {
    adj_[u].push_back(edges_.size());
    edges_.push_back({v, capacity, capacity});
    adj_[v].push_back(edges_.size());
    edges_.push_back({u, 0, 0});
  }

  int MaxFlow(size_t s, size_t t) {
    int flow = 0;
    while (true) {
      std::vector<std::optional<size_t>> via(adj_.size());
      std::deque<size_t> queue{s};
      std::vector<bool> seen(adj_.size());
      seen[s] = true;
      while (!queue.empty() && !seen[t]) {
        const size_t u = queue.front();
        queue.pop_front();
        for (size_t e : adj_[u]) {
          const size_t v = edges_[e].to;
          if (!seen[v] && edges_[e].residual > 0) {
            seen[v] = true;
            via[v] = e;
            queue.push_back(v);
          }
        }
      }
      if (!seen[t]) return flow;
      for (size_t v = t; v != s; v = edges_[*via[v] ^ 1].to) {
        edges_[*via[v]].residual -= 1;
        edges_[*via[v] ^ 1].residual += 1;
      }
      ++flow;
    }
  }

  // Consumes one unit of flow along a forward edge out of `u`.
  std::optional<size_t> TakeFlowFrom(size_t u) {
    for (size_t e : adj_[u]) {
      Edge& edge = edges_[e];
      if (edge.capacity > 0 && edge.residual < edge.capacity) {
        ++edge.residual;
        return edge.to;
      }
    }
    return std::nullopt;
  }

 private:
  struct Edge {
    size_t to;
    int capacity;
    int residual;
  };
  std::vector<std::vector<size_t>> adj_;
  std::vector<Edge> edges_;
};

}  // namespace

std::vector<std::optional<int>> DistancesFrom(const WotGraph& graph, size_t source) {
  return Bfs(graph.size(), source,
             [&](size_t u) -> const std::vector<size_t>& { return graph.out(u); });
}

std::vector<std::optional<int>> DistancesTo(const WotGraph& graph, size_t target) {
  const auto in = Reverse(graph);
  return Bfs(graph.size(), target,
             [&](size_t u) -> const std::vector<size_t>& { return in[u]; });
}

absl::StatusOr<std::optional<int>> Distance(const WotGraph& graph,
                                            absl::string_view from,
                                            absl::string_view to) {
  AMAKEY_ASSIGN_OR_RETURN(size_t s, graph.IndexOf(from));
  AMAKEY_ASSIGN_OR_RETURN(size_t t, graph.IndexOf(to));
  return DistancesFrom(graph, s)[t];
}

absl::StatusOr<MsdValue> Msd(const WotGraph& graph, absl::string_view node) {
  AMAKEY_ASSIGN_OR_RETURN(size_t i, graph.IndexOf(node));
  return MeanOver(DistancesFrom(graph, i), i);
}

absl::StatusOr<MsdValue> InboundMsd(const WotGraph& graph, absl::string_view node) {
  AMAKEY_ASSIGN_OR_RETURN(size_t i, graph.IndexOf(node));
  return MeanOver(DistancesTo(graph, i), i);
}

MsdReport ComputeMsdReport(const WotGraph& graph) {
  MsdReport report;
  const auto in = Reverse(graph);
  for (size_t i = 0; i < graph.size(); ++i) {
    report.outbound.push_back(MeanOver(DistancesFrom(graph, i), i));
    report.inbound.push_back(MeanOver(
        Bfs(graph.size(), i,
            [&](size_t u) -> const std::vector<size_t>& { return in[u]; }),
        i));
  }
  return report;
}

absl::StatusOr<DisjointPaths> NodeDisjointPaths(const WotGraph& graph,
                                                absl::string_view from,
                                                absl::string_view to) {
  AMAKEY_ASSIGN_OR_RETURN(size_t s, graph.IndexOf(from));
  AMAKEY_ASSIGN_OR_RETURN(size_t t, graph.IndexOf(to));
  if (s == t) {
    return absl::InvalidArgumentError("paths need distinct endpoints");
  }
  // Node v becomes v_in = 2v and v_out = 2v + 1 joined by a unit edge.
  const int unbounded = static_cast<int>(graph.size()) + 1;
  FlowNetwork net(2 * graph.size());
  for (size_t v = 0; v < graph.size(); ++v) {
    net.Add(2 * v, 2 * v + 1, (v == s || v == t) ? unbounded : 1);
    for (size_t w : graph.out(v)) net.Add(2 * v + 1, 2 * w, 1);
  }
  DisjointPaths result;
  result.count = net.MaxFlow(2 * s + 1, 2 * t);
  for (int p = 0; p < result.count; ++p) {
    std::vector<std::string> path{graph.node(s).id};
    size_t at = 2 * s + 1;
    while (at != 2 * t) {
      std::optional<size_t> next = net.TakeFlowFrom(at);
      if (!next) return absl::InternalError("flow decomposition failed");
      at = *next;
      if (at % 2 == 0) {
        path.push_back(graph.node(at / 2).id);
        if (at != 2 * t) at = at + 1;
      }
    }
    result.paths.push_back(std::move(path));
  }
  return result;
}

}  // namespace amakey::wot
