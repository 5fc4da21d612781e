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

#ifndef AMAKEY_WOT_GRAPH_H_
#define AMAKEY_WOT_GRAPH_H_

#include <string>
#include <vector>

#include "absl/container/flat_hash_map.h"
#include "absl/container/flat_hash_set.h"
#include "absl/status/status.h"
#include "absl/status/statusor.h"
#include "absl/strings/string_view.h"

namespace amakey::wot {

enum class KeyTag { kGenuine, kImpostor };

absl::string_view KeyTagName(KeyTag tag);
absl::StatusOr<KeyTag> ParseKeyTag(absl::string_view name);

struct WotNode {
  std::string id;
  KeyTag tag = KeyTag::kGenuine;
  // The person the key claims to belong to.
  std::string owner;

  friend bool operator==(const WotNode&, const WotNode&) = default;
};

// Directed certification graph. An edge signer -> signed means `signer`
// certified `signed`. Node indices are dense and follow insertion order.
class WotGraph {
 public:
  absl::Status AddNode(WotNode node);
  // Duplicate edges are ignored.
  absl::Status AddEdge(absl::string_view signer, absl::string_view signee);

  size_t size() const { return nodes_.size(); }
  size_t edge_count() const { return edge_count_; }
  const std::vector<WotNode>& nodes() const { return nodes_; }
  const WotNode& node(size_t index) const { return nodes_[index]; }
  // Sorted signee indices.
  const std::vector<size_t>& out(size_t index) const { return out_[index]; }

  absl::StatusOr<size_t> IndexOf(absl::string_view id) const;
  bool HasEdge(size_t signer, size_t signee) const;

  // Copy with `ids` and their edges dropped.
  absl::StatusOr<WotGraph> Without(const std::vector<std::string>& ids) const;

  friend bool operator==(const WotGraph& a, const WotGraph& b) {
    return a.nodes_ == b.nodes_ && a.out_ == b.out_;
  }

 private:
  std::vector<WotNode> nodes_;
  std::vector<std::vector<size_t>> out_;
  absl::flat_hash_map<std::string, size_t> index_;
  size_t edge_count_ = 0;
};

// Text format:
//
//   # comment
//   [nodes]
//   <id> <genuine|impostor> <owner>
//   [edges]
//   <signer> <signee>
absl::StatusOr<WotGraph> ParseEdgeList(absl::string_view text);
std::string FormatEdgeList(const WotGraph& graph);

}  // namespace amakey::wot

#endif  // AMAKEY_WOT_GRAPH_H_
