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

#include "amakey/wot/graph.h"

#include <algorithm>
#include <vector>

#include "absl/strings/ascii.h"
#include "absl/strings/str_cat.h"
#include "absl/strings/str_split.h"
#include "absl/strings/strip.h"
#include "amakey/core/status_macros.h"

namespace amakey::wot {
namespace {

bool IsValidId(absl::string_view id) {
  if (id.empty()) return false;
  for (char c : id) {
    const auto u = static_cast<unsigned char>(c);
    if (absl::ascii_isspace(u) || absl::ascii_iscntrl(u) || c == '#') return false;
  }
  return true;
}

}  // namespace

absl::string_view KeyTagName(KeyTag tag) {
  return tag == KeyTag::kGenuine ? "genuine" : "impostor";
}

absl::StatusOr<KeyTag> ParseKeyTag(absl::string_view name) {
  if (name == "genuine") return KeyTag::kGenuine;
  if (name == "impostor") return KeyTag::kImpostor;
  return absl::InvalidArgumentError(absl::StrCat("unknown key tag '", name, "'"));
}

absl::Status WotGraph::AddNode(WotNode node) {
  if (!IsValidId(node.id) || !IsValidId(node.owner)) {
    return absl::InvalidArgumentError(
        absl::StrCat("node id and owner must be non-empty without spaces: '",
                     node.id, "'"));
  }
  if (index_.contains(node.id)) {
    return absl::AlreadyExistsError(absl::StrCat("duplicate node '", node.id, "'"));
  }
  index_.emplace(node.id, nodes_.size());
  nodes_.push_back(std::move(node));
  out_.emplace_back();
  return absl::OkStatus();
}

absl::Status WotGraph::AddEdge(absl::string_view signer, absl::string_view signee) {
  AMAKEY_ASSIGN_OR_RETURN(size_t from, IndexOf(signer));
  AMAKEY_ASSIGN_OR_RETURN(size_t to, IndexOf(signee));
  if (from == to) {
    return absl::InvalidArgumentError(
        absl::StrCat("'", signer, "' cannot certify itself"));
  }
  std::vector<size_t>& list = out_[from];
  auto it = std::lower_bound(list.begin(), list.end(), to);
  if (it != list.end() && *it == to) return absl::OkStatus();
  list.insert(it, to);
  ++edge_count_;
  return absl::OkStatus();
}

absl::StatusOr<size_t> WotGraph::IndexOf(absl::string_view id) const {
  auto it = index_.find(id);
  if (it == index_.end()) {
    return absl::NotFoundError(absl::StrCat("unknown node '", id, "'"));
  }
  return it->second;
}

bool WotGraph::HasEdge(size_t signer, size_t signee) const {
  return std::binary_search(out_[signer].begin(), out_[signer].end(), signee);
}

absl::StatusOr<WotGraph> WotGraph::Without(const std::vector<std::string>& ids) const {
  absl::flat_hash_set<size_t> dropped;
  for (const std::string& id : ids) {
    AMAKEY_ASSIGN_OR_RETURN(size_t i, IndexOf(id));
    dropped.insert(i);
  }
  WotGraph result;
  for (size_t i = 0; i < nodes_.size(); ++i) {
    if (!dropped.contains(i)) AMAKEY_RETURN_IF_ERROR(result.AddNode(nodes_[i]));
  }
  for (size_t i = 0; i < nodes_.size(); ++i) {
    if (dropped.contains(i)) continue;
    for (size_t j : out_[i]) {
      if (!dropped.contains(j)) {
        AMAKEY_RETURN_IF_ERROR(result.AddEdge(nodes_[i].id, nodes_[j].id));
      }
    }
  }
  return result;
}

absl::StatusOr<WotGraph> ParseEdgeList(absl::string_view text) {
  enum class Section { kNone, kNodes, kEdges } section = Section::kNone;
  WotGraph graph;
  int line_no = 0;
  for (absl::string_view raw : absl::StrSplit(text, '\n')) {
    ++line_no;
    absl::string_view line = raw.substr(0, raw.find('#'));
    line = absl::StripAsciiWhitespace(line);
    if (line.empty()) continue;
    auto fail = [&](absl::string_view why) {
      return absl::InvalidArgumentError(absl::StrCat("line ", line_no, ": ", why));
    };
    if (line == "[nodes]") {
      section = Section::kNodes;
      continue;
    }
    if (line == "[edges]") {
      section = Section::kEdges;
      continue;
    }
    std::vector<absl::string_view> fields =
        absl::StrSplit(line, absl::ByAnyChar(" \t"), absl::SkipEmpty());
    if (section == Section::kNodes) {
      if (fields.size() != 3) return fail("expected '<id> <tag> <owner>'");
      auto tag = ParseKeyTag(fields[1]);
      if (!tag.ok()) return fail(tag.status().message());
      absl::Status added = graph.AddNode(
          {std::string(fields[0]), *tag, std::string(fields[2])});
      if (!added.ok()) return fail(added.message());
    } else if (section == Section::kEdges) {
      if (fields.size() != 2) return fail("expected '<signer> <signee>'");
      absl::Status added = graph.AddEdge(fields[0], fields[1]);
      if (!added.ok()) return fail(added.message());
    } else {
      return fail("content before [nodes] or [edges]");
    }
  }
  return graph;
}

std::string FormatEdgeList(const WotGraph& graph) {
  std::string out = "[nodes]\n";
  for (const WotNode& n : graph.nodes()) {
    absl::StrAppend(&out, n.id, " ", KeyTagName(n.tag), " ", n.owner, "\n");
  }
  out += "[edges]\n";
  for (size_t i = 0; i < graph.size(); ++i) {
    for (size_t j : graph.out(i)) {
      absl::StrAppend(&out, graph.node(i).id, " ", graph.node(j).id, "\n");
    }
  }
  return out;
}

}  // namespace amakey::wot
