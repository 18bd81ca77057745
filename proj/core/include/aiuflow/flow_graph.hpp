// Copyright 2026 The aiuflow Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <map>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <vector>

#include "aiuflow/model.hpp"

namespace aiuflow {

/// The part of the diagram between a fork and its matching join.
///
/// Branches are walked along non-Quit edges; a nested fork is stepped over
/// via its own join. A fork is matched when every branch reaches the same
/// join, no branch reaches a final node, branches are disjoint, and nothing
/// outside the region has an edge into it.
struct ForkRegion {
  std::string fork;
  std::optional<std::string> join;
  std::vector<std::size_t> branch_edges;  // transition indices, declaration order
  std::vector<std::set<std::string>> branch_nodes;
  std::set<std::string> region;  // union of branch_nodes (nested joins included)
  bool matched = false;
  std::string problem;
};

enum class LookupKind { Explicit, ImplicitSelf, QuitDefault, Missing, Ambiguous };

struct Lookup {
  LookupKind kind = LookupKind::Missing;
  std::size_t transition = 0;  // valid for Explicit
};

/// Index over a ServiceSpec. Holds a pointer to the spec, which must outlive
/// the graph. Edges naming unknown nodes are skipped.
class FlowGraph {
 public:
  explicit FlowGraph(const ServiceSpec& spec);

  const ServiceSpec& spec() const { return *spec_; }
  const Node* node(std::string_view id) const;
  const Transition& transition(std::size_t index) const { return spec_->transitions[index]; }

  const std::vector<std::size_t>& outgoing(std::string_view id) const;
  const std::vector<std::size_t>& incoming(std::string_view id) const;

  const std::map<std::string, ForkRegion>& forks() const { return forks_; }
  const ForkRegion* fork(std::string_view id) const;
  const ForkRegion* fork_of_join(std::string_view join_id) const;
  /// Joins that no fork walk reached.
  std::vector<std::string> orphan_joins() const;

  /// Matched forks whose region contains `id`, innermost first.
  std::vector<const ForkRegion*> enclosing_forks(std::string_view id) const;

  /// Which branch of the matching fork an edge into `join_id` completes.
  std::optional<std::size_t> join_branch(std::string_view join_id, std::size_t transition) const;

  /// Resolves the transition that an outcome (tag, key) fires from `node_id`.
  Lookup lookup(std::string_view node_id, OutcomeTag tag, std::string_view key) const;

  /// Nodes reachable from `from` along explicit edges (including `from`).
  std::set<std::string> reachable_from(std::string_view from) const;

 private:
  void analyze_fork(const std::string& fork_id, std::set<std::string>& in_progress);

  const ServiceSpec* spec_;
  std::map<std::string, std::size_t, std::less<>> index_;
  std::vector<std::vector<std::size_t>> out_;
  std::vector<std::vector<std::size_t>> in_;
  std::map<std::string, ForkRegion> forks_;
  std::map<std::string, std::string, std::less<>> join_to_fork_;
  std::set<std::string> attempted_joins_;
};

}  // namespace aiuflow
