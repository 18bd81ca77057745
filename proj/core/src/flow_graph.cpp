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

#include "aiuflow/flow_graph.hpp"

#include <algorithm>
#include <deque>

namespace aiuflow {
namespace {
const std::vector<std::size_t> kNoEdges;
}

FlowGraph::FlowGraph(const ServiceSpec& spec) : spec_(&spec) {
  for (std::size_t i = 0; i < spec.nodes.size(); ++i) index_.emplace(spec.nodes[i].id, i);
  out_.resize(spec.nodes.size());
  in_.resize(spec.nodes.size());
  for (std::size_t t = 0; t < spec.transitions.size(); ++t) {
    auto from = index_.find(spec.transitions[t].from);
    auto to = index_.find(spec.transitions[t].to);
    if (from == index_.end() || to == index_.end()) continue;
    out_[from->second].push_back(t);
    in_[to->second].push_back(t);
  }
  std::set<std::string> in_progress;
  for (const auto& node : spec.nodes) {
    if (node.kind == NodeKind::Fork) analyze_fork(node.id, in_progress);
  }
}

const Node* FlowGraph::node(std::string_view id) const {
  auto it = index_.find(id);
  return it == index_.end() ? nullptr : &spec_->nodes[it->second];
}

const std::vector<std::size_t>& FlowGraph::outgoing(std::string_view id) const {
  auto it = index_.find(id);
  return it == index_.end() ? kNoEdges : out_[it->second];
}

const std::vector<std::size_t>& FlowGraph::incoming(std::string_view id) const {
  auto it = index_.find(id);
  return it == index_.end() ? kNoEdges : in_[it->second];
}

const ForkRegion* FlowGraph::fork(std::string_view id) const {
  auto it = forks_.find(std::string(id));
  return it == forks_.end() ? nullptr : &it->second;
}

const ForkRegion* FlowGraph::fork_of_join(std::string_view join_id) const {
  auto it = join_to_fork_.find(join_id);
  return it == join_to_fork_.end() ? nullptr : fork(it->second);
}

std::vector<std::string> FlowGraph::orphan_joins() const {
  std::vector<std::string> out;
  for (const auto& node : spec_->nodes) {
    if (node.kind == NodeKind::Join && !attempted_joins_.count(node.id)) out.push_back(node.id);
  }
  return out;
}

void FlowGraph::analyze_fork(const std::string& fork_id, std::set<std::string>& in_progress) {
  if (forks_.count(fork_id)) return;
  ForkRegion region;
  region.fork = fork_id;
  if (in_progress.count(fork_id)) {
    region.problem = "fork is nested inside itself";
    forks_[fork_id] = region;
    return;
  }
  in_progress.insert(fork_id);

  auto fail = [&](std::string why) {
    if (region.problem.empty()) region.problem = std::move(why);
  };

  std::set<std::string> joins_seen;
  for (auto edge : outgoing(fork_id)) {
    region.branch_edges.push_back(edge);
    std::set<std::string> visited;
    std::set<std::string> joins;
    std::deque<std::string> queue{spec_->transitions[edge].to};
    while (!queue.empty()) {
      auto id = queue.front();
      queue.pop_front();
      if (id == fork_id || visited.count(id)) continue;
      const Node* n = node(id);
      if (n == nullptr) continue;
      if (n->kind == NodeKind::Join) {
        joins.insert(id);
        attempted_joins_.insert(id);
        continue;
      }
      if (n->kind == NodeKind::Final) {
        fail("branch via '" + spec_->transitions[edge].to + "' reaches final node '" + id +
             "' without joining");
        continue;
      }
      visited.insert(id);
      if (n->kind == NodeKind::Fork) {
        analyze_fork(id, in_progress);
        const auto& nested = forks_[id];
        if (!nested.matched || !nested.join) {
          fail("nested fork '" + id + "' is unmatched");
          continue;
        }
        visited.insert(nested.region.begin(), nested.region.end());
        visited.insert(*nested.join);
        for (auto e : outgoing(*nested.join)) queue.push_back(spec_->transitions[e].to);
        continue;
      }
      for (auto e : outgoing(id)) {
        if (spec_->transitions[e].trigger == OutcomeTag::Null) continue;
        queue.push_back(spec_->transitions[e].to);
      }
    }
    if (joins.size() != 1) {
      fail(joins.empty() ? "branch via '" + spec_->transitions[edge].to + "' never reaches a join"
                         : "branch via '" + spec_->transitions[edge].to +
                               "' reaches several joins");
    }
    joins_seen.insert(joins.begin(), joins.end());
    for (const auto& id : visited) {
      if (region.region.count(id)) fail("branches share node '" + id + "'");
    }
    region.region.insert(visited.begin(), visited.end());
    region.branch_nodes.push_back(std::move(visited));
  }

  if (region.branch_edges.empty()) fail("fork has no outgoing edges");
  if (joins_seen.size() == 1) {
    region.join = *joins_seen.begin();
  } else if (joins_seen.size() > 1) {
    fail("branches reconverge at different joins");
  }

  if (region.join && region.problem.empty()) {
    // Every edge into the region or its join must originate inside it.
    auto inside = [&](const std::string& id) { return id == fork_id || region.region.count(id); };
    std::vector<std::string> targets(region.region.begin(), region.region.end());
    targets.push_back(*region.join);
    for (const auto& id : targets) {
      for (auto e : incoming(id)) {
        const auto& t = spec_->transitions[e];
        if (!inside(t.from)) {
          fail("edge from '" + t.from + "' enters the fork region at '" + id + "'");
        }
      }
    }
    // Every branch must contribute an edge into the join.
    for (std::size_t b = 0; b < region.branch_edges.size(); ++b) {
      bool contributes = false;
      for (auto e : incoming(*region.join)) {
        const auto& t = spec_->transitions[e];
        contributes = contributes || e == region.branch_edges[b] ||
                      region.branch_nodes[b].count(t.from) > 0;
      }
      if (!contributes) fail("a branch never arrives at join '" + *region.join + "'");
    }
  }

  region.matched = region.join.has_value() && region.problem.empty();
  if (region.matched) join_to_fork_[*region.join] = fork_id;
  in_progress.erase(fork_id);
  forks_[fork_id] = std::move(region);
}

std::vector<const ForkRegion*> FlowGraph::enclosing_forks(std::string_view id) const {
  std::vector<const ForkRegion*> out;
  for (const auto& [fork_id, region] : forks_) {
    if (region.matched && region.region.count(std::string(id))) out.push_back(&region);
  }
  // Inner regions are strict subsets of outer ones.
  std::sort(out.begin(), out.end(), [](const ForkRegion* a, const ForkRegion* b) {
    return a->region.size() < b->region.size();
  });
  return out;
}

std::optional<std::size_t> FlowGraph::join_branch(std::string_view join_id,
                                                  std::size_t transition) const {
  const ForkRegion* region = fork_of_join(join_id);
  if (region == nullptr) return std::nullopt;
  const auto& t = spec_->transitions[transition];
  for (std::size_t b = 0; b < region->branch_edges.size(); ++b) {
    if (region->branch_edges[b] == transition || region->branch_nodes[b].count(t.from)) return b;
  }
  return std::nullopt;
}

Lookup FlowGraph::lookup(std::string_view node_id, OutcomeTag tag, std::string_view key) const {
  std::vector<std::size_t> keyed;
  std::vector<std::size_t> unkeyed;
  for (auto e : outgoing(node_id)) {
    const auto& t = spec_->transitions[e];
    if (t.trigger != tag) continue;
    if (t.key) {
      if (*t.key == key) keyed.push_back(e);
    } else {
      unkeyed.push_back(e);
    }
  }
  auto pick = [](const std::vector<std::size_t>& edges) {
    return edges.size() == 1 ? Lookup{LookupKind::Explicit, edges[0]}
                             : Lookup{LookupKind::Ambiguous, 0};
  };
  if (!keyed.empty()) return pick(keyed);
  if (!unkeyed.empty()) return pick(unkeyed);
  if (tag == OutcomeTag::Command) return {LookupKind::ImplicitSelf, 0};
  if (tag == OutcomeTag::Null) return {LookupKind::QuitDefault, 0};
  return {LookupKind::Missing, 0};
}

std::set<std::string> FlowGraph::reachable_from(std::string_view from) const {
  std::set<std::string> seen;
  if (!node(from)) return seen;
  std::deque<std::string> queue{std::string(from)};
  while (!queue.empty()) {
    auto id = queue.front();
    queue.pop_front();
    if (!seen.insert(id).second) continue;
    for (auto e : outgoing(id)) queue.push_back(spec_->transitions[e].to);
  }
  return seen;
}

}  // namespace aiuflow
