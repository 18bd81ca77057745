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
#include <memory>
#include <set>
#include <string>
#include <string_view>
#include <vector>

#include "aiuflow/adapt.hpp"
#include "aiuflow/flow_graph.hpp"
#include "aiuflow/metrics.hpp"
#include "aiuflow/model.hpp"
#include "aiuflow/render.hpp"

namespace aiuflow {

enum class SessionStatus { Running, Finished };

struct HistoryEntry {
  std::string node;
  Outcome outcome;

  bool operator==(const HistoryEntry&) const = default;
};

/// A running walk through one spec. Copyable; the spec, device, plan and
/// graph are shared immutably between copies.
struct Session {
  std::string id;
  std::shared_ptr<const ServiceSpec> spec;
  std::shared_ptr<const DeviceProfile> device;
  std::shared_ptr<const AdaptationPlan> plan;
  std::shared_ptr<const FlowGraph> graph;
  Thresholds thresholds;

  std::set<std::string> active;
  Env env;
  std::map<std::string, std::set<std::size_t>> completed_branches;  // join -> branch indices
  std::vector<HistoryEntry> history;
  SessionStatus status = SessionStatus::Running;
};

/// Validates, plans, and advances from start into the first activities.
/// Throws Error{"ValidationFailed"} or Error{"PlanError"}.
Session start_session(std::shared_ptr<const ServiceSpec> spec, const DeviceProfile& device,
                      const Thresholds& thresholds, std::string id = "session");

/// Fires the transition `outcome` selects from `node` and returns the new
/// state; `session` is left untouched on error.
///
/// Quit without an explicit Null edge returns to the most recent activity
/// completed before `node` (or to the outermost fork enclosing it), else to
/// start. Leaving a fork region along any edge abandons its other branches.
///
/// Throws Error with code SessionFinished, NotActive, IllegalOutcome,
/// FieldValidationError, NoMatchingTransition, GuardEvaluationError or
/// ControlCycle.
Session submit(const Session& session, std::string_view node, const Outcome& outcome);

/// Re-runs `history` from a fresh session.
Session replay(std::shared_ptr<const ServiceSpec> spec, const DeviceProfile& device,
               const Thresholds& thresholds, const std::vector<HistoryEntry>& history,
               std::string id = "session");

/// What the user sees for one group of active nodes: one node, or all active
/// branch nodes of a merged fork.
struct View {
  std::vector<std::string> nodes;
  std::vector<ConcretePage> pages;

  bool operator==(const View&) const = default;
};

/// One view per presentation unit, in node declaration order. Sequenced
/// forks show only their first branch with an active node.
/// Throws Error{"SessionFinished"}.
std::vector<View> current_views(const Session& session);

/// First page of every view, keyed by the view's first node.
std::vector<std::pair<std::string, ConcretePage>> current_pages(const Session& session);

/// Detail page of a table row on an active node. Throws NotActive,
/// RowOutOfRange, PageOutOfRange.
ConcretePage session_detail(const Session& session, std::string_view node, std::size_t row,
                            int page = 1);

/// Canonical encoding of the mutable state; equal states serialize equally.
std::string serialize_session(const Session& session);

}  // namespace aiuflow
