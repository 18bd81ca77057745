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

#include "aiuflow/engine.hpp"

#include <algorithm>

#include "aiuflow/errors.hpp"
#include "aiuflow/guard.hpp"
#include "aiuflow/validate.hpp"
#include "json_codec.hpp"

namespace aiuflow {
namespace {

// Control nodes entered by one submission before we call it a cycle.
constexpr int kMaxControlSteps = 10'000;

class Stepper {
 public:
  explicit Stepper(Session& s) : s_(s), graph_(*s.graph) {}

  void enter(const std::string& id) {
    if (++steps_ > kMaxControlSteps) {
      throw Error("ControlCycle", "control did not reach an activity from " + id);
    }
    const Node* node = graph_.node(id);
    switch (node->kind) {
      case NodeKind::Activity:
        s_.active.insert(id);
        break;
      case NodeKind::Final:
        break;
      case NodeKind::Start:
        take(single_completion(id), nullptr);
        break;
      case NodeKind::Fork: {
        if (const ForkRegion* region = graph_.fork(id)) reset(*region);
        for (auto e : graph_.outgoing(id)) take(e, nullptr);
        break;
      }
      case NodeKind::Join:
        // Reached only through take(), which records the arrival.
        break;
      case NodeKind::Decision: {
        bool verdict = evaluate_guard(*node->guard->expr, s_.env);
        auto found = graph_.lookup(id, verdict ? OutcomeTag::GuardTrue : OutcomeTag::GuardFalse, "");
        if (found.kind != LookupKind::Explicit) {
          throw Error("NoMatchingTransition", id + " has no edge for guard value " +
                                                  (verdict ? "true" : "false"));
        }
        take(found.transition, nullptr);
        break;
      }
    }
  }

  /// Follows transition `index`; `source` carries the firing AIU and outcome
  /// when bindings apply.
  void take(std::size_t index, const std::pair<const AiuInstance*, const Outcome*>* source) {
    const Transition& t = graph_.transition(index);
    if (source != nullptr) bind(t, *source->first, *source->second);
    leave_regions(t.from, t.to);
    const Node* target = graph_.node(t.to);
    if (target->kind == NodeKind::Join) {
      arrive(t.to, index);
    } else {
      enter(t.to);
    }
  }

  /// Control moves from `from` to `to` outside the explicit edges.
  void jump(const std::string& from, const std::string& to) {
    leave_regions(from, to);
    enter(to);
  }

 private:
  std::size_t single_completion(const std::string& id) {
    auto found = graph_.lookup(id, OutcomeTag::Completion, "");
    if (found.kind != LookupKind::Explicit) {
      throw Error("NoMatchingTransition", id + " has no single completion edge");
    }
    return found.transition;
  }

  void arrive(const std::string& join, std::size_t edge) {
    const ForkRegion* region = graph_.fork_of_join(join);
    auto branch = graph_.join_branch(join, edge);
    if (region == nullptr || !branch) {
      throw Error("NoMatchingTransition", join + " has no matching fork for the arriving edge");
    }
    auto& arrived = s_.completed_branches[join];
    arrived.insert(*branch);
    if (arrived.size() < region->branch_edges.size()) return;
    s_.completed_branches.erase(join);
    take(single_completion(join), nullptr);
  }

  void clear(const ForkRegion& region) {
    for (const auto& id : region.region) {
      s_.active.erase(id);
      s_.completed_branches.erase(id);
    }
    if (region.join) s_.completed_branches.erase(*region.join);
  }

  void reset(const ForkRegion& region) { clear(region); }

  // Abandons every fork region that `from` lies in and `to` leaves.
  void leave_regions(const std::string& from, const std::string& to) {
    for (const ForkRegion* region : graph_.enclosing_forks(from)) {
      bool stays = region->region.count(to) || (region->join && *region->join == to);
      if (!stays) clear(*region);
    }
  }

  void bind(const Transition& t, const AiuInstance& aiu, const Outcome& o) {
    for (const auto& b : t.bindings) {
      if (auto v = select(aiu, o, b.selector)) s_.env[b.variable] = std::move(*v);
    }
  }

  static std::optional<Value> select(const AiuInstance& aiu, const Outcome& o,
                                     std::string_view selector) {
    if (const auto* c = std::get_if<outcome::Command>(&o)) {
      if (selector == "key") return Value{c->id};
    } else if (const auto* c = std::get_if<outcome::ChoiceSelected>(&o)) {
      if (selector == "key") return Value{c->key};
      if (selector == "label") {
        for (const auto& item : *aiu.choices) {
          if (item.key == c->key) return Value{item.label};
        }
      }
    } else if (const auto* c = std::get_if<outcome::ChoicesSelected>(&o)) {
      if (selector == "keys") {
        std::string joined;
        for (const auto& k : c->keys) joined += (joined.empty() ? "" : ",") + k;
        return Value{joined};
      }
    } else if (const auto* p = std::get_if<outcome::Point>(&o)) {
      if (selector == "x") return Value{p->x};
      if (selector == "y") return Value{p->y};
    } else if (const auto* r = std::get_if<outcome::TupleSelected>(&o)) {
      if (selector == "row") return Value{static_cast<std::int64_t>(r->row)};
      if (selector.rfind("cell.", 0) == 0) {
        const auto& table = *aiu.table;
        for (std::size_t col = 0; col < table.columns.size(); ++col) {
          if (table.columns[col].name == selector.substr(5)) return Value{table.rows[r->row][col]};
        }
      }
    } else if (const auto* f = std::get_if<outcome::FilledFields>(&o)) {
      if (selector.rfind("field.", 0) == 0) {
        auto name = std::string(selector.substr(6));
        auto it = f->values.find(name);
        if (it == f->values.end() || it->second.empty()) return std::nullopt;
        for (const auto& decl : *aiu.fields) {
          if (decl.name == name) return parse_value(decl.value_type, it->second);
        }
      }
    }
    return std::nullopt;
  }

  Session& s_;
  const FlowGraph& graph_;
  int steps_ = 0;
};

[[noreturn]] void illegal(const std::string& node, const std::string& why) {
  throw Error("IllegalOutcome", node + ": " + why);
}

void check_outcome(const Node& node, const Outcome& o) {
  const AiuInstance& aiu = *node.aiu;
  OutcomeTag tag = tag_of(o);
  if (!legal_outcomes(aiu.kind).count(tag)) {
    illegal(node.id, std::string(to_string(aiu.kind)) + " cannot return " +
                         std::string(to_string(tag)));
  }
  if (tag == OutcomeTag::Ok && !aiu.ok_button) illegal(node.id, "no OK button");
  if (const auto* c = std::get_if<outcome::Command>(&o)) {
    const auto& cmds = aiu.browsing_commands;
    if (std::find(cmds.begin(), cmds.end(), c->id) == cmds.end()) {
      illegal(node.id, "unknown browsing command '" + c->id + "'");
    }
  }
  auto has_choice = [&](const std::string& key) {
    return std::any_of(aiu.choices->begin(), aiu.choices->end(),
                       [&](const ChoiceDecl& c) { return c.key == key; });
  };
  if (const auto* c = std::get_if<outcome::ChoiceSelected>(&o)) {
    if (!has_choice(c->key)) illegal(node.id, "unknown choice '" + c->key + "'");
  }
  if (const auto* c = std::get_if<outcome::ChoicesSelected>(&o)) {
    for (const auto& k : c->keys) {
      if (!has_choice(k)) illegal(node.id, "unknown choice '" + k + "'");
    }
  }
  if (const auto* r = std::get_if<outcome::TupleSelected>(&o)) {
    if (r->row >= aiu.table->rows.size()) {
      illegal(node.id, "row " + std::to_string(r->row) + " out of range");
    }
  }
  if (const auto* f = std::get_if<outcome::FilledFields>(&o)) {
    std::vector<std::string> problems;
    for (const auto& [name, value] : f->values) {
      bool known = std::any_of(aiu.fields->begin(), aiu.fields->end(),
                               [&](const FieldDecl& d) { return d.name == name; });
      if (!known) problems.push_back(name + ": unknown field");
    }
    for (const auto& decl : *aiu.fields) {
      auto it = f->values.find(decl.name);
      bool empty = it == f->values.end() || it->second.empty();
      if (empty) {
        if (decl.required) problems.push_back(decl.name + ": required");
      } else if (!parse_value(decl.value_type, it->second)) {
        problems.push_back(decl.name + ": not a valid " + std::string(to_string(decl.value_type)));
      }
    }
    if (!problems.empty()) {
      std::string message;
      for (const auto& p : problems) message += (message.empty() ? "" : "; ") + p;
      throw Error("FieldValidationError", message);
    }
  }
}

// Most recent activity completed before `current`, or nullopt. Quit and
// browsing commands do not complete an activity.
std::optional<std::string> previous_activity(const Session& s, const std::string& current) {
  for (auto it = s.history.rbegin(); it != s.history.rend(); ++it) {
    OutcomeTag tag = tag_of(it->outcome);
    if (tag == OutcomeTag::Null || tag == OutcomeTag::Command) continue;
    if (it->node == current) continue;
    return it->node;
  }
  return std::nullopt;
}

std::string quit_target(const Session& s, const std::string& current) {
  auto previous = previous_activity(s, current);
  if (!previous) return s.spec->start;
  auto forks = s.graph->enclosing_forks(*previous);
  if (!forks.empty()) return forks.back()->fork;  // outermost
  return *previous;
}

}  // namespace

Session start_session(std::shared_ptr<const ServiceSpec> spec, const DeviceProfile& device,
                      const Thresholds& thresholds, std::string id) {
  auto diagnostics = validate_spec(*spec);
  if (!diagnostics.empty()) {
    throw Error("ValidationFailed", format_diagnostic(diagnostics.front()) +
                                        (diagnostics.size() > 1
                                             ? " (+" + std::to_string(diagnostics.size() - 1) +
                                                   " more)"
                                             : ""));
  }
  Session s;
  s.id = std::move(id);
  s.spec = spec;
  s.device = std::make_shared<const DeviceProfile>(device);
  s.plan = std::make_shared<const AdaptationPlan>(plan_service(*spec, device, thresholds));
  s.graph = std::make_shared<const FlowGraph>(*spec);
  s.thresholds = thresholds;
  Stepper(s).enter(spec->start);
  if (s.active.empty()) s.status = SessionStatus::Finished;
  return s;
}

Session submit(const Session& session, std::string_view node_id, const Outcome& o) {
  if (session.status == SessionStatus::Finished) {
    throw Error("SessionFinished", "session " + session.id + " has finished");
  }
  std::string node(node_id);
  if (!session.active.count(node)) throw Error("NotActive", node + " is not active");
  const Node& n = *session.graph->node(node);
  check_outcome(n, o);

  Session next = session;
  Stepper step(next);
  auto found = next.graph->lookup(node, tag_of(o), key_of(o));
  switch (found.kind) {
    case LookupKind::Explicit: {
      next.active.erase(node);
      std::pair<const AiuInstance*, const Outcome*> source{&*n.aiu, &o};
      step.take(found.transition, &source);
      break;
    }
    case LookupKind::ImplicitSelf:
      break;
    case LookupKind::QuitDefault:
      next.active.erase(node);
      step.jump(node, quit_target(session, node));
      break;
    case LookupKind::Missing:
    case LookupKind::Ambiguous:
      throw Error("NoMatchingTransition", node + " has no unique edge for " +
                                              std::string(to_string(tag_of(o))));
  }
  next.history.push_back({node, o});
  if (next.active.empty()) next.status = SessionStatus::Finished;
  return next;
}

Session replay(std::shared_ptr<const ServiceSpec> spec, const DeviceProfile& device,
               const Thresholds& thresholds, const std::vector<HistoryEntry>& history,
               std::string id) {
  Session s = start_session(std::move(spec), device, thresholds, std::move(id));
  for (const auto& entry : history) s = submit(s, entry.node, entry.outcome);
  return s;
}

std::vector<View> current_views(const Session& s) {
  if (s.status == SessionStatus::Finished) {
    throw Error("SessionFinished", "session " + s.id + " has finished");
  }
  const auto& plan = *s.plan;
  std::vector<View> views;
  std::set<std::string> shown;
  for (const auto& node : s.spec->nodes) {
    if (!s.active.count(node.id) || shown.count(node.id)) continue;

    std::vector<const Node*> group{&node};
    auto forks = s.graph->enclosing_forks(node.id);
    if (!forks.empty()) {
      const ForkRegion& region = *forks.front();
      auto layout = plan.per_fork.find(region.fork);
      bool merged = layout == plan.per_fork.end() || layout->second.kind == ForkLayoutKind::Merged;
      group.clear();
      for (const auto& other : s.spec->nodes) {
        if (!s.active.count(other.id) || !region.region.count(other.id)) continue;
        // Nodes of a nested fork form their own unit.
        auto inner = s.graph->enclosing_forks(other.id);
        if (inner.front() != &region) continue;
        group.push_back(&other);
      }
      if (!merged) {
        // First branch, in declaration order, that still has an active node.
        const Node* first = nullptr;
        for (std::size_t b = 0; b < region.branch_nodes.size() && !first; ++b) {
          for (const Node* candidate : group) {
            if (region.branch_nodes[b].count(candidate->id)) {
              first = candidate;
              break;
            }
          }
        }
        for (const Node* g : group) shown.insert(g->id);
        group = {first != nullptr ? first : &node};
      }
    }

    View view;
    std::vector<AdaptationDecision> decisions;
    for (const Node* g : group) {
      view.nodes.push_back(g->id);
      decisions.push_back(plan.per_node.at(g->id));
      shown.insert(g->id);
    }
    view.pages = group.size() == 1
                     ? render_pages(*group.front(), decisions.front(), *s.device, s.env)
                     : render_composite_pages(group, decisions, *s.device, s.env);
    views.push_back(std::move(view));
  }
  return views;
}

std::vector<std::pair<std::string, ConcretePage>> current_pages(const Session& session) {
  std::vector<std::pair<std::string, ConcretePage>> out;
  for (auto& view : current_views(session)) {
    out.emplace_back(view.nodes.front(), std::move(view.pages.front()));
  }
  return out;
}

ConcretePage session_detail(const Session& session, std::string_view node, std::size_t row,
                            int page) {
  std::string id(node);
  if (!session.active.count(id)) throw Error("NotActive", id + " is not active");
  return render_detail(*session.graph->node(id), row, *session.device, page);
}

namespace codec {

json value_to_json(const Value& value) {
  if (const auto* i = std::get_if<std::int64_t>(&value)) return *i;
  return format_value(value);
}

json session_to_json(const Session& s) {
  json out = json::object();
  out["id"] = s.id;
  out["spec"] = s.spec->name;
  out["device"] = s.device->id;
  out["status"] = s.status == SessionStatus::Running ? "running" : "finished";
  out["active"] = s.active;
  json env = json::object();
  for (const auto& [name, value] : s.env) env[name] = value_to_json(value);
  out["env"] = std::move(env);
  json joins = json::object();
  for (const auto& [join, branches] : s.completed_branches) joins[join] = branches;
  out["completedBranches"] = std::move(joins);
  json history = json::array();
  for (const auto& h : s.history) {
    history.push_back({{"node", h.node}, {"outcome", outcome_to_json(h.outcome)}});
  }
  out["history"] = std::move(history);
  return out;
}

}  // namespace codec

std::string serialize_session(const Session& session) {
  return codec::session_to_json(session).dump(2) + "\n";
}

}  // namespace aiuflow
