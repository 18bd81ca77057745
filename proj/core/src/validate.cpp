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

#include "aiuflow/validate.hpp"

#include <algorithm>
#include <deque>
#include <map>
#include <set>

#include "aiuflow/errors.hpp"
#include "aiuflow/flow_graph.hpp"
#include "aiuflow/guard.hpp"
#include "aiuflow/spec_io.hpp"

namespace aiuflow {
namespace {

using VarSet = std::set<std::string>;

class Validator {
 public:
  explicit Validator(const ServiceSpec& spec) : spec_(spec) {}

  std::vector<Diagnostic> run() {
    check_structure();
    if (!out_.empty()) return std::move(out_);
    FlowGraph graph(spec_);
    check_flow(graph);
    if (!out_.empty()) return std::move(out_);
    check_bindings(graph);
    return std::move(out_);
  }

 private:
  void report(std::string code, std::string node, std::string message,
              std::optional<std::size_t> transition = std::nullopt) {
    out_.push_back(Diagnostic{Severity::Error, std::move(code), std::move(node), transition,
                              std::move(message)});
  }

  static std::string edge_name(const Transition& t) {
    std::string name = t.from + " -> " + t.to + " on " + std::string(to_string(t.trigger));
    if (t.key) name += " '" + *t.key + "'";
    return name;
  }

  // -------------------------------------------------------------------------
  // Pass 1: references, arity, triggers, declared variables.
  // -------------------------------------------------------------------------

  void check_structure() {
    std::map<std::string, const Node*> by_id;
    std::set<std::string> aiu_ids;
    int starts = 0;
    for (const auto& node : spec_.nodes) {
      if (!by_id.emplace(node.id, &node).second) {
        report("DuplicateId", node.id, "node id '" + node.id + "' is declared twice");
      }
      if (node.kind == NodeKind::Start) ++starts;
      if (node.kind == NodeKind::Activity && !node.aiu) {
        report("MalformedNode", node.id, "activity node carries no AIU");
      }
      if (node.kind == NodeKind::Decision && (!node.guard || !node.guard->expr)) {
        report("MalformedNode", node.id, "decision node carries no guard");
      }
      if (node.aiu && !aiu_ids.insert(node.aiu->id).second) {
        report("DuplicateId", node.id, "AIU id '" + node.aiu->id + "' is declared twice");
      }
    }

    auto start = by_id.find(spec_.start);
    if (spec_.start.empty() || start == by_id.end() || start->second->kind != NodeKind::Start) {
      report("MissingStart", spec_.start,
             spec_.start.empty() ? "no start node declared"
                                 : "start '" + spec_.start + "' is not a start node");
    } else if (starts > 1) {
      report("MultipleStart", spec_.start, "more than one node of kind start");
    }

    if (spec_.finals.empty()) {
      report("MissingFinal", "", "no final node declared");
    } else {
      std::set<std::string> listed(spec_.finals.begin(), spec_.finals.end());
      for (const auto& id : spec_.finals) {
        auto it = by_id.find(id);
        if (it == by_id.end() || it->second->kind != NodeKind::Final) {
          report("InvalidFinal", id, "'" + id + "' is not a final node");
        }
      }
      for (const auto& node : spec_.nodes) {
        if (node.kind == NodeKind::Final && !listed.count(node.id)) {
          report("InvalidFinal", node.id, "final node '" + node.id + "' is not listed in finals");
        }
      }
    }

    std::map<std::string, std::vector<std::size_t>> outgoing;
    for (std::size_t i = 0; i < spec_.transitions.size(); ++i) {
      const auto& t = spec_.transitions[i];
      bool dangling = false;
      for (const auto* end : {&t.from, &t.to}) {
        if (!by_id.count(*end)) {
          report("DanglingTransition", *end, "transition references unknown node '" + *end + "'",
                 i);
          dangling = true;
        }
      }
      if (dangling) continue;
      outgoing[t.from].push_back(i);
      check_trigger(*by_id.at(t.from), t, i);
    }

    for (const auto& node : spec_.nodes) {
      check_arity(node, outgoing[node.id]);
      check_reads(node);
    }
  }

  void check_trigger(const Node& from, const Transition& t, std::size_t index) {
    const bool keyed = t.trigger == OutcomeTag::Command || t.trigger == OutcomeTag::ChoiceSelected;
    if (t.key && !keyed) {
      report("UnexpectedTriggerKey", from.id, edge_name(t) + ": outcome takes no key", index);
    }
    switch (from.kind) {
      case NodeKind::Activity: {
        if (!from.aiu) return;
        const auto& aiu = *from.aiu;
        auto legal = legal_outcomes(aiu.kind);
        bool ok = is_aiu_outcome(t.trigger) && legal.count(t.trigger) > 0;
        if (t.trigger == OutcomeTag::Ok && !aiu.ok_button) ok = false;
        if (!ok) {
          report("IllegalTrigger", from.id,
                 edge_name(t) + ": " + std::string(to_string(aiu.kind)) + " never returns '" +
                     std::string(to_string(t.trigger)) + "'",
                 index);
          return;
        }
        if (t.key && keyed) {
          bool known = false;
          if (t.trigger == OutcomeTag::Command) {
            known = std::count(aiu.browsing_commands.begin(), aiu.browsing_commands.end(), *t.key);
          } else if (aiu.choices) {
            for (const auto& c : *aiu.choices) known = known || c.key == *t.key;
          }
          if (!known) {
            report("UnknownTriggerKey", from.id, edge_name(t) + ": no such command or choice",
                   index);
          }
        }
        for (const auto& b : t.bindings) {
          auto var = spec_.variables.find(b.variable);
          if (var == spec_.variables.end()) {
            report("UnknownVariable", from.id, "binding targets undeclared '" + b.variable + "'",
                   index);
            continue;
          }
          auto type = selector_type(aiu, t.trigger, b.selector);
          if (!type) {
            report("InvalidBinding", from.id,
                   edge_name(t) + ": selector '" + b.selector + "' does not apply", index);
          } else if (*type != var->second) {
            report("BindingTypeMismatch", from.id,
                   "selector '" + b.selector + "' yields " + std::string(to_string(*type)) +
                       " but '" + b.variable + "' is " + std::string(to_string(var->second)),
                   index);
          }
        }
        return;
      }
      case NodeKind::Decision:
        if (t.trigger != OutcomeTag::GuardTrue && t.trigger != OutcomeTag::GuardFalse) {
          report("IllegalTrigger", from.id, edge_name(t) + ": decisions branch on true/false",
                 index);
        }
        break;
      case NodeKind::Start:
      case NodeKind::Fork:
      case NodeKind::Join:
        if (t.trigger != OutcomeTag::Completion) {
          report("IllegalTrigger", from.id,
                 edge_name(t) + ": control nodes leave on completion", index);
        }
        break;
      case NodeKind::Final:
        return;  // reported by check_arity
    }
    if (!t.bindings.empty()) {
      report("InvalidBinding", from.id, edge_name(t) + ": only AIU outcomes carry bindings",
             index);
    }
  }

  void check_arity(const Node& node, const std::vector<std::size_t>& edges) {
    auto count = [&](OutcomeTag tag) {
      return std::count_if(edges.begin(), edges.end(),
                           [&](std::size_t e) { return spec_.transitions[e].trigger == tag; });
    };
    switch (node.kind) {
      case NodeKind::Start:
      case NodeKind::Join:
        if (edges.size() != 1) {
          report("ControlArity", node.id,
                 std::string(to_string(node.kind)) + " node needs exactly one outgoing edge");
        }
        break;
      case NodeKind::Fork:
        if (edges.size() < 2) {
          report("ControlArity", node.id, "fork needs at least two outgoing edges");
        }
        break;
      case NodeKind::Decision:
        if (count(OutcomeTag::GuardTrue) != 1 || count(OutcomeTag::GuardFalse) != 1) {
          report("ControlArity", node.id, "decision needs exactly one true and one false edge");
        }
        break;
      case NodeKind::Final:
        if (!edges.empty()) report("FinalHasSuccessor", node.id, "final node has outgoing edges");
        break;
      case NodeKind::Activity:
        break;
    }
  }

  void check_reads(const Node& node) {
    if (node.guard && node.guard->expr) {
      for (const auto& var : guard_variables(*node.guard->expr)) {
        if (!spec_.variables.count(var)) {
          report("UnknownVariable", node.id, "guard reads undeclared '" + var + "'");
        }
      }
      for (const auto& problem : guard_type_errors(*node.guard->expr, spec_.variables)) {
        report("GuardTypeMismatch", node.id, problem);
      }
    }
    for (const auto& var : payload_reads(node)) {
      if (!spec_.variables.count(var)) {
        report("UnknownVariable", node.id, "template references undeclared '" + var + "'");
      }
    }
  }

  static std::vector<std::string> payload_reads(const Node& node) {
    std::vector<std::string> out;
    if (!node.aiu) return out;
    auto add = [&](std::string_view text) {
      for (auto& v : template_variables(text)) out.push_back(std::move(v));
    };
    add(node.aiu->description.name);
    add(node.aiu->description.summary);
    if (node.aiu->text_body) add(*node.aiu->text_body);
    return out;
  }

  // -------------------------------------------------------------------------
  // Pass 2: outcome closure, fork/join structure, reachability.
  // -------------------------------------------------------------------------

  void check_flow(const FlowGraph& graph) {
    for (std::size_t i = 0; i < spec_.transitions.size(); ++i) {
      const auto& t = spec_.transitions[i];
      if (t.trigger == OutcomeTag::Command && t.from != t.to) {
        report("NonSelfBrowsingCommand", t.from,
               edge_name(t) + ": browsing commands must be self-transitions", i);
      }
    }

    for (const auto& node : spec_.nodes) {
      if (node.kind == NodeKind::Activity) check_outcomes(graph, node);
    }

    for (const auto& [id, region] : graph.forks()) {
      if (!region.matched) report("UnmatchedFork", id, region.problem);
    }
    for (const auto& id : graph.orphan_joins()) {
      report("UnmatchedJoin", id, "no fork branch reconverges at this join");
    }

    auto reachable = graph.reachable_from(spec_.start);
    for (const auto& node : spec_.nodes) {
      if (!reachable.count(node.id)) {
        report("UnreachableNode", node.id, "not reachable from '" + spec_.start + "'");
      }
    }

    std::set<std::string> reaches_final;
    std::deque<std::string> queue(spec_.finals.begin(), spec_.finals.end());
    while (!queue.empty()) {
      auto id = queue.front();
      queue.pop_front();
      if (!reaches_final.insert(id).second) continue;
      for (auto e : graph.incoming(id)) queue.push_back(spec_.transitions[e].from);
    }
    for (const auto& node : spec_.nodes) {
      if (!reaches_final.count(node.id)) {
        report("NoPathToFinal", node.id, "no final node is reachable from here");
      }
    }
  }

  void check_outcomes(const FlowGraph& graph, const Node& node) {
    const auto& aiu = *node.aiu;
    auto expect = [&](OutcomeTag tag, const std::string& key) {
      auto found = graph.lookup(node.id, tag, key);
      std::string what = std::string(to_string(tag)) + (key.empty() ? "" : " '" + key + "'");
      if (found.kind == LookupKind::Missing) {
        report("UnhandledOutcome", node.id, "no transition handles " + what);
      } else if (found.kind == LookupKind::Ambiguous) {
        report("AmbiguousTransition", node.id, "several transitions handle " + what);
      }
    };
    for (auto tag : legal_outcomes(aiu.kind)) {
      switch (tag) {
        case OutcomeTag::Command:
          for (const auto& cmd : aiu.browsing_commands) expect(tag, cmd);
          break;
        case OutcomeTag::ChoiceSelected:
          for (const auto& c : *aiu.choices) expect(tag, c.key);
          break;
        case OutcomeTag::Ok:
          if (aiu.ok_button) expect(tag, "");
          break;
        default:
          expect(tag, "");
          break;
      }
    }
  }

  // -------------------------------------------------------------------------
  // Pass 3: every variable read is bound on every path reaching the read.
  //
  // Forward must-analysis. A join takes the union over branches of the
  // intersection within each branch, since all branches complete before it
  // fires. Quit back-edges only revisit completed nodes, whose environment is
  // a superset of the first visit, so they are ignored.
  // -------------------------------------------------------------------------

  void check_bindings(const FlowGraph& graph) {
    VarSet universe;
    for (const auto& [name, type] : spec_.variables) universe.insert(name);

    std::map<std::string, VarSet> bound_in;
    for (const auto& node : spec_.nodes) bound_in[node.id] = universe;
    bound_in[spec_.start] = {};

    auto edge_out = [&](std::size_t e) {
      const auto& t = spec_.transitions[e];
      VarSet out = bound_in[t.from];
      const Node* from = graph.node(t.from);
      for (const auto& b : t.bindings) {
        if (from && from->aiu && definite(*from->aiu, b.selector)) out.insert(b.variable);
      }
      return out;
    };
    auto intersect = [](VarSet& acc, const VarSet& other) {
      VarSet next;
      std::set_intersection(acc.begin(), acc.end(), other.begin(), other.end(),
                            std::inserter(next, next.begin()));
      acc = std::move(next);
    };

    for (bool changed = true; changed;) {
      changed = false;
      for (const auto& node : spec_.nodes) {
        if (node.id == spec_.start) continue;
        const auto& incoming = graph.incoming(node.id);
        if (incoming.empty()) continue;
        VarSet next;
        const ForkRegion* region =
            node.kind == NodeKind::Join ? graph.fork_of_join(node.id) : nullptr;
        if (region != nullptr) {
          std::vector<std::optional<VarSet>> per_branch(region->branch_edges.size());
          for (auto e : incoming) {
            auto b = graph.join_branch(node.id, e);
            if (!b) continue;
            auto out = edge_out(e);
            if (per_branch[*b]) {
              intersect(*per_branch[*b], out);
            } else {
              per_branch[*b] = std::move(out);
            }
          }
          for (const auto& branch : per_branch) {
            if (branch) next.insert(branch->begin(), branch->end());
          }
        } else {
          next = universe;
          for (auto e : incoming) {
            if (spec_.transitions[e].from == node.id) continue;
            intersect(next, edge_out(e));
          }
        }
        if (next != bound_in[node.id]) {
          bound_in[node.id] = std::move(next);
          changed = true;
        }
      }
    }

    for (const auto& node : spec_.nodes) {
      VarSet reads;
      if (node.guard && node.guard->expr) reads = guard_variables(*node.guard->expr);
      for (auto& v : payload_reads(node)) reads.insert(std::move(v));
      for (const auto& var : reads) {
        if (!bound_in[node.id].count(var)) {
          report("UnboundVariable", node.id,
                 "'" + var + "' is not bound on every path reaching this node");
        }
      }
    }
  }

  // Optional fields may be left empty, so they do not definitely bind.
  static bool definite(const AiuInstance& aiu, const std::string& selector) {
    if (selector.rfind("field.", 0) == 0 && aiu.fields) {
      auto name = selector.substr(6);
      for (const auto& f : *aiu.fields) {
        if (f.name == name) return f.required;
      }
    }
    return true;
  }

  const ServiceSpec& spec_;
  std::vector<Diagnostic> out_;
};

}  // namespace

std::vector<Diagnostic> validate_spec(const ServiceSpec& spec) { return Validator(spec).run(); }

std::vector<Diagnostic> diagnose_source(std::string_view source) {
  try {
    return validate_spec(parse_spec(source));
  } catch (const ParseError& e) {
    return {Diagnostic{Severity::Error, e.code(), "", std::nullopt, e.what()}};
  }
}

std::string format_diagnostic(const Diagnostic& d) {
  std::string out = d.severity == Severity::Error ? "error" : "warning";
  out += " [" + d.code + "]";
  if (!d.node.empty()) out += " " + d.node;
  if (d.transition) out += " (transition " + std::to_string(*d.transition) + ")";
  out += ": " + d.message;
  return out;
}

}  // namespace aiuflow
