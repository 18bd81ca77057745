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

#include "aiuflow/adapt.hpp"

#include <algorithm>
#include <numeric>

#include "aiuflow/errors.hpp"
#include "json_codec.hpp"

namespace aiuflow {
namespace {

// Title row on every page.
constexpr int kTitleRows = 1;

const std::vector<CommandButton> kPageNavigation = {{"prev-page", "prev-page"},
                                                    {"next-page", "next-page"}};

std::vector<std::string> labels_of(const std::vector<CommandButton>& commands) {
  std::vector<std::string> out;
  for (const auto& c : commands) out.push_back(c.label);
  return out;
}

// Rows left for content on a page of a multi-page layout.
int content_capacity(const std::vector<CommandButton>& commands, const DeviceProfile& d) {
  auto labels = labels_of(commands);
  for (const auto& nav : kPageNavigation) labels.push_back(nav.label);
  return d.rn - kTitleRows - command_bar_rows(labels, d.cn);
}

std::string describe(const char* axis, int needed, int available) {
  return std::string(axis) + ": needs " + std::to_string(needed) + ", device shows " +
         std::to_string(available) + " and no scrolling mechanism is within threshold";
}

}  // namespace

AdaptationDecision::Kind AdaptationDecision::kind() const {
  switch (presentation.index()) {
    case 0: return pages ? Kind::PaginateVertical : Kind::Direct;
    case 1: return Kind::TwoStepTable;
    case 2: return Kind::SummaryOnly;
    default: return Kind::Reject;
  }
}

std::string_view to_string(AdaptationDecision::Kind kind) {
  switch (kind) {
    case AdaptationDecision::Kind::Direct: return "Direct";
    case AdaptationDecision::Kind::PaginateVertical: return "PaginateVertical";
    case AdaptationDecision::Kind::TwoStepTable: return "TwoStepTable";
    case AdaptationDecision::Kind::SummaryOnly: return "SummaryOnly";
    case AdaptationDecision::Kind::Reject: return "Reject";
  }
  return "?";
}

std::vector<CommandButton> page_commands(const AiuInstance& aiu, const AdaptationDecision& d) {
  std::vector<CommandButton> out;
  for (const auto& cmd : aiu.browsing_commands) out.push_back({cmd, cmd});
  if (aiu.kind == AiuKind::BrowseMessage && aiu.ok_button) out.push_back({"ok", "OK"});
  if (const auto* two = std::get_if<decision::TwoStepTable>(&d.presentation)) {
    out.push_back({two->detail_command, two->detail_command});
  }
  if (const auto* direct = std::get_if<decision::Direct>(&d.presentation);
      direct && direct->horizontal_scroll) {
    out.push_back({"scroll-left", "scroll-left"});
    out.push_back({"scroll-right", "scroll-right"});
  }
  out.push_back({"quit", "Quit"});
  return out;
}

AiuMetrics layout_metrics(const AiuInstance& aiu, const DeviceProfile& device) {
  if (is_image_kind(aiu.kind)) return AiuMetrics{1, 0, 0};
  if (is_text_kind(aiu.kind)) {
    auto lines = wrap_text(aiu.text_body.value_or(""), device.cn);
    int width = 0;
    for (const auto& line : lines) width = std::max(width, display_width(line));
    return AiuMetrics{static_cast<int>(lines.size()), width, 0};
  }
  return measure_aiu(aiu);
}

std::vector<std::string> select_overview_columns(const TableContent& table, int budget) {
  std::vector<std::size_t> order(table.columns.size());
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    return table.columns[a].priority < table.columns[b].priority;
  });
  if (order.empty() || column_width(table, order.front()) > budget) {
    throw Error("NoColumnFits", "no column fits within " + std::to_string(budget) + " cells");
  }
  std::vector<std::size_t> admitted;
  int width = -1;  // the first column needs no separator
  for (auto c : order) {
    int next = width + 1 + column_width(table, c);
    if (next <= budget) {
      admitted.push_back(c);
      width = next;
    }
  }
  std::sort(admitted.begin(), admitted.end());
  std::vector<std::string> names;
  for (auto c : admitted) names.push_back(table.columns[c].name);
  return names;
}

AdaptationDecision plan_aiu(const AiuInstance& aiu, const DeviceProfile& d, const Thresholds& t) {
  AdaptationDecision out;
  if (is_image_kind(aiu.kind)) return out;

  const AiuMetrics m = layout_metrics(aiu, d);
  const DegradationReport deg = degradation(m, d);

  if (!deg.fits_width) {
    if (horizontal_acceptable(deg, t)) {
      out.presentation = decision::Direct{true};
    } else if (is_table_kind(aiu.kind)) {
      out.presentation = decision::TwoStepTable{select_overview_columns(*aiu.table, d.cn)};
    } else {
      out.presentation = decision::Reject{describe("width", m.cn, d.cn)};
      return out;
    }
  }

  if (!deg.fits_height) {
    if (vertical_acceptable(deg, t)) {
      out.pages = ceil_div(m.rn, d.rn);
    } else if (aiu.kind == AiuKind::BrowseText &&
               display_width(aiu.text_body.value_or("")) > t.max_chars_direct) {
      out.presentation = decision::SummaryOnly{};
    } else {
      out.presentation = decision::Reject{describe("height", m.rn, d.rn)};
      return out;
    }
  }

  // The page chrome (title plus command bar) must leave room for at least
  // one unit of content: a header and one row for tables, one line otherwise.
  int capacity = content_capacity(page_commands(aiu, out), d);
  int needed = is_table_kind(aiu.kind) && !aiu.table->rows.empty() ? 2 : 1;
  bool detail_fits = true;
  if (std::holds_alternative<decision::TwoStepTable>(out.presentation)) {
    detail_fits = content_capacity({{"back", "back"}, {"quit", "Quit"}}, d) >= 1;
  }
  if (capacity < needed || !detail_fits) {
    out.presentation = decision::Reject{"device too small: " + std::to_string(d.rn) +
                                        " rows leave no room for content beside the commands"};
    out.pages.reset();
  }
  return out;
}

ForkLayout plan_fork(const std::vector<std::pair<std::string, AiuMetrics>>& branches,
                     const DeviceProfile& d, const Thresholds& t) {
  ForkLayout layout;
  for (const auto& [id, m] : branches) layout.order.push_back(id);
  if (branches.size() <= 1) return layout;

  AiuMetrics stacked;
  stacked.rn = static_cast<int>(branches.size()) - 1;  // separators
  for (const auto& [id, m] : branches) {
    stacked.rn += m.rn;
    stacked.cn = std::max(stacked.cn, m.cn);
  }
  auto deg = degradation(stacked, d);
  bool merged = deg.fits_width && (deg.fits_height || vertical_acceptable(deg, t));
  layout.kind = merged ? ForkLayoutKind::Merged : ForkLayoutKind::Sequenced;
  return layout;
}

AdaptationPlan plan_service(const ServiceSpec& spec, const DeviceProfile& d, const Thresholds& t) {
  AdaptationPlan plan;
  plan.device = d.id;
  plan.thresholds = t;
  for (const auto& node : spec.nodes) {
    if (node.kind != NodeKind::Activity || !node.aiu) continue;
    try {
      plan.per_node[node.id] = plan_aiu(*node.aiu, d, t);
    } catch (const Error& e) {
      throw Error("PlanError", node.id + ": " + e.what());
    }
  }
  for (const auto& node : spec.nodes) {
    if (node.kind != NodeKind::Fork) continue;
    std::vector<std::pair<std::string, AiuMetrics>> branches;
    bool all_activities = true;
    for (const auto& tr : spec.transitions) {
      if (tr.from != node.id) continue;
      const Node* head = spec.find_node(tr.to);
      if (head == nullptr || !head->aiu) {
        all_activities = false;
        continue;
      }
      branches.emplace_back(head->id, layout_metrics(*head->aiu, d));
    }
    ForkLayout layout = plan_fork(branches, d, t);
    if (!all_activities) layout.kind = ForkLayoutKind::Sequenced;
    plan.per_fork[node.id] = std::move(layout);
  }
  return plan;
}

namespace codec {

json decision_to_json(const AdaptationDecision& d) {
  json out = json::object();
  out["kind"] = std::string(to_string(d.kind()));
  std::visit(
      [&](const auto& p) {
        using T = std::decay_t<decltype(p)>;
        if constexpr (std::is_same_v<T, decision::Direct>) {
          out["horizontalScroll"] = p.horizontal_scroll;
        } else if constexpr (std::is_same_v<T, decision::TwoStepTable>) {
          out["overviewColumns"] = p.overview_columns;
          out["detailCommand"] = p.detail_command;
        } else if constexpr (std::is_same_v<T, decision::Reject>) {
          out["reason"] = p.reason;
        }
      },
      d.presentation);
  if (d.pages) out["pages"] = *d.pages;
  return out;
}

json layout_to_json(const ForkLayout& layout) {
  json out = json::object();
  out["layout"] = layout.kind == ForkLayoutKind::Merged ? "Merged" : "Sequenced";
  out["order"] = layout.order;
  return out;
}

json plan_to_json(const AdaptationPlan& plan) {
  json out = json::object();
  out["device"] = plan.device;
  out["thresholds"] = thresholds_to_json(plan.thresholds);
  json nodes = json::object();
  for (const auto& [id, d] : plan.per_node) nodes[id] = decision_to_json(d);
  out["nodes"] = std::move(nodes);
  json forks = json::object();
  for (const auto& [id, layout] : plan.per_fork) forks[id] = layout_to_json(layout);
  out["forks"] = std::move(forks);
  return out;
}

}  // namespace codec

std::string serialize_plan(const AdaptationPlan& plan) {
  return codec::plan_to_json(plan).dump(2) + "\n";
}

}  // namespace aiuflow
