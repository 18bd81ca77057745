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
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include "aiuflow/metrics.hpp"
#include "aiuflow/model.hpp"

namespace aiuflow {

namespace decision {
/// Shown as declared. With horizontal_scroll the page is wider than the
/// device and the renderer adds scroll commands.
struct Direct {
  bool horizontal_scroll = false;
  bool operator==(const Direct&) const = default;
};
/// Overview of a column subset plus a per-row detail command.
struct TwoStepTable {
  std::vector<std::string> overview_columns;
  std::string detail_command = "details";
  bool operator==(const TwoStepTable&) const = default;
};
/// Description summary instead of the body.
struct SummaryOnly {
  bool operator==(const SummaryOnly&) const = default;
};
struct Reject {
  std::string reason;
  bool operator==(const Reject&) const = default;
};
}  // namespace decision

/// Width handling and vertical pagination compose: a two-step table may also
/// be paginated, as in the 40-row, 105-column hotel list on a 14x30 handheld.
struct AdaptationDecision {
  enum class Kind { Direct, PaginateVertical, TwoStepTable, SummaryOnly, Reject };

  std::variant<decision::Direct, decision::TwoStepTable, decision::SummaryOnly, decision::Reject>
      presentation;
  std::optional<int> pages;  // set when vertical pagination is planned

  /// Direct with pages reports as PaginateVertical.
  Kind kind() const;
  bool operator==(const AdaptationDecision&) const = default;
};

std::string_view to_string(AdaptationDecision::Kind kind);

enum class ForkLayoutKind { Merged, Sequenced };

struct ForkLayout {
  ForkLayoutKind kind = ForkLayoutKind::Merged;
  std::vector<std::string> order;

  bool operator==(const ForkLayout&) const = default;
};

struct AdaptationPlan {
  std::map<std::string, AdaptationDecision> per_node;
  std::map<std::string, ForkLayout> per_fork;
  std::string device;
  Thresholds thresholds;

  bool operator==(const AdaptationPlan&) const = default;
};

struct CommandButton {
  std::string id;
  std::string label;

  bool operator==(const CommandButton&) const = default;
};

/// Commands a page for `aiu` under `d` carries, before page navigation:
/// browsing commands, OK, details, horizontal scroll, then Quit.
std::vector<CommandButton> page_commands(const AiuInstance& aiu, const AdaptationDecision& d);

/// Table-like footprint used for planning. Text kinds count wrapped lines at
/// the device width as rows; image kinds occupy one placeholder row.
AiuMetrics layout_metrics(const AiuInstance& aiu, const DeviceProfile& device);

/// Throws Error{"NoColumnFits"} when propagated from column selection.
AdaptationDecision plan_aiu(const AiuInstance& aiu, const DeviceProfile& device,
                            const Thresholds& thresholds);

/// Greedy by ascending priority, ties in declaration order: admit a column
/// when the running width with separators stays within `budget`. Returns
/// names in declaration order. Throws Error{"NoColumnFits"}.
std::vector<std::string> select_overview_columns(const TableContent& table, int budget);

ForkLayout plan_fork(const std::vector<std::pair<std::string, AiuMetrics>>& branches,
                     const DeviceProfile& device, const Thresholds& thresholds);

/// Throws Error{"PlanError"} naming the node whose table admits no column.
AdaptationPlan plan_service(const ServiceSpec& spec, const DeviceProfile& device,
                            const Thresholds& thresholds);

std::string serialize_plan(const AdaptationPlan& plan);

}  // namespace aiuflow
