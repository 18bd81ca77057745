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

#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "aiuflow/model.hpp"

namespace aiuflow {

/// Device capabilities. Sizes are character cells.
struct DeviceProfile {
  std::string id;
  int rn = 1;         // rows displayable
  int cn = 1;         // columns displayable
  bool cvs = false;   // continuous vertical scroll
  bool rvs = false;   // row-based vertical scroll
  bool pvs = false;   // page-based vertical scroll
  bool cnhs = false;  // continuous horizontal scroll
  bool cohs = false;  // column-based horizontal scroll
  bool phs = false;   // page-based horizontal scroll
  bool we = false;    // WAP enabled
  bool je = false;    // Java enabled
  bool aa = false;    // audio available
  int cd = 1;         // color depth, bits
  bool tsa = false;   // touch screen
  std::string comment;

  bool operator==(const DeviceProfile&) const = default;
};

/// Table-oriented AIUs fill rn/cn, text-oriented ones fill chn.
struct AiuMetrics {
  int rn = 0;
  int cn = 0;
  int chn = 0;

  bool operator==(const AiuMetrics&) const = default;
};

/// nullopt means the device lacks that scrolling mechanism.
using ScrollCount = std::optional<int>;

struct DegradationReport {
  ScrollCount vertical_row_scrolls;
  ScrollCount vertical_page_scrolls;
  ScrollCount horizontal_col_scrolls;
  ScrollCount horizontal_page_scrolls;
  bool fits_width = false;
  bool fits_height = false;

  bool operator==(const DegradationReport&) const = default;
};

struct Thresholds {
  int max_row_scrolls = 50;
  int max_page_scrolls = 10;
  int max_col_scrolls = 10;
  int max_hpage_scrolls = 3;
  int max_chars_direct = 2000;

  bool operator==(const Thresholds&) const = default;
};

/// Tables: rn = data rows + 1 header, cn = column widths + separators.
/// FillList and Select* count as one-column tables (one row per item).
/// Text: chn = characters in the body. Throws Error{"ImageKindUnsupported"}.
AiuMetrics measure_aiu(const AiuInstance& aiu);

DegradationReport degradation(const AiuMetrics& m, const DeviceProfile& d);

Thresholds default_thresholds();

/// Some available vertical mechanism keeps its count within threshold.
bool vertical_acceptable(const DegradationReport& report, const Thresholds& t);
bool horizontal_acceptable(const DegradationReport& report, const Thresholds& t);

/// ceil(a / b) for a >= 0, b >= 1.
constexpr int ceil_div(int a, int b) { return (a + b - 1) / b; }

// ---------------------------------------------------------------------------
// Character-cell arithmetic
// ---------------------------------------------------------------------------

/// Width in cells: one per UTF-8 code point.
int display_width(std::string_view text);
/// First `cells` code points of `text`.
std::string clip(std::string_view text, int cells);
/// Hard wrap at `width` cells, honouring embedded newlines; no hyphenation.
/// An empty text yields no lines.
std::vector<std::string> wrap_text(std::string_view text, int width);

/// Column width: the width hint if present, else the widest of label and cells.
int column_width(const TableContent& table, std::size_t column);
/// Width of the given columns laid side by side with one-cell separators.
int columns_width(const TableContent& table, const std::vector<std::size_t>& columns);

/// Rows needed to lay out "[label]" command buttons, space separated,
/// wrapping greedily at `width`.
int command_bar_rows(const std::vector<std::string>& labels, int width);

// ---------------------------------------------------------------------------
// Files
// ---------------------------------------------------------------------------

/// `.device.json`: keys id, rn, cn, cvs, rvs, pvs, cnhs, cohs, phs, we, je,
/// aa, cd, tsa (all required) plus an optional comment.
DeviceProfile parse_device(std::string_view source);
std::string serialize_device(const DeviceProfile& device);
DeviceProfile load_device_file(const std::filesystem::path& path);

/// Thresholds config: any subset of maxRowScrolls, maxPageScrolls,
/// maxColScrolls, maxHPageScrolls, maxCharsDirect; the rest keep defaults.
Thresholds parse_thresholds(std::string_view source);
std::string serialize_thresholds(const Thresholds& thresholds);
Thresholds load_thresholds_file(const std::filesystem::path& path);

}  // namespace aiuflow
