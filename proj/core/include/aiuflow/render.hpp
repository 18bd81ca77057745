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

#include <cstddef>
#include <map>
#include <string>
#include <variant>
#include <vector>

#include "aiuflow/adapt.hpp"
#include "aiuflow/metrics.hpp"
#include "aiuflow/model.hpp"

namespace aiuflow {

using Env = std::map<std::string, Value>;

namespace widget {
struct TextBlock {
  std::vector<std::string> lines;
  bool operator==(const TextBlock&) const = default;
};
/// `row_indices` are positions in the source table, so a selection on any
/// page maps back to the declared row.
struct Table {
  std::vector<std::string> header;
  std::vector<int> widths;
  std::vector<std::vector<std::string>> rows;
  std::vector<std::size_t> row_indices;
  bool selectable = false;
  bool operator==(const Table&) const = default;
};
struct InputField {
  std::string name;
  std::string label;
  ValueType value_type = ValueType::Text;
  bool required = false;
  bool operator==(const InputField&) const = default;
};
struct ChoiceList {
  std::vector<ChoiceDecl> items;
  bool multiple = false;
  bool operator==(const ChoiceList&) const = default;
};
struct ImagePlaceholder {
  std::string ref;
  std::string summary;
  bool operator==(const ImagePlaceholder&) const = default;
};
}  // namespace widget

struct Widget {
  std::string node_id;  // the activity the widget submits to
  std::variant<widget::TextBlock, widget::Table, widget::InputField, widget::ChoiceList,
               widget::ImagePlaceholder>
      body;

  bool operator==(const Widget&) const = default;
};

/// One screen of output. `columns` and `rows` are the device bounds the page
/// was laid out for; emit_text never exceeds them.
struct ConcretePage {
  std::string node_id;  // first node for composite pages
  std::string title;
  std::vector<Widget> widgets;
  std::vector<CommandButton> commands;
  int page_index = 1;
  int page_count = 1;
  int columns = 1;
  int rows = 1;

  bool operator==(const ConcretePage&) const = default;
};

/// Rows a widget occupies in text output.
int widget_rows(const Widget& w);

/// Page `page` (1-based) of an activity node under `decision`. Templates in
/// titles and text bodies are expanded from `env`. Throws
/// Error{"PageOutOfRange"} and Error{"LayoutError"} when the device cannot
/// hold the page chrome plus one unit of content.
ConcretePage render_page(const Node& node, const AdaptationDecision& decision,
                         const DeviceProfile& d, int page, const Env& env = {});

/// Every page of the node, in order.
std::vector<ConcretePage> render_pages(const Node& node, const AdaptationDecision& decision,
                                       const DeviceProfile& d, const Env& env = {});

/// A merged fork view: branch widgets stacked with a separator row.
/// `nodes` and `decisions` are parallel.
ConcretePage render_composite(const std::vector<const Node*>& nodes,
                              const std::vector<AdaptationDecision>& decisions,
                              const DeviceProfile& d, int page, const Env& env = {});
std::vector<ConcretePage> render_composite_pages(const std::vector<const Node*>& nodes,
                                                 const std::vector<AdaptationDecision>& decisions,
                                                 const DeviceProfile& d, const Env& env = {});

/// "label: value" for every column of one row, wrapped to the device width.
/// Throws Error{"RowOutOfRange"}, Error{"PageOutOfRange"}.
ConcretePage render_detail(const Node& node, std::size_t row, const DeviceProfile& d,
                           int page = 1);
std::vector<ConcretePage> render_detail_pages(const Node& node, std::size_t row,
                                              const DeviceProfile& d);

std::string emit_text(const ConcretePage& page);
std::string emit_html(const ConcretePage& page);

/// Structured page document, the service wire format.
std::string serialize_page(const ConcretePage& page);

}  // namespace aiuflow
