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

#include "aiuflow/render.hpp"

#include <algorithm>
#include <sstream>

#include "aiuflow/errors.hpp"
#include "json_codec.hpp"

namespace aiuflow {
namespace {

const CommandButton kPrev{"prev-page", "prev-page"};
const CommandButton kNext{"next-page", "next-page"};
const CommandButton kBack{"back", "back"};
const CommandButton kQuit{"quit", "Quit"};

struct Content {
  std::string node_id;
  std::string title;
  std::vector<Widget> widgets;
  std::vector<CommandButton> commands;  // without page navigation
};

std::vector<std::string> labels_of(const std::vector<CommandButton>& commands) {
  std::vector<std::string> out;
  for (const auto& c : commands) out.push_back(c.label);
  return out;
}

int bar_rows(std::vector<CommandButton> commands, int width, bool prev, bool next) {
  if (prev) commands.push_back(kPrev);
  if (next) commands.push_back(kNext);
  return command_bar_rows(labels_of(commands), width);
}

Widget text_widget(const std::string& node_id, std::vector<std::string> lines) {
  return Widget{node_id, widget::TextBlock{std::move(lines)}};
}

widget::Table project_table(const TableContent& table, const std::vector<std::size_t>& columns,
                            bool selectable) {
  widget::Table out;
  out.selectable = selectable;
  for (auto c : columns) {
    out.header.push_back(table.columns[c].label);
    out.widths.push_back(column_width(table, c));
  }
  for (std::size_t r = 0; r < table.rows.size(); ++r) {
    std::vector<std::string> cells;
    for (auto c : columns) cells.push_back(table.rows[r][c]);
    out.rows.push_back(std::move(cells));
    out.row_indices.push_back(r);
  }
  return out;
}

std::vector<std::size_t> column_indices(const TableContent& table,
                                        const std::vector<std::string>* names) {
  std::vector<std::size_t> out;
  for (std::size_t c = 0; c < table.columns.size(); ++c) {
    if (names == nullptr ||
        std::find(names->begin(), names->end(), table.columns[c].name) != names->end()) {
      out.push_back(c);
    }
  }
  return out;
}

Content content_of(const Node& node, const AdaptationDecision& decision, const DeviceProfile& d,
                   const Env& env) {
  if (!node.aiu) throw Error("LayoutError", node.id + " is not an activity node");
  const AiuInstance& aiu = *node.aiu;
  Content c;
  c.node_id = node.id;
  c.title = expand_template(aiu.description.name, env);
  c.commands = page_commands(aiu, decision);

  if (const auto* reject = std::get_if<decision::Reject>(&decision.presentation)) {
    c.widgets.push_back(
        text_widget(node.id, wrap_text("Unavailable on this device: " + reject->reason, d.cn)));
    return c;
  }
  if (std::holds_alternative<decision::SummaryOnly>(decision.presentation)) {
    c.widgets.push_back(
        text_widget(node.id, wrap_text(expand_template(aiu.description.summary, env), d.cn)));
    return c;
  }

  switch (aiu.kind) {
    case AiuKind::BrowseImage:
    case AiuKind::InteractImage:
      c.widgets.push_back(Widget{
          node.id, widget::ImagePlaceholder{aiu.image_ref.value_or(""), aiu.description.summary}});
      break;
    case AiuKind::BrowseText:
    case AiuKind::BrowseMessage:
      c.widgets.push_back(
          text_widget(node.id, wrap_text(expand_template(aiu.text_body.value_or(""), env), d.cn)));
      break;
    case AiuKind::BrowseTable:
    case AiuKind::InteractTable: {
      const auto* two = std::get_if<decision::TwoStepTable>(&decision.presentation);
      auto columns = column_indices(*aiu.table, two ? &two->overview_columns : nullptr);
      c.widgets.push_back(Widget{
          node.id, project_table(*aiu.table, columns, aiu.kind == AiuKind::InteractTable)});
      break;
    }
    case AiuKind::FillList:
      for (const auto& f : *aiu.fields) {
        c.widgets.push_back(
            Widget{node.id, widget::InputField{f.name, f.label, f.value_type, f.required}});
      }
      break;
    case AiuKind::SelectChoice:
    case AiuKind::SelectMultipleChoice:
      c.widgets.push_back(Widget{
          node.id, widget::ChoiceList{*aiu.choices, aiu.kind == AiuKind::SelectMultipleChoice}});
      break;
  }
  return c;
}

// Splits widgets into pages of at most `capacity` rows. Tables repeat their
// header on every page and need room for the header plus one row.
std::vector<std::vector<Widget>> paginate(const std::vector<Widget>& widgets, int capacity) {
  std::vector<std::vector<Widget>> pages(1);
  int used = 0;
  auto new_page = [&] {
    pages.emplace_back();
    used = 0;
  };

  for (const auto& w : widgets) {
    if (const auto* text = std::get_if<widget::TextBlock>(&w.body)) {
      std::size_t i = 0;
      if (text->lines.empty()) pages.back().push_back(w);
      while (i < text->lines.size()) {
        if (used >= capacity) new_page();
        std::size_t take = std::min<std::size_t>(capacity - used, text->lines.size() - i);
        widget::TextBlock chunk{{text->lines.begin() + i, text->lines.begin() + i + take}};
        pages.back().push_back(Widget{w.node_id, std::move(chunk)});
        used += static_cast<int>(take);
        i += take;
      }
    } else if (const auto* table = std::get_if<widget::Table>(&w.body)) {
      std::size_t i = 0;
      do {
        int need = table->rows.empty() ? 1 : 2;
        if (capacity - used < need) new_page();
        std::size_t take = std::min<std::size_t>(capacity - used - 1, table->rows.size() - i);
        widget::Table chunk = *table;
        chunk.rows.assign(table->rows.begin() + i, table->rows.begin() + i + take);
        chunk.row_indices.assign(table->row_indices.begin() + i,
                                 table->row_indices.begin() + i + take);
        pages.back().push_back(Widget{w.node_id, std::move(chunk)});
        used += 1 + static_cast<int>(take);
        i += take;
      } while (i < table->rows.size());
    } else if (const auto* list = std::get_if<widget::ChoiceList>(&w.body)) {
      std::size_t i = 0;
      do {
        if (used >= capacity) new_page();
        std::size_t take = std::min<std::size_t>(capacity - used, list->items.size() - i);
        widget::ChoiceList chunk{{list->items.begin() + i, list->items.begin() + i + take},
                                 list->multiple};
        pages.back().push_back(Widget{w.node_id, std::move(chunk)});
        used += static_cast<int>(take);
        i += take;
      } while (i < list->items.size());
    } else {
      if (used >= capacity) new_page();
      pages.back().push_back(w);
      used += 1;
    }
  }
  return pages;
}

int content_rows(const std::vector<Widget>& widgets) {
  int rows = 0;
  for (const auto& w : widgets) rows += widget_rows(w);
  return rows;
}

int minimum_unit(const std::vector<Widget>& widgets) {
  int unit = 1;
  for (const auto& w : widgets) {
    if (const auto* t = std::get_if<widget::Table>(&w.body); t && !t->rows.empty()) unit = 2;
  }
  return unit;
}

std::vector<ConcretePage> layout(const Content& content, const DeviceProfile& d) {
  const int single = d.rn - 1 - bar_rows(content.commands, d.cn, false, false);
  std::vector<std::vector<Widget>> chunks;
  if (single >= content_rows(content.widgets)) {
    chunks.push_back(content.widgets);
  } else {
    const int capacity = d.rn - 1 - bar_rows(content.commands, d.cn, true, true);
    if (capacity < minimum_unit(content.widgets)) {
      throw Error("LayoutError", content.node_id + ": " + std::to_string(d.rn) + "x" +
                                     std::to_string(d.cn) +
                                     " device leaves no room for content beside the commands");
    }
    chunks = paginate(content.widgets, capacity);
  }

  std::vector<ConcretePage> pages;
  const int count = static_cast<int>(chunks.size());
  for (int i = 0; i < count; ++i) {
    ConcretePage p;
    p.node_id = content.node_id;
    p.title = content.title;
    p.widgets = std::move(chunks[i]);
    p.commands = content.commands;
    if (i > 0) p.commands.push_back(kPrev);
    if (i + 1 < count) p.commands.push_back(kNext);
    p.page_index = i + 1;
    p.page_count = count;
    p.columns = d.cn;
    p.rows = d.rn;
    pages.push_back(std::move(p));
  }
  return pages;
}

ConcretePage pick(std::vector<ConcretePage> pages, int page) {
  if (page < 1 || page > static_cast<int>(pages.size())) {
    throw Error("PageOutOfRange", "page " + std::to_string(page) + " of " +
                                      std::to_string(pages.size()));
  }
  return std::move(pages[page - 1]);
}

Content composite_content(const std::vector<const Node*>& nodes,
                          const std::vector<AdaptationDecision>& decisions,
                          const DeviceProfile& d, const Env& env) {
  if (nodes.empty() || nodes.size() != decisions.size()) {
    throw Error("LayoutError", "composite page needs one decision per node");
  }
  Content out;
  out.node_id = nodes.front()->id;
  for (std::size_t i = 0; i < nodes.size(); ++i) {
    Content part = content_of(*nodes[i], decisions[i], d, env);
    if (i > 0) {
      out.title += " / ";
      out.widgets.push_back(text_widget(part.node_id, {std::string(d.cn, '-')}));
    }
    out.title += part.title;
    for (auto& w : part.widgets) out.widgets.push_back(std::move(w));
    for (const auto& cmd : part.commands) {
      if (cmd == kQuit) continue;
      if (std::find(out.commands.begin(), out.commands.end(), cmd) == out.commands.end()) {
        out.commands.push_back(cmd);
      }
    }
  }
  out.commands.push_back(kQuit);
  return out;
}

std::string pad(const std::string& text, int width) {
  std::string out = clip(text, width);
  out.append(static_cast<std::size_t>(std::max(0, width - display_width(out))), ' ');
  return out;
}

std::string rtrim(std::string s) {
  while (!s.empty() && s.back() == ' ') s.pop_back();
  return s;
}

std::string table_line(const std::vector<std::string>& cells, const std::vector<int>& widths) {
  std::string line;
  for (std::size_t i = 0; i < cells.size(); ++i) {
    if (i > 0) line += ' ';
    line += pad(cells[i], widths[i]);
  }
  return rtrim(line);
}

std::string field_line(const widget::InputField& f) {
  return f.label + (f.required ? "*" : "") + ": ____";
}

std::string choice_line(const ChoiceDecl& c, bool multiple) {
  return std::string(multiple ? "[ ] " : "( ) ") + c.label;
}

std::vector<std::string> widget_lines(const Widget& w) {
  std::vector<std::string> lines;
  std::visit(
      [&](const auto& body) {
        using T = std::decay_t<decltype(body)>;
        if constexpr (std::is_same_v<T, widget::TextBlock>) {
          lines = body.lines;
        } else if constexpr (std::is_same_v<T, widget::Table>) {
          lines.push_back(table_line(body.header, body.widths));
          for (const auto& row : body.rows) lines.push_back(table_line(row, body.widths));
        } else if constexpr (std::is_same_v<T, widget::InputField>) {
          lines.push_back(field_line(body));
        } else if constexpr (std::is_same_v<T, widget::ChoiceList>) {
          for (const auto& item : body.items) lines.push_back(choice_line(item, body.multiple));
        } else {
          lines.push_back("[image: " + body.ref + "]");
        }
      },
      w.body);
  return lines;
}

std::vector<std::string> command_lines(const std::vector<CommandButton>& commands, int width) {
  std::vector<std::string> lines;
  for (const auto& c : commands) {
    std::string token = width >= 2 ? "[" + clip(c.label, width - 2) + "]" : clip("[", width);
    if (lines.empty() || display_width(lines.back()) + 1 + display_width(token) > width) {
      lines.push_back(token);
    } else {
      lines.back() += " " + token;
    }
  }
  return lines;
}

std::string title_line(const ConcretePage& page) {
  if (page.page_count <= 1) return clip(page.title, page.columns);
  std::string marker = " " + std::to_string(page.page_index) + "/" +
                       std::to_string(page.page_count);
  int room = page.columns - display_width(marker);
  if (room < 1) return clip(page.title, page.columns);
  return clip(page.title, room) + marker;
}

std::string escape_html(std::string_view text) {
  std::string out;
  for (char c : text) {
    switch (c) {
      case '&': out += "&amp;"; break;
      case '<': out += "&lt;"; break;
      case '>': out += "&gt;"; break;
      case '"': out += "&quot;"; break;
      default: out += c;
    }
  }
  return out;
}

}  // namespace

int widget_rows(const Widget& w) {
  return std::visit(
      [](const auto& body) -> int {
        using T = std::decay_t<decltype(body)>;
        if constexpr (std::is_same_v<T, widget::TextBlock>) {
          return static_cast<int>(body.lines.size());
        } else if constexpr (std::is_same_v<T, widget::Table>) {
          return 1 + static_cast<int>(body.rows.size());
        } else if constexpr (std::is_same_v<T, widget::ChoiceList>) {
          return static_cast<int>(body.items.size());
        } else {
          return 1;
        }
      },
      w.body);
}

std::vector<ConcretePage> render_pages(const Node& node, const AdaptationDecision& decision,
                                       const DeviceProfile& d, const Env& env) {
  return layout(content_of(node, decision, d, env), d);
}

ConcretePage render_page(const Node& node, const AdaptationDecision& decision,
                         const DeviceProfile& d, int page, const Env& env) {
  return pick(render_pages(node, decision, d, env), page);
}

std::vector<ConcretePage> render_composite_pages(const std::vector<const Node*>& nodes,
                                                 const std::vector<AdaptationDecision>& decisions,
                                                 const DeviceProfile& d, const Env& env) {
  return layout(composite_content(nodes, decisions, d, env), d);
}

ConcretePage render_composite(const std::vector<const Node*>& nodes,
                              const std::vector<AdaptationDecision>& decisions,
                              const DeviceProfile& d, int page, const Env& env) {
  return pick(render_composite_pages(nodes, decisions, d, env), page);
}

std::vector<ConcretePage> render_detail_pages(const Node& node, std::size_t row,
                                              const DeviceProfile& d) {
  if (!node.aiu || !node.aiu->table) {
    throw Error("LayoutError", node.id + " does not host a table");
  }
  const TableContent& table = *node.aiu->table;
  if (row >= table.rows.size()) {
    throw Error("RowOutOfRange", "row " + std::to_string(row) + " of " +
                                     std::to_string(table.rows.size()));
  }
  Content c;
  c.node_id = node.id;
  c.title = node.aiu->description.name;
  c.commands = {kBack, kQuit};
  std::vector<std::string> lines;
  for (std::size_t col = 0; col < table.columns.size(); ++col) {
    auto wrapped = wrap_text(table.columns[col].label + ": " + table.rows[row][col], d.cn);
    lines.insert(lines.end(), wrapped.begin(), wrapped.end());
  }
  c.widgets.push_back(text_widget(node.id, std::move(lines)));
  return layout(c, d);
}

ConcretePage render_detail(const Node& node, std::size_t row, const DeviceProfile& d, int page) {
  return pick(render_detail_pages(node, row, d), page);
}

std::string emit_text(const ConcretePage& page) {
  std::vector<std::string> lines;
  lines.push_back(title_line(page));
  for (const auto& w : page.widgets) {
    for (auto& line : widget_lines(w)) lines.push_back(clip(line, page.columns));
  }
  for (auto& line : command_lines(page.commands, page.columns)) lines.push_back(std::move(line));
  std::string out;
  for (const auto& line : lines) out += line + "\n";
  return out;
}

std::string emit_html(const ConcretePage& page) {
  std::ostringstream out;
  out << "<!DOCTYPE html>\n<html>\n<head>\n<meta charset=\"utf-8\">\n<title>"
      << escape_html(page.title) << "</title>\n</head>\n<body>\n"
      << "<main class=\"aiu-page\" data-node=\"" << escape_html(page.node_id)
      << "\" data-page=\"" << page.page_index << "\" data-pages=\"" << page.page_count
      << "\" data-rows=\"" << page.rows << "\" data-columns=\"" << page.columns << "\">\n"
      << "<h1>" << escape_html(page.title) << "</h1>\n";
  for (std::size_t i = 0; i < page.widgets.size(); ++i) {
    const Widget& w = page.widgets[i];
    std::string id = "aiu-" + escape_html(w.node_id) + "-" + std::to_string(i);
    std::visit(
        [&](const auto& body) {
          using T = std::decay_t<decltype(body)>;
          if constexpr (std::is_same_v<T, widget::TextBlock>) {
            out << "<pre id=\"" << id << "\" class=\"text\">";
            for (std::size_t l = 0; l < body.lines.size(); ++l) {
              out << (l ? "\n" : "") << escape_html(body.lines[l]);
            }
            out << "</pre>\n";
          } else if constexpr (std::is_same_v<T, widget::Table>) {
            out << "<table id=\"" << id << "\" class=\"table"
                << (body.selectable ? " selectable" : "") << "\">\n<tr>";
            for (const auto& h : body.header) out << "<th>" << escape_html(h) << "</th>";
            out << "</tr>\n";
            for (std::size_t r = 0; r < body.rows.size(); ++r) {
              out << "<tr data-row=\"" << body.row_indices[r] << "\">";
              for (const auto& cell : body.rows[r]) out << "<td>" << escape_html(cell) << "</td>";
              out << "</tr>\n";
            }
            out << "</table>\n";
          } else if constexpr (std::is_same_v<T, widget::InputField>) {
            out << "<label id=\"" << id << "\" class=\"field\">" << escape_html(body.label)
                << " <input name=\"" << escape_html(body.name) << "\" data-type=\""
                << to_string(body.value_type) << "\"" << (body.required ? " required" : "")
                << "></label>\n";
          } else if constexpr (std::is_same_v<T, widget::ChoiceList>) {
            out << "<ul id=\"" << id << "\" class=\"choices"
                << (body.multiple ? " multiple" : "") << "\">\n";
            for (const auto& item : body.items) {
              out << "<li data-key=\"" << escape_html(item.key) << "\">"
                  << escape_html(item.label) << "</li>\n";
            }
            out << "</ul>\n";
          } else {
            out << "<figure id=\"" << id << "\" class=\"image\" data-ref=\""
                << escape_html(body.ref) << "\"><figcaption>" << escape_html(body.summary)
                << "</figcaption></figure>\n";
          }
        },
        w.body);
  }
  out << "<nav>\n";
  for (const auto& c : page.commands) {
    out << "<button data-command=\"" << escape_html(c.id) << "\">" << escape_html(c.label)
        << "</button>\n";
  }
  out << "</nav>\n</main>\n</body>\n</html>\n";
  return out.str();
}

namespace codec {

json page_to_json(const ConcretePage& page) {
  json out = json::object();
  out["node"] = page.node_id;
  out["title"] = page.title;
  out["pageIndex"] = page.page_index;
  out["pageCount"] = page.page_count;
  out["rows"] = page.rows;
  out["columns"] = page.columns;
  json widgets = json::array();
  for (const auto& w : page.widgets) {
    json item = json::object();
    std::visit(
        [&](const auto& body) {
          using T = std::decay_t<decltype(body)>;
          if constexpr (std::is_same_v<T, widget::TextBlock>) {
            item["type"] = "text";
            item["node"] = w.node_id;
            item["lines"] = body.lines;
          } else if constexpr (std::is_same_v<T, widget::Table>) {
            item["type"] = "table";
            item["node"] = w.node_id;
            item["header"] = body.header;
            item["widths"] = body.widths;
            item["rows"] = body.rows;
            item["rowIndices"] = body.row_indices;
            item["selectable"] = body.selectable;
          } else if constexpr (std::is_same_v<T, widget::InputField>) {
            item["type"] = "field";
            item["node"] = w.node_id;
            item["name"] = body.name;
            item["label"] = body.label;
            item["valueType"] = std::string(to_string(body.value_type));
            item["required"] = body.required;
          } else if constexpr (std::is_same_v<T, widget::ChoiceList>) {
            item["type"] = "choices";
            item["node"] = w.node_id;
            json items = json::array();
            for (const auto& c : body.items) items.push_back({{"key", c.key}, {"label", c.label}});
            item["items"] = std::move(items);
            item["multiple"] = body.multiple;
          } else {
            item["type"] = "image";
            item["node"] = w.node_id;
            item["ref"] = body.ref;
            item["summary"] = body.summary;
          }
        },
        w.body);
    widgets.push_back(std::move(item));
  }
  out["widgets"] = std::move(widgets);
  json commands = json::array();
  for (const auto& c : page.commands) commands.push_back({{"id", c.id}, {"label", c.label}});
  out["commands"] = std::move(commands);
  return out;
}

}  // namespace codec

std::string serialize_page(const ConcretePage& page) {
  return codec::page_to_json(page).dump(2) + "\n";
}

}  // namespace aiuflow
