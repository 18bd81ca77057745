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

#include "aiuflow/metrics.hpp"

#include <algorithm>

#include "aiuflow/spec_io.hpp"
#include "json_codec.hpp"

namespace aiuflow {
namespace {

bool is_continuation(unsigned char c) { return (c & 0xC0) == 0x80; }

int list_width(const AiuInstance& aiu) {
  int width = 0;
  if (aiu.fields) {
    for (const auto& f : *aiu.fields) width = std::max(width, display_width(f.label));
  }
  if (aiu.choices) {
    for (const auto& c : *aiu.choices) width = std::max(width, display_width(c.label));
  }
  return width;
}

int list_rows(const AiuInstance& aiu) {
  if (aiu.fields) return static_cast<int>(aiu.fields->size());
  if (aiu.choices) return static_cast<int>(aiu.choices->size());
  return 0;
}

}  // namespace

AiuMetrics measure_aiu(const AiuInstance& aiu) {
  AiuMetrics m;
  if (is_image_kind(aiu.kind)) {
    throw Error("ImageKindUnsupported",
                std::string(to_string(aiu.kind)) + " has no text/table metrics");
  }
  if (is_text_kind(aiu.kind)) {
    m.chn = display_width(aiu.text_body.value_or(""));
    return m;
  }
  if (is_table_kind(aiu.kind)) {
    const auto& table = *aiu.table;
    std::vector<std::size_t> all(table.columns.size());
    for (std::size_t i = 0; i < all.size(); ++i) all[i] = i;
    m.rn = static_cast<int>(table.rows.size()) + 1;
    m.cn = columns_width(table, all);
    return m;
  }
  m.rn = list_rows(aiu) + 1;
  m.cn = list_width(aiu);
  return m;
}

DegradationReport degradation(const AiuMetrics& m, const DeviceProfile& d) {
  DegradationReport r;
  if (d.rvs) r.vertical_row_scrolls = m.rn;
  if (d.pvs) r.vertical_page_scrolls = ceil_div(m.rn, d.rn);
  if (d.cohs) r.horizontal_col_scrolls = m.cn;
  if (d.phs) r.horizontal_page_scrolls = ceil_div(m.cn, d.cn);
  r.fits_width = m.cn <= d.cn;
  r.fits_height = m.rn <= d.rn;
  return r;
}

Thresholds default_thresholds() { return Thresholds{50, 10, 10, 3, 2000}; }

bool vertical_acceptable(const DegradationReport& r, const Thresholds& t) {
  return (r.vertical_row_scrolls && *r.vertical_row_scrolls <= t.max_row_scrolls) ||
         (r.vertical_page_scrolls && *r.vertical_page_scrolls <= t.max_page_scrolls);
}

bool horizontal_acceptable(const DegradationReport& r, const Thresholds& t) {
  return (r.horizontal_col_scrolls && *r.horizontal_col_scrolls <= t.max_col_scrolls) ||
         (r.horizontal_page_scrolls && *r.horizontal_page_scrolls <= t.max_hpage_scrolls);
}

int display_width(std::string_view text) {
  int cells = 0;
  for (char c : text) {
    if (!is_continuation(static_cast<unsigned char>(c))) ++cells;
  }
  return cells;
}

std::string clip(std::string_view text, int cells) {
  if (cells <= 0) return {};
  int seen = 0;
  for (std::size_t i = 0; i < text.size(); ++i) {
    if (!is_continuation(static_cast<unsigned char>(text[i]))) {
      if (seen == cells) return std::string(text.substr(0, i));
      ++seen;
    }
  }
  return std::string(text);
}

std::vector<std::string> wrap_text(std::string_view text, int width) {
  std::vector<std::string> lines;
  if (text.empty() || width <= 0) return lines;
  std::size_t begin = 0;
  while (begin <= text.size()) {
    auto end = text.find('\n', begin);
    auto para = text.substr(begin, end == std::string_view::npos ? std::string_view::npos
                                                                 : end - begin);
    if (para.empty()) lines.emplace_back();
    while (!para.empty()) {
      auto head = clip(para, width);
      para.remove_prefix(head.size());
      lines.push_back(std::move(head));
    }
    if (end == std::string_view::npos) break;
    begin = end + 1;
  }
  return lines;
}

int column_width(const TableContent& table, std::size_t column) {
  const auto& decl = table.columns[column];
  if (decl.width_hint) return *decl.width_hint;
  int width = display_width(decl.label);
  for (const auto& row : table.rows) width = std::max(width, display_width(row[column]));
  return width;
}

int columns_width(const TableContent& table, const std::vector<std::size_t>& columns) {
  if (columns.empty()) return 0;
  int width = static_cast<int>(columns.size()) - 1;
  for (auto c : columns) width += column_width(table, c);
  return width;
}

int command_bar_rows(const std::vector<std::string>& labels, int width) {
  int rows = 0;
  int used = 0;
  for (const auto& label : labels) {
    int w = std::min(display_width(label) + 2, width);
    if (rows == 0 || used + 1 + w > width) {
      ++rows;
      used = w;
    } else {
      used += 1 + w;
    }
  }
  return rows;
}

// ---------------------------------------------------------------------------
// Files
// ---------------------------------------------------------------------------

namespace codec {

json device_to_json(const DeviceProfile& d) {
  json out = json::object();
  out["id"] = d.id;
  out["rn"] = d.rn;
  out["cn"] = d.cn;
  out["cvs"] = d.cvs;
  out["rvs"] = d.rvs;
  out["pvs"] = d.pvs;
  out["cnhs"] = d.cnhs;
  out["cohs"] = d.cohs;
  out["phs"] = d.phs;
  out["we"] = d.we;
  out["je"] = d.je;
  out["aa"] = d.aa;
  out["cd"] = d.cd;
  out["tsa"] = d.tsa;
  if (!d.comment.empty()) out["comment"] = d.comment;
  return out;
}

DeviceProfile device_from_json(const json& doc) {
  ObjectReader r(doc, "");
  r.only_keys({"id", "rn", "cn", "cvs", "rvs", "pvs", "cnhs", "cohs", "phs", "we", "je", "aa", "cd",
               "tsa", "comment"});
  DeviceProfile d;
  d.id = r.string("id");
  if (d.id.empty()) r.fail("id", "device id must not be empty");
  auto positive = [&](std::string_view key) {
    auto v = r.integer(key);
    if (v < 1 || v > 1'000'000) r.fail(key, "must be a positive integer");
    return static_cast<int>(v);
  };
  d.rn = positive("rn");
  d.cn = positive("cn");
  d.cd = positive("cd");
  d.cvs = r.boolean("cvs");
  d.rvs = r.boolean("rvs");
  d.pvs = r.boolean("pvs");
  d.cnhs = r.boolean("cnhs");
  d.cohs = r.boolean("cohs");
  d.phs = r.boolean("phs");
  d.we = r.boolean("we");
  d.je = r.boolean("je");
  d.aa = r.boolean("aa");
  d.tsa = r.boolean("tsa");
  d.comment = r.optional_string("comment").value_or("");
  return d;
}

json thresholds_to_json(const Thresholds& t) {
  json out = json::object();
  out["maxRowScrolls"] = t.max_row_scrolls;
  out["maxPageScrolls"] = t.max_page_scrolls;
  out["maxColScrolls"] = t.max_col_scrolls;
  out["maxHPageScrolls"] = t.max_hpage_scrolls;
  out["maxCharsDirect"] = t.max_chars_direct;
  return out;
}

Thresholds thresholds_from_json(const json& doc) {
  ObjectReader r(doc, "");
  r.only_keys({"maxRowScrolls", "maxPageScrolls", "maxColScrolls", "maxHPageScrolls",
               "maxCharsDirect"});
  Thresholds t = default_thresholds();
  auto read = [&](std::string_view key, int& slot) {
    if (auto v = r.optional_integer(key)) {
      if (*v < 1 || *v > 1'000'000'000) r.fail(key, "threshold must be positive");
      slot = static_cast<int>(*v);
    }
  };
  read("maxRowScrolls", t.max_row_scrolls);
  read("maxPageScrolls", t.max_page_scrolls);
  read("maxColScrolls", t.max_col_scrolls);
  read("maxHPageScrolls", t.max_hpage_scrolls);
  read("maxCharsDirect", t.max_chars_direct);
  return t;
}

json metrics_to_json(const AiuMetrics& m) {
  json out = json::object();
  out["rn"] = m.rn;
  out["cn"] = m.cn;
  out["chn"] = m.chn;
  return out;
}

json degradation_to_json(const DegradationReport& r) {
  auto count = [](const ScrollCount& c) { return c ? json(*c) : json("Unavailable"); };
  json out = json::object();
  out["verticalRowScrolls"] = count(r.vertical_row_scrolls);
  out["verticalPageScrolls"] = count(r.vertical_page_scrolls);
  out["horizontalColScrolls"] = count(r.horizontal_col_scrolls);
  out["horizontalPageScrolls"] = count(r.horizontal_page_scrolls);
  out["fitsWidth"] = r.fits_width;
  out["fitsHeight"] = r.fits_height;
  return out;
}

}  // namespace codec

DeviceProfile parse_device(std::string_view source) {
  return codec::device_from_json(codec::parse_document(source));
}

std::string serialize_device(const DeviceProfile& device) {
  return codec::device_to_json(device).dump(2) + "\n";
}

DeviceProfile load_device_file(const std::filesystem::path& path) {
  return parse_device(read_text_file(path));
}

Thresholds parse_thresholds(std::string_view source) {
  return codec::thresholds_from_json(codec::parse_document(source));
}

std::string serialize_thresholds(const Thresholds& thresholds) {
  return codec::thresholds_to_json(thresholds).dump(2) + "\n";
}

Thresholds load_thresholds_file(const std::filesystem::path& path) {
  return parse_thresholds(read_text_file(path));
}

}  // namespace aiuflow
