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

#include "aiuflow/model.hpp"

#include <array>
#include <charconv>
#include <cstdio>
#include <utility>

namespace aiuflow {
namespace {

template <typename Enum, std::size_t N>
std::optional<Enum> lookup(const std::array<std::pair<Enum, std::string_view>, N>& table,
                           std::string_view name) {
  for (const auto& [value, text] : table) {
    if (text == name) return value;
  }
  return std::nullopt;
}

template <typename Enum, std::size_t N>
std::string_view name_of(const std::array<std::pair<Enum, std::string_view>, N>& table,
                         Enum value) {
  for (const auto& [v, text] : table) {
    if (v == value) return text;
  }
  return "?";
}

constexpr std::array<std::pair<AiuKind, std::string_view>, 9> kAiuKindNames{{
    {AiuKind::BrowseImage, "BrowseImage"},
    {AiuKind::InteractImage, "InteractImage"},
    {AiuKind::BrowseText, "BrowseText"},
    {AiuKind::BrowseMessage, "BrowseMessage"},
    {AiuKind::BrowseTable, "BrowseTable"},
    {AiuKind::InteractTable, "InteractTable"},
    {AiuKind::FillList, "FillList"},
    {AiuKind::SelectChoice, "SelectChoice"},
    {AiuKind::SelectMultipleChoice, "SelectMultipleChoice"},
}};

constexpr std::array<std::pair<ValueType, std::string_view>, 3> kValueTypeNames{{
    {ValueType::Text, "text"},
    {ValueType::Integer, "integer"},
    {ValueType::Date, "date"},
}};

constexpr std::array<std::pair<OutcomeTag, std::string_view>, 11> kOutcomeTagNames{{
    {OutcomeTag::Null, "null"},
    {OutcomeTag::Ok, "ok"},
    {OutcomeTag::Command, "command"},
    {OutcomeTag::Point, "point"},
    {OutcomeTag::TupleSelected, "tupleSelected"},
    {OutcomeTag::FilledFields, "filledFields"},
    {OutcomeTag::ChoiceSelected, "choiceSelected"},
    {OutcomeTag::ChoicesSelected, "choicesSelected"},
    {OutcomeTag::Completion, "completion"},
    {OutcomeTag::GuardTrue, "true"},
    {OutcomeTag::GuardFalse, "false"},
}};

constexpr std::array<std::pair<NodeKind, std::string_view>, 6> kNodeKindNames{{
    {NodeKind::Activity, "activity"},
    {NodeKind::Fork, "fork"},
    {NodeKind::Join, "join"},
    {NodeKind::Decision, "decision"},
    {NodeKind::Start, "start"},
    {NodeKind::Final, "final"},
}};

bool is_leap(int year) { return (year % 4 == 0 && year % 100 != 0) || year % 400 == 0; }

int days_in_month(int year, int month) {
  static constexpr int kDays[] = {31, 28, 31, 30, 31, 30, 31, 31, 30, 31, 30, 31};
  if (month == 2 && is_leap(year)) return 29;
  return kDays[month - 1];
}

std::optional<int> parse_digits(std::string_view text) {
  int value = 0;
  auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
  if (ec != std::errc() || ptr != text.data() + text.size()) return std::nullopt;
  return value;
}

}  // namespace

std::string_view to_string(AiuKind kind) { return name_of(kAiuKindNames, kind); }
std::optional<AiuKind> aiu_kind_from_string(std::string_view name) {
  return lookup(kAiuKindNames, name);
}

bool is_image_kind(AiuKind kind) {
  return kind == AiuKind::BrowseImage || kind == AiuKind::InteractImage;
}
bool is_text_kind(AiuKind kind) {
  return kind == AiuKind::BrowseText || kind == AiuKind::BrowseMessage;
}
bool is_table_kind(AiuKind kind) {
  return kind == AiuKind::BrowseTable || kind == AiuKind::InteractTable;
}
bool is_list_kind(AiuKind kind) {
  return kind == AiuKind::FillList || kind == AiuKind::SelectChoice ||
         kind == AiuKind::SelectMultipleChoice;
}
bool has_browsing_commands(AiuKind kind) {
  return is_image_kind(kind) || is_table_kind(kind) || kind == AiuKind::BrowseText;
}

std::string_view to_string(ValueType type) { return name_of(kValueTypeNames, type); }
std::optional<ValueType> value_type_from_string(std::string_view name) {
  return lookup(kValueTypeNames, name);
}

ValueType type_of(const Value& value) { return static_cast<ValueType>(value.index()); }

std::string format_value(const Value& value) {
  if (const auto* s = std::get_if<std::string>(&value)) return *s;
  if (const auto* i = std::get_if<std::int64_t>(&value)) return std::to_string(*i);
  const auto& d = std::get<Date>(value);
  char buf[16];
  std::snprintf(buf, sizeof buf, "%04d-%02d-%02d", d.year, d.month, d.day);
  return buf;
}

std::optional<Value> parse_value(ValueType type, std::string_view text) {
  switch (type) {
    case ValueType::Text:
      return Value{std::string(text)};
    case ValueType::Integer: {
      std::int64_t v = 0;
      auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), v);
      if (text.empty() || ec != std::errc() || ptr != text.data() + text.size()) {
        return std::nullopt;
      }
      return Value{v};
    }
    case ValueType::Date: {
      if (text.size() != 10 || text[4] != '-' || text[7] != '-') return std::nullopt;
      auto y = parse_digits(text.substr(0, 4));
      auto m = parse_digits(text.substr(5, 2));
      auto d = parse_digits(text.substr(8, 2));
      if (!y || !m || !d || *m < 1 || *m > 12 || *d < 1 || *d > days_in_month(*y, *m)) {
        return std::nullopt;
      }
      return Value{Date{*y, *m, *d}};
    }
  }
  return std::nullopt;
}

std::string_view to_string(OutcomeTag tag) { return name_of(kOutcomeTagNames, tag); }
std::optional<OutcomeTag> outcome_tag_from_string(std::string_view name) {
  return lookup(kOutcomeTagNames, name);
}
bool is_aiu_outcome(OutcomeTag tag) {
  return tag != OutcomeTag::Completion && tag != OutcomeTag::GuardTrue &&
         tag != OutcomeTag::GuardFalse;
}

OutcomeTag tag_of(const Outcome& outcome) { return static_cast<OutcomeTag>(outcome.index()); }

std::string key_of(const Outcome& outcome) {
  if (const auto* c = std::get_if<outcome::Command>(&outcome)) return c->id;
  if (const auto* c = std::get_if<outcome::ChoiceSelected>(&outcome)) return c->key;
  return {};
}

std::string_view to_string(NodeKind kind) { return name_of(kNodeKindNames, kind); }
std::optional<NodeKind> node_kind_from_string(std::string_view name) {
  return lookup(kNodeKindNames, name);
}

const Node* ServiceSpec::find_node(std::string_view id) const {
  for (const auto& node : nodes) {
    if (node.id == id) return &node;
  }
  return nullptr;
}

std::set<OutcomeTag> legal_outcomes(AiuKind kind) {
  switch (kind) {
    case AiuKind::BrowseImage:
    case AiuKind::BrowseText:
    case AiuKind::BrowseTable:
      return {OutcomeTag::Null, OutcomeTag::Command};
    case AiuKind::InteractImage:
      return {OutcomeTag::Null, OutcomeTag::Command, OutcomeTag::Point};
    case AiuKind::InteractTable:
      return {OutcomeTag::Null, OutcomeTag::Command, OutcomeTag::TupleSelected};
    case AiuKind::BrowseMessage:
      return {OutcomeTag::Null, OutcomeTag::Ok};
    case AiuKind::FillList:
      return {OutcomeTag::Null, OutcomeTag::FilledFields};
    case AiuKind::SelectChoice:
      return {OutcomeTag::Null, OutcomeTag::ChoiceSelected};
    case AiuKind::SelectMultipleChoice:
      return {OutcomeTag::Null, OutcomeTag::ChoicesSelected};
  }
  return {OutcomeTag::Null};
}

namespace {

template <typename Fn>
void scan_template(std::string_view text, Fn&& on_reference) {
  std::size_t pos = 0;
  while (pos < text.size()) {
    auto open = text.find("${", pos);
    if (open == std::string_view::npos) break;
    auto close = text.find('}', open + 2);
    if (close == std::string_view::npos) break;
    on_reference(open, close, text.substr(open + 2, close - open - 2));
    pos = close + 1;
  }
}

}  // namespace

std::vector<std::string> template_variables(std::string_view text) {
  std::vector<std::string> out;
  scan_template(text, [&](std::size_t, std::size_t, std::string_view name) {
    if (!name.empty()) out.emplace_back(name);
  });
  return out;
}

std::string expand_template(std::string_view text, const std::map<std::string, Value>& env) {
  std::string out;
  std::size_t copied = 0;
  scan_template(text, [&](std::size_t open, std::size_t close, std::string_view name) {
    auto it = env.find(std::string(name));
    if (it == env.end()) return;
    out.append(text.substr(copied, open - copied));
    out += format_value(it->second);
    copied = close + 1;
  });
  out.append(text.substr(copied));
  return out;
}

std::optional<ValueType> selector_type(const AiuInstance& aiu, OutcomeTag tag,
                                       std::string_view selector) {
  switch (tag) {
    case OutcomeTag::Command:
      if (selector == "key") return ValueType::Text;
      break;
    case OutcomeTag::ChoiceSelected:
      if (selector == "key" || selector == "label") return ValueType::Text;
      break;
    case OutcomeTag::ChoicesSelected:
      if (selector == "keys") return ValueType::Text;
      break;
    case OutcomeTag::Point:
      if (selector == "x" || selector == "y") return ValueType::Integer;
      break;
    case OutcomeTag::TupleSelected:
      if (selector == "row") return ValueType::Integer;
      if (selector.rfind("cell.", 0) == 0 && aiu.table) {
        auto column = selector.substr(5);
        for (const auto& c : aiu.table->columns) {
          if (c.name == column) return ValueType::Text;
        }
      }
      break;
    case OutcomeTag::FilledFields:
      if (selector.rfind("field.", 0) == 0 && aiu.fields) {
        auto name = selector.substr(6);
        for (const auto& f : *aiu.fields) {
          if (f.name == name) return f.value_type;
        }
      }
      break;
    default:
      break;
  }
  return std::nullopt;
}

}  // namespace aiuflow
