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

#include <compare>
#include <cstdint>
#include <map>
#include <memory>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

namespace aiuflow {

// ---------------------------------------------------------------------------
// Atomic interaction units
// ---------------------------------------------------------------------------

enum class AiuKind {
  BrowseImage,
  InteractImage,
  BrowseText,
  BrowseMessage,
  BrowseTable,
  InteractTable,
  FillList,
  SelectChoice,
  SelectMultipleChoice,
};

inline constexpr AiuKind kAllAiuKinds[] = {
    AiuKind::BrowseImage,   AiuKind::InteractImage, AiuKind::BrowseText,
    AiuKind::BrowseMessage, AiuKind::BrowseTable,   AiuKind::InteractTable,
    AiuKind::FillList,      AiuKind::SelectChoice,  AiuKind::SelectMultipleChoice,
};

std::string_view to_string(AiuKind kind);
std::optional<AiuKind> aiu_kind_from_string(std::string_view name);

bool is_image_kind(AiuKind kind);
bool is_text_kind(AiuKind kind);   // BrowseText, BrowseMessage
bool is_table_kind(AiuKind kind);  // BrowseTable, InteractTable
bool is_list_kind(AiuKind kind);   // FillList, SelectChoice, SelectMultipleChoice
bool has_browsing_commands(AiuKind kind);

enum class ValueType { Text, Integer, Date };

std::string_view to_string(ValueType type);
std::optional<ValueType> value_type_from_string(std::string_view name);

struct Date {
  int year = 0;
  int month = 0;
  int day = 0;

  auto operator<=>(const Date&) const = default;
};

/// A typed runtime value. The alternative index follows ValueType.
using Value = std::variant<std::string, std::int64_t, Date>;

ValueType type_of(const Value& value);
std::string format_value(const Value& value);
/// Parses user input for `type`. Dates are ISO "YYYY-MM-DD" calendar dates.
std::optional<Value> parse_value(ValueType type, std::string_view text);

struct Description {
  std::string name;
  std::string summary;

  bool operator==(const Description&) const = default;
};

struct FieldDecl {
  std::string name;
  std::string label;
  ValueType value_type = ValueType::Text;
  bool required = false;

  bool operator==(const FieldDecl&) const = default;
};

struct ChoiceDecl {
  std::string key;
  std::string label;

  bool operator==(const ChoiceDecl&) const = default;
};

struct ColumnDecl {
  std::string name;
  std::string label;
  int priority = 0;  // lower is more important
  std::optional<int> width_hint;

  bool operator==(const ColumnDecl&) const = default;
};

struct TableContent {
  std::vector<ColumnDecl> columns;
  std::vector<std::vector<std::string>> rows;

  bool operator==(const TableContent&) const = default;
};

/// One AIU occurrence. Only the payload members legal for `kind` are engaged;
/// the reader enforces this.
struct AiuInstance {
  std::string id;
  AiuKind kind = AiuKind::BrowseMessage;
  Description description;
  std::vector<std::string> browsing_commands;
  bool ok_button = false;
  std::optional<std::vector<FieldDecl>> fields;
  std::optional<std::vector<ChoiceDecl>> choices;
  std::optional<TableContent> table;
  std::optional<std::string> text_body;
  std::optional<std::string> image_ref;

  bool operator==(const AiuInstance&) const = default;
};

// ---------------------------------------------------------------------------
// Outcomes
// ---------------------------------------------------------------------------

/// Trigger tags. The first eight are AIU outcomes; the last three fire
/// transitions out of control nodes.
enum class OutcomeTag {
  Null,
  Ok,
  Command,
  Point,
  TupleSelected,
  FilledFields,
  ChoiceSelected,
  ChoicesSelected,
  Completion,
  GuardTrue,
  GuardFalse,
};

std::string_view to_string(OutcomeTag tag);
std::optional<OutcomeTag> outcome_tag_from_string(std::string_view name);
bool is_aiu_outcome(OutcomeTag tag);

namespace outcome {
struct Quit {
  bool operator==(const Quit&) const = default;
};
struct Ok {
  bool operator==(const Ok&) const = default;
};
struct Command {
  std::string id;
  bool operator==(const Command&) const = default;
};
struct Point {
  std::int64_t x = 0;
  std::int64_t y = 0;
  bool operator==(const Point&) const = default;
};
struct TupleSelected {
  std::size_t row = 0;
  bool operator==(const TupleSelected&) const = default;
};
struct FilledFields {
  std::map<std::string, std::string> values;
  bool operator==(const FilledFields&) const = default;
};
struct ChoiceSelected {
  std::string key;
  bool operator==(const ChoiceSelected&) const = default;
};
struct ChoicesSelected {
  std::set<std::string> keys;
  bool operator==(const ChoicesSelected&) const = default;
};
}  // namespace outcome

using Outcome = std::variant<outcome::Quit, outcome::Ok, outcome::Command, outcome::Point,
                             outcome::TupleSelected, outcome::FilledFields,
                             outcome::ChoiceSelected, outcome::ChoicesSelected>;

OutcomeTag tag_of(const Outcome& outcome);
/// Command id or choice key; empty for other outcomes.
std::string key_of(const Outcome& outcome);

// ---------------------------------------------------------------------------
// Activity diagram
// ---------------------------------------------------------------------------

struct GuardExpr;  // guard.hpp

/// A decision-node guard. Equality compares the source text.
struct Guard {
  std::string source;
  std::shared_ptr<const GuardExpr> expr;

  bool operator==(const Guard& other) const { return source == other.source; }
};

enum class NodeKind { Activity, Fork, Join, Decision, Start, Final };

std::string_view to_string(NodeKind kind);
std::optional<NodeKind> node_kind_from_string(std::string_view name);

struct Node {
  std::string id;
  NodeKind kind = NodeKind::Activity;
  std::optional<AiuInstance> aiu;  // activity nodes only
  std::optional<Guard> guard;      // decision nodes only

  bool operator==(const Node&) const = default;
};

/// `variable <- selector`. Selectors: key, keys, label, row, x, y,
/// cell.<column>, field.<name>.
struct Binding {
  std::string variable;
  std::string selector;

  bool operator==(const Binding&) const = default;
};

struct Transition {
  std::string from;
  std::string to;
  OutcomeTag trigger = OutcomeTag::Completion;
  std::optional<std::string> key;
  std::vector<Binding> bindings;

  bool operator==(const Transition&) const = default;
};

struct ServiceSpec {
  std::string name;
  std::map<std::string, ValueType> variables;
  std::vector<Node> nodes;
  std::vector<Transition> transitions;
  std::string start;
  std::vector<std::string> finals;

  bool operator==(const ServiceSpec&) const = default;

  const Node* find_node(std::string_view id) const;
};

// ---------------------------------------------------------------------------
// Contracts shared by the validator and the engine
// ---------------------------------------------------------------------------

/// The outcome tags an AIU kind can return. Every kind admits Null (Quit).
std::set<OutcomeTag> legal_outcomes(AiuKind kind);

/// Variables referenced as ${name} in a text template, in order of appearance.
std::vector<std::string> template_variables(std::string_view text);

/// Replaces ${name} with the bound value; unbound references are left as-is.
std::string expand_template(std::string_view text, const std::map<std::string, Value>& env);

/// Value type a binding selector yields for outcomes tagged `tag` leaving
/// `aiu`, or nullopt when the selector does not apply to that outcome.
std::optional<ValueType> selector_type(const AiuInstance& aiu, OutcomeTag tag,
                                       std::string_view selector);

}  // namespace aiuflow
