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

#include "aiuflow/spec_io.hpp"

#include <fstream>
#include <set>
#include <sstream>

#include "aiuflow/guard.hpp"
#include "json_codec.hpp"

namespace aiuflow {
namespace codec {

// ---------------------------------------------------------------------------
// Reader plumbing
// ---------------------------------------------------------------------------

json parse_document(std::string_view source) {
  try {
    return json::parse(source.begin(), source.end());
  } catch (const json::parse_error& e) {
    throw ParseError("SyntaxError", "byte " + std::to_string(e.byte), e.what());
  } catch (const json::exception& e) {
    throw ParseError("SyntaxError", "", e.what());
  }
}

void shape_error(const std::string& path, const std::string& message) {
  throw ParseError("SyntaxError", path.empty() ? "/" : path, message);
}

std::string string_at(const json& value, const std::string& path) {
  if (!value.is_string()) shape_error(path, "expected a string");
  return value.get<std::string>();
}

ObjectReader::ObjectReader(const json& value, std::string path)
    : value_(value), path_(std::move(path)) {
  if (!value_.is_object()) shape_error(path_, "expected an object");
}

std::string ObjectReader::child_path(std::string_view key) const {
  return path_ + "/" + std::string(key);
}

void ObjectReader::fail(std::string_view key, const std::string& message) const {
  shape_error(key.empty() ? path_ : child_path(key), message);
}

void ObjectReader::only_keys(std::initializer_list<std::string_view> allowed) const {
  for (const auto& item : value_.items()) {
    bool ok = false;
    for (auto key : allowed) ok = ok || item.key() == key;
    if (!ok) fail(item.key(), "unexpected key");
  }
}

bool ObjectReader::has(std::string_view key) const {
  return value_.find(std::string(key)) != value_.end();
}

const json& ObjectReader::at(std::string_view key) const {
  auto it = value_.find(std::string(key));
  if (it == value_.end()) fail(key, "missing required key");
  return *it;
}

std::string ObjectReader::string(std::string_view key) const {
  return string_at(at(key), child_path(key));
}

std::optional<std::string> ObjectReader::optional_string(std::string_view key) const {
  if (!has(key)) return std::nullopt;
  return string(key);
}

bool ObjectReader::boolean(std::string_view key) const {
  const auto& v = at(key);
  if (!v.is_boolean()) fail(key, "expected a boolean");
  return v.get<bool>();
}

std::optional<bool> ObjectReader::optional_boolean(std::string_view key) const {
  if (!has(key)) return std::nullopt;
  return boolean(key);
}

long long ObjectReader::integer(std::string_view key) const {
  const auto& v = at(key);
  if (!v.is_number_integer()) fail(key, "expected an integer");
  return v.get<long long>();
}

std::optional<long long> ObjectReader::optional_integer(std::string_view key) const {
  if (!has(key)) return std::nullopt;
  return integer(key);
}

const json& ObjectReader::array(std::string_view key) const {
  const auto& v = at(key);
  if (!v.is_array()) fail(key, "expected an array");
  return v;
}

const json& ObjectReader::object(std::string_view key) const {
  const auto& v = at(key);
  if (!v.is_object()) fail(key, "expected an object");
  return v;
}

// ---------------------------------------------------------------------------
// Service spec
// ---------------------------------------------------------------------------

namespace {

void duplicate(const std::string& path, const std::string& what, const std::string& id) {
  throw ParseError("DuplicateId", path, "duplicate " + what + " '" + id + "'");
}

std::string identifier(const ObjectReader& r, std::string_view key) {
  auto value = r.string(key);
  if (value.empty()) r.fail(key, "identifier must not be empty");
  return value;
}

Description read_description(const json& value, const std::string& path) {
  ObjectReader r(value, path);
  r.only_keys({"name", "summary"});
  Description d{r.string("name"), r.optional_string("summary").value_or("")};
  if (d.name.empty()) r.fail("name", "description name must not be empty");
  return d;
}

std::vector<FieldDecl> read_fields(const json& array, const std::string& path) {
  std::vector<FieldDecl> fields;
  std::set<std::string> seen;
  for (std::size_t i = 0; i < array.size(); ++i) {
    ObjectReader r(array[i], path + "/" + std::to_string(i));
    r.only_keys({"name", "label", "type", "required"});
    FieldDecl f;
    f.name = identifier(r, "name");
    f.label = r.optional_string("label").value_or(f.name);
    auto type = r.optional_string("type").value_or("text");
    auto vt = value_type_from_string(type);
    if (!vt) r.fail("type", "unknown value type '" + type + "'");
    f.value_type = *vt;
    f.required = r.optional_boolean("required").value_or(false);
    if (!seen.insert(f.name).second) duplicate(r.path(), "field", f.name);
    fields.push_back(std::move(f));
  }
  return fields;
}

std::vector<ChoiceDecl> read_choices(const json& array, const std::string& path) {
  if (array.empty()) shape_error(path, "choice list must not be empty");
  std::vector<ChoiceDecl> choices;
  std::set<std::string> seen;
  for (std::size_t i = 0; i < array.size(); ++i) {
    ObjectReader r(array[i], path + "/" + std::to_string(i));
    r.only_keys({"key", "label"});
    ChoiceDecl c{identifier(r, "key"), ""};
    c.label = r.optional_string("label").value_or(c.key);
    if (!seen.insert(c.key).second) duplicate(r.path(), "choice", c.key);
    choices.push_back(std::move(c));
  }
  return choices;
}

TableContent read_table(const json& value, const std::string& path) {
  ObjectReader r(value, path);
  r.only_keys({"columns", "rows"});
  TableContent table;
  const auto& columns = r.array("columns");
  if (columns.empty()) r.fail("columns", "a table needs at least one column");
  std::set<std::string> seen;
  for (std::size_t i = 0; i < columns.size(); ++i) {
    ObjectReader c(columns[i], r.child_path("columns") + "/" + std::to_string(i));
    c.only_keys({"name", "label", "priority", "widthHint"});
    ColumnDecl col;
    col.name = identifier(c, "name");
    col.label = c.optional_string("label").value_or(col.name);
    auto priority = c.optional_integer("priority").value_or(0);
    if (priority < 0 || priority > 1'000'000) c.fail("priority", "priority out of range");
    col.priority = static_cast<int>(priority);
    if (auto hint = c.optional_integer("widthHint")) {
      if (*hint < 1 || *hint > 100'000) c.fail("widthHint", "width hint must be positive");
      col.width_hint = static_cast<int>(*hint);
    }
    if (!seen.insert(col.name).second) duplicate(c.path(), "column", col.name);
    table.columns.push_back(std::move(col));
  }
  const auto& rows = r.has("rows") ? r.array("rows") : json::array();
  for (std::size_t i = 0; i < rows.size(); ++i) {
    auto row_path = r.child_path("rows") + "/" + std::to_string(i);
    const auto& row = rows[i];
    if (!row.is_array()) shape_error(row_path, "expected an array of cells");
    if (row.size() != table.columns.size()) {
      shape_error(row_path, "row has " + std::to_string(row.size()) + " cells, expected " +
                                std::to_string(table.columns.size()));
    }
    std::vector<std::string> cells;
    for (std::size_t k = 0; k < row.size(); ++k) {
      cells.push_back(string_at(row[k], row_path + "/" + std::to_string(k)));
    }
    table.rows.push_back(std::move(cells));
  }
  return table;
}

AiuInstance read_aiu(const json& value, const std::string& path) {
  ObjectReader r(value, path);
  auto kind_name = r.string("kind");
  auto kind = aiu_kind_from_string(kind_name);
  if (!kind) throw ParseError("UnknownAiuKind", r.child_path("kind"), "unknown AIU kind '" + kind_name + "'");

  r.only_keys({"kind", "id", "description", "browsingCommands", "okButton", "fields", "choices",
               "table", "textBody", "imageRef"});

  AiuInstance aiu;
  aiu.kind = *kind;
  aiu.id = identifier(r, "id");
  aiu.description = read_description(r.object("description"), r.child_path("description"));

  auto allow = [&](std::string_view key, bool legal) {
    if (!legal && r.has(key)) {
      r.fail(key, "'" + std::string(key) + "' is not legal for " + kind_name);
    }
  };
  allow("browsingCommands", has_browsing_commands(*kind));
  allow("okButton", *kind == AiuKind::BrowseMessage);
  allow("fields", *kind == AiuKind::FillList);
  allow("choices", *kind == AiuKind::SelectChoice || *kind == AiuKind::SelectMultipleChoice);
  allow("table", is_table_kind(*kind));
  allow("textBody", is_text_kind(*kind));
  allow("imageRef", is_image_kind(*kind));

  if (r.has("browsingCommands")) {
    const auto& commands = r.array("browsingCommands");
    std::set<std::string> seen;
    for (std::size_t i = 0; i < commands.size(); ++i) {
      auto cmd_path = r.child_path("browsingCommands") + "/" + std::to_string(i);
      auto cmd = string_at(commands[i], cmd_path);
      if (cmd.empty()) shape_error(cmd_path, "command id must not be empty");
      if (!seen.insert(cmd).second) duplicate(cmd_path, "browsing command", cmd);
      aiu.browsing_commands.push_back(std::move(cmd));
    }
  }
  aiu.ok_button = r.optional_boolean("okButton").value_or(false);

  switch (*kind) {
    case AiuKind::BrowseImage:
    case AiuKind::InteractImage:
      aiu.image_ref = r.string("imageRef");
      break;
    case AiuKind::BrowseText:
    case AiuKind::BrowseMessage:
      aiu.text_body = r.string("textBody");
      break;
    case AiuKind::BrowseTable:
    case AiuKind::InteractTable:
      aiu.table = read_table(r.object("table"), r.child_path("table"));
      break;
    case AiuKind::FillList:
      aiu.fields = read_fields(r.array("fields"), r.child_path("fields"));
      break;
    case AiuKind::SelectChoice:
    case AiuKind::SelectMultipleChoice:
      aiu.choices = read_choices(r.array("choices"), r.child_path("choices"));
      break;
  }
  return aiu;
}

Node read_node(const json& value, const std::string& path) {
  ObjectReader r(value, path);
  r.only_keys({"id", "kind", "aiu", "guard"});
  Node node;
  node.id = identifier(r, "id");
  auto kind_name = r.string("kind");
  auto kind = node_kind_from_string(kind_name);
  if (!kind) r.fail("kind", "unknown node kind '" + kind_name + "'");
  node.kind = *kind;

  if (node.kind == NodeKind::Activity) {
    node.aiu = read_aiu(r.at("aiu"), r.child_path("aiu"));
  } else if (r.has("aiu")) {
    r.fail("aiu", "only activity nodes carry an AIU");
  }
  if (node.kind == NodeKind::Decision) {
    auto source = r.string("guard");
    try {
      node.guard = parse_guard(source);
    } catch (const ParseError& e) {
      throw ParseError("SyntaxError", r.child_path("guard"), e.what());
    }
  } else if (r.has("guard")) {
    r.fail("guard", "only decision nodes carry a guard");
  }
  return node;
}

Transition read_transition(const json& value, const std::string& path) {
  ObjectReader r(value, path);
  r.only_keys({"from", "to", "trigger", "bindings"});
  Transition t;
  t.from = identifier(r, "from");
  t.to = identifier(r, "to");

  ObjectReader trigger(r.object("trigger"), r.child_path("trigger"));
  trigger.only_keys({"outcome", "key"});
  auto tag_name = trigger.string("outcome");
  auto tag = outcome_tag_from_string(tag_name);
  if (!tag) trigger.fail("outcome", "unknown outcome '" + tag_name + "'");
  t.trigger = *tag;
  t.key = trigger.optional_string("key");

  if (r.has("bindings")) {
    const auto& bindings = r.array("bindings");
    for (std::size_t i = 0; i < bindings.size(); ++i) {
      ObjectReader b(bindings[i], r.child_path("bindings") + "/" + std::to_string(i));
      b.only_keys({"variable", "selector"});
      t.bindings.push_back(Binding{identifier(b, "variable"), identifier(b, "selector")});
    }
  }
  return t;
}

json description_to_json(const Description& d) {
  json out = json::object();
  out["name"] = d.name;
  out["summary"] = d.summary;
  return out;
}

json aiu_to_json(const AiuInstance& aiu) {
  json out = json::object();
  out["kind"] = std::string(to_string(aiu.kind));
  out["id"] = aiu.id;
  out["description"] = description_to_json(aiu.description);
  if (!aiu.browsing_commands.empty()) out["browsingCommands"] = aiu.browsing_commands;
  if (aiu.kind == AiuKind::BrowseMessage) out["okButton"] = aiu.ok_button;
  if (aiu.fields) {
    json fields = json::array();
    for (const auto& f : *aiu.fields) {
      json jf = json::object();
      jf["name"] = f.name;
      jf["label"] = f.label;
      jf["type"] = std::string(to_string(f.value_type));
      jf["required"] = f.required;
      fields.push_back(std::move(jf));
    }
    out["fields"] = std::move(fields);
  }
  if (aiu.choices) {
    json choices = json::array();
    for (const auto& c : *aiu.choices) {
      json jc = json::object();
      jc["key"] = c.key;
      jc["label"] = c.label;
      choices.push_back(std::move(jc));
    }
    out["choices"] = std::move(choices);
  }
  if (aiu.table) {
    json columns = json::array();
    for (const auto& c : aiu.table->columns) {
      json jc = json::object();
      jc["name"] = c.name;
      jc["label"] = c.label;
      jc["priority"] = c.priority;
      if (c.width_hint) jc["widthHint"] = *c.width_hint;
      columns.push_back(std::move(jc));
    }
    json table = json::object();
    table["columns"] = std::move(columns);
    table["rows"] = aiu.table->rows;
    out["table"] = std::move(table);
  }
  if (aiu.text_body) out["textBody"] = *aiu.text_body;
  if (aiu.image_ref) out["imageRef"] = *aiu.image_ref;
  return out;
}

}  // namespace

ServiceSpec spec_from_json(const json& doc) {
  ObjectReader r(doc, "");
  r.only_keys({"name", "variables", "nodes", "transitions", "start", "finals"});
  ServiceSpec spec;
  spec.name = r.string("name");

  if (r.has("variables")) {
    const auto& vars = r.object("variables");
    for (const auto& item : vars.items()) {
      auto path = r.child_path("variables") + "/" + item.key();
      auto type_name = string_at(item.value(), path);
      auto type = value_type_from_string(type_name);
      if (!type) shape_error(path, "unknown value type '" + type_name + "'");
      if (item.key().empty()) shape_error(path, "variable name must not be empty");
      spec.variables[item.key()] = *type;
    }
  }

  std::set<std::string> node_ids;
  std::set<std::string> aiu_ids;
  const auto& nodes = r.array("nodes");
  for (std::size_t i = 0; i < nodes.size(); ++i) {
    auto path = r.child_path("nodes") + "/" + std::to_string(i);
    auto node = read_node(nodes[i], path);
    if (!node_ids.insert(node.id).second) duplicate(path + "/id", "node id", node.id);
    if (node.aiu && !aiu_ids.insert(node.aiu->id).second) {
      duplicate(path + "/aiu/id", "AIU id", node.aiu->id);
    }
    spec.nodes.push_back(std::move(node));
  }

  if (r.has("transitions")) {
    const auto& transitions = r.array("transitions");
    for (std::size_t i = 0; i < transitions.size(); ++i) {
      spec.transitions.push_back(
          read_transition(transitions[i], r.child_path("transitions") + "/" + std::to_string(i)));
    }
  }

  // A missing start is a graph defect (MissingStart), not a syntax error.
  spec.start = r.optional_string("start").value_or("");
  if (r.has("finals")) {
    const auto& finals = r.array("finals");
    for (std::size_t i = 0; i < finals.size(); ++i) {
      spec.finals.push_back(string_at(finals[i], r.child_path("finals") + "/" + std::to_string(i)));
    }
  }
  return spec;
}

json spec_to_json(const ServiceSpec& spec) {
  json out = json::object();
  out["name"] = spec.name;
  json vars = json::object();
  for (const auto& [name, type] : spec.variables) vars[name] = std::string(to_string(type));
  out["variables"] = std::move(vars);

  json nodes = json::array();
  for (const auto& node : spec.nodes) {
    json jn = json::object();
    jn["id"] = node.id;
    jn["kind"] = std::string(to_string(node.kind));
    if (node.aiu) jn["aiu"] = aiu_to_json(*node.aiu);
    if (node.guard) jn["guard"] = node.guard->source;
    nodes.push_back(std::move(jn));
  }
  out["nodes"] = std::move(nodes);

  json transitions = json::array();
  for (const auto& t : spec.transitions) {
    json jt = json::object();
    jt["from"] = t.from;
    jt["to"] = t.to;
    json trigger = json::object();
    trigger["outcome"] = std::string(to_string(t.trigger));
    if (t.key) trigger["key"] = *t.key;
    jt["trigger"] = std::move(trigger);
    if (!t.bindings.empty()) {
      json bindings = json::array();
      for (const auto& b : t.bindings) {
        json jb = json::object();
        jb["variable"] = b.variable;
        jb["selector"] = b.selector;
        bindings.push_back(std::move(jb));
      }
      jt["bindings"] = std::move(bindings);
    }
    transitions.push_back(std::move(jt));
  }
  out["transitions"] = std::move(transitions);
  if (!spec.start.empty()) out["start"] = spec.start;
  out["finals"] = spec.finals;
  return out;
}

// ---------------------------------------------------------------------------
// Outcomes
// ---------------------------------------------------------------------------

json outcome_to_json(const Outcome& outcome) {
  json out = json::object();
  out["tag"] = std::string(to_string(tag_of(outcome)));
  std::visit(
      [&](const auto& o) {
        using T = std::decay_t<decltype(o)>;
        if constexpr (std::is_same_v<T, outcome::Command>) {
          out["key"] = o.id;
        } else if constexpr (std::is_same_v<T, outcome::Point>) {
          out["x"] = o.x;
          out["y"] = o.y;
        } else if constexpr (std::is_same_v<T, outcome::TupleSelected>) {
          out["row"] = o.row;
        } else if constexpr (std::is_same_v<T, outcome::FilledFields>) {
          json fields = json::object();
          for (const auto& [k, v] : o.values) fields[k] = v;
          out["fields"] = std::move(fields);
        } else if constexpr (std::is_same_v<T, outcome::ChoiceSelected>) {
          out["key"] = o.key;
        } else if constexpr (std::is_same_v<T, outcome::ChoicesSelected>) {
          out["keys"] = json(std::vector<std::string>(o.keys.begin(), o.keys.end()));
        }
      },
      outcome);
  return out;
}

Outcome outcome_from_json(const json& doc, const std::string& path) {
  ObjectReader r(doc, path);
  auto tag_name = r.string("tag");
  auto tag = outcome_tag_from_string(tag_name);
  if (!tag || !is_aiu_outcome(*tag)) r.fail("tag", "unknown outcome tag '" + tag_name + "'");
  switch (*tag) {
    case OutcomeTag::Null:
      r.only_keys({"tag"});
      return outcome::Quit{};
    case OutcomeTag::Ok:
      r.only_keys({"tag"});
      return outcome::Ok{};
    case OutcomeTag::Command:
      r.only_keys({"tag", "key"});
      return outcome::Command{r.string("key")};
    case OutcomeTag::Point:
      r.only_keys({"tag", "x", "y"});
      return outcome::Point{r.integer("x"), r.integer("y")};
    case OutcomeTag::TupleSelected: {
      r.only_keys({"tag", "row"});
      auto row = r.integer("row");
      if (row < 0) r.fail("row", "row index must be non-negative");
      return outcome::TupleSelected{static_cast<std::size_t>(row)};
    }
    case OutcomeTag::FilledFields: {
      r.only_keys({"tag", "fields"});
      outcome::FilledFields filled;
      for (const auto& item : r.object("fields").items()) {
        const auto& v = item.value();
        if (v.is_string()) {
          filled.values[item.key()] = v.get<std::string>();
        } else if (v.is_number_integer()) {
          filled.values[item.key()] = std::to_string(v.get<long long>());
        } else {
          shape_error(r.child_path("fields") + "/" + item.key(), "expected a string or integer");
        }
      }
      return filled;
    }
    case OutcomeTag::ChoiceSelected:
      r.only_keys({"tag", "key"});
      return outcome::ChoiceSelected{r.string("key")};
    case OutcomeTag::ChoicesSelected: {
      r.only_keys({"tag", "keys"});
      outcome::ChoicesSelected selected;
      const auto& keys = r.array("keys");
      for (std::size_t i = 0; i < keys.size(); ++i) {
        selected.keys.insert(string_at(keys[i], r.child_path("keys") + "/" + std::to_string(i)));
      }
      return selected;
    }
    default:
      break;
  }
  r.fail("tag", "unsupported outcome");
}

}  // namespace codec

ServiceSpec parse_spec(std::string_view source) {
  return codec::spec_from_json(codec::parse_document(source));
}

std::string serialize_spec(const ServiceSpec& spec) {
  return codec::spec_to_json(spec).dump(2) + "\n";
}

std::string read_text_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error("IoError", "cannot open " + path.string());
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return buffer.str();
}

ServiceSpec load_spec_file(const std::filesystem::path& path) {
  return parse_spec(read_text_file(path));
}

Outcome parse_outcome(std::string_view source) {
  return codec::outcome_from_json(codec::parse_document(source), "");
}

std::string serialize_outcome(const Outcome& outcome) {
  return codec::outcome_to_json(outcome).dump();
}

}  // namespace aiuflow
