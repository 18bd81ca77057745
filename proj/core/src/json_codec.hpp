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

// Internal JSON codec shared by the core and the HTTP service. Not installed.

#include <initializer_list>
#include <optional>
#include <string>
#include <string_view>

#include "json.hpp"

#include "aiuflow/adapt.hpp"
#include "aiuflow/engine.hpp"
#include "aiuflow/errors.hpp"
#include "aiuflow/metrics.hpp"
#include "aiuflow/model.hpp"
#include "aiuflow/render.hpp"
#include "aiuflow/validate.hpp"

namespace aiuflow::codec {

using json = nlohmann::ordered_json;

/// Parses text into a JSON value; lexical failures become
/// ParseError{"SyntaxError"} carrying the byte offset.
json parse_document(std::string_view source);

/// Strict accessor over one JSON object, tracking its pointer path so shape
/// errors name the exact location.
class ObjectReader {
 public:
  ObjectReader(const json& value, std::string path);

  /// Rejects keys outside `allowed`.
  void only_keys(std::initializer_list<std::string_view> allowed) const;
  bool has(std::string_view key) const;

  std::string string(std::string_view key) const;
  std::optional<std::string> optional_string(std::string_view key) const;
  bool boolean(std::string_view key) const;
  std::optional<bool> optional_boolean(std::string_view key) const;
  long long integer(std::string_view key) const;
  std::optional<long long> optional_integer(std::string_view key) const;
  const json& array(std::string_view key) const;
  const json& object(std::string_view key) const;
  const json& at(std::string_view key) const;

  std::string child_path(std::string_view key) const;
  const std::string& path() const { return path_; }
  [[noreturn]] void fail(std::string_view key, const std::string& message) const;

 private:
  const json& value_;
  std::string path_;
};

[[noreturn]] void shape_error(const std::string& path, const std::string& message);
std::string string_at(const json& value, const std::string& path);

json spec_to_json(const ServiceSpec& spec);
ServiceSpec spec_from_json(const json& doc);

json outcome_to_json(const Outcome& outcome);
Outcome outcome_from_json(const json& doc, const std::string& path);

json device_to_json(const DeviceProfile& device);
DeviceProfile device_from_json(const json& doc);

json thresholds_to_json(const Thresholds& thresholds);
Thresholds thresholds_from_json(const json& doc);

json metrics_to_json(const AiuMetrics& metrics);
json degradation_to_json(const DegradationReport& report);

json decision_to_json(const AdaptationDecision& decision);
json layout_to_json(const ForkLayout& layout);
json plan_to_json(const AdaptationPlan& plan);

json page_to_json(const ConcretePage& page);

json diagnostics_to_json(const std::vector<Diagnostic>& diagnostics);

json session_to_json(const Session& session);
json value_to_json(const Value& value);

}  // namespace aiuflow::codec
