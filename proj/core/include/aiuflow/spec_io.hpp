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
#include <string>
#include <string_view>

#include "aiuflow/model.hpp"

namespace aiuflow {

/// Decodes a `.aiu.json` document. Checks syntax and type-shape only (payload
/// legality per kind, id uniqueness, row arity); graph checks belong to
/// validate_spec. Throws ParseError with code SyntaxError, UnknownAiuKind or
/// DuplicateId. Never aborts on malformed input.
ServiceSpec parse_spec(std::string_view source);

/// Canonical encoding; parse_spec(serialize_spec(s)) == s.
std::string serialize_spec(const ServiceSpec& spec);

ServiceSpec load_spec_file(const std::filesystem::path& path);

/// Reads a whole file; throws Error{"IoError"}.
std::string read_text_file(const std::filesystem::path& path);

/// Parses an outcome document such as {"tag":"choiceSelected","key":"rome"}.
Outcome parse_outcome(std::string_view source);
std::string serialize_outcome(const Outcome& outcome);

}  // namespace aiuflow
