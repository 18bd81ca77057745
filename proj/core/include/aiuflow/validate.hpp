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

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "aiuflow/model.hpp"

namespace aiuflow {

enum class Severity { Error, Warning };

/// Diagnostic codes:
///   structure  DuplicateId MissingStart MultipleStart MissingFinal InvalidFinal
///              DanglingTransition MalformedNode ControlArity IllegalTrigger
///              UnexpectedTriggerKey UnknownTriggerKey FinalHasSuccessor
///              UnknownVariable InvalidBinding BindingTypeMismatch GuardTypeMismatch
///   flow       NonSelfBrowsingCommand AmbiguousTransition UnhandledOutcome
///              UnmatchedFork UnmatchedJoin UnreachableNode NoPathToFinal
///   data       UnboundVariable
///   source     SyntaxError UnknownAiuKind (from diagnose_source only)
struct Diagnostic {
  Severity severity = Severity::Error;
  std::string code;
  std::string node;                       // offending node id, if any
  std::optional<std::size_t> transition;  // offending transition index, if any
  std::string message;
};

/// Runs the checks in three passes: structure, flow, data. A pass runs only
/// if the previous ones were clean, since flow analysis needs well-formed
/// references and binding analysis needs matched fork/join regions.
/// Returns an empty list iff the spec is executable.
std::vector<Diagnostic> validate_spec(const ServiceSpec& spec);

/// Parses then validates; a parse failure becomes a single diagnostic whose
/// code is the ParseError code.
std::vector<Diagnostic> diagnose_source(std::string_view source);

std::string format_diagnostic(const Diagnostic& diagnostic);

}  // namespace aiuflow
