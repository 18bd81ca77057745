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

#include <stdexcept>
#include <string>

namespace aiuflow {

/// Base for every error raised by the library. `code()` is a stable machine
/// name (e.g. "UnknownAiuKind", "IllegalOutcome") that the HTTP layer passes
/// through to clients unchanged.
class Error : public std::runtime_error {
 public:
  Error(std::string code, const std::string& message)
      : std::runtime_error(message), code_(std::move(code)) {}

  const std::string& code() const noexcept { return code_; }

 private:
  std::string code_;
};

/// Raised by the document readers. `position` is a byte offset for lexical
/// errors and a JSON pointer (e.g. "/nodes/3/aiu") for shape errors.
class ParseError : public Error {
 public:
  ParseError(std::string code, std::string position, const std::string& message)
      : Error(std::move(code), position.empty() ? message : position + ": " + message),
        position_(std::move(position)) {}

  const std::string& position() const noexcept { return position_; }

 private:
  std::string position_;
};

}  // namespace aiuflow
