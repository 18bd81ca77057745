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

// Decision-node guards: comparisons between variables and literals, combined
// with &&, || and !. Grammar:
//
//   expr    := conj ('||' conj)*
//   conj    := unary ('&&' unary)*
//   unary   := '!' unary | '(' expr ')' | 'true' | 'false' | operand cmp operand
//   cmp     := '==' | '!=' | '<' | '<=' | '>' | '>='
//   operand := identifier | integer | 'quoted' | "quoted"
//
// A quoted literal compared against a date variable is read as YYYY-MM-DD.

#include <map>
#include <set>
#include <string>
#include <string_view>
#include <vector>

#include "aiuflow/model.hpp"

namespace aiuflow {

enum class CompareOp { Eq, Ne, Lt, Le, Gt, Ge };

struct GuardOperand {
  enum class Kind { Variable, Integer, String };
  Kind kind = Kind::Variable;
  std::string text;  // variable name or string literal
  std::int64_t integer = 0;
};

struct GuardExpr {
  enum class Op { Or, And, Not, Compare, True, False };
  Op op = Op::True;
  std::vector<std::shared_ptr<const GuardExpr>> children;
  CompareOp compare = CompareOp::Eq;
  GuardOperand lhs;
  GuardOperand rhs;
};

/// Throws ParseError{"SyntaxError"} with the byte offset inside the guard.
Guard parse_guard(std::string_view source);

std::set<std::string> guard_variables(const GuardExpr& expr);

/// Type problems against the declared variables; one message per problem.
/// Undeclared variables are reported separately by the validator.
std::vector<std::string> guard_type_errors(const GuardExpr& expr,
                                           const std::map<std::string, ValueType>& variables);

/// Throws Error{"GuardEvaluationError"} on unbound variables or type mismatch.
bool evaluate_guard(const GuardExpr& expr, const std::map<std::string, Value>& env);

}  // namespace aiuflow
