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

#include "aiuflow/guard.hpp"

#include <cctype>
#include <charconv>
#include <optional>

#include "aiuflow/errors.hpp"

namespace aiuflow {
namespace {

using ExprPtr = std::shared_ptr<const GuardExpr>;

bool is_ident_start(char c) { return std::isalpha(static_cast<unsigned char>(c)) || c == '_'; }
bool is_ident_char(char c) {
  return std::isalnum(static_cast<unsigned char>(c)) || c == '_' || c == '-';
}

class GuardParser {
 public:
  explicit GuardParser(std::string_view src) : src_(src) {}

  ExprPtr parse() {
    auto expr = parse_or();
    skip_ws();
    if (pos_ != src_.size()) fail("unexpected trailing input");
    return expr;
  }

 private:
  [[noreturn]] void fail(const std::string& message) const {
    throw ParseError("SyntaxError", "guard@" + std::to_string(pos_), message);
  }

  void skip_ws() {
    while (pos_ < src_.size() && std::isspace(static_cast<unsigned char>(src_[pos_]))) ++pos_;
  }

  bool accept(std::string_view token) {
    skip_ws();
    if (src_.substr(pos_, token.size()) == token) {
      pos_ += token.size();
      return true;
    }
    return false;
  }

  bool accept_word(std::string_view word) {
    skip_ws();
    if (src_.substr(pos_, word.size()) != word) return false;
    auto end = pos_ + word.size();
    if (end < src_.size() && is_ident_char(src_[end])) return false;
    pos_ = end;
    return true;
  }

  ExprPtr parse_or() {
    auto lhs = parse_and();
    while (accept("||")) {
      auto node = std::make_shared<GuardExpr>();
      node->op = GuardExpr::Op::Or;
      node->children = {lhs, parse_and()};
      lhs = node;
    }
    return lhs;
  }

  ExprPtr parse_and() {
    auto lhs = parse_unary();
    while (accept("&&")) {
      auto node = std::make_shared<GuardExpr>();
      node->op = GuardExpr::Op::And;
      node->children = {lhs, parse_unary()};
      lhs = node;
    }
    return lhs;
  }

  ExprPtr parse_unary() {
    skip_ws();
    if (pos_ < src_.size() && src_[pos_] == '!' && src_.substr(pos_, 2) != "!=") {
      ++pos_;
      auto node = std::make_shared<GuardExpr>();
      node->op = GuardExpr::Op::Not;
      node->children = {parse_unary()};
      return node;
    }
    if (accept("(")) {
      auto inner = parse_or();
      if (!accept(")")) fail("expected ')'");
      return inner;
    }
    for (auto [word, op] : {std::pair{"true", GuardExpr::Op::True},
                            std::pair{"false", GuardExpr::Op::False}}) {
      if (accept_word(word)) {
        auto node = std::make_shared<GuardExpr>();
        node->op = op;
        return node;
      }
    }
    auto node = std::make_shared<GuardExpr>();
    node->op = GuardExpr::Op::Compare;
    node->lhs = parse_operand();
    node->compare = parse_compare();
    node->rhs = parse_operand();
    return node;
  }

  CompareOp parse_compare() {
    if (accept("==")) return CompareOp::Eq;
    if (accept("!=")) return CompareOp::Ne;
    if (accept("<=")) return CompareOp::Le;
    if (accept(">=")) return CompareOp::Ge;
    if (accept("<")) return CompareOp::Lt;
    if (accept(">")) return CompareOp::Gt;
    fail("expected comparison operator");
  }

  GuardOperand parse_operand() {
    skip_ws();
    if (pos_ >= src_.size()) fail("expected operand");
    GuardOperand operand;
    char c = src_[pos_];
    if (c == '\'' || c == '"') {
      auto close = src_.find(c, pos_ + 1);
      if (close == std::string_view::npos) fail("unterminated string literal");
      operand.kind = GuardOperand::Kind::String;
      operand.text = std::string(src_.substr(pos_ + 1, close - pos_ - 1));
      pos_ = close + 1;
      return operand;
    }
    if (std::isdigit(static_cast<unsigned char>(c)) || c == '-') {
      auto begin = pos_;
      if (c == '-') ++pos_;
      while (pos_ < src_.size() && std::isdigit(static_cast<unsigned char>(src_[pos_]))) ++pos_;
      auto text = src_.substr(begin, pos_ - begin);
      auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), operand.integer);
      if (ec != std::errc() || ptr != text.data() + text.size()) {
        pos_ = begin;
        fail("malformed integer literal");
      }
      operand.kind = GuardOperand::Kind::Integer;
      return operand;
    }
    if (is_ident_start(c)) {
      auto begin = pos_;
      while (pos_ < src_.size() && is_ident_char(src_[pos_])) ++pos_;
      operand.kind = GuardOperand::Kind::Variable;
      operand.text = std::string(src_.substr(begin, pos_ - begin));
      return operand;
    }
    fail("expected operand");
  }

  std::string_view src_;
  std::size_t pos_ = 0;
};

void collect_variables(const GuardExpr& expr, std::set<std::string>& out) {
  for (const auto& child : expr.children) collect_variables(*child, out);
  if (expr.op == GuardExpr::Op::Compare) {
    if (expr.lhs.kind == GuardOperand::Kind::Variable) out.insert(expr.lhs.text);
    if (expr.rhs.kind == GuardOperand::Kind::Variable) out.insert(expr.rhs.text);
  }
}

// Static type of an operand; a string literal adopts the type of a date peer.
std::optional<ValueType> operand_type(const GuardOperand& op, const GuardOperand& peer,
                                      const std::map<std::string, ValueType>& variables) {
  switch (op.kind) {
    case GuardOperand::Kind::Variable: {
      auto it = variables.find(op.text);
      if (it == variables.end()) return std::nullopt;
      return it->second;
    }
    case GuardOperand::Kind::Integer:
      return ValueType::Integer;
    case GuardOperand::Kind::String:
      if (peer.kind == GuardOperand::Kind::Variable) {
        auto it = variables.find(peer.text);
        if (it != variables.end() && it->second == ValueType::Date) return ValueType::Date;
      }
      return ValueType::Text;
  }
  return std::nullopt;
}

void collect_type_errors(const GuardExpr& expr, const std::map<std::string, ValueType>& variables,
                         std::vector<std::string>& out) {
  for (const auto& child : expr.children) collect_type_errors(*child, variables, out);
  if (expr.op != GuardExpr::Op::Compare) return;
  auto lt = operand_type(expr.lhs, expr.rhs, variables);
  auto rt = operand_type(expr.rhs, expr.lhs, variables);
  if (!lt || !rt) return;
  if (*lt != *rt) {
    out.push_back("cannot compare " + std::string(to_string(*lt)) + " with " +
                  std::string(to_string(*rt)));
    return;
  }
  for (const auto* op : {&expr.lhs, &expr.rhs}) {
    if (op->kind == GuardOperand::Kind::String && *lt == ValueType::Date &&
        !parse_value(ValueType::Date, op->text)) {
      out.push_back("'" + op->text + "' is not a YYYY-MM-DD date");
    }
  }
}

Value resolve(const GuardOperand& op, const GuardOperand& peer,
              const std::map<std::string, Value>& env) {
  switch (op.kind) {
    case GuardOperand::Kind::Variable: {
      auto it = env.find(op.text);
      if (it == env.end()) {
        throw Error("GuardEvaluationError", "variable '" + op.text + "' is unbound");
      }
      return it->second;
    }
    case GuardOperand::Kind::Integer:
      return Value{op.integer};
    case GuardOperand::Kind::String:
      if (peer.kind == GuardOperand::Kind::Variable) {
        auto it = env.find(peer.text);
        if (it != env.end() && type_of(it->second) == ValueType::Date) {
          if (auto date = parse_value(ValueType::Date, op.text)) return *date;
          throw Error("GuardEvaluationError", "'" + op.text + "' is not a date");
        }
      }
      return Value{op.text};
  }
  return Value{std::string()};
}

bool compare(CompareOp op, const Value& lhs, const Value& rhs) {
  if (lhs.index() != rhs.index()) {
    throw Error("GuardEvaluationError", "comparison between " +
                                            std::string(to_string(type_of(lhs))) + " and " +
                                            std::string(to_string(type_of(rhs))));
  }
  auto order = lhs <=> rhs;
  switch (op) {
    case CompareOp::Eq: return order == 0;
    case CompareOp::Ne: return order != 0;
    case CompareOp::Lt: return order < 0;
    case CompareOp::Le: return order <= 0;
    case CompareOp::Gt: return order > 0;
    case CompareOp::Ge: return order >= 0;
  }
  return false;
}

}  // namespace

Guard parse_guard(std::string_view source) {
  return Guard{std::string(source), GuardParser(source).parse()};
}

std::set<std::string> guard_variables(const GuardExpr& expr) {
  std::set<std::string> out;
  collect_variables(expr, out);
  return out;
}

std::vector<std::string> guard_type_errors(const GuardExpr& expr,
                                           const std::map<std::string, ValueType>& variables) {
  std::vector<std::string> out;
  collect_type_errors(expr, variables, out);
  return out;
}

bool evaluate_guard(const GuardExpr& expr, const std::map<std::string, Value>& env) {
  switch (expr.op) {
    case GuardExpr::Op::True: return true;
    case GuardExpr::Op::False: return false;
    case GuardExpr::Op::Not: return !evaluate_guard(*expr.children[0], env);
    case GuardExpr::Op::And:
      return evaluate_guard(*expr.children[0], env) && evaluate_guard(*expr.children[1], env);
    case GuardExpr::Op::Or:
      return evaluate_guard(*expr.children[0], env) || evaluate_guard(*expr.children[1], env);
    case GuardExpr::Op::Compare:
      return compare(expr.compare, resolve(expr.lhs, expr.rhs, env),
                     resolve(expr.rhs, expr.lhs, env));
  }
  return false;
}

}  // namespace aiuflow
