// Copyright 2026 The PPPM Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

// Condition predicate language used on role-purpose grants, purpose-task
// bindings and purpose-group grants.
//
//   cond  := chain ("and" chain)*
//   chain := operand (relop operand)+
//   relop := "<" | "<=" | ">" | ">=" | "==" | "!="      ("=" reads as "==")
//   operand := variable | number | HH:MM | "string" | true | false
//
// Variables and keywords are case-insensitive and stored lower-cased. `now`
// is a reserved variable of time type; the caller supplies it through the
// evaluation context, the library never reads a clock.

#include <compare>
#include <cstddef>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "pppm/error.hpp"

namespace pppm {

struct TimeOfDay {
  int minutes = 0;  // since midnight, [0, 1440)

  auto operator<=>(const TimeOfDay&) const = default;
};

using Value = std::variant<double, TimeOfDay, std::string, bool>;

enum class ValueType { kNumber, kTime, kString, kBool };

ValueType type_of(const Value& v);
std::string_view type_name(ValueType t);
std::string render_value(const Value& v);

struct Variable {
  std::string name;

  bool operator==(const Variable&) const = default;
};

using Operand = std::variant<Variable, Value>;

enum class RelOp { kLt, kLe, kGt, kGe, kEq, kNe };

std::string_view relop_text(RelOp op);

// operands.size() == ops.size() + 1 and ops is non-empty.
struct Chain {
  std::vector<Operand> operands;
  std::vector<RelOp> ops;

  bool operator==(const Chain&) const = default;
};

// Conjunction of comparison chains; never empty once parsed.
struct ConditionExpr {
  std::vector<Chain> chains;

  bool operator==(const ConditionExpr&) const = default;
};

class ConditionSyntaxError : public Error {
 public:
  ConditionSyntaxError(std::size_t offset, const std::string& message)
      : Error(message), offset_(offset) {}

  // Byte offset into the condition text where parsing failed.
  std::size_t offset() const { return offset_; }

 private:
  std::size_t offset_;
};

ConditionExpr parse_condition(std::string_view text);

// Canonical text: single spaces around operators, " and " between chains,
// 24h times, shortest round-trip numbers, double-quoted strings.
std::string render_condition(const ConditionExpr& expr);

enum class TriBool { kFalse = 0, kUnknown = 1, kTrue = 2 };

// Kleene conjunction.
constexpr TriBool operator&&(TriBool a, TriBool b) {
  return a < b ? a : b;
}

std::string_view to_string(TriBool t);

struct EvalContext {
  std::map<std::string, Value> bindings;

  // Names are lower-cased to match parsed variables.
  EvalContext& bind(std::string_view name, Value value);
  const Value* lookup(std::string_view name) const;
};

// Parses a context value: integer, decimal, HH:MM, true/false, or a quoted
// string. Anything else is taken as a bare string.
Value parse_value(std::string_view text);

// Evaluates one comparison a op b. Unbound variables give kUnknown. Throws
// EvaluationError when both values are known and have incompatible types.
TriBool evaluate_pair(const Operand& lhs, RelOp op, const Operand& rhs,
                      const EvalContext& ctx);
TriBool evaluate(const Chain& chain, const EvalContext& ctx);
TriBool evaluate(const ConditionExpr& expr, const EvalContext& ctx);

}  // namespace pppm
