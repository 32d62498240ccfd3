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

#include "pppm/condition.hpp"

#include <array>
#include <cctype>
#include <charconv>
#include <system_error>

namespace pppm {
namespace {

std::string lower(std::string_view s) {
  std::string out(s);
  for (char& c : out) {
    c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
  }
  return out;
}

bool is_ident_start(char c) {
  return std::isalpha(static_cast<unsigned char>(c)) || c == '_';
}

bool is_ident_char(char c) {
  return std::isalnum(static_cast<unsigned char>(c)) || c == '_';
}

bool is_digit(char c) { return c >= '0' && c <= '9'; }

enum class TokKind { kOperand, kOp, kAnd, kEnd };

struct Token {
  TokKind kind = TokKind::kEnd;
  std::size_t offset = 0;
  Operand operand;
  RelOp op = RelOp::kEq;
};

class Lexer {
 public:
  explicit Lexer(std::string_view text) : text_(text) {}

  Token next() {
    while (pos_ < text_.size() &&
           std::isspace(static_cast<unsigned char>(text_[pos_]))) {
      ++pos_;
    }
    Token tok;
    tok.offset = pos_;
    if (pos_ >= text_.size()) return tok;

    char c = text_[pos_];
    if (is_ident_start(c)) {
      std::size_t start = pos_;
      while (pos_ < text_.size() && is_ident_char(text_[pos_])) ++pos_;
      std::string word = lower(text_.substr(start, pos_ - start));
      if (word == "and") {
        tok.kind = TokKind::kAnd;
      } else if (word == "true" || word == "false") {
        tok.kind = TokKind::kOperand;
        tok.operand = Value{word == "true"};
      } else {
        tok.kind = TokKind::kOperand;
        tok.operand = Variable{std::move(word)};
      }
      return tok;
    }
    if (is_digit(c) || (c == '-' && pos_ + 1 < text_.size() &&
                        is_digit(text_[pos_ + 1]))) {
      tok.kind = TokKind::kOperand;
      tok.operand = lex_number_or_time();
      return tok;
    }
    if (c == '"') {
      tok.kind = TokKind::kOperand;
      tok.operand = Value{lex_string()};
      return tok;
    }

    tok.kind = TokKind::kOp;
    auto two = text_.substr(pos_, 2);
    if (two == "<=") {
      tok.op = RelOp::kLe;
    } else if (two == ">=") {
      tok.op = RelOp::kGe;
    } else if (two == "==") {
      tok.op = RelOp::kEq;
    } else if (two == "!=") {
      tok.op = RelOp::kNe;
    } else if (c == '<') {
      tok.op = RelOp::kLt;
    } else if (c == '>') {
      tok.op = RelOp::kGt;
    } else if (c == '=') {
      tok.op = RelOp::kEq;
    } else {
      throw ConditionSyntaxError(
          pos_, "unexpected character '" + std::string(1, c) + "'");
    }
    pos_ += (two == "<=" || two == ">=" || two == "==" || two == "!=") ? 2 : 1;
    return tok;
  }

 private:
  Value lex_number_or_time() {
    std::size_t start = pos_;
    bool negative = text_[pos_] == '-';
    if (negative) ++pos_;
    std::size_t digits_start = pos_;
    while (pos_ < text_.size() && is_digit(text_[pos_])) ++pos_;
    std::size_t int_digits = pos_ - digits_start;

    if (pos_ < text_.size() && text_[pos_] == ':') {
      if (negative || int_digits > 2) {
        throw ConditionSyntaxError(start, "malformed time literal");
      }
      int hours = 0;
      std::from_chars(text_.data() + digits_start, text_.data() + pos_, hours);
      ++pos_;
      if (pos_ + 2 > text_.size() || !is_digit(text_[pos_]) ||
          !is_digit(text_[pos_ + 1]) ||
          (pos_ + 2 < text_.size() && is_digit(text_[pos_ + 2]))) {
        throw ConditionSyntaxError(start, "time literal must be HH:MM");
      }
      int minutes = (text_[pos_] - '0') * 10 + (text_[pos_ + 1] - '0');
      pos_ += 2;
      if (hours > 23 || minutes > 59) {
        throw ConditionSyntaxError(start, "time literal out of range");
      }
      return TimeOfDay{hours * 60 + minutes};
    }

    if (pos_ < text_.size() && text_[pos_] == '.') {
      ++pos_;
      std::size_t frac_start = pos_;
      while (pos_ < text_.size() && is_digit(text_[pos_])) ++pos_;
      if (pos_ == frac_start) {
        throw ConditionSyntaxError(start, "digits expected after '.'");
      }
    }
    if (pos_ < text_.size() && is_ident_char(text_[pos_])) {
      throw ConditionSyntaxError(start, "malformed number");
    }
    double value = 0;
    auto [ptr, ec] =
        std::from_chars(text_.data() + start, text_.data() + pos_, value);
    if (ec != std::errc() || ptr != text_.data() + pos_) {
      throw ConditionSyntaxError(start, "malformed number");
    }
    return value;
  }

  std::string lex_string() {
    std::size_t start = pos_;
    ++pos_;
    std::string out;
    while (pos_ < text_.size()) {
      char c = text_[pos_++];
      if (c == '"') return out;
      if (c == '\\') {
        if (pos_ >= text_.size()) break;
        char e = text_[pos_++];
        if (e != '"' && e != '\\') {
          throw ConditionSyntaxError(pos_ - 2, "unknown escape sequence");
        }
        out.push_back(e);
      } else {
        out.push_back(c);
      }
    }
    throw ConditionSyntaxError(start, "unterminated string");
  }

  std::string_view text_;
  std::size_t pos_ = 0;
};

bool is_ordering(RelOp op) { return op != RelOp::kEq && op != RelOp::kNe; }

std::optional<ValueType> static_type(const Operand& o) {
  if (const auto* v = std::get_if<Value>(&o)) return type_of(*v);
  if (std::get<Variable>(o).name == "now") return ValueType::kTime;
  return std::nullopt;
}

void check_pair(const Operand& lhs, RelOp op, const Operand& rhs,
                std::size_t offset) {
  auto lt = static_type(lhs);
  auto rt = static_type(rhs);
  if (lt && rt && *lt != *rt) {
    throw ConditionSyntaxError(
        offset, "cannot compare " + std::string(type_name(*lt)) + " with " +
                    std::string(type_name(*rt)));
  }
  if (is_ordering(op)) {
    for (auto t : {lt, rt}) {
      if (t && (*t == ValueType::kString || *t == ValueType::kBool)) {
        throw ConditionSyntaxError(
            offset, "operator " + std::string(relop_text(op)) +
                        " is not defined on " + std::string(type_name(*t)));
      }
    }
  }
}

template <typename T>
bool compare(const T& a, RelOp op, const T& b) {
  switch (op) {
    case RelOp::kLt: return a < b;
    case RelOp::kLe: return a <= b;
    case RelOp::kGt: return a > b;
    case RelOp::kGe: return a >= b;
    case RelOp::kEq: return a == b;
    case RelOp::kNe: return a != b;
  }
  return false;
}

std::string render_operand(const Operand& o) {
  if (const auto* v = std::get_if<Variable>(&o)) return v->name;
  return render_value(std::get<Value>(o));
}

}  // namespace

ValueType type_of(const Value& v) {
  return static_cast<ValueType>(v.index());
}

std::string_view type_name(ValueType t) {
  switch (t) {
    case ValueType::kNumber: return "number";
    case ValueType::kTime: return "time";
    case ValueType::kString: return "string";
    case ValueType::kBool: return "boolean";
  }
  return "?";
}

std::string render_value(const Value& v) {
  switch (type_of(v)) {
    case ValueType::kNumber: {
      std::array<char, 64> buf{};
      auto [ptr, ec] =
          std::to_chars(buf.data(), buf.data() + buf.size(), std::get<double>(v));
      return std::string(buf.data(), ptr);
    }
    case ValueType::kTime: {
      int m = std::get<TimeOfDay>(v).minutes;
      std::string out = "00:00";
      out[0] = static_cast<char>('0' + m / 600);
      out[1] = static_cast<char>('0' + (m / 60) % 10);
      out[3] = static_cast<char>('0' + (m % 60) / 10);
      out[4] = static_cast<char>('0' + m % 10);
      return out;
    }
    case ValueType::kString: {
      std::string out = "\"";
      for (char c : std::get<std::string>(v)) {
        if (c == '"' || c == '\\') out.push_back('\\');
        out.push_back(c);
      }
      out.push_back('"');
      return out;
    }
    case ValueType::kBool:
      return std::get<bool>(v) ? "true" : "false";
  }
  return {};
}

std::string_view relop_text(RelOp op) {
  switch (op) {
    case RelOp::kLt: return "<";
    case RelOp::kLe: return "<=";
    case RelOp::kGt: return ">";
    case RelOp::kGe: return ">=";
    case RelOp::kEq: return "==";
    case RelOp::kNe: return "!=";
  }
  return "?";
}

ConditionExpr parse_condition(std::string_view text) {
  Lexer lexer(text);
  ConditionExpr expr;
  Token tok = lexer.next();
  while (true) {
    Chain chain;
    if (tok.kind != TokKind::kOperand) {
      throw ConditionSyntaxError(tok.offset, "expected operand");
    }
    chain.operands.push_back(tok.operand);
    tok = lexer.next();
    while (tok.kind == TokKind::kOp) {
      std::size_t op_offset = tok.offset;
      RelOp op = tok.op;
      tok = lexer.next();
      if (tok.kind != TokKind::kOperand) {
        throw ConditionSyntaxError(tok.offset, "expected operand after " +
                                                   std::string(relop_text(op)));
      }
      check_pair(chain.operands.back(), op, tok.operand, op_offset);
      chain.ops.push_back(op);
      chain.operands.push_back(tok.operand);
      tok = lexer.next();
    }
    if (chain.ops.empty()) {
      throw ConditionSyntaxError(tok.offset, "expected comparison operator");
    }
    expr.chains.push_back(std::move(chain));
    if (tok.kind == TokKind::kEnd) break;
    if (tok.kind != TokKind::kAnd) {
      throw ConditionSyntaxError(tok.offset, "expected 'and' or end of condition");
    }
    tok = lexer.next();
  }
  return expr;
}

std::string render_condition(const ConditionExpr& expr) {
  std::string out;
  for (std::size_t c = 0; c < expr.chains.size(); ++c) {
    if (c > 0) out += " and ";
    const Chain& chain = expr.chains[c];
    out += render_operand(chain.operands[0]);
    for (std::size_t i = 0; i < chain.ops.size(); ++i) {
      out += ' ';
      out += relop_text(chain.ops[i]);
      out += ' ';
      out += render_operand(chain.operands[i + 1]);
    }
  }
  return out;
}

std::string_view to_string(TriBool t) {
  switch (t) {
    case TriBool::kFalse: return "false";
    case TriBool::kUnknown: return "unknown";
    case TriBool::kTrue: return "true";
  }
  return "?";
}

EvalContext& EvalContext::bind(std::string_view name, Value value) {
  bindings.insert_or_assign(lower(name), std::move(value));
  return *this;
}

const Value* EvalContext::lookup(std::string_view name) const {
  auto it = bindings.find(std::string(name));
  return it == bindings.end() ? nullptr : &it->second;
}

Value parse_value(std::string_view text) {
  try {
    Lexer lexer(text);
    Token tok = lexer.next();
    if (tok.kind == TokKind::kOperand && lexer.next().kind == TokKind::kEnd) {
      if (const auto* v = std::get_if<Value>(&tok.operand)) return *v;
    }
  } catch (const ConditionSyntaxError&) {
  }
  return std::string(text);
}

TriBool evaluate_pair(const Operand& lhs, RelOp op, const Operand& rhs,
                      const EvalContext& ctx) {
  auto resolve = [&](const Operand& o) -> const Value* {
    if (const auto* v = std::get_if<Value>(&o)) return v;
    const auto& name = std::get<Variable>(o).name;
    const Value* bound = ctx.lookup(name);
    if (bound && name == "now" && type_of(*bound) != ValueType::kTime) {
      throw EvaluationError("'now' must be bound to a time, got " +
                            std::string(type_name(type_of(*bound))));
    }
    return bound;
  };
  const Value* a = resolve(lhs);
  const Value* b = resolve(rhs);
  if (!a || !b) return TriBool::kUnknown;

  ValueType ta = type_of(*a);
  ValueType tb = type_of(*b);
  if (ta != tb) {
    throw EvaluationError("cannot compare " + render_operand(lhs) + " (" +
                          std::string(type_name(ta)) + ") with " +
                          render_operand(rhs) + " (" +
                          std::string(type_name(tb)) + ")");
  }
  if (is_ordering(op) && (ta == ValueType::kString || ta == ValueType::kBool)) {
    throw EvaluationError("operator " + std::string(relop_text(op)) +
                          " is not defined on " + std::string(type_name(ta)));
  }

  bool result = false;
  switch (ta) {
    case ValueType::kNumber:
      result = compare(std::get<double>(*a), op, std::get<double>(*b));
      break;
    case ValueType::kTime:
      result = compare(std::get<TimeOfDay>(*a), op, std::get<TimeOfDay>(*b));
      break;
    case ValueType::kString:
      result = compare(std::get<std::string>(*a), op, std::get<std::string>(*b));
      break;
    case ValueType::kBool:
      result = compare(std::get<bool>(*a), op, std::get<bool>(*b));
      break;
  }
  return result ? TriBool::kTrue : TriBool::kFalse;
}

// Every pair is evaluated so that type errors surface regardless of order.
TriBool evaluate(const Chain& chain, const EvalContext& ctx) {
  TriBool acc = TriBool::kTrue;
  for (std::size_t i = 0; i < chain.ops.size(); ++i) {
    acc = acc && evaluate_pair(chain.operands[i], chain.ops[i],
                               chain.operands[i + 1], ctx);
  }
  return acc;
}

TriBool evaluate(const ConditionExpr& expr, const EvalContext& ctx) {
  TriBool acc = TriBool::kTrue;
  for (const Chain& chain : expr.chains) acc = acc && evaluate(chain, ctx);
  return acc;
}

}  // namespace pppm
