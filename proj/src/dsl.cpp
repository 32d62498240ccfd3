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

#include "pppm/dsl.hpp"

#include <cctype>
#include <map>
#include <tuple>

namespace pppm {
namespace {

constexpr std::string_view kSectionNames =
    "roles, role_hierarchy, groups, attributes, aggregations, granularities, "
    "tasks, purposes, role_purpose, purpose_task_conditions, purpose_group";

enum class Tok { kIdent, kString, kArrow, kPunct, kEnd };

struct Token {
  Tok kind = Tok::kEnd;
  std::string text;  // identifier, decoded string, or punctuation
  SourceSpan span;
};

std::string describe(const Token& t) {
  switch (t.kind) {
    case Tok::kIdent: return "identifier '" + t.text + "'";
    case Tok::kString: return "string";
    case Tok::kArrow: return "'->'";
    case Tok::kPunct: return "'" + t.text + "'";
    case Tok::kEnd: return "end of input";
  }
  return "?";
}

class Lexer {
 public:
  Lexer(std::string_view text, std::string_view file)
      : text_(text), file_(file) {}

  std::vector<Token> run() {
    std::vector<Token> out;
    while (true) {
      skip_space_and_comments();
      Token tok;
      tok.span = here();
      if (pos_ >= text_.size()) {
        out.push_back(tok);
        return out;
      }
      char c = text_[pos_];
      if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
        std::size_t start = pos_;
        while (pos_ < text_.size() &&
               (std::isalnum(static_cast<unsigned char>(text_[pos_])) ||
                text_[pos_] == '_')) {
          advance();
        }
        tok.kind = Tok::kIdent;
        tok.text = std::string(text_.substr(start, pos_ - start));
      } else if (c == '"') {
        tok.kind = Tok::kString;
        tok.text = lex_string();
      } else if (c == '-' && pos_ + 1 < text_.size() && text_[pos_ + 1] == '>') {
        advance();
        advance();
        tok.kind = Tok::kArrow;
        tok.text = "->";
      } else if (std::string_view("{}()[],:=").find(c) != std::string_view::npos) {
        advance();
        tok.kind = Tok::kPunct;
        tok.text = std::string(1, c);
      } else {
        SourceSpan span = here();
        span.length = 1;
        throw ParseError(std::string(file_), span,
                         "unexpected character '" + std::string(1, c) + "'",
                         "");
      }
      tok.span.length = pos_ - tok.span.offset;
      out.push_back(std::move(tok));
    }
  }

 private:
  SourceSpan here() const { return SourceSpan{line_, column_, pos_, 0}; }

  void advance() {
    if (text_[pos_] == '\n') {
      ++line_;
      column_ = 1;
    } else {
      ++column_;
    }
    ++pos_;
  }

  void skip_space_and_comments() {
    while (pos_ < text_.size()) {
      char c = text_[pos_];
      if (c == '#') {
        while (pos_ < text_.size() && text_[pos_] != '\n') advance();
      } else if (std::isspace(static_cast<unsigned char>(c))) {
        advance();
      } else {
        return;
      }
    }
  }

  std::string lex_string() {
    SourceSpan start = here();
    advance();
    std::string out;
    while (pos_ < text_.size() && text_[pos_] != '\n') {
      char c = text_[pos_];
      advance();
      if (c == '"') return out;
      if (c == '\\') {
        if (pos_ >= text_.size() || (text_[pos_] != '"' && text_[pos_] != '\\')) {
          SourceSpan span = here();
          span.length = 1;
          throw ParseError(std::string(file_), span, "unknown escape sequence",
                           "'\\\"' or '\\\\'");
        }
        out.push_back(text_[pos_]);
        advance();
      } else {
        out.push_back(c);
      }
    }
    start.length = pos_ - start.offset;
    throw ParseError(std::string(file_), start, "unterminated string", "'\"'");
  }

  std::string_view text_;
  std::string_view file_;
  std::size_t pos_ = 0;
  std::size_t line_ = 1;
  std::size_t column_ = 1;
};

class Parser {
 public:
  Parser(std::string_view text, std::string_view file)
      : text_(text), file_(file), tokens_(Lexer(text, file).run()) {}

  Declarations run() {
    Declarations decls;
    decls.file = std::string(file_);
    SourceSpan start = peek().span;
    expect_keyword("policy");
    decls.policy_name = expect_string("policy name").text;
    decls.header_span = finish_span(start);

    while (peek().kind != Tok::kEnd) {
      Token name = expect_ident("section name");
      expect_punct("{");
      const std::string& s = name.text;
      if (s == "roles") {
        parse_entries([&] {
          auto [id, label, span] = labelled_entry();
          decls.entries.push_back(RoleDecl{id, label, span});
        });
      } else if (s == "role_hierarchy") {
        parse_entries([&] {
          SourceSpan start = peek().span;
          std::string sup = expect_ident("role id").text;
          expect_arrow();
          std::string inf = expect_ident("role id").text;
          decls.entries.push_back(RoleEdgeDecl{sup, inf, finish_span(start)});
        });
      } else if (s == "groups") {
        parse_entries([&] {
          auto [id, label, span] = labelled_entry();
          decls.entries.push_back(GroupDecl{id, label, span});
        });
      } else if (s == "attributes") {
        parse_entries([&] { decls.entries.push_back(attribute_entry()); });
      } else if (s == "aggregations") {
        parse_entries([&] {
          SourceSpan start = peek().span;
          expect_punct("(");
          std::string left = expect_ident("attribute id").text;
          expect_punct(",");
          std::string right = expect_ident("attribute id").text;
          expect_punct(")");
          expect_arrow();
          std::string product = expect_ident("attribute id").text;
          decls.entries.push_back(
              AggregationDecl{left, right, product, finish_span(start)});
        });
      } else if (s == "granularities") {
        parse_entries([&] {
          auto [id, label, span] = labelled_entry();
          decls.entries.push_back(GranularityDecl{id, label, span});
        });
      } else if (s == "tasks") {
        parse_entries([&] {
          SourceSpan start = peek().span;
          TaskDecl t;
          t.id = expect_ident("task id").text;
          expect_punct(":");
          t.label = expect_string("task label").text;
          expect_keyword("reads");
          t.reads = expect_ident("attribute id").text;
          if (at_keyword("via") && peek(1).kind == Tok::kIdent) {
            next();
            t.via = expect_ident("granularity id").text;
          }
          t.span = finish_span(start);
          decls.entries.push_back(std::move(t));
        });
      } else if (s == "purposes") {
        parse_entries([&] { decls.entries.push_back(purpose_entry()); });
      } else if (s == "role_purpose") {
        parse_entries([&] {
          SourceSpan start = peek().span;
          GrantDecl g;
          g.role = expect_ident("role id").text;
          expect_keyword("allowed");
          g.purpose = expect_ident("purpose id").text;
          g.condition = optional_when();
          g.span = finish_span(start);
          decls.entries.push_back(std::move(g));
        });
      } else if (s == "purpose_task_conditions") {
        parse_entries([&] {
          SourceSpan start = peek().span;
          TaskConditionDecl c;
          c.purpose = expect_ident("purpose id").text;
          expect_keyword("task");
          c.task = expect_ident("task id").text;
          if (!at_keyword("when")) fail("expected 'when'", "'when'");
          c.condition = *optional_when();
          c.span = finish_span(start);
          decls.entries.push_back(std::move(c));
        });
      } else if (s == "purpose_group") {
        parse_entries([&] {
          SourceSpan start = peek().span;
          GroupGrantDecl g;
          g.purpose = expect_ident("purpose id").text;
          expect_keyword("allowed");
          expect_keyword("group");
          g.group = expect_ident("group id").text;
          g.condition = optional_when();
          g.span = finish_span(start);
          decls.entries.push_back(std::move(g));
        });
      } else {
        throw ParseError(std::string(file_), name.span,
                         "unknown section '" + s + "'",
                         std::string(kSectionNames));
      }
    }
    return decls;
  }

 private:
  const Token& peek(std::size_t ahead = 0) const {
    std::size_t i = std::min(index_ + ahead, tokens_.size() - 1);
    return tokens_[i];
  }

  Token next() {
    Token t = peek();
    if (index_ < tokens_.size() - 1) ++index_;
    last_end_ = t.span.offset + t.span.length;
    return t;
  }

  [[noreturn]] void fail(const std::string& message, const std::string& expected) {
    throw ParseError(std::string(file_), peek().span,
                     message + ", found " + describe(peek()), expected);
  }

  SourceSpan finish_span(SourceSpan start) const {
    start.length = last_end_ - start.offset;
    return start;
  }

  bool at_keyword(std::string_view kw) const {
    return peek().kind == Tok::kIdent && peek().text == kw;
  }

  bool at_punct(std::string_view p) const {
    return peek().kind == Tok::kPunct && peek().text == p;
  }

  void expect_keyword(std::string_view kw) {
    if (!at_keyword(kw)) {
      fail("expected '" + std::string(kw) + "'", "'" + std::string(kw) + "'");
    }
    next();
  }

  void expect_punct(std::string_view p) {
    if (!at_punct(p)) {
      fail("expected '" + std::string(p) + "'", "'" + std::string(p) + "'");
    }
    next();
  }

  void expect_arrow() {
    if (peek().kind != Tok::kArrow) fail("expected '->'", "'->'");
    next();
  }

  Token expect_ident(const std::string& what) {
    if (peek().kind != Tok::kIdent) fail("expected " + what, what);
    return next();
  }

  Token expect_string(const std::string& what) {
    if (peek().kind != Tok::kString) fail("expected " + what, "string");
    return next();
  }

  template <typename Fn>
  void parse_entries(Fn entry) {
    while (!at_punct("}")) {
      if (peek().kind == Tok::kEnd) fail("expected '}'", "'}'");
      entry();
    }
    next();
  }

  std::tuple<std::string, std::string, SourceSpan> labelled_entry() {
    SourceSpan start = peek().span;
    std::string id = expect_ident("id").text;
    expect_punct(":");
    std::string label = expect_string("label").text;
    return {id, label, finish_span(start)};
  }

  AttributeDecl attribute_entry() {
    SourceSpan start = peek().span;
    AttributeDecl a;
    a.id = expect_ident("attribute id").text;
    expect_punct(":");
    a.label = expect_string("attribute label").text;
    if (at_keyword("groups") && peek(1).kind == Tok::kPunct &&
        peek(1).text == "(") {
      next();
      next();
      a.groups.push_back(expect_ident("group id").text);
      while (at_punct(",")) {
        next();
        a.groups.push_back(expect_ident("group id").text);
      }
      expect_punct(")");
    }
    if (at_keyword("collected") && peek(1).kind == Tok::kPunct &&
        peek(1).text == "=") {
      next();
      next();
      if (at_keyword("yes")) {
        a.collected = true;
      } else if (at_keyword("no")) {
        a.collected = false;
      } else {
        fail("expected 'yes' or 'no'", "'yes' or 'no'");
      }
      next();
    }
    a.span = finish_span(start);
    return a;
  }

  PurposeDecl purpose_entry() {
    SourceSpan start = peek().span;
    PurposeDecl p;
    p.id = expect_ident("purpose id").text;
    expect_punct(":");
    p.label = expect_string("purpose label").text;
    if (at_punct("=")) {
      next();
      expect_punct("[");
      p.tasks.push_back(expect_ident("task id").text);
      while (at_punct(",")) {
        next();
        p.tasks.push_back(expect_ident("task id").text);
      }
      expect_punct("]");
    }
    // `universal:` would start the next entry instead.
    if (at_keyword("universal") &&
        !(peek(1).kind == Tok::kPunct && peek(1).text == ":")) {
      next();
      p.universal = true;
    }
    p.span = finish_span(start);
    return p;
  }

  std::optional<ConditionExpr> optional_when() {
    if (!(at_keyword("when") && peek(1).kind == Tok::kString)) {
      return std::nullopt;
    }
    next();
    Token str = next();
    try {
      return parse_condition(str.text);
    } catch (const ConditionSyntaxError& e) {
      throw ParseError(std::string(file_), string_offset_span(str, e.offset()),
                       std::string("invalid condition: ") + e.what(), "");
    }
  }

  // Maps a byte offset in a decoded string back to the source text.
  SourceSpan string_offset_span(const Token& str, std::size_t decoded) const {
    SourceSpan span = str.span;
    std::size_t raw = span.offset + 1;
    std::size_t end = span.offset + span.length - 1;
    for (std::size_t i = 0; i < decoded && raw < end; ++i) {
      raw += text_[raw] == '\\' ? 2 : 1;
    }
    span.column += raw - span.offset;
    span.offset = raw;
    span.length = raw < end ? 1 : 0;
    return span;
  }

  std::string_view text_;
  std::string_view file_;
  std::vector<Token> tokens_;
  std::size_t index_ = 0;
  std::size_t last_end_ = 0;
};

std::string quote(std::string_view s) {
  std::string out = "\"";
  for (char c : s) {
    if (c == '"' || c == '\\') out.push_back('\\');
    out.push_back(c);
  }
  out.push_back('"');
  return out;
}

std::string when_clause(const std::optional<ConditionExpr>& c) {
  if (!c) return "";
  return " when " + quote(render_condition(*c));
}

// Emits `name { ... }` unless there is nothing to put inside.
class SectionWriter {
 public:
  explicit SectionWriter(std::string& out) : out_(out) {}

  template <typename Range, typename Fn>
  void section(std::string_view name, const Range& items, Fn line) {
    if (items.empty()) return;
    out_ += "\n";
    out_ += name;
    out_ += " {\n";
    for (const auto& item : items) {
      out_ += "  ";
      out_ += line(item);
      out_ += "\n";
    }
    out_ += "}\n";
  }

 private:
  std::string& out_;
};

std::string join_ids(const std::vector<std::string>& ids) {
  std::string out;
  for (std::size_t i = 0; i < ids.size(); ++i) {
    if (i > 0) out += ", ";
    out += ids[i];
  }
  return out;
}

}  // namespace

std::string format_location(std::string_view file, const SourceSpan& span) {
  return std::string(file) + ":" + std::to_string(span.line) + ":" +
         std::to_string(span.column);
}

ParseError::ParseError(std::string file, SourceSpan span, std::string message,
                       std::string expected)
    : Error(format_location(file, span) + ": " + message),
      file_(std::move(file)),
      span_(span),
      detail_(std::move(message)),
      expected_(std::move(expected)) {}

namespace {

std::string lowering_summary(const std::string& file,
                             const std::vector<Diagnostic>& diagnostics) {
  std::string out;
  for (const auto& d : diagnostics) {
    if (!out.empty()) out += "\n";
    out += format_location(file, d.span) + ": " + d.rule + ": " + d.message;
  }
  return out;
}

}  // namespace

LoweringError::LoweringError(std::string file, std::vector<Diagnostic> diagnostics)
    : Error(lowering_summary(file, diagnostics)),
      file_(std::move(file)),
      diagnostics_(std::move(diagnostics)) {}

Declarations parse_policy(std::string_view text, std::string_view file) {
  return Parser(text, file).run();
}

PolicyModel lower(const Declarations& decls) {
  PolicyModel m;
  m.name = decls.policy_name;
  std::map<std::pair<EntityKind, std::string>, std::vector<SourceSpan>> spans;
  auto note = [&](EntityKind kind, std::string key, const SourceSpan& span) {
    spans[{kind, std::move(key)}].push_back(span);
  };

  for (const auto& entry : decls.entries) {
    std::visit(
        [&](const auto& d) {
          using T = std::decay_t<decltype(d)>;
          if constexpr (std::is_same_v<T, RoleDecl>) {
            m.roles.push_back(Role{d.id, d.label});
            note(EntityKind::kRole, d.id, d.span);
          } else if constexpr (std::is_same_v<T, RoleEdgeDecl>) {
            m.role_edges.push_back(RoleEdge{d.superior, d.inferior});
            note(EntityKind::kRoleEdge, edge_key(m.role_edges.back()), d.span);
          } else if constexpr (std::is_same_v<T, GroupDecl>) {
            m.groups.push_back(AttributeGroup{d.id, d.label});
            note(EntityKind::kGroup, d.id, d.span);
          } else if constexpr (std::is_same_v<T, AttributeDecl>) {
            m.attributes.push_back(
                Attribute{d.id, d.label, d.groups, d.collected, false});
            note(EntityKind::kAttribute, d.id, d.span);
          } else if constexpr (std::is_same_v<T, AggregationDecl>) {
            m.aggregations.push_back(Aggregation{d.left, d.right, d.product});
            note(EntityKind::kAggregation,
                 aggregation_key(m.aggregations.back()), d.span);
          } else if constexpr (std::is_same_v<T, GranularityDecl>) {
            m.granularities.push_back(GranularityFn{d.id, d.description});
            note(EntityKind::kGranularity, d.id, d.span);
          } else if constexpr (std::is_same_v<T, TaskDecl>) {
            m.tasks.push_back(Task{d.id, d.label, d.reads, d.via});
            note(EntityKind::kTask, d.id, d.span);
          } else if constexpr (std::is_same_v<T, PurposeDecl>) {
            m.purposes.push_back(Purpose{d.id, d.label, d.tasks, d.universal});
            note(EntityKind::kPurpose, d.id, d.span);
          } else if constexpr (std::is_same_v<T, GrantDecl>) {
            m.rp_grants.push_back(RolePurposeGrant{d.role, d.purpose, d.condition});
            note(EntityKind::kRolePurposeGrant, pair_key(d.role, d.purpose),
                 d.span);
          } else if constexpr (std::is_same_v<T, TaskConditionDecl>) {
            m.pt_conditions.push_back(
                PurposeTaskCondition{d.purpose, d.task, d.condition});
            note(EntityKind::kPurposeTaskCondition, pair_key(d.purpose, d.task),
                 d.span);
          } else if constexpr (std::is_same_v<T, GroupGrantDecl>) {
            m.pg_grants.push_back(
                PurposeGroupGrant{d.purpose, d.group, d.condition});
            note(EntityKind::kPurposeGroupGrant, pair_key(d.purpose, d.group),
                 d.span);
          }
        },
        entry);
  }

  for (auto& a : m.attributes) {
    for (const auto& agg : m.aggregations) {
      if (agg.product == a.id) a.derived = true;
    }
  }

  ValidationReport report = validate(m);
  if (report.empty()) return m;

  std::vector<Diagnostic> diagnostics;
  for (const auto& e : report) {
    SourceSpan span = decls.header_span;
    auto it = spans.find({e.kind, e.entity});
    if (it != spans.end()) {
      bool repeat = e.rule.rfind("duplicate-", 0) == 0 &&
                    e.rule != "duplicate-group-membership" &&
                    e.rule != "duplicate-task-in-purpose";
      span = repeat && it->second.size() > 1 ? it->second[1] : it->second[0];
    }
    diagnostics.push_back(Diagnostic{e.rule, e.message, span});
  }
  throw LoweringError(decls.file, std::move(diagnostics));
}

PolicyModel load_policy(std::string_view text, std::string_view file) {
  return lower(parse_policy(text, file));
}

std::string serialize(const PolicyModel& m) {
  std::string out = "policy " + quote(m.name) + "\n";
  SectionWriter w(out);
  w.section("roles", m.roles,
            [](const Role& r) { return r.id + ": " + quote(r.label); });
  w.section("role_hierarchy", m.role_edges, [](const RoleEdge& e) {
    return e.superior + " -> " + e.inferior;
  });
  w.section("groups", m.groups, [](const AttributeGroup& g) {
    return g.id + ": " + quote(g.label);
  });
  w.section("attributes", m.attributes, [](const Attribute& a) {
    std::string line = a.id + ": " + quote(a.label);
    if (!a.groups.empty()) line += " groups(" + join_ids(a.groups) + ")";
    if (a.collected) line += *a.collected ? " collected = yes" : " collected = no";
    return line;
  });
  w.section("aggregations", m.aggregations, [](const Aggregation& a) {
    return "(" + a.left + ", " + a.right + ") -> " + a.product;
  });
  w.section("granularities", m.granularities, [](const GranularityFn& g) {
    return g.id + ": " + quote(g.description);
  });
  w.section("tasks", m.tasks, [](const Task& t) {
    std::string line = t.id + ": " + quote(t.label) + " reads " + t.reads;
    if (t.via) line += " via " + *t.via;
    return line;
  });
  w.section("purposes", m.purposes, [](const Purpose& p) {
    std::string line = p.id + ": " + quote(p.label);
    if (!p.tasks.empty()) line += " = [" + join_ids(p.tasks) + "]";
    if (p.universal) line += " universal";
    return line;
  });
  w.section("role_purpose", m.rp_grants, [](const RolePurposeGrant& g) {
    return g.role + " allowed " + g.purpose + when_clause(g.condition);
  });
  w.section("purpose_task_conditions", m.pt_conditions,
            [](const PurposeTaskCondition& c) {
              return c.purpose + " task " + c.task +
                     when_clause(c.condition);
            });
  w.section("purpose_group", m.pg_grants, [](const PurposeGroupGrant& g) {
    return g.purpose + " allowed group " + g.group + when_clause(g.condition);
  });
  return out;
}

}  // namespace pppm
