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

// Sectioned policy file format.
//
//   policy "Name"
//   roles { r1: "Manager" }
//   role_hierarchy { r1 -> r2 }
//   groups { personal: "Personal information" }
//   attributes { d1: "Name" groups(personal) collected = yes }
//   aggregations { (d6, d2) -> d7 }
//   granularities { Date2Age: "Convert date of birth to age" }
//   tasks { t8: "Analyze based on Age" reads d6 via Date2Age }
//   purposes { p1: "Shipment" = [t1, t2] universal }
//   role_purpose { r4 allowed p3 when "08:00 < now < 17:00" }
//   purpose_task_conditions { p3 task t1 when "age > 18" }
//   purpose_group { p12 allowed group personal when "consent == true" }
//
// Sections may appear in any order (and more than once). `#` starts a
// comment that runs to the end of the line.

#include <cstddef>
#include <optional>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "pppm/condition.hpp"
#include "pppm/error.hpp"
#include "pppm/model.hpp"

namespace pppm {

struct SourceSpan {
  std::size_t line = 1;    // 1-based
  std::size_t column = 1;  // 1-based, in bytes
  std::size_t offset = 0;
  std::size_t length = 0;
};

struct RoleDecl {
  std::string id;
  std::string label;
  SourceSpan span;
};

struct RoleEdgeDecl {
  std::string superior;
  std::string inferior;
  SourceSpan span;
};

struct GroupDecl {
  std::string id;
  std::string label;
  SourceSpan span;
};

struct AttributeDecl {
  std::string id;
  std::string label;
  std::vector<std::string> groups;
  std::optional<bool> collected;
  SourceSpan span;
};

struct AggregationDecl {
  std::string left;
  std::string right;
  std::string product;
  SourceSpan span;
};

struct GranularityDecl {
  std::string id;
  std::string description;
  SourceSpan span;
};

struct TaskDecl {
  std::string id;
  std::string label;
  std::string reads;
  std::optional<std::string> via;
  SourceSpan span;
};

struct PurposeDecl {
  std::string id;
  std::string label;
  std::vector<std::string> tasks;
  bool universal = false;
  SourceSpan span;
};

struct GrantDecl {
  std::string role;
  std::string purpose;
  std::optional<ConditionExpr> condition;
  SourceSpan span;
};

struct TaskConditionDecl {
  std::string purpose;
  std::string task;
  ConditionExpr condition;
  SourceSpan span;
};

struct GroupGrantDecl {
  std::string purpose;
  std::string group;
  std::optional<ConditionExpr> condition;
  SourceSpan span;
};

using Declaration =
    std::variant<RoleDecl, RoleEdgeDecl, GroupDecl, AttributeDecl,
                 AggregationDecl, GranularityDecl, TaskDecl, PurposeDecl,
                 GrantDecl, TaskConditionDecl, GroupGrantDecl>;

struct Declarations {
  std::string file;
  std::string policy_name;
  SourceSpan header_span;
  std::vector<Declaration> entries;  // source order
};

std::string format_location(std::string_view file, const SourceSpan& span);

class ParseError : public Error {
 public:
  ParseError(std::string file, SourceSpan span, std::string message,
             std::string expected);

  const std::string& file() const { return file_; }
  const SourceSpan& span() const { return span_; }
  const std::string& detail() const { return detail_; }
  const std::string& expected() const { return expected_; }

 private:
  std::string file_;
  SourceSpan span_;
  std::string detail_;
  std::string expected_;
};

struct Diagnostic {
  std::string rule;
  std::string message;
  SourceSpan span;
};

class LoweringError : public Error {
 public:
  LoweringError(std::string file, std::vector<Diagnostic> diagnostics);

  const std::string& file() const { return file_; }
  const std::vector<Diagnostic>& diagnostics() const { return diagnostics_; }

 private:
  std::string file_;
  std::vector<Diagnostic> diagnostics_;
};

// Throws ParseError at the first failure. Condition strings inside `when`
// clauses are parsed here as well.
Declarations parse_policy(std::string_view text,
                          std::string_view file = "<input>");

// Resolves references and validates. Throws LoweringError carrying every
// problem found, each pointing at the declaration it concerns.
PolicyModel lower(const Declarations& decls);

// parse_policy + lower.
PolicyModel load_policy(std::string_view text,
                        std::string_view file = "<input>");

// Canonical text: fixed section order, empty sections omitted, one entry
// per line with two-space indent, LF line endings.
std::string serialize(const PolicyModel& model);

}  // namespace pppm
