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

// Gap-analysis lint catalog over a valid policy model.
//
//   L1 orphan-purpose            warning  purpose with no role-purpose grant
//   L2 orphan-role               warning  role with no direct or inherited grant
//   L3 universal-purpose         error    grant of a universal ("Any") purpose
//   L4 universal-data-grant      error    universal purpose holding a group,
//                                         or a group that spans every attribute
//   L5 unjustified-group-grant   warning  tasks read a strict subset of the group
//   L6 unused-attribute          warning  no task reads it, no specific group
//                                         grant covers it
//   L7 taskless-granted-purpose  info     granted purpose with no tasks
//   L8 dangling-empty-group      warning  granted group with no members
//   L9 collection-conflict       error    collected = no, yet accessible

#include <map>
#include <set>
#include <string>
#include <string_view>
#include <vector>

#include "pppm/model.hpp"

namespace pppm {

enum class Severity { kError, kWarning, kInfo };

std::string_view to_string(Severity s);
// Throws ConfigError for anything but error|warning|info.
Severity parse_severity(std::string_view text);

struct RuleInfo {
  std::string id;
  std::string name;
  Severity severity;
  std::string summary;
};

const std::vector<RuleInfo>& rule_catalog();

struct Finding {
  std::string rule;
  Severity severity;
  std::vector<std::string> subject;
  std::string message;

  bool operator==(const Finding&) const = default;
};

class LintConfig {
 public:
  // Every rule enabled at its default severity.
  LintConfig();

  // Rules may be named by id ("L5") or name ("unjustified-group-grant").
  // An empty list enables every rule. Throws ConfigError on unknown rules.
  static LintConfig make(const std::vector<std::string>& rules,
                         const std::map<std::string, Severity>& overrides = {});

  bool enabled(std::string_view rule_id) const;
  Severity severity(std::string_view rule_id) const;

 private:
  std::set<std::string> enabled_;
  std::map<std::string, Severity> severities_;
};

// Resolves a rule id or name to its id; throws ConfigError.
std::string resolve_rule(std::string_view rule);

// Sorted by rule, then subject, then message. Throws PreconditionError on an
// invalid model.
std::vector<Finding> run_lints(const PolicyModel& model,
                               const LintConfig& config = LintConfig());

std::string subject_text(const Finding& f);

// RULE<TAB>SEVERITY<TAB>SUBJECT<TAB>MESSAGE, one LF-terminated line each.
std::string format_findings_tsv(const std::vector<Finding>& findings);
std::string format_findings_text(const std::vector<Finding>& findings,
                                 bool color = false);

}  // namespace pppm
