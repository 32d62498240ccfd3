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

#include "pppm/analysis.hpp"

#include <algorithm>
#include <tuple>

namespace pppm {
namespace {

std::string quoted_label(const std::string& label) { return "\"" + label + "\""; }

std::set<std::string> read_by_tasks(const PolicyModel& m, const Purpose& p) {
  std::set<std::string> out;
  for (const auto& tid : p.tasks) {
    if (const Task* t = m.find_task(tid)) out.insert(t->reads);
  }
  return out;
}

class Linter {
 public:
  Linter(const PolicyModel& model, const LintConfig& config)
      : m_(model), config_(config) {
    for (const auto& a : m_.attributes) all_attributes_.insert(a.id);
  }

  std::vector<Finding> run() {
    orphan_purposes();
    orphan_roles();
    universal_purposes();
    universal_data_grants();
    unjustified_group_grants();
    unused_attributes();
    taskless_purposes();
    empty_groups();
    collection_conflicts();
    std::sort(findings_.begin(), findings_.end(),
              [](const Finding& a, const Finding& b) {
                return std::tie(a.rule, a.subject, a.message) <
                       std::tie(b.rule, b.subject, b.message);
              });
    return std::move(findings_);
  }

 private:
  void add(const char* rule, std::vector<std::string> subject,
           std::string message) {
    if (!config_.enabled(rule)) return;
    findings_.push_back(Finding{rule, config_.severity(rule), std::move(subject),
                                std::move(message)});
  }

  bool granted_to_some_role(const std::string& purpose) const {
    return std::any_of(m_.rp_grants.begin(), m_.rp_grants.end(),
                       [&](const auto& g) { return g.purpose == purpose; });
  }

  bool spans_every_attribute(const std::string& group) const {
    auto members = m_.group_members(group);
    return !members.empty() && members.size() == all_attributes_.size();
  }

  // Group grants that L4 reports; they do not count as specific coverage.
  bool is_catch_all(const PurposeGroupGrant& g) const {
    const Purpose* p = m_.find_purpose(g.purpose);
    return (p && p->universal) || spans_every_attribute(g.group);
  }

  void orphan_purposes() {
    for (const auto& p : m_.purposes) {
      if (!granted_to_some_role(p.id)) {
        add("L1", {p.id},
            "purpose " + quoted_label(p.label) +
                " is not granted to any role; no one is responsible for it");
      }
    }
  }

  void orphan_roles() {
    for (const auto& r : m_.roles) {
      std::vector<std::string> holders = inferiors(m_, r.id);
      holders.push_back(r.id);
      bool any = std::any_of(m_.rp_grants.begin(), m_.rp_grants.end(),
                             [&](const auto& g) {
                               return std::find(holders.begin(), holders.end(),
                                                g.role) != holders.end();
                             });
      if (!any) {
        add("L2", {r.id},
            "role " + quoted_label(r.label) +
                " holds no purpose, directly or through inferior roles");
      }
    }
  }

  void universal_purposes() {
    for (const auto& g : m_.rp_grants) {
      const Purpose& p = m_.purpose(g.purpose);
      if (p.universal) {
        add("L3", {p.id, g.role},
            "role " + quoted_label(m_.role(g.role).label) +
                " is granted the universal purpose " + quoted_label(p.label));
      }
    }
  }

  void universal_data_grants() {
    for (const auto& g : m_.pg_grants) {
      const Purpose& p = m_.purpose(g.purpose);
      const std::string& group_label = m_.find_group(g.group)->label;
      if (p.universal) {
        add("L4", {p.id, g.group},
            "universal purpose " + quoted_label(p.label) + " may use group " +
                quoted_label(group_label) + " for any purpose");
      } else if (spans_every_attribute(g.group)) {
        add("L4", {p.id, g.group},
            "purpose " + quoted_label(p.label) + " is granted group " +
                quoted_label(group_label) + " which contains every attribute");
      }
    }
  }

  void unjustified_group_grants() {
    for (const auto& g : m_.pg_grants) {
      const Purpose& p = m_.purpose(g.purpose);
      auto members = m_.group_members(g.group);
      if (members.empty()) continue;
      auto read = read_by_tasks(m_, p);
      std::size_t used = std::count_if(members.begin(), members.end(),
                                       [&](const auto& a) { return read.count(a); });
      if (used > 0 && used < members.size()) {
        add("L5", {p.id, g.group},
            "purpose " + quoted_label(p.label) + " is granted group " +
                quoted_label(m_.find_group(g.group)->label) + " (" +
                std::to_string(members.size()) + " attributes) but its tasks read only " +
                std::to_string(used));
      }
    }
  }

  void unused_attributes() {
    std::set<std::string> covered;
    for (const auto& t : m_.tasks) covered.insert(t.reads);
    for (const auto& g : m_.pg_grants) {
      if (is_catch_all(g)) continue;
      for (auto& a : m_.group_members(g.group)) covered.insert(std::move(a));
    }
    for (const auto& a : m_.attributes) {
      if (!covered.count(a.id)) {
        add("L6", {a.id},
            "attribute " + quoted_label(a.label) +
                " is not connected to any purpose through a task or a specific group grant");
      }
    }
  }

  void taskless_purposes() {
    for (const auto& p : m_.purposes) {
      if (p.tasks.empty() && granted_to_some_role(p.id)) {
        add("L7", {p.id},
            "purpose " + quoted_label(p.label) +
                " is granted but has no tasks; how it uses data is unclear");
      }
    }
  }

  void empty_groups() {
    for (const auto& g : m_.pg_grants) {
      if (m_.group_members(g.group).empty()) {
        add("L8", {g.purpose, g.group},
            "purpose " + quoted_label(m_.purpose(g.purpose).label) +
                " is granted group " + quoted_label(m_.find_group(g.group)->label) +
                " which has no attributes");
      }
    }
  }

  void collection_conflicts() {
    std::set<std::string> reachable;
    for (const auto& t : m_.tasks) reachable.insert(t.reads);
    for (const auto& g : m_.pg_grants) {
      for (auto& a : m_.group_members(g.group)) reachable.insert(std::move(a));
    }
    for (const auto& a : m_.attributes) {
      if (a.collected == false && reachable.count(a.id)) {
        add("L9", {a.id},
            "attribute " + quoted_label(a.label) +
                " is declared as not collected, yet purposes are granted access to it");
      }
    }
  }

  const PolicyModel& m_;
  const LintConfig& config_;
  std::set<std::string> all_attributes_;
  std::vector<Finding> findings_;
};

std::string sanitize(std::string s) {
  for (char& c : s) {
    if (c == '\t' || c == '\n' || c == '\r') c = ' ';
  }
  return s;
}

}  // namespace

std::string_view to_string(Severity s) {
  switch (s) {
    case Severity::kError: return "error";
    case Severity::kWarning: return "warning";
    case Severity::kInfo: return "info";
  }
  return "?";
}

Severity parse_severity(std::string_view text) {
  if (text == "error") return Severity::kError;
  if (text == "warning") return Severity::kWarning;
  if (text == "info") return Severity::kInfo;
  throw ConfigError("unknown severity '" + std::string(text) +
                    "' (expected error, warning or info)");
}

const std::vector<RuleInfo>& rule_catalog() {
  static const std::vector<RuleInfo> catalog = {
      {"L1", "orphan-purpose", Severity::kWarning,
       "purpose with no role-purpose grant"},
      {"L2", "orphan-role", Severity::kWarning,
       "role with no direct or inherited grant"},
      {"L3", "universal-purpose", Severity::kError,
       "role granted a universal purpose"},
      {"L4", "universal-data-grant", Severity::kError,
       "universal purpose with a group grant, or a group spanning every attribute"},
      {"L5", "unjustified-group-grant", Severity::kWarning,
       "group grant whose members are only partly read by the purpose's tasks"},
      {"L6", "unused-attribute", Severity::kWarning,
       "attribute read by no task and covered by no specific group grant"},
      {"L7", "taskless-granted-purpose", Severity::kInfo,
       "granted purpose with an empty task list"},
      {"L8", "dangling-empty-group", Severity::kWarning,
       "granted group with no member attributes"},
      {"L9", "collection-conflict", Severity::kError,
       "attribute declared not collected but accessible to a purpose"},
  };
  return catalog;
}

std::string resolve_rule(std::string_view rule) {
  for (const auto& info : rule_catalog()) {
    if (info.id == rule || info.name == rule) return info.id;
  }
  throw ConfigError("unknown lint rule '" + std::string(rule) + "'");
}

LintConfig::LintConfig() {
  for (const auto& info : rule_catalog()) {
    enabled_.insert(info.id);
    severities_[info.id] = info.severity;
  }
}

LintConfig LintConfig::make(const std::vector<std::string>& rules,
                            const std::map<std::string, Severity>& overrides) {
  LintConfig config;
  if (!rules.empty()) {
    config.enabled_.clear();
    for (const auto& r : rules) config.enabled_.insert(resolve_rule(r));
  }
  for (const auto& [rule, severity] : overrides) {
    config.severities_[resolve_rule(rule)] = severity;
  }
  return config;
}

bool LintConfig::enabled(std::string_view rule_id) const {
  return enabled_.count(std::string(rule_id)) > 0;
}

Severity LintConfig::severity(std::string_view rule_id) const {
  return severities_.at(std::string(rule_id));
}

std::vector<Finding> run_lints(const PolicyModel& model,
                               const LintConfig& config) {
  require_valid(model);
  return Linter(model, config).run();
}

std::string subject_text(const Finding& f) {
  std::string out;
  for (std::size_t i = 0; i < f.subject.size(); ++i) {
    if (i > 0) out += ",";
    out += f.subject[i];
  }
  return out;
}

std::string format_findings_tsv(const std::vector<Finding>& findings) {
  std::string out;
  for (const auto& f : findings) {
    out += f.rule + "\t" + std::string(to_string(f.severity)) + "\t" +
           subject_text(f) + "\t" + sanitize(f.message) + "\n";
  }
  return out;
}

std::string format_findings_text(const std::vector<Finding>& findings,
                                 bool color) {
  std::string out;
  for (const auto& f : findings) {
    std::string sev(to_string(f.severity));
    if (color) {
      const char* code = f.severity == Severity::kError     ? "\x1b[31m"
                         : f.severity == Severity::kWarning ? "\x1b[33m"
                                                            : "\x1b[36m";
      sev = code + sev + "\x1b[0m";
    }
    out += f.rule + " " + sev + " [" + subject_text(f) + "] " +
           sanitize(f.message) + "\n";
  }
  std::size_t errors = 0, warnings = 0, infos = 0;
  for (const auto& f : findings) {
    if (f.severity == Severity::kError) ++errors;
    else if (f.severity == Severity::kWarning) ++warnings;
    else ++infos;
  }
  out += std::to_string(findings.size()) + " finding(s): " +
         std::to_string(errors) + " error, " + std::to_string(warnings) +
         " warning, " + std::to_string(infos) + " info\n";
  return out;
}

}  // namespace pppm
