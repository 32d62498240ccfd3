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

#include <gtest/gtest.h>

#include <random>

#include "support.hpp"

namespace pppm {
namespace {

using testing::chatterbaby;
using testing::imaginary_shop;

std::set<std::string> subjects(const std::vector<Finding>& findings,
                               const std::string& rule) {
  std::set<std::string> out;
  for (const auto& f : findings) {
    if (f.rule == rule) out.insert(subject_text(f));
  }
  return out;
}

TEST(Lints, ChatterbabyFindings) {
  auto findings = run_lints(chatterbaby());
  EXPECT_EQ(subjects(findings, "L1"), (std::set<std::string>{"p4", "p17", "p18"}));
  EXPECT_EQ(subjects(findings, "L3"), (std::set<std::string>{"p24,r1"}));
  EXPECT_EQ(subjects(findings, "L4"),
            (std::set<std::string>{"p24,nonpersonal", "p21,data"}));
  EXPECT_EQ(subjects(findings, "L5"), (std::set<std::string>{"p12,personal"}));
  EXPECT_EQ(subjects(findings, "L6"),
            (std::set<std::string>{"d32", "d33", "d34", "d35"}));
  EXPECT_EQ(subjects(findings, "L8"),
            (std::set<std::string>{"p5,acoustic", "p26,profile", "p23,service_info"}));
  EXPECT_EQ(subjects(findings, "L9"), (std::set<std::string>{"d7"}));
  EXPECT_TRUE(subjects(findings, "L2").empty());
  EXPECT_EQ(subjects(findings, "L7").size(), 18u);
}

TEST(Lints, ImaginaryShopIsClean) {
  EXPECT_TRUE(run_lints(imaginary_shop()).empty());
}

TEST(Lints, SortedAndDeterministic) {
  auto a = run_lints(chatterbaby());
  auto b = run_lints(chatterbaby());
  EXPECT_EQ(a, b);
  EXPECT_TRUE(std::is_sorted(a.begin(), a.end(), [](const Finding& x, const Finding& y) {
    return std::tie(x.rule, x.subject, x.message) < std::tie(y.rule, y.subject, y.message);
  }));
}

TEST(Lints, DefaultSeverities) {
  for (const auto& f : run_lints(chatterbaby())) {
    if (f.rule == "L3" || f.rule == "L4" || f.rule == "L9") {
      EXPECT_EQ(f.severity, Severity::kError);
    } else if (f.rule == "L7") {
      EXPECT_EQ(f.severity, Severity::kInfo);
    } else {
      EXPECT_EQ(f.severity, Severity::kWarning);
    }
  }
}

TEST(Lints, OrphanRole) {
  PolicyModel m = imaginary_shop();
  m.roles.push_back({"r5", "Intern"});
  EXPECT_EQ(subjects(run_lints(m), "L2"), (std::set<std::string>{"r5"}));
}

TEST(Lints, CollectionConflictThroughTaskRead) {
  PolicyModel m = imaginary_shop();
  for (auto& a : m.attributes) {
    if (a.id == "d2") a.collected = false;
  }
  EXPECT_EQ(subjects(run_lints(m), "L9"), (std::set<std::string>{"d2"}));
}

TEST(Lints, DisablingARuleRemovesOnlyItsFindings) {
  auto all = run_lints(chatterbaby());
  for (const auto& info : rule_catalog()) {
    std::vector<std::string> others;
    for (const auto& o : rule_catalog()) {
      if (o.id != info.id) others.push_back(o.id);
    }
    auto without = run_lints(chatterbaby(), LintConfig::make(others));
    std::vector<Finding> expected;
    for (const auto& f : all) {
      if (f.rule != info.id) expected.push_back(f);
    }
    EXPECT_EQ(without, expected) << info.id;
  }
}

TEST(Lints, OrphanPurposeIsSoundOnRandomModels) {
  std::mt19937 rng(19);
  for (int i = 0; i < 1000; ++i) {
    PolicyModel m = testing::random_model(rng);
    auto l1 = subjects(run_lints(m, LintConfig::make({"L1"})), "L1");
    for (const auto& p : m.purposes) {
      bool granted = false;
      for (const auto& g : m.rp_grants) granted |= g.purpose == p.id;
      EXPECT_EQ(l1.count(p.id) == 1, !granted) << p.id;
    }
  }
}

// Giving a purpose tasks that read every member of its granted groups must
// silence L5 for those pairs.
TEST(Lints, FullCoverageNeverTriggersUnjustifiedGrant) {
  std::mt19937 rng(29);
  auto cover = [](PolicyModel m) {
    int next = 1000;
    for (const auto& g : m.pg_grants) {
      for (const auto& member : m.group_members(g.group)) {
        std::string tid = "t" + std::to_string(next++);
        m.tasks.push_back({tid, "Cover", member, std::nullopt});
        for (auto& p : m.purposes) {
          if (p.id == g.purpose) p.tasks.push_back(tid);
        }
      }
    }
    return m;
  };
  for (int i = 0; i < 300; ++i) {
    PolicyModel m = cover(testing::random_model(rng));
    ASSERT_TRUE(validate(m).empty());
    EXPECT_TRUE(subjects(run_lints(m), "L5").empty());
  }
  EXPECT_TRUE(subjects(run_lints(cover(chatterbaby())), "L5").empty());
}

TEST(LintConfig, RulesBySelectorAndSeverityOverrides) {
  EXPECT_EQ(resolve_rule("unjustified-group-grant"), "L5");
  EXPECT_EQ(resolve_rule("L1"), "L1");
  EXPECT_THROW(resolve_rule("L42"), ConfigError);
  EXPECT_THROW(LintConfig::make({"nope"}), ConfigError);
  EXPECT_THROW(parse_severity("fatal"), ConfigError);

  auto config = LintConfig::make({"orphan-purpose"}, {{"L1", Severity::kError}});
  auto findings = run_lints(chatterbaby(), config);
  ASSERT_EQ(findings.size(), 3u);
  for (const auto& f : findings) EXPECT_EQ(f.severity, Severity::kError);
}

TEST(Format, TsvAndText) {
  auto findings = run_lints(chatterbaby(), LintConfig::make({"L9"}));
  std::string tsv = format_findings_tsv(findings);
  EXPECT_EQ(tsv.rfind("L9\terror\td7\t", 0), 0u);
  EXPECT_EQ(std::count(tsv.begin(), tsv.end(), '\n'), 1);
  std::string text = format_findings_text(findings);
  EXPECT_EQ(text.rfind("L9 error [d7] ", 0), 0u);
  EXPECT_EQ(text.find('\x1b'), std::string::npos);
  EXPECT_NE(format_findings_text(findings, true).find('\x1b'), std::string::npos);
}

TEST(Format, MatchesGoldenFiles) {
  EXPECT_TRUE(testing::matches_golden("chatterbaby_lint.tsv",
                                      format_findings_tsv(run_lints(chatterbaby()))));
}

}  // namespace
}  // namespace pppm
