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

#include "pppm/model.hpp"

#include <gtest/gtest.h>

#include <random>

#include "support.hpp"

namespace pppm {
namespace {

using testing::chatterbaby;
using testing::imaginary_shop;

std::vector<std::string> rules_of(const ValidationReport& report) {
  std::vector<std::string> out;
  for (const auto& e : report) out.push_back(e.rule);
  return out;
}

PolicyModel two_roles() {
  PolicyModel m;
  m.name = "t";
  m.roles = {{"r1", "Manager"}, {"r2", "Deliverer"}};
  return m;
}

TEST(Validate, FixturesAndEmptyModelAreValid) {
  EXPECT_TRUE(validate(imaginary_shop()).empty());
  EXPECT_TRUE(validate(chatterbaby()).empty());
  EXPECT_TRUE(validate(PolicyModel{}).empty());
}

TEST(Validate, TwoRoleCycleIsOneError) {
  PolicyModel m = two_roles();
  m.role_edges = {{"r1", "r2"}, {"r2", "r1"}};
  ValidationReport report = validate(m);
  ASSERT_EQ(report.size(), 1u);
  EXPECT_EQ(report[0].rule, "role-cycle");
  EXPECT_NE(report[0].message.find("r1"), std::string::npos);
  EXPECT_NE(report[0].message.find("r2"), std::string::npos);
}

TEST(Validate, StructuralRules) {
  PolicyModel m = two_roles();
  m.roles.push_back({"r1", "Again"});
  m.roles.push_back({"r3", ""});
  m.role_edges = {{"r1", "r1"}, {"r1", "r9"}, {"r1", "r2"}, {"r1", "r2"}};
  m.attributes = {{"d1", "A", {"g1", "g1"}, {}, false}, {"d2", "B", {}, {}, true}};
  m.groups = {{"g1", "G"}};
  m.aggregations = {{"d1", "d1", "d1"}};
  m.tasks = {{"t1", "T", "d1", std::nullopt}};
  m.purposes = {{"p1", "P", {"t1", "t1"}, false}};
  m.rp_grants = {{"r1", "p1", {}}, {"r1", "p1", {}}};
  m.pt_conditions = {{"p1", "t9", parse_condition("x > 1")}};
  m.pg_grants = {{"p1", "g1", {}}, {"p1", "g1", {}}};
  auto rules = rules_of(validate(m));
  for (const char* r :
       {"duplicate-id", "empty-label", "unknown-id", "self-edge", "duplicate-role-edge",
        "aggregation-product-is-input", "duplicate-group-membership", "derived-mismatch",
        "duplicate-task-in-purpose", "duplicate-grant", "duplicate-group-grant"}) {
    EXPECT_NE(std::find(rules.begin(), rules.end(), r), rules.end()) << r;
  }
  EXPECT_TRUE(std::is_sorted(rules.begin(), rules.end()));
}

TEST(Validate, TaskConditionMustReferenceMemberTask) {
  PolicyModel m = imaginary_shop();
  m.pt_conditions.push_back({"p1", "t6", parse_condition("x > 1")});
  auto rules = rules_of(validate(m));
  EXPECT_EQ(rules, std::vector<std::string>{"task-not-in-purpose"});
}

TEST(Validate, AggregationCycle) {
  PolicyModel m;
  m.attributes = {{"a", "A", {}, {}, true}, {"b", "B", {}, {}, true}, {"c", "C", {}, {}, false}};
  m.aggregations = {{"a", "c", "b"}, {"b", "c", "a"}};
  auto rules = rules_of(validate(m));
  EXPECT_NE(std::find(rules.begin(), rules.end(), "aggregation-cycle"), rules.end());
}

TEST(Validate, IdempotentAndPure) {
  std::mt19937 rng(5);
  for (int i = 0; i < 200; ++i) {
    PolicyModel m = testing::random_model(rng, {.aggregations = true});
    if (i % 3 == 0 && !m.role_edges.empty()) {
      m.role_edges.push_back({m.role_edges[0].inferior, m.role_edges[0].superior});
    }
    PolicyModel copy = m;
    ValidationReport a = validate(m);
    ValidationReport b = validate(m);
    EXPECT_EQ(a, b);
    EXPECT_EQ(m, copy);
  }
}

TEST(RequireValid, ThrowsPreconditionError) {
  PolicyModel m = two_roles();
  m.role_edges = {{"r1", "r2"}, {"r2", "r1"}};
  EXPECT_THROW(require_valid(m), PreconditionError);
  EXPECT_NO_THROW(require_valid(imaginary_shop()));
}

TEST(Inferiors, Examples) {
  EXPECT_EQ(inferiors(imaginary_shop(), "r1"), (std::vector<std::string>{"r2", "r3", "r4"}));
  EXPECT_TRUE(inferiors(imaginary_shop(), "r4").empty());
  EXPECT_EQ(inferiors(chatterbaby(), "r5"), (std::vector<std::string>{"r6", "r7"}));
  EXPECT_THROW(inferiors(imaginary_shop(), "r9"), LookupError);
}

TEST(Inferiors, MatchesPathEnumerationAndIsTransitive) {
  std::mt19937 rng(7);
  for (int i = 0; i < 500; ++i) {
    PolicyModel m = testing::random_model(rng);
    ASSERT_TRUE(validate(m).empty());
    for (const auto& r : m.roles) {
      auto inf = inferiors(m, r.id);
      std::set<std::string> got(inf.begin(), inf.end());
      EXPECT_EQ(got.size(), inf.size());
      EXPECT_FALSE(got.count(r.id));
      auto expected = testing::oracle_reachable(m, r.id);
      expected.erase(r.id);
      EXPECT_EQ(got, expected);
      for (const auto& r2 : inf) {
        for (const auto& r3 : inferiors(m, r2)) EXPECT_TRUE(got.count(r3));
      }
    }
  }
}

TEST(RolePath, ShortestChain) {
  EXPECT_EQ(role_path(imaginary_shop(), "r1", "r4"),
            (std::vector<std::string>{"r1", "r3", "r4"}));
  EXPECT_EQ(role_path(imaginary_shop(), "r2", "r2"), (std::vector<std::string>{"r2"}));
  EXPECT_TRUE(role_path(imaginary_shop(), "r2", "r1").empty());
}

TEST(AggregationSources, Examples) {
  EXPECT_EQ(aggregation_sources(imaginary_shop(), "d7"),
            (std::vector<std::string>{"d2", "d6"}));
  EXPECT_TRUE(aggregation_sources(imaginary_shop(), "d1").empty());
  EXPECT_THROW(aggregation_sources(imaginary_shop(), "d99"), LookupError);

  PolicyModel m;
  m.attributes = {{"a", "A", {}, {}, false}, {"b", "B", {}, {}, false},
                  {"c", "C", {}, {}, true},  {"d", "D", {}, {}, false},
                  {"e", "E", {}, {}, true}};
  m.aggregations = {{"a", "b", "c"}, {"c", "d", "e"}};
  ASSERT_TRUE(validate(m).empty());
  EXPECT_EQ(aggregation_sources(m, "e"), (std::vector<std::string>{"a", "b", "c", "d"}));
}

TEST(AggregationSources, MatchesFixpointOracle) {
  std::mt19937 rng(13);
  for (int i = 0; i < 500; ++i) {
    PolicyModel m = testing::random_model(rng, {.max_attributes = 8, .aggregations = true});
    ASSERT_TRUE(validate(m).empty());
    for (const auto& a : m.attributes) {
      auto got = aggregation_sources(m, a.id);
      auto expected = testing::oracle_sources(m, a.id);
      EXPECT_EQ(std::set<std::string>(got.begin(), got.end()), expected);
      EXPECT_TRUE(std::is_sorted(got.begin(), got.end()));
    }
  }
}

TEST(Fixtures, EveryTaskReadsOneDeclaredAttribute) {
  for (const PolicyModel* m : {&imaginary_shop(), &chatterbaby()}) {
    for (const auto& t : m->tasks) EXPECT_NE(m->find_attribute(t.reads), nullptr) << t.id;
  }
}

TEST(Lookups, FindAndThrow) {
  const PolicyModel& m = imaginary_shop();
  EXPECT_EQ(m.role("r1").label, "Manager");
  EXPECT_EQ(m.find_role("zz"), nullptr);
  EXPECT_THROW(m.purpose("p9"), LookupError);
  EXPECT_EQ(m.group_members("personal"),
            (std::vector<std::string>{"d1", "d3", "d4", "d5", "d6"}));
  ASSERT_NE(m.task_condition("p3", "t1"), nullptr);
  EXPECT_EQ(m.task_condition("p1", "t1"), nullptr);
}

}  // namespace
}  // namespace pppm
