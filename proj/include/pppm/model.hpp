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

// Privacy policy permission model: roles, purposes (ordered task lists),
// attributes with groups and aggregations, and the permission connections
// between them. A PolicyModel is plain data; validate() checks the
// structural invariants and the query functions assume a valid model.

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "pppm/condition.hpp"

namespace pppm {

struct Role {
  std::string id;
  std::string label;

  bool operator==(const Role&) const = default;
};

// superior holds at least all the access of inferior.
struct RoleEdge {
  std::string superior;
  std::string inferior;

  bool operator==(const RoleEdge&) const = default;
};

struct AttributeGroup {
  std::string id;
  std::string label;

  bool operator==(const AttributeGroup&) const = default;
};

struct Attribute {
  std::string id;
  std::string label;
  std::vector<std::string> groups;
  std::optional<bool> collected;  // unset: the policy does not say
  bool derived = false;           // product of some aggregation

  bool operator==(const Attribute&) const = default;
};

// (left, right) -> product
struct Aggregation {
  std::string left;
  std::string right;
  std::string product;

  bool operator==(const Aggregation&) const = default;
};

// Named precision conversion such as Date2Age. Opaque: never evaluated.
struct GranularityFn {
  std::string id;
  std::string description;

  bool operator==(const GranularityFn&) const = default;
};

struct Task {
  std::string id;
  std::string label;
  std::string reads;               // exactly one attribute
  std::optional<std::string> via;  // granularity fn

  bool operator==(const Task&) const = default;
};

struct Purpose {
  std::string id;
  std::string label;
  std::vector<std::string> tasks;  // order is significant
  bool universal = false;

  bool operator==(const Purpose&) const = default;
};

struct RolePurposeGrant {
  std::string role;
  std::string purpose;
  std::optional<ConditionExpr> condition;

  bool operator==(const RolePurposeGrant&) const = default;
};

// Condition on a task's attribute access, scoped to one purpose.
struct PurposeTaskCondition {
  std::string purpose;
  std::string task;
  ConditionExpr condition;

  bool operator==(const PurposeTaskCondition&) const = default;
};

struct PurposeGroupGrant {
  std::string purpose;
  std::string group;
  std::optional<ConditionExpr> condition;

  bool operator==(const PurposeGroupGrant&) const = default;
};

struct PolicyModel {
  std::string name;
  std::vector<Role> roles;
  std::vector<RoleEdge> role_edges;
  std::vector<AttributeGroup> groups;
  std::vector<Attribute> attributes;
  std::vector<Aggregation> aggregations;
  std::vector<GranularityFn> granularities;
  std::vector<Task> tasks;
  std::vector<Purpose> purposes;
  std::vector<RolePurposeGrant> rp_grants;
  std::vector<PurposeTaskCondition> pt_conditions;
  std::vector<PurposeGroupGrant> pg_grants;

  bool operator==(const PolicyModel&) const = default;

  // Lookups return nullptr when the id is not declared.
  const Role* find_role(std::string_view id) const;
  const AttributeGroup* find_group(std::string_view id) const;
  const Attribute* find_attribute(std::string_view id) const;
  const GranularityFn* find_granularity(std::string_view id) const;
  const Task* find_task(std::string_view id) const;
  const Purpose* find_purpose(std::string_view id) const;

  // Throwing variants (LookupError).
  const Role& role(std::string_view id) const;
  const Attribute& attribute(std::string_view id) const;
  const Purpose& purpose(std::string_view id) const;

  // Attribute ids in declaration order.
  std::vector<std::string> group_members(std::string_view group) const;
  const PurposeTaskCondition* task_condition(std::string_view purpose,
                                             std::string_view task) const;
};

enum class EntityKind {
  kModel,
  kRole,
  kRoleEdge,
  kGroup,
  kAttribute,
  kAggregation,
  kGranularity,
  kTask,
  kPurpose,
  kRolePurposeGrant,
  kPurposeTaskCondition,
  kPurposeGroupGrant,
};

std::string_view entity_kind_name(EntityKind kind);

struct ValidationError {
  std::string rule;    // e.g. "unknown-id", "role-cycle"
  EntityKind kind;
  std::string entity;  // id, or a composite key such as "r1->r2"
  std::string message;

  bool operator==(const ValidationError&) const = default;
};

using ValidationReport = std::vector<ValidationError>;

// Every violated invariant, ordered by rule, then entity.
ValidationReport validate(const PolicyModel& model);

// Throws PreconditionError carrying the first few report lines.
void require_valid(const PolicyModel& model);

// Roles reachable through superior->inferior edges, excluding `role`.
// Breadth-first; each frontier expanded in id order.
std::vector<std::string> inferiors(const PolicyModel& model,
                                   std::string_view role);

// Inferior chain from `from` down to `to`, both inclusive; empty when `to`
// is not reachable. Shortest path, ties broken by id.
std::vector<std::string> role_path(const PolicyModel& model,
                                   std::string_view from, std::string_view to);

// Attributes the given one is transitively derived from, sorted by id.
std::vector<std::string> aggregation_sources(const PolicyModel& model,
                                             std::string_view attribute);

// Key strings used for composite entities in reports and diagnostics.
std::string edge_key(const RoleEdge& e);
std::string aggregation_key(const Aggregation& a);
std::string pair_key(std::string_view a, std::string_view b);

}  // namespace pppm
