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

// Permission queries over a valid model.
//
// A structural path for (role, attribute) is a role-purpose grant held by the
// role or one of its inferiors, plus a source inside that purpose that
// exposes the attribute: a task reading it, or a granted group containing it.
// All conditions on a path (grant condition, then task or group condition)
// are conjoined.

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "pppm/condition.hpp"
#include "pppm/model.hpp"

namespace pppm {

struct EffectiveGrant {
  std::string purpose;
  std::optional<ConditionExpr> condition;
  std::string via;  // role whose grant supplies the entry

  bool operator==(const EffectiveGrant&) const = default;
};

// Direct grants first, then each inferior's grants in breadth-first order;
// within one role, declaration order. Inherited conditions are kept as is.
std::vector<EffectiveGrant> effective_purposes(const PolicyModel& model,
                                               std::string_view role);

enum class SourceKind { kTask, kGroup };

std::string_view to_string(SourceKind kind);

struct AttributeAccess {
  std::string attribute;
  SourceKind kind;
  std::string source;  // task id or group id
  std::optional<std::string> granularity;
  std::optional<ConditionExpr> condition;

  bool operator==(const AttributeAccess&) const = default;
};

// Task reads in task order, then group-grant members in grant order.
// The same attribute may appear once per distinct source.
std::vector<AttributeAccess> accessible_attributes(const PolicyModel& model,
                                                   std::string_view purpose);

enum class Outcome { kDeny = 0, kConditional = 1, kAllow = 2 };

std::string_view to_string(Outcome o);

struct PathTrace {
  std::string role;
  std::vector<std::string> hops;  // role ... via, inclusive
  std::string via;
  std::string purpose;
  std::optional<ConditionExpr> grant_condition;
  SourceKind source_kind = SourceKind::kTask;
  std::string source;
  std::string attribute;
  std::optional<std::string> granularity;
  std::optional<ConditionExpr> source_condition;

  bool operator==(const PathTrace&) const = default;
};

struct Decision {
  Outcome outcome = Outcome::kDeny;
  std::vector<ConditionExpr> residual;  // non-empty iff Conditional
  std::optional<PathTrace> path;        // absent when no structural path exists
};

// With no purpose, every purpose is tried and the most permissive path wins;
// ties go to the smallest (purpose, source, via). Throws LookupError for
// unknown ids and EvaluationError (naming the grant) on type clashes.
Decision can_access(const PolicyModel& model, std::string_view role,
                    std::string_view attribute,
                    const std::optional<std::string>& purpose,
                    const EvalContext& ctx);

// Human-readable lines: outcome, residual conditions, trace.
std::vector<std::string> describe(const PolicyModel& model,
                                  const Decision& decision);

}  // namespace pppm
