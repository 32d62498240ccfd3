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

#include "pppm/query.hpp"

#include <tuple>

namespace pppm {
namespace {

std::string join(const std::vector<std::string>& parts, std::string_view sep) {
  std::string out;
  for (std::size_t i = 0; i < parts.size(); ++i) {
    if (i > 0) out += sep;
    out += parts[i];
  }
  return out;
}

struct Candidate {
  PathTrace trace;
  Outcome outcome;
  std::vector<ConditionExpr> residual;

  auto tie_key() const {
    return std::tie(trace.purpose, trace.source, trace.source_kind, trace.via);
  }
};

Candidate evaluate_path(PathTrace trace, const EvalContext& ctx) {
  Candidate c{std::move(trace), Outcome::kAllow, {}};
  TriBool acc = TriBool::kTrue;
  auto check = [&](const std::optional<ConditionExpr>& cond, const std::string& where) {
    if (!cond) return;
    TriBool r;
    try {
      r = evaluate(*cond, ctx);
    } catch (const EvaluationError& e) {
      throw EvaluationError(where + " (\"" + render_condition(*cond) + "\"): " + e.what());
    }
    if (r == TriBool::kUnknown) c.residual.push_back(*cond);
    acc = acc && r;
  };
  check(c.trace.grant_condition,
        "grant " + c.trace.via + " -> " + c.trace.purpose);
  check(c.trace.source_condition,
        std::string(c.trace.source_kind == SourceKind::kTask ? "task condition "
                                                             : "group grant ") +
            c.trace.purpose + " / " + c.trace.source);
  switch (acc) {
    case TriBool::kTrue: c.outcome = Outcome::kAllow; break;
    case TriBool::kUnknown: c.outcome = Outcome::kConditional; break;
    case TriBool::kFalse: c.outcome = Outcome::kDeny; break;
  }
  if (c.outcome != Outcome::kConditional) c.residual.clear();
  return c;
}

}  // namespace

std::string_view to_string(SourceKind kind) {
  return kind == SourceKind::kTask ? "task" : "group";
}

std::string_view to_string(Outcome o) {
  switch (o) {
    case Outcome::kAllow: return "Allow";
    case Outcome::kConditional: return "Conditional";
    case Outcome::kDeny: return "Deny";
  }
  return "?";
}

std::vector<EffectiveGrant> effective_purposes(const PolicyModel& model,
                                               std::string_view role) {
  std::vector<std::string> holders{std::string(role)};
  for (auto& r : inferiors(model, role)) holders.push_back(std::move(r));
  std::vector<EffectiveGrant> out;
  for (const auto& holder : holders) {
    for (const auto& g : model.rp_grants) {
      if (g.role == holder) out.push_back({g.purpose, g.condition, holder});
    }
  }
  return out;
}

std::vector<AttributeAccess> accessible_attributes(const PolicyModel& model,
                                                   std::string_view purpose) {
  const Purpose& p = model.purpose(purpose);
  std::vector<AttributeAccess> out;
  for (const auto& tid : p.tasks) {
    const Task* t = model.find_task(tid);
    if (!t) continue;
    std::optional<ConditionExpr> cond;
    if (const auto* c = model.task_condition(p.id, tid)) cond = c->condition;
    out.push_back({t->reads, SourceKind::kTask, t->id, t->via, std::move(cond)});
  }
  for (const auto& g : model.pg_grants) {
    if (g.purpose != p.id) continue;
    for (auto& a : model.group_members(g.group)) {
      out.push_back({std::move(a), SourceKind::kGroup, g.group, std::nullopt,
                     g.condition});
    }
  }
  return out;
}

Decision can_access(const PolicyModel& model, std::string_view role,
                    std::string_view attribute,
                    const std::optional<std::string>& purpose,
                    const EvalContext& ctx) {
  model.role(role);
  model.attribute(attribute);
  if (purpose) model.purpose(*purpose);

  std::optional<Candidate> best;
  for (const auto& grant : effective_purposes(model, role)) {
    if (purpose && grant.purpose != *purpose) continue;
    for (const auto& access : accessible_attributes(model, grant.purpose)) {
      if (access.attribute != attribute) continue;
      PathTrace trace;
      trace.role = std::string(role);
      trace.hops = role_path(model, role, grant.via);
      trace.via = grant.via;
      trace.purpose = grant.purpose;
      trace.grant_condition = grant.condition;
      trace.source_kind = access.kind;
      trace.source = access.source;
      trace.attribute = access.attribute;
      trace.granularity = access.granularity;
      trace.source_condition = access.condition;
      Candidate c = evaluate_path(std::move(trace), ctx);
      if (!best || c.outcome > best->outcome ||
          (c.outcome == best->outcome && c.tie_key() < best->tie_key())) {
        best = std::move(c);
      }
    }
  }

  Decision d;
  if (best) {
    d.outcome = best->outcome;
    d.residual = std::move(best->residual);
    d.path = std::move(best->trace);
  }
  return d;
}

std::vector<std::string> describe(const PolicyModel& model,
                                  const Decision& decision) {
  std::vector<std::string> lines{std::string(to_string(decision.outcome))};
  for (const auto& r : decision.residual) {
    lines.push_back("residual: " + render_condition(r));
  }
  if (!decision.path) {
    lines.push_back("trace: no grant connects the role to the attribute");
    return lines;
  }
  const PathTrace& t = *decision.path;
  lines.push_back("trace: role " + t.role + " (" + model.role(t.role).label + ")");
  if (t.hops.size() > 1) {
    lines.push_back("trace: inherits from " + t.via + " via " + join(t.hops, " -> "));
  }
  std::string grant = "trace: grant " + t.via + " -> " + t.purpose + " (" +
                      model.purpose(t.purpose).label + ")";
  if (t.grant_condition) grant += " when " + render_condition(*t.grant_condition);
  lines.push_back(grant);
  std::string source = "trace: " + std::string(to_string(t.source_kind)) + " " +
                       t.source + " exposes " + t.attribute + " (" +
                       model.attribute(t.attribute).label + ")";
  if (t.source_condition) source += " when " + render_condition(*t.source_condition);
  lines.push_back(source);
  if (t.granularity) lines.push_back("trace: granularity " + *t.granularity);
  return lines;
}

}  // namespace pppm
