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

#include <algorithm>
#include <deque>
#include <map>
#include <set>
#include <tuple>

namespace pppm {
namespace {

template <typename T>
const T* find_by_id(const std::vector<T>& items, std::string_view id) {
  for (const T& item : items) {
    if (item.id == id) return &item;
  }
  return nullptr;
}

template <typename T>
std::set<std::string> ids_of(const std::vector<T>& items) {
  std::set<std::string> out;
  for (const T& item : items) out.insert(item.id);
  return out;
}

std::string join(const std::vector<std::string>& parts, std::string_view sep) {
  std::string out;
  for (std::size_t i = 0; i < parts.size(); ++i) {
    if (i > 0) out += sep;
    out += parts[i];
  }
  return out;
}

// Strongly connected components with more than one node, each sorted, in
// order of their smallest member.
std::vector<std::vector<std::string>> nontrivial_sccs(
    const std::set<std::string>& nodes,
    const std::map<std::string, std::set<std::string>>& adjacency) {
  std::map<std::string, std::set<std::string>> reach;
  for (const auto& start : nodes) {
    std::set<std::string>& seen = reach[start];
    std::deque<std::string> queue{start};
    while (!queue.empty()) {
      std::string cur = queue.front();
      queue.pop_front();
      auto it = adjacency.find(cur);
      if (it == adjacency.end()) continue;
      for (const auto& next : it->second) {
        if (seen.insert(next).second) queue.push_back(next);
      }
    }
  }
  std::vector<std::vector<std::string>> out;
  std::set<std::string> assigned;
  for (const auto& a : nodes) {
    if (assigned.count(a)) continue;
    std::vector<std::string> component{a};
    for (const auto& b : nodes) {
      if (b != a && reach[a].count(b) && reach[b].count(a)) {
        component.push_back(b);
      }
    }
    if (component.size() > 1) {
      assigned.insert(component.begin(), component.end());
      std::sort(component.begin(), component.end());
      out.push_back(std::move(component));
    }
  }
  return out;
}

std::map<std::string, std::set<std::string>> role_adjacency(
    const PolicyModel& model) {
  std::map<std::string, std::set<std::string>> adjacency;
  for (const auto& e : model.role_edges) {
    adjacency[e.superior].insert(e.inferior);
  }
  return adjacency;
}

class ReportBuilder {
 public:
  void add(std::string rule, EntityKind kind, std::string entity,
           std::string message) {
    report_.push_back(ValidationError{std::move(rule), kind, std::move(entity),
                                      std::move(message)});
  }

  template <typename T>
  void check_unique_ids(const std::vector<T>& items, EntityKind kind) {
    std::map<std::string, int> counts;
    for (const T& item : items) ++counts[item.id];
    for (const auto& [id, n] : counts) {
      if (n > 1) {
        add("duplicate-id", kind, id,
            std::string(entity_kind_name(kind)) + " '" + id +
                "' is declared " + std::to_string(n) + " times");
      }
    }
  }

  void check_ref(const std::set<std::string>& declared, const std::string& ref,
                 std::string_view ref_kind, EntityKind kind,
                 const std::string& entity) {
    if (declared.count(ref)) return;
    add("unknown-id", kind, entity,
        std::string(entity_kind_name(kind)) + " '" + entity +
            "' references undeclared " + std::string(ref_kind) + " '" + ref +
            "'");
  }

  ValidationReport finish() && {
    std::sort(report_.begin(), report_.end(),
              [](const ValidationError& a, const ValidationError& b) {
                return std::tie(a.rule, a.entity, a.message) <
                       std::tie(b.rule, b.entity, b.message);
              });
    return std::move(report_);
  }

 private:
  ValidationReport report_;
};

}  // namespace

const Role* PolicyModel::find_role(std::string_view id) const {
  return find_by_id(roles, id);
}
const AttributeGroup* PolicyModel::find_group(std::string_view id) const {
  return find_by_id(groups, id);
}
const Attribute* PolicyModel::find_attribute(std::string_view id) const {
  return find_by_id(attributes, id);
}
const GranularityFn* PolicyModel::find_granularity(std::string_view id) const {
  return find_by_id(granularities, id);
}
const Task* PolicyModel::find_task(std::string_view id) const {
  return find_by_id(tasks, id);
}
const Purpose* PolicyModel::find_purpose(std::string_view id) const {
  return find_by_id(purposes, id);
}

const Role& PolicyModel::role(std::string_view id) const {
  if (const Role* r = find_role(id)) return *r;
  throw LookupError("unknown role '" + std::string(id) + "'");
}

const Attribute& PolicyModel::attribute(std::string_view id) const {
  if (const Attribute* a = find_attribute(id)) return *a;
  throw LookupError("unknown attribute '" + std::string(id) + "'");
}

const Purpose& PolicyModel::purpose(std::string_view id) const {
  if (const Purpose* p = find_purpose(id)) return *p;
  throw LookupError("unknown purpose '" + std::string(id) + "'");
}

std::vector<std::string> PolicyModel::group_members(
    std::string_view group) const {
  std::vector<std::string> out;
  for (const auto& a : attributes) {
    if (std::find(a.groups.begin(), a.groups.end(), group) != a.groups.end()) {
      out.push_back(a.id);
    }
  }
  return out;
}

const PurposeTaskCondition* PolicyModel::task_condition(
    std::string_view purpose, std::string_view task) const {
  for (const auto& c : pt_conditions) {
    if (c.purpose == purpose && c.task == task) return &c;
  }
  return nullptr;
}

std::string_view entity_kind_name(EntityKind kind) {
  switch (kind) {
    case EntityKind::kModel: return "model";
    case EntityKind::kRole: return "role";
    case EntityKind::kRoleEdge: return "role edge";
    case EntityKind::kGroup: return "group";
    case EntityKind::kAttribute: return "attribute";
    case EntityKind::kAggregation: return "aggregation";
    case EntityKind::kGranularity: return "granularity";
    case EntityKind::kTask: return "task";
    case EntityKind::kPurpose: return "purpose";
    case EntityKind::kRolePurposeGrant: return "role-purpose grant";
    case EntityKind::kPurposeTaskCondition: return "purpose-task condition";
    case EntityKind::kPurposeGroupGrant: return "purpose-group grant";
  }
  return "?";
}

std::string edge_key(const RoleEdge& e) {
  return e.superior + "->" + e.inferior;
}

std::string aggregation_key(const Aggregation& a) {
  return "(" + a.left + "," + a.right + ")->" + a.product;
}

std::string pair_key(std::string_view a, std::string_view b) {
  return std::string(a) + "/" + std::string(b);
}

ValidationReport validate(const PolicyModel& model) {
  ReportBuilder out;

  out.check_unique_ids(model.roles, EntityKind::kRole);
  out.check_unique_ids(model.groups, EntityKind::kGroup);
  out.check_unique_ids(model.attributes, EntityKind::kAttribute);
  out.check_unique_ids(model.granularities, EntityKind::kGranularity);
  out.check_unique_ids(model.tasks, EntityKind::kTask);
  out.check_unique_ids(model.purposes, EntityKind::kPurpose);

  const auto role_ids = ids_of(model.roles);
  const auto group_ids = ids_of(model.groups);
  const auto attribute_ids = ids_of(model.attributes);
  const auto granularity_ids = ids_of(model.granularities);
  const auto task_ids = ids_of(model.tasks);
  const auto purpose_ids = ids_of(model.purposes);

  for (const auto& r : model.roles) {
    if (r.label.empty()) {
      out.add("empty-label", EntityKind::kRole, r.id,
              "role '" + r.id + "' has an empty label");
    }
  }

  // Role structure.
  std::set<std::pair<std::string, std::string>> seen_edges;
  for (const auto& e : model.role_edges) {
    const std::string key = edge_key(e);
    out.check_ref(role_ids, e.superior, "role", EntityKind::kRoleEdge, key);
    out.check_ref(role_ids, e.inferior, "role", EntityKind::kRoleEdge, key);
    if (e.superior == e.inferior) {
      out.add("self-edge", EntityKind::kRoleEdge, key,
              "role '" + e.superior + "' cannot be its own superior");
    }
    if (!seen_edges.insert({e.superior, e.inferior}).second) {
      out.add("duplicate-role-edge", EntityKind::kRoleEdge, key,
              "role edge " + key + " is declared more than once");
    }
  }
  {
    std::map<std::string, std::set<std::string>> adjacency;
    for (const auto& e : model.role_edges) {
      if (e.superior != e.inferior && role_ids.count(e.superior) &&
          role_ids.count(e.inferior)) {
        adjacency[e.superior].insert(e.inferior);
      }
    }
    for (const auto& cycle : nontrivial_sccs(role_ids, adjacency)) {
      out.add("role-cycle", EntityKind::kRole, cycle.front(),
              "roles " + join(cycle, ", ") + " form a cycle");
    }
  }

  // Attributes and their structure.
  std::set<std::string> products;
  for (const auto& a : model.aggregations) {
    const std::string key = aggregation_key(a);
    out.check_ref(attribute_ids, a.left, "attribute", EntityKind::kAggregation, key);
    out.check_ref(attribute_ids, a.right, "attribute", EntityKind::kAggregation, key);
    out.check_ref(attribute_ids, a.product, "attribute", EntityKind::kAggregation, key);
    if (a.product == a.left || a.product == a.right) {
      out.add("aggregation-product-is-input", EntityKind::kAggregation, key,
              "aggregation " + key + " derives an attribute from itself");
    }
    products.insert(a.product);
  }
  {
    std::map<std::string, std::set<std::string>> adjacency;
    for (const auto& a : model.aggregations) {
      for (const auto* src : {&a.left, &a.right}) {
        if (*src != a.product && attribute_ids.count(*src) &&
            attribute_ids.count(a.product)) {
          adjacency[*src].insert(a.product);
        }
      }
    }
    for (const auto& cycle : nontrivial_sccs(attribute_ids, adjacency)) {
      out.add("aggregation-cycle", EntityKind::kAttribute, cycle.front(),
              "attributes " + join(cycle, ", ") +
                  " derive from each other in a cycle");
    }
  }
  for (const auto& a : model.attributes) {
    std::set<std::string> seen;
    for (const auto& g : a.groups) {
      out.check_ref(group_ids, g, "group", EntityKind::kAttribute, a.id);
      if (!seen.insert(g).second) {
        out.add("duplicate-group-membership", EntityKind::kAttribute, a.id,
                "attribute '" + a.id + "' lists group '" + g + "' twice");
      }
    }
    if (a.derived != (products.count(a.id) > 0)) {
      out.add("derived-mismatch", EntityKind::kAttribute, a.id,
              "attribute '" + a.id + "' derived flag disagrees with aggregations");
    }
  }

  // Purpose structure.
  for (const auto& t : model.tasks) {
    out.check_ref(attribute_ids, t.reads, "attribute", EntityKind::kTask, t.id);
    if (t.via) {
      out.check_ref(granularity_ids, *t.via, "granularity", EntityKind::kTask,
                    t.id);
    }
  }
  for (const auto& p : model.purposes) {
    std::set<std::string> seen;
    for (const auto& t : p.tasks) {
      out.check_ref(task_ids, t, "task", EntityKind::kPurpose, p.id);
      if (!seen.insert(t).second) {
        out.add("duplicate-task-in-purpose", EntityKind::kPurpose, p.id,
                "purpose '" + p.id + "' lists task '" + t + "' twice");
      }
    }
  }

  // Permissions.
  std::set<std::pair<std::string, std::string>> seen_rp;
  for (const auto& g : model.rp_grants) {
    const std::string key = pair_key(g.role, g.purpose);
    out.check_ref(role_ids, g.role, "role", EntityKind::kRolePurposeGrant, key);
    out.check_ref(purpose_ids, g.purpose, "purpose",
                  EntityKind::kRolePurposeGrant, key);
    if (!seen_rp.insert({g.role, g.purpose}).second) {
      out.add("duplicate-grant", EntityKind::kRolePurposeGrant, key,
              "role '" + g.role + "' is granted purpose '" + g.purpose +
                  "' more than once");
    }
  }
  std::set<std::pair<std::string, std::string>> seen_pt;
  for (const auto& c : model.pt_conditions) {
    const std::string key = pair_key(c.purpose, c.task);
    out.check_ref(purpose_ids, c.purpose, "purpose",
                  EntityKind::kPurposeTaskCondition, key);
    out.check_ref(task_ids, c.task, "task", EntityKind::kPurposeTaskCondition,
                  key);
    if (const Purpose* p = model.find_purpose(c.purpose);
        p && task_ids.count(c.task) &&
        std::find(p->tasks.begin(), p->tasks.end(), c.task) == p->tasks.end()) {
      out.add("task-not-in-purpose", EntityKind::kPurposeTaskCondition, key,
              "task '" + c.task + "' is not part of purpose '" + c.purpose +
                  "'");
    }
    if (!seen_pt.insert({c.purpose, c.task}).second) {
      out.add("duplicate-task-condition", EntityKind::kPurposeTaskCondition,
              key,
              "purpose '" + c.purpose + "' conditions task '" + c.task +
                  "' more than once");
    }
  }
  std::set<std::pair<std::string, std::string>> seen_pg;
  for (const auto& g : model.pg_grants) {
    const std::string key = pair_key(g.purpose, g.group);
    out.check_ref(purpose_ids, g.purpose, "purpose",
                  EntityKind::kPurposeGroupGrant, key);
    out.check_ref(group_ids, g.group, "group", EntityKind::kPurposeGroupGrant,
                  key);
    if (!seen_pg.insert({g.purpose, g.group}).second) {
      out.add("duplicate-group-grant", EntityKind::kPurposeGroupGrant, key,
              "purpose '" + g.purpose + "' is granted group '" + g.group +
                  "' more than once");
    }
  }

  return std::move(out).finish();
}

void require_valid(const PolicyModel& model) {
  ValidationReport report = validate(model);
  if (report.empty()) return;
  std::string message = "model is not valid:";
  for (std::size_t i = 0; i < report.size() && i < 5; ++i) {
    message += "\n  " + report[i].rule + ": " + report[i].message;
  }
  if (report.size() > 5) {
    message += "\n  ... " + std::to_string(report.size() - 5) + " more";
  }
  throw PreconditionError(message);
}

std::vector<std::string> inferiors(const PolicyModel& model,
                                   std::string_view role) {
  model.role(role);
  const auto adjacency = role_adjacency(model);
  std::vector<std::string> out;
  std::set<std::string> seen{std::string(role)};
  std::deque<std::string> queue{std::string(role)};
  while (!queue.empty()) {
    std::string cur = queue.front();
    queue.pop_front();
    auto it = adjacency.find(cur);
    if (it == adjacency.end()) continue;
    for (const auto& next : it->second) {  // std::set: id order
      if (seen.insert(next).second) {
        out.push_back(next);
        queue.push_back(next);
      }
    }
  }
  return out;
}

std::vector<std::string> role_path(const PolicyModel& model,
                                   std::string_view from, std::string_view to) {
  model.role(from);
  model.role(to);
  if (from == to) return {std::string(from)};
  const auto adjacency = role_adjacency(model);
  std::map<std::string, std::string> parent;
  std::deque<std::string> queue{std::string(from)};
  parent[std::string(from)] = "";
  while (!queue.empty()) {
    std::string cur = queue.front();
    queue.pop_front();
    if (cur == to) break;
    auto it = adjacency.find(cur);
    if (it == adjacency.end()) continue;
    for (const auto& next : it->second) {
      if (parent.emplace(next, cur).second) queue.push_back(next);
    }
  }
  if (!parent.count(std::string(to))) return {};
  std::vector<std::string> path;
  for (std::string cur(to); !cur.empty(); cur = parent[cur]) {
    path.push_back(cur);
  }
  std::reverse(path.begin(), path.end());
  return path;
}

std::vector<std::string> aggregation_sources(const PolicyModel& model,
                                             std::string_view attribute) {
  model.attribute(attribute);
  std::set<std::string> sources;
  std::deque<std::string> queue{std::string(attribute)};
  while (!queue.empty()) {
    std::string cur = queue.front();
    queue.pop_front();
    for (const auto& a : model.aggregations) {
      if (a.product != cur) continue;
      for (const auto* src : {&a.left, &a.right}) {
        if (*src != attribute && sources.insert(*src).second) {
          queue.push_back(*src);
        }
      }
    }
  }
  return {sources.begin(), sources.end()};
}

}  // namespace pppm
