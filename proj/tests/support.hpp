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

// Shared helpers for the unit and acceptance suites: fixture loading, a
// seeded random model generator, and brute-force oracles that recompute
// closures and decisions without going through the library's algorithms.

#include <algorithm>
#include <cstdint>
#include <filesystem>
#include <fstream>
#include <map>
#include <optional>
#include <random>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "pppm/condition.hpp"
#include "pppm/dsl.hpp"
#include "pppm/model.hpp"
#include "pppm/query.hpp"

namespace pppm::testing {

inline std::filesystem::path fixture_path(const std::string& name) {
  return std::filesystem::path(PPPM_FIXTURE_DIR) / name;
}

inline std::filesystem::path golden_path(const std::string& name) {
  return std::filesystem::path(PPPM_GOLDEN_DIR) / name;
}

inline std::string read_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

inline void write_file(const std::filesystem::path& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  out << text;
}

inline PolicyModel load_fixture(const std::string& name) {
  return load_policy(read_file(fixture_path(name)), name);
}

inline const PolicyModel& imaginary_shop() {
  static const PolicyModel m = load_fixture("imaginary_shop.pppm");
  return m;
}

inline const PolicyModel& chatterbaby() {
  static const PolicyModel m = load_fixture("chatterbaby.pppm");
  return m;
}

// With PPPM_UPDATE_GOLDEN set, rewrites the golden file and reports a match.
inline bool matches_golden(const std::string& name, const std::string& actual) {
  auto path = golden_path(name);
  if (std::getenv("PPPM_UPDATE_GOLDEN") != nullptr) {
    write_file(path, actual);
    return true;
  }
  return std::filesystem::exists(path) && read_file(path) == actual;
}

// ---------------------------------------------------------------------------
// Conditions over numeric variables x, y, z.

inline const std::vector<std::string>& numeric_vars() {
  static const std::vector<std::string> vars{"x", "y", "z"};
  return vars;
}

inline std::string random_operand_text(std::mt19937& rng) {
  std::uniform_int_distribution<int> pick(0, 5);
  int k = pick(rng);
  if (k < 3) return numeric_vars()[k];
  std::uniform_int_distribution<int> lit(0, 3);
  return std::to_string(lit(rng));
}

// Chains of 2..max_operands operands; at least one variable per chain keeps
// literal-only comparisons rare but they are still allowed.
inline std::string random_chain_text(std::mt19937& rng, int max_operands = 4) {
  static const char* kOps[] = {"<", "<=", ">", ">=", "==", "!="};
  std::uniform_int_distribution<int> len(2, max_operands);
  std::uniform_int_distribution<int> op(0, 5);
  int n = len(rng);
  std::string text = random_operand_text(rng);
  for (int i = 1; i < n; ++i) {
    text += " ";
    text += kOps[op(rng)];
    text += " ";
    text += random_operand_text(rng);
  }
  return text;
}

inline std::string random_condition_text(std::mt19937& rng, int max_chains = 2,
                                         int max_operands = 4) {
  std::uniform_int_distribution<int> count(1, max_chains);
  int n = count(rng);
  std::string text = random_chain_text(rng, max_operands);
  for (int i = 1; i < n; ++i) text += " and " + random_chain_text(rng, max_operands);
  return text;
}

using NumericContext = std::map<std::string, double>;

inline NumericContext random_numeric_context(std::mt19937& rng) {
  NumericContext ctx;
  std::bernoulli_distribution bound(0.6);
  std::uniform_int_distribution<int> value(0, 3);
  for (const auto& v : numeric_vars()) {
    if (bound(rng)) ctx[v] = value(rng);
  }
  return ctx;
}

inline EvalContext to_eval_context(const NumericContext& n) {
  EvalContext ctx;
  for (const auto& [k, v] : n) ctx.bind(k, v);
  return ctx;
}

// Expands every chain into adjacent pairs and folds them with Kleene
// conjunction, using only numeric comparison.
inline TriBool oracle_evaluate(const ConditionExpr& expr, const NumericContext& ctx) {
  auto resolve = [&](const Operand& o) -> std::optional<double> {
    if (const auto* v = std::get_if<Variable>(&o)) {
      auto it = ctx.find(v->name);
      if (it == ctx.end()) return std::nullopt;
      return it->second;
    }
    return std::get<double>(std::get<Value>(o));
  };
  bool any_false = false;
  bool any_unknown = false;
  for (const auto& chain : expr.chains) {
    for (std::size_t i = 0; i < chain.ops.size(); ++i) {
      auto a = resolve(chain.operands[i]);
      auto b = resolve(chain.operands[i + 1]);
      if (!a || !b) {
        any_unknown = true;
        continue;
      }
      bool r = false;
      switch (chain.ops[i]) {
        case RelOp::kLt: r = *a < *b; break;
        case RelOp::kLe: r = *a <= *b; break;
        case RelOp::kGt: r = *a > *b; break;
        case RelOp::kGe: r = *a >= *b; break;
        case RelOp::kEq: r = *a == *b; break;
        case RelOp::kNe: r = *a != *b; break;
      }
      if (!r) any_false = true;
    }
  }
  if (any_false) return TriBool::kFalse;
  return any_unknown ? TriBool::kUnknown : TriBool::kTrue;
}

// ---------------------------------------------------------------------------
// Random valid models.

struct GenLimits {
  int max_roles = 5;
  int max_purposes = 5;
  int max_attributes = 6;
  int max_groups = 3;
  int max_tasks = 6;
  bool aggregations = false;
};

inline std::optional<ConditionExpr> maybe_condition(std::mt19937& rng, double p) {
  std::bernoulli_distribution has(p);
  if (!has(rng)) return std::nullopt;
  return parse_condition(random_condition_text(rng, 2, 3));
}

inline PolicyModel random_model(std::mt19937& rng, const GenLimits& limits = {}) {
  auto uniform = [&](int lo, int hi) {
    return std::uniform_int_distribution<int>(lo, hi)(rng);
  };
  auto coin = [&](double p) { return std::bernoulli_distribution(p)(rng); };

  PolicyModel m;
  m.name = "random";
  int nr = uniform(1, limits.max_roles);
  int np = uniform(1, limits.max_purposes);
  int na = uniform(1, limits.max_attributes);
  int ng = uniform(0, limits.max_groups);
  int nt = uniform(0, limits.max_tasks);

  for (int i = 1; i <= nr; ++i) {
    m.roles.push_back({"r" + std::to_string(i), "Role " + std::to_string(i)});
  }
  // Edges only from lower to higher index keep the hierarchy acyclic.
  for (int i = 1; i <= nr; ++i) {
    for (int j = i + 1; j <= nr; ++j) {
      if (coin(0.35)) {
        m.role_edges.push_back({"r" + std::to_string(i), "r" + std::to_string(j)});
      }
    }
  }
  std::shuffle(m.role_edges.begin(), m.role_edges.end(), rng);

  for (int i = 1; i <= ng; ++i) {
    m.groups.push_back({"g" + std::to_string(i), "Group " + std::to_string(i)});
  }
  for (int i = 1; i <= na; ++i) {
    Attribute a{"d" + std::to_string(i), "Attribute " + std::to_string(i), {}, {}, false};
    for (const auto& g : m.groups) {
      if (coin(0.4)) a.groups.push_back(g.id);
    }
    m.attributes.push_back(std::move(a));
  }
  if (limits.aggregations) {
    for (int k = 3; k <= na; ++k) {
      if (!coin(0.5)) continue;
      int left = uniform(1, k - 1);
      int right = uniform(1, k - 1);
      if (left == right) continue;
      m.aggregations.push_back({"d" + std::to_string(left), "d" + std::to_string(right),
                                "d" + std::to_string(k)});
      m.attributes[k - 1].derived = true;
    }
  }
  for (int i = 1; i <= nt; ++i) {
    m.tasks.push_back({"t" + std::to_string(i), "Task " + std::to_string(i),
                       "d" + std::to_string(uniform(1, na)), std::nullopt});
  }
  for (int i = 1; i <= np; ++i) {
    Purpose p{"p" + std::to_string(i), "Purpose " + std::to_string(i), {}, false};
    for (const auto& t : m.tasks) {
      if (coin(0.4)) p.tasks.push_back(t.id);
    }
    std::shuffle(p.tasks.begin(), p.tasks.end(), rng);
    m.purposes.push_back(std::move(p));
  }
  for (const auto& r : m.roles) {
    for (const auto& p : m.purposes) {
      if (coin(0.3)) m.rp_grants.push_back({r.id, p.id, maybe_condition(rng, 0.4)});
    }
  }
  std::shuffle(m.rp_grants.begin(), m.rp_grants.end(), rng);
  for (const auto& p : m.purposes) {
    for (const auto& t : p.tasks) {
      if (coin(0.3)) {
        m.pt_conditions.push_back({p.id, t, *maybe_condition(rng, 1.0)});
      }
    }
    for (const auto& g : m.groups) {
      if (coin(0.3)) m.pg_grants.push_back({p.id, g.id, maybe_condition(rng, 0.4)});
    }
  }
  return m;
}

// ---------------------------------------------------------------------------
// Brute-force oracles.

// Every role reachable from `role` by walking all simple paths, `role`
// included.
inline std::set<std::string> oracle_reachable(const PolicyModel& m,
                                              const std::string& role) {
  std::set<std::string> seen;
  std::vector<std::string> path{role};
  auto dfs = [&](auto&& self, const std::string& cur) -> void {
    seen.insert(cur);
    for (const auto& e : m.role_edges) {
      if (e.superior != cur) continue;
      if (std::find(path.begin(), path.end(), e.inferior) != path.end()) continue;
      path.push_back(e.inferior);
      self(self, e.inferior);
      path.pop_back();
    }
  };
  dfs(dfs, role);
  return seen;
}

// Upstream attributes by fixpoint iteration over the aggregation table.
inline std::set<std::string> oracle_sources(const PolicyModel& m,
                                            const std::string& attribute) {
  std::set<std::string> closure{attribute};
  bool changed = true;
  while (changed) {
    changed = false;
    for (const auto& a : m.aggregations) {
      if (!closure.count(a.product)) continue;
      changed |= closure.insert(a.left).second;
      changed |= closure.insert(a.right).second;
    }
  }
  closure.erase(attribute);
  return closure;
}

inline Outcome outcome_of(TriBool t) {
  switch (t) {
    case TriBool::kTrue: return Outcome::kAllow;
    case TriBool::kUnknown: return Outcome::kConditional;
    case TriBool::kFalse: break;
  }
  return Outcome::kDeny;
}

// Enumerates every (grant, source) pair and evaluates its conditions with the
// numeric oracle; the best outcome over all pairs wins.
inline Outcome oracle_can_access(const PolicyModel& m, const std::string& role,
                                 const std::string& attribute,
                                 const std::optional<std::string>& purpose,
                                 const NumericContext& ctx) {
  auto cond_value = [&](const std::optional<ConditionExpr>& c) {
    return c ? oracle_evaluate(*c, ctx) : TriBool::kTrue;
  };
  auto holders = oracle_reachable(m, role);
  Outcome best = Outcome::kDeny;
  for (const auto& g : m.rp_grants) {
    if (!holders.count(g.role)) continue;
    if (purpose && g.purpose != *purpose) continue;
    TriBool grant = cond_value(g.condition);
    const Purpose* p = m.find_purpose(g.purpose);
    for (const auto& tid : p->tasks) {
      if (m.find_task(tid)->reads != attribute) continue;
      std::optional<ConditionExpr> c;
      for (const auto& pt : m.pt_conditions) {
        if (pt.purpose == g.purpose && pt.task == tid) c = pt.condition;
      }
      best = std::max(best, outcome_of(grant && cond_value(c)));
    }
    for (const auto& pg : m.pg_grants) {
      if (pg.purpose != g.purpose) continue;
      const Attribute* a = m.find_attribute(attribute);
      if (std::find(a->groups.begin(), a->groups.end(), pg.group) == a->groups.end()) {
        continue;
      }
      best = std::max(best, outcome_of(grant && cond_value(pg.condition)));
    }
  }
  return best;
}

}  // namespace pppm::testing
