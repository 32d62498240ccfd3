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

#include "pppm/render.hpp"

#include <algorithm>
#include <array>
#include <map>
#include <tuple>
#include <vector>

namespace pppm {
namespace {

constexpr std::array<const char*, 8> kPalette = {
    "#1b9e77", "#d95f02", "#7570b3", "#e7298a",
    "#66a61e", "#e6ab02", "#a6761d", "#666666"};

std::string dot_escape(std::string_view s) {
  std::string out;
  for (char c : s) {
    if (c == '"' || c == '\\') {
      out.push_back('\\');
      out.push_back(c);
    } else if (c == '\n') {
      out += "\\n";
    } else {
      out.push_back(c);
    }
  }
  return out;
}

std::string q(std::string_view s) { return "\"" + dot_escape(s) + "\""; }

std::string node(std::string_view kind, std::string_view id) {
  return q(std::string(kind) + ":" + std::string(id));
}

template <typename T>
std::vector<const T*> sorted_by_id(const std::vector<T>& items) {
  std::vector<const T*> out;
  for (const T& item : items) out.push_back(&item);
  std::stable_sort(out.begin(), out.end(),
                   [](const T* a, const T* b) { return a->id < b->id; });
  return out;
}

class DotWriter {
 public:
  void line(int depth, const std::string& text) {
    out_.append(static_cast<std::size_t>(depth) * 2, ' ');
    out_ += text;
    out_ += "\n";
  }

  std::string take() && { return std::move(out_); }

 private:
  std::string out_;
};

// One legend node listing "id: label" rows, left-justified.
template <typename Rows>
void legend(DotWriter& w, int depth, std::string_view layer, const Rows& rows) {
  if (rows.empty()) return;
  std::string label;
  for (const auto& [id, text] : rows) {
    label += dot_escape(id + ": " + text) + "\\l";
  }
  w.line(depth, node("legend", layer) + " [shape=note, fontsize=10, label=\"" +
                    label + "\"];");
}

class GraphEmitter {
 public:
  GraphEmitter(const PolicyModel& m, const RenderOptions& opts)
      : m_(m), opts_(opts) {
    auto purposes = sorted_by_id(m_.purposes);
    for (std::size_t i = 0; i < purposes.size(); ++i) {
      color_[purposes[i]->id] = kPalette[i % kPalette.size()];
    }
  }

  std::string run() && {
    w_.line(0, "digraph " + q(m_.name) + " {");
    w_.line(1, "node [fontname=\"Helvetica\"];");
    w_.line(1, "edge [fontname=\"Helvetica\"];");
    if (has(Layer::kRoles)) roles();
    if (has(Layer::kPurposes)) purposes();
    if (has(Layer::kAttributes)) attributes();
    if (has(Layer::kRolePurpose)) role_purpose();
    if (has(Layer::kPurposeAttribute)) purpose_attribute();
    w_.line(0, "}");
    return std::move(w_).take();
  }

 private:
  bool has(Layer l) const { return opts_.layers.count(l) > 0; }

  void roles() {
    w_.line(1, "subgraph cluster_roles {");
    w_.line(2, "label=\"Roles\";");
    std::vector<std::pair<std::string, std::string>> rows;
    for (const Role* r : sorted_by_id(m_.roles)) {
      w_.line(2, node("role", r->id) + " [shape=ellipse, label=" + q(r->id) + "];");
      rows.emplace_back(r->id, r->label);
    }
    auto edges = m_.role_edges;
    std::sort(edges.begin(), edges.end(), [](const RoleEdge& a, const RoleEdge& b) {
      return std::tie(a.superior, a.inferior) < std::tie(b.superior, b.inferior);
    });
    for (const auto& e : edges) {
      w_.line(2, node("role", e.superior) + " -> " + node("role", e.inferior) + ";");
    }
    if (opts_.show_legend) legend(w_, 2, "roles", rows);
    w_.line(1, "}");
  }

  void purposes() {
    w_.line(1, "subgraph cluster_purposes {");
    w_.line(2, "label=\"Purposes\";");
    std::vector<std::pair<std::string, std::string>> rows;
    auto purposes = sorted_by_id(m_.purposes);
    for (const Purpose* p : purposes) {
      std::string attrs = "shape=ellipse, label=" + q(p->id) + ", color=" +
                          q(color_.at(p->id));
      if (p->universal) attrs += ", peripheries=2";
      w_.line(2, node("purpose", p->id) + " [" + attrs + "];");
      rows.emplace_back(p->id, p->label + (p->universal ? " (universal)" : ""));
    }
    for (const Task* t : sorted_by_id(m_.tasks)) {
      w_.line(2, node("task", t->id) + " [shape=point, width=0.12, xlabel=" +
                     q(t->id) + "];");
      rows.emplace_back(t->id, t->label);
    }
    for (const Purpose* p : purposes) {
      std::string prev = node("purpose", p->id);
      for (const auto& tid : p->tasks) {
        std::string cur = node("task", tid);
        w_.line(2, prev + " -> " + cur + " [color=" + q(color_.at(p->id)) + "];");
        prev = cur;
      }
    }
    if (opts_.show_legend) legend(w_, 2, "purposes", rows);
    w_.line(1, "}");
  }

  std::string attribute_node(const Attribute& a) const {
    std::string attrs = "shape=box, style=" +
                        std::string(a.derived ? "\"rounded,bold\"" : "rounded") +
                        ", label=" + q(a.id);
    if (!a.groups.empty()) {
      auto groups = a.groups;
      std::sort(groups.begin(), groups.end());
      std::string tip = "groups:";
      for (const auto& g : groups) tip += " " + g;
      attrs += ", tooltip=" + q(tip);
    }
    return node("attr", a.id) + " [" + attrs + "];";
  }

  std::string group_node(const AttributeGroup& g) const {
    return node("group", g.id) + " [shape=box, style=dashed, label=" + q(g.id) + "];";
  }

  void attributes() {
    w_.line(1, "subgraph cluster_attributes {");
    w_.line(2, "label=\"Attributes\";");
    auto attrs = sorted_by_id(m_.attributes);
    auto groups = sorted_by_id(m_.groups);

    if (opts_.cluster_groups) {
      // Each attribute sits in the cluster of its smallest group id.
      std::map<std::string, std::vector<const Attribute*>> home;
      std::vector<const Attribute*> loose;
      for (const Attribute* a : attrs) {
        if (a->groups.empty()) {
          loose.push_back(a);
        } else {
          home[*std::min_element(a->groups.begin(), a->groups.end())].push_back(a);
        }
      }
      for (const AttributeGroup* g : groups) {
        w_.line(2, "subgraph " + q("cluster_group_" + g->id) + " {");
        w_.line(3, "label=" + q(g->label) + ";");
        w_.line(3, "style=rounded;");
        w_.line(3, group_node(*g));
        for (const Attribute* a : home[g->id]) w_.line(3, attribute_node(*a));
        w_.line(2, "}");
      }
      for (const Attribute* a : loose) w_.line(2, attribute_node(*a));
    } else {
      for (const AttributeGroup* g : groups) w_.line(2, group_node(*g));
      for (const Attribute* a : attrs) w_.line(2, attribute_node(*a));
      for (const Attribute* a : attrs) {
        auto member_of = a->groups;
        std::sort(member_of.begin(), member_of.end());
        for (const auto& g : member_of) {
          w_.line(2, node("group", g) + " -> " + node("attr", a->id) +
                         " [style=dotted, arrowhead=none];");
        }
      }
    }

    auto aggs = m_.aggregations;
    std::sort(aggs.begin(), aggs.end(), [](const Aggregation& a, const Aggregation& b) {
      return std::tie(a.product, a.left, a.right) < std::tie(b.product, b.left, b.right);
    });
    for (const auto& a : aggs) {
      w_.line(2, node("attr", a.left) + " -> " + node("attr", a.product) + ";");
      w_.line(2, node("attr", a.right) + " -> " + node("attr", a.product) + ";");
    }

    if (opts_.show_legend) {
      std::vector<std::pair<std::string, std::string>> rows;
      for (const Attribute* a : attrs) rows.emplace_back(a->id, a->label);
      legend(w_, 2, "attributes", rows);
    }
    w_.line(1, "}");
  }

  void role_purpose() {
    w_.line(1, "subgraph role_purpose {");
    auto grants = m_.rp_grants;
    std::sort(grants.begin(), grants.end(),
              [](const RolePurposeGrant& a, const RolePurposeGrant& b) {
                return std::tie(a.role, a.purpose) < std::tie(b.role, b.purpose);
              });
    for (const auto& g : grants) {
      std::string attrs = "style=dashed";
      if (g.condition) attrs += ", label=" + q(render_condition(*g.condition));
      w_.line(2, node("role", g.role) + " -> " + node("purpose", g.purpose) +
                     " [" + attrs + "];");
    }
    w_.line(1, "}");
  }

  void purpose_attribute() {
    w_.line(1, "subgraph purpose_attribute {");
    for (const Purpose* p : sorted_by_id(m_.purposes)) {
      for (const auto& tid : p->tasks) {
        const Task* t = m_.find_task(tid);
        std::vector<std::string> label;
        if (const auto* c = m_.task_condition(p->id, tid)) {
          label.push_back(render_condition(c->condition));
        }
        if (t->via) label.push_back(*t->via);
        std::string attrs = "style=dashed, color=" + q(color_.at(p->id));
        if (!label.empty()) {
          std::string text = label[0];
          if (label.size() > 1) text += "\n" + label[1];
          attrs += ", label=" + q(text);
        }
        w_.line(2, node("task", tid) + " -> " + node("attr", t->reads) + " [" +
                       attrs + "];");
      }
    }
    auto grants = m_.pg_grants;
    std::sort(grants.begin(), grants.end(),
              [](const PurposeGroupGrant& a, const PurposeGroupGrant& b) {
                return std::tie(a.purpose, a.group) < std::tie(b.purpose, b.group);
              });
    for (const auto& g : grants) {
      std::string attrs = "style=dashed, color=" + q(color_.at(g.purpose));
      if (g.condition) attrs += ", label=" + q(render_condition(*g.condition));
      w_.line(2, node("purpose", g.purpose) + " -> " + node("group", g.group) +
                     " [" + attrs + "];");
    }
    w_.line(1, "}");
  }

  const PolicyModel& m_;
  const RenderOptions& opts_;
  std::map<std::string, std::string> color_;
  DotWriter w_;
};

std::string cell(std::string s) {
  for (char& c : s) {
    if (c == '\t' || c == '\n' || c == '\r') c = ' ';
  }
  return s;
}

std::string join(const std::vector<std::string>& parts, std::string_view sep) {
  std::string out;
  for (std::size_t i = 0; i < parts.size(); ++i) {
    if (i > 0) out += sep;
    out += parts[i];
  }
  return out;
}

class TableWriter {
 public:
  void block(std::string_view name, const std::vector<std::string>& header) {
    if (!out_.empty()) out_ += "\n";
    out_ += "[" + std::string(name) + "]\n";
    row(header);
  }

  void row(const std::vector<std::string>& cells) {
    for (std::size_t i = 0; i < cells.size(); ++i) {
      if (i > 0) out_ += "\t";
      out_ += cell(cells[i]);
    }
    out_ += "\n";
  }

  std::string take() && { return std::move(out_); }

 private:
  std::string out_;
};

std::string cond_text(const std::optional<ConditionExpr>& c) {
  return c ? render_condition(*c) : "";
}

}  // namespace

std::set<Layer> parse_layers(std::string_view text) {
  std::set<Layer> out;
  std::size_t start = 0;
  while (start <= text.size()) {
    std::size_t end = text.find(',', start);
    if (end == std::string_view::npos) end = text.size();
    std::string_view name = text.substr(start, end - start);
    while (!name.empty() && name.front() == ' ') name.remove_prefix(1);
    while (!name.empty() && name.back() == ' ') name.remove_suffix(1);
    if (name == "all") {
      out.insert({Layer::kRoles, Layer::kPurposes, Layer::kAttributes,
                  Layer::kRolePurpose, Layer::kPurposeAttribute});
    } else if (name == "roles") {
      out.insert(Layer::kRoles);
    } else if (name == "purposes") {
      out.insert(Layer::kPurposes);
    } else if (name == "attributes") {
      out.insert(Layer::kAttributes);
    } else if (name == "role-purpose") {
      out.insert(Layer::kRolePurpose);
    } else if (name == "purpose-attribute") {
      out.insert(Layer::kPurposeAttribute);
    } else if (!name.empty()) {
      throw ConfigError("unknown layer '" + std::string(name) +
                        "' (expected roles, purposes, attributes, role-purpose, "
                        "purpose-attribute or all)");
    }
    start = end + 1;
  }
  if (out.empty()) throw ConfigError("no layers selected");
  return out;
}

std::string emit_graph(const PolicyModel& model, const RenderOptions& opts) {
  require_valid(model);
  if (opts.layers.empty()) throw PreconditionError("no layers selected");
  return GraphEmitter(model, opts).run();
}

std::string emit_tables(const PolicyModel& model) {
  require_valid(model);
  TableWriter w;

  w.block("roles", {"id", "role"});
  for (const auto& r : model.roles) w.row({r.id, r.label});

  w.block("purposes", {"id", "purpose", "universal"});
  for (const auto& p : model.purposes) {
    w.row({p.id, p.label, p.universal ? "yes" : "no"});
  }

  w.block("attributes", {"id", "attribute", "groups", "collected", "derived"});
  for (const auto& a : model.attributes) {
    std::vector<std::string> labels;
    for (const auto& g : a.groups) labels.push_back(model.find_group(g)->label);
    w.row({a.id, a.label, labels.empty() ? "None" : join(labels, ", "),
           a.collected ? (*a.collected ? "yes" : "no") : "",
           a.derived ? "yes" : "no"});
  }

  w.block("role_hierarchy", {"superior", "inferior"});
  for (const auto& e : model.role_edges) {
    w.row({model.role(e.superior).label, model.role(e.inferior).label});
  }

  w.block("purpose_tasks", {"purpose", "position", "task", "label"});
  for (const auto& p : model.purposes) {
    for (std::size_t i = 0; i < p.tasks.size(); ++i) {
      w.row({p.id, std::to_string(i + 1), p.tasks[i],
             model.find_task(p.tasks[i])->label});
    }
  }

  w.block("aggregations", {"attribute_1", "attribute_2", "new_attribute"});
  for (const auto& a : model.aggregations) {
    w.row({model.attribute(a.left).label, model.attribute(a.right).label,
           model.attribute(a.product).label});
  }

  w.block("role_purpose", {"role", "purpose", "condition"});
  for (const auto& g : model.rp_grants) {
    w.row({g.role, g.purpose, cond_text(g.condition)});
  }

  w.block("purpose_attribute",
          {"purpose", "source", "attribute", "condition", "granularity"});
  for (const auto& p : model.purposes) {
    for (const auto& tid : p.tasks) {
      const Task* t = model.find_task(tid);
      const auto* c = model.task_condition(p.id, tid);
      w.row({p.id, tid, t->reads, c ? render_condition(c->condition) : "",
             t->via.value_or("")});
    }
  }
  for (const auto& g : model.pg_grants) {
    w.row({g.purpose, "group:" + g.group, "*", cond_text(g.condition), ""});
  }

  return std::move(w).take();
}

}  // namespace pppm
