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

// Graphviz (DOT) emission of the layered permission diagram, and
// tab-separated table reports.
//
// Node ids are namespaced by kind so layers never collide:
//   role:<id>  purpose:<id>  task:<id>  attr:<id>  group:<id>  legend:<layer>
// Component layers become clusters (cluster_roles, cluster_purposes,
// cluster_attributes). Permission layers are plain subgraphs holding dashed
// edges: role -> purpose, task -> attribute (one per purpose/task pair) and
// purpose -> group.

#include <set>
#include <string>
#include <string_view>

#include "pppm/model.hpp"

namespace pppm {

enum class Layer { kRoles, kPurposes, kAttributes, kRolePurpose, kPurposeAttribute };

struct RenderOptions {
  std::set<Layer> layers = {Layer::kRoles, Layer::kPurposes, Layer::kAttributes,
                            Layer::kRolePurpose, Layer::kPurposeAttribute};
  bool show_legend = true;
  bool cluster_groups = true;
};

// Comma-separated subset of roles, purposes, attributes, role-purpose,
// purpose-attribute, all. Throws ConfigError on unknown names or an empty set.
std::set<Layer> parse_layers(std::string_view text);

// Throws PreconditionError on an invalid model or an empty layer set.
std::string emit_graph(const PolicyModel& model, const RenderOptions& opts = {});

// Eight blocks: roles, purposes, attributes, role_hierarchy, purpose_tasks,
// aggregations, role_purpose, purpose_attribute. Each is a `[name]` line, a
// header row and data rows, tab-separated, followed by a blank line.
std::string emit_tables(const PolicyModel& model);

}  // namespace pppm
