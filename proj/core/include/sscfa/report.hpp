// Copyright 2026 The sscfa Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

// Flow sets: per variable, the values its addresses may hold.

#ifndef SSCFA_REPORT_HPP
#define SSCFA_REPORT_HPP

#include <map>
#include <set>
#include <string>
#include <vector>

#include "sscfa/classical.hpp"
#include "sscfa/concrete.hpp"
#include "sscfa/domain.hpp"
#include "sscfa/dsg.hpp"

namespace sscfa {

/// Variable -> values. Contexts of k-call-site addresses are merged.
using FlowSets = std::map<Var, ValueSet>;

/// Flow sets keyed by the label of the expression of each configuration.
using PointFlows = std::map<Label, FlowSets>;

/// Value addresses of `store` grouped by variable.
FlowSets store_flows(const AbsStore& store);

void merge_flows(FlowSets& into, const FlowSets& from);

template <class Node>
FlowSets graph_flows(const DyckGraph<Node, AbsFrame>& g) {
  FlowSets out;
  for (const auto& n : g.nodes) merge_flows(out, store_flows(control_state(n).store));
  return out;
}

template <class Node>
PointFlows graph_point_flows(const DyckGraph<Node, AbsFrame>& g) {
  PointFlows out;
  for (const auto& n : g.nodes) {
    const AbsState& s = control_state(n);
    merge_flows(out[s.expr->label], store_flows(s.store));
  }
  return out;
}

FlowSets classical_flows(const std::set<ClassicalConfig>& configs);
PointFlows classical_point_flows(const std::set<ClassicalConfig>& configs);

/// Every value ever bound, abstracted. The concrete store only grows, so the
/// last configuration holds the whole binding history.
FlowSets concrete_flows(const ConcStore& store);

/// True if every address of `store` holds exactly one value.
bool all_singletons(const AbsStore& store);

/// One line per variable, `x: {3,4}`, sorted by variable.
std::string render_flows(const FlowSets& flows);

/// Blocks headed `@L<label>` followed by render_flows of that point.
std::string render_point_flows(const PointFlows& flows);

std::string render_value_set(const ValueSet& vs);

/// Side-by-side table. `columns` are (heading, flows) pairs.
std::string render_comparison(const std::vector<std::pair<std::string, FlowSets>>& columns);

}  // namespace sscfa

#endif  // SSCFA_REPORT_HPP
