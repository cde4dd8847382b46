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

#include "sscfa/report.hpp"

#include <algorithm>
#include <sstream>

namespace sscfa {

FlowSets store_flows(const AbsStore& store) {
  FlowSets out;
  for (const auto& [a, vs] : store) {
    if (a.kind != AddrKind::Value) continue;
    out[a.var].insert(vs.begin(), vs.end());
  }
  return out;
}

void merge_flows(FlowSets& into, const FlowSets& from) {
  for (const auto& [v, vs] : from) into[v].insert(vs.begin(), vs.end());
}

FlowSets classical_flows(const std::set<ClassicalConfig>& configs) {
  FlowSets out;
  for (const auto& c : configs) merge_flows(out, store_flows(c.state.store));
  return out;
}

PointFlows classical_point_flows(const std::set<ClassicalConfig>& configs) {
  PointFlows out;
  for (const auto& c : configs) merge_flows(out[c.state.expr->label], store_flows(c.state.store));
  return out;
}

FlowSets concrete_flows(const ConcStore& store) { return store_flows(abstract_store(store)); }

bool all_singletons(const AbsStore& store) {
  return std::all_of(store.begin(), store.end(), [](const auto& e) { return e.second.size() == 1; });
}

std::string render_value_set(const ValueSet& vs) {
  std::string out = "{";
  bool first = true;
  for (const auto& v : vs) {
    if (!first) out += ",";
    out += to_string(v);
    first = false;
  }
  return out + "}";
}

std::string render_flows(const FlowSets& flows) {
  std::ostringstream out;
  for (const auto& [v, vs] : flows) out << v << ": " << render_value_set(vs) << "\n";
  return out.str();
}

std::string render_point_flows(const PointFlows& flows) {
  std::ostringstream out;
  for (const auto& [l, f] : flows) {
    out << "@L" << index(l) << "\n";
    std::istringstream lines(render_flows(f));
    for (std::string line; std::getline(lines, line);) out << "  " << line << "\n";
  }
  return out.str();
}

namespace {

// Display width in code points, so λ counts once.
std::size_t width(const std::string& s) {
  return std::count_if(s.begin(), s.end(), [](char c) { return (static_cast<unsigned char>(c) & 0xC0) != 0x80; });
}

}  // namespace

std::string render_comparison(const std::vector<std::pair<std::string, FlowSets>>& columns) {
  std::set<Var> vars;
  for (const auto& [_, f] : columns) {
    for (const auto& [v, vs] : f) vars.insert(v);
  }
  std::vector<std::vector<std::string>> rows;
  rows.push_back({"variable"});
  for (const auto& [h, _] : columns) rows.back().push_back(h);
  for (const auto& v : vars) {
    rows.push_back({v});
    for (const auto& [_, f] : columns) {
      auto it = f.find(v);
      rows.back().push_back(it == f.end() ? "{}" : render_value_set(it->second));
    }
  }
  std::vector<std::size_t> widths(columns.size() + 1, 0);
  for (const auto& r : rows) {
    for (std::size_t i = 0; i < r.size(); ++i) widths[i] = std::max(widths[i], width(r[i]));
  }
  std::ostringstream out;
  for (const auto& r : rows) {
    for (std::size_t i = 0; i < r.size(); ++i) {
      out << r[i];
      if (i + 1 < r.size()) out << std::string(widths[i] - width(r[i]) + 2, ' ');
    }
    out << "\n";
  }
  return out.str();
}

}  // namespace sscfa
