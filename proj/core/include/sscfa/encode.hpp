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

// JSON and DOT output. Everything is emitted in sorted order so identical
// inputs give byte-identical files.

#ifndef SSCFA_ENCODE_HPP
#define SSCFA_ENCODE_HPP

#include <algorithm>
#include <map>
#include <set>
#include <sstream>
#include <string>
#include <tuple>
#include <vector>

#include <nlohmann/json.hpp>

#include "sscfa/classical.hpp"
#include "sscfa/concrete.hpp"
#include "sscfa/domain.hpp"
#include "sscfa/dsg.hpp"
#include "sscfa/report.hpp"
#include "sscfa/summaries.hpp"

namespace sscfa {

using Json = nlohmann::json;

Json encode(const AbsAddr& a);
Json encode(const AbsEnv& env);
Json encode(const AbsValue& v);
Json encode(const ValueSet& vs);
Json encode(const AbsStore& store);
Json encode(const AbsFrame& f);
Json encode(const FrameSetSummary& s);
Json encode(const ReachAddrSummary& s);
Json encode(const TopSummary& s);
Json encode(const ConcAddr& a);
Json encode(const ConcEnv& env);
Json encode(const ConcValue& v);
Json encode(const ConcStore& store);
Json encode(const ConcFrame& f);
Json encode(const FlowSets& flows);
Json encode(const PointFlows& flows);
Json encode(const ClassicalConfig& c);

/// One trace line: {step, expr_label, env, store, stack}, stack top first.
Json encode_trace_line(std::size_t step, const ConcConfig& c);

/// {configs: [...]} in configuration order.
Json encode_classical(const std::set<ClassicalConfig>& configs);

namespace detail {

Json encode_state_fields(const AbsState& s);
std::string dot_escape(const std::string& s);

inline Json summary_json(const AbsState&) { return nullptr; }
template <class Summary>
Json summary_json(const AbsConfig<Summary>& c) {
  return encode(c.summary);
}

inline std::string summary_text(const AbsState&) { return ""; }
template <class Summary>
std::string summary_text(const AbsConfig<Summary>& c) {
  return to_string(c.summary);
}

// Node positions in sorted node order and frame ranks in sorted frame order.
template <class Node>
struct Numbering {
  std::vector<NodeId> order;     // position -> id
  std::vector<NodeId> position;  // id -> position
  std::vector<FrameId> frame_rank;

  explicit Numbering(const DyckGraph<Node, AbsFrame>& g) : order(sorted_order(g)), position(g.nodes.size()) {
    for (NodeId i = 0; i < order.size(); ++i) position[order[i]] = i;
    std::vector<FrameId> frames(g.frames.size());
    for (FrameId i = 0; i < frames.size(); ++i) frames[i] = i;
    std::sort(frames.begin(), frames.end(), [&](FrameId a, FrameId b) { return g.frames[a] < g.frames[b]; });
    frame_rank.resize(frames.size());
    for (FrameId i = 0; i < frames.size(); ++i) frame_rank[frames[i]] = i;
  }

  auto edge_key(const DyckEdge& e) const {
    FrameId f = e.frame == kNoFrame ? kNoFrame : frame_rank[e.frame];
    return std::make_tuple(position[e.src], e.kind, f, position[e.dst]);
  }

  std::vector<DyckEdge> sorted_edges(const std::set<DyckEdge>& edges) const {
    std::vector<DyckEdge> out(edges.begin(), edges.end());
    std::sort(out.begin(), out.end(), [&](const DyckEdge& a, const DyckEdge& b) { return edge_key(a) < edge_key(b); });
    return out;
  }

  std::vector<NodePair> sorted_pairs(const std::set<NodePair>& pairs) const {
    std::vector<NodePair> out;
    for (const auto& [a, b] : pairs) out.emplace_back(position[a], position[b]);
    std::sort(out.begin(), out.end());
    return out;
  }
};

inline const char* action_name(ActionKind k) {
  switch (k) {
    case ActionKind::Eps: return "eps";
    case ActionKind::Push: return "push";
    case ActionKind::Pop: return "pop";
  }
  return "?";
}

}  // namespace detail

/// {nodes:[{id,expr,env,store,summary}], edges:[{src,action,frame,dst}],
/// eps:[[src,dst]], root}. Node ids are positions in sorted node order.
template <class Node>
Json graph_to_json(const DyckGraph<Node, AbsFrame>& g) {
  detail::Numbering<Node> num(g);
  Json nodes = Json::array();
  for (NodeId pos = 0; pos < num.order.size(); ++pos) {
    const Node& n = g.nodes[num.order[pos]];
    Json j = detail::encode_state_fields(control_state(n));
    j["id"] = pos;
    j["summary"] = detail::summary_json(n);
    nodes.push_back(std::move(j));
  }
  Json edges = Json::array();
  for (const auto& e : num.sorted_edges(g.edges)) {
    Json j;
    j["src"] = num.position[e.src];
    j["action"] = detail::action_name(e.kind);
    j["frame"] = e.kind == ActionKind::Eps ? Json(nullptr) : encode(g.frames[e.frame]);
    j["dst"] = num.position[e.dst];
    edges.push_back(std::move(j));
  }
  Json eps = Json::array();
  for (const auto& [a, b] : num.sorted_pairs(g.eps)) eps.push_back({a, b});
  Json out;
  out["nodes"] = std::move(nodes);
  out["edges"] = std::move(edges);
  out["eps"] = std::move(eps);
  out["root"] = g.nodes.empty() ? Json(nullptr) : Json(num.position[g.root]);
  return out;
}

/// Nodes labeled with expression label and summary; edges ε, +φ, -φ;
/// ε-closure pairs dashed.
template <class Node>
std::string graph_to_dot(const DyckGraph<Node, AbsFrame>& g) {
  detail::Numbering<Node> num(g);
  std::ostringstream out;
  out << "digraph dsg {\n  node [shape=box];\n";
  for (NodeId pos = 0; pos < num.order.size(); ++pos) {
    const Node& n = g.nodes[num.order[pos]];
    std::string label = "L" + std::to_string(index(control_state(n).expr->label));
    std::string summary = detail::summary_text(n);
    if (!summary.empty()) label += " " + summary;
    out << "  n" << pos << " [label=\"" << detail::dot_escape(label) << "\"";
    if (num.order[pos] == g.root) out << ", peripheries=2";
    out << "];\n";
  }
  for (const auto& e : num.sorted_edges(g.edges)) {
    std::string label = e.kind == ActionKind::Eps ? "ε"
                        : (e.kind == ActionKind::Push ? "+" : "-") + to_string(g.frames[e.frame]);
    out << "  n" << num.position[e.src] << " -> n" << num.position[e.dst] << " [label=\""
        << detail::dot_escape(label) << "\"];\n";
  }
  for (const auto& [a, b] : num.sorted_pairs(g.eps)) {
    out << "  n" << a << " -> n" << b << " [style=dashed, color=gray];\n";
  }
  out << "}\n";
  return out.str();
}

}  // namespace sscfa

#endif  // SSCFA_ENCODE_HPP
