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

// Summarized pushdown analysis: transition rules over abstract states, the
// Dyck state graph builder, and a separate plain pushdown CFA builder used as
// a reference.

#ifndef SSCFA_DSG_HPP
#define SSCFA_DSG_HPP

#include <algorithm>
#include <map>
#include <optional>
#include <set>
#include <tuple>
#include <utility>
#include <vector>

#include "sscfa/domain.hpp"
#include "sscfa/gc.hpp"
#include "sscfa/saturation.hpp"
#include "sscfa/summaries.hpp"

namespace sscfa {

// ---------------------------------------------------------------------------
// Transition rules on control states

struct LocalMove {
  ActionKind kind = ActionKind::Eps;  // Eps or Push
  std::optional<AbsFrame> frame;      // set for Push
  AbsState target;
};

/// Tail call: one ε move per closure the operator may evaluate to. Non-tail
/// call: one push of (v, body, env) into the call. Return: nothing.
std::vector<LocalMove> local_moves(const AbsState& s, const AllocPolicy& policy);

/// Popping `f` at a Return state: binds the frame's variable to the
/// returned values. Empty when `s` is not a Return or the value set is empty.
std::vector<AbsState> pop_successors(const AbsState& s, const AbsFrame& f, const AllocPolicy& policy);

struct AnalysisOptions {
  AllocPolicy policy;
  bool gc = false;
  /// Store collected configurations as nodes. Requires gc.
  bool canonicalize_gc = false;
  /// One node per control state, summaries joined.
  bool node_merge = false;
  SaturationOptions limits;
};

// ---------------------------------------------------------------------------
// The summarized system

template <SummaryScheme S>
class SscfaSystem {
 public:
  using Summary = typename S::Summary;
  using Node = AbsConfig<Summary>;
  using Frame = AbsFrame;
  using Key = Node;

  SscfaSystem(const Expr& e, S scheme, AnalysisOptions opts)
      : e_(&e), scheme_(std::move(scheme)), opts_(std::move(opts)) {
    if (opts_.gc) require_gc_support(scheme_);
    if (opts_.canonicalize_gc && !opts_.gc) {
      throw ConfigError("canonicalized collection requires garbage collection");
    }
    if (!e.free.empty()) throw ConfigError("program is not closed: free variable '" + *e.free.begin() + "'");
  }

  Node root() const { return normalize(Node{AbsState{e_, {}, {}, {}}, scheme_.bottom()}); }

  Key key(const Node& n) const {
    if (!opts_.node_merge) return n;
    return Node{n.state, scheme_.bottom()};
  }

  bool merge(Node& into, const Node& from) const {
    if (!opts_.node_merge) return false;
    Summary joined = scheme_.join(into.summary, from.summary);
    if (joined == into.summary) return false;
    into.summary = std::move(joined);
    return true;
  }

  /// The configuration the rules are applied to: collected under gc.
  Node prepare(const Node& n) const {
    if constexpr (AddressView<S>) {
      if (opts_.gc) return collect(scheme_, n);
    }
    return n;
  }

  template <class Emit>
  void moves(const Node& n, Emit&& emit) const {
    Node c = prepare(n);
    for (auto& m : local_moves(c.state, opts_.policy)) {
      if (m.kind == ActionKind::Push) {
        Summary s = scheme_.push(*m.frame, c.summary);
        emit(ActionKind::Push, &*m.frame, normalize(Node{std::move(m.target), std::move(s)}));
      } else {
        emit(ActionKind::Eps, static_cast<const Frame*>(nullptr),
             normalize(Node{std::move(m.target), c.summary}));
      }
    }
  }

  template <class Emit>
  void pops(const Node& ret, const Frame& f, const Node& push_src, Emit&& emit) const {
    Node c = prepare(ret);
    for (auto& t : pop_successors(c.state, f, opts_.policy)) {
      emit(normalize(Node{std::move(t), push_src.summary}));
    }
  }

  const S& scheme() const { return scheme_; }
  const AnalysisOptions& options() const { return opts_; }

 private:
  Node normalize(Node n) const {
    if constexpr (AddressView<S>) {
      if (opts_.canonicalize_gc) return collect(scheme_, n);
    }
    return n;
  }

  const Expr* e_;
  S scheme_;
  AnalysisOptions opts_;
};

template <SummaryScheme S>
using SscfaGraph = DyckGraph<AbsConfig<typename S::Summary>, AbsFrame>;

/// (e, [], [], bottom).
template <SummaryScheme S>
AbsConfig<typename S::Summary> inject_abs(const Expr& e, const S& scheme) {
  return {AbsState{&e, {}, {}, {}}, scheme.bottom()};
}

/// Least Dyck state graph of `e`. With opts.gc the rules run on collected
/// configurations. Throws ConfigError for incompatible options and
/// ResourceLimitError when a cap is hit.
template <SummaryScheme S>
SscfaGraph<S> build_dyck(const Expr& e, const S& scheme, const AnalysisOptions& opts) {
  return Saturator<SscfaSystem<S>>(SscfaSystem<S>(e, scheme, opts), opts.limits).run();
}

extern template SscfaGraph<FrameSetScheme> build_dyck(const Expr&, const FrameSetScheme&,
                                                      const AnalysisOptions&);
extern template SscfaGraph<ReachAddrScheme> build_dyck(const Expr&, const ReachAddrScheme&,
                                                       const AnalysisOptions&);
extern template SscfaGraph<TopScheme> build_dyck(const Expr&, const TopScheme&, const AnalysisOptions&);

// ---------------------------------------------------------------------------
// Queries over finished graphs

template <class Node>
std::optional<NodeId> find_node(const DyckGraph<Node, AbsFrame>& g, const Node& n) {
  auto it = std::find(g.nodes.begin(), g.nodes.end(), n);
  if (it == g.nodes.end()) return std::nullopt;
  return static_cast<NodeId>(it - g.nodes.begin());
}

/// Sources of push edges labeled `f` whose target is `c` or reaches `c`
/// through the ε-closure graph.
template <class Node>
std::set<NodeId> pred(const DyckGraph<Node, AbsFrame>& g, NodeId c, const AbsFrame& f) {
  std::set<NodeId> into{c};
  for (const auto& [a, b] : g.eps) {
    if (b == c) into.insert(a);
  }
  std::set<NodeId> out;
  for (const auto& e : g.edges) {
    if (e.kind == ActionKind::Push && into.contains(e.dst) && g.frames[e.frame] == f) out.insert(e.src);
  }
  return out;
}

/// All transitions of `c` in the context of `g`: ε and push moves, plus a
/// pop for each frame with a matching push found by pred. `c` must be a node
/// of `g` for pops to be found.
template <SummaryScheme S>
std::set<std::pair<StackAction, AbsConfig<typename S::Summary>>> sscfa_step(
    const AbsConfig<typename S::Summary>& c, const SscfaGraph<S>& g, const S& scheme,
    const AnalysisOptions& opts) {
  SscfaSystem<S> sys(*g.nodes[g.root].state.expr, scheme, opts);
  std::set<std::pair<StackAction, AbsConfig<typename S::Summary>>> out;
  sys.moves(c, [&](ActionKind k, const AbsFrame* f, AbsConfig<typename S::Summary> t) {
    out.emplace(k == ActionKind::Push ? StackAction::push(*f) : StackAction::eps(), std::move(t));
  });
  auto id = find_node(g, c);
  if (!id) return out;
  for (const auto& f : g.frames) {
    for (NodeId s1 : pred(g, *id, f)) {
      sys.pops(c, f, g.nodes[s1], [&](AbsConfig<typename S::Summary> t) {
        out.emplace(StackAction::pop(f), std::move(t));
      });
    }
  }
  return out;
}

/// sscfa_step with collection switched on.
template <AddressView S>
std::set<std::pair<StackAction, AbsConfig<typename S::Summary>>> gc_step(
    const AbsConfig<typename S::Summary>& c, const SscfaGraph<S>& g, const S& scheme,
    AnalysisOptions opts) {
  opts.gc = true;
  return sscfa_step(c, g, scheme, opts);
}

// ---------------------------------------------------------------------------
// Plain pushdown CFA over control states, computed by naive Kleene
// iteration. Kept independent of the saturation engine on purpose.

using PdcfaGraph = DyckGraph<AbsState, AbsFrame>;

/// Node ids follow the order of AbsState. Rejects gc and node merging.
PdcfaGraph build_pdcfa(const Expr& e, const AnalysisOptions& opts);

// ---------------------------------------------------------------------------
// Value forms of graphs, for comparisons independent of node numbering.

inline const AbsState& control_state(const AbsState& s) { return s; }
template <class Summary>
const AbsState& control_state(const AbsConfig<Summary>& c) {
  return c.state;
}

/// Nodes as a sorted set; edges and ε-closure pairs refer to nodes by their
/// rank in that set, so two graphs compare equal exactly when they have the
/// same nodes, edges and pairs as values.
template <class Node>
struct CanonicalGraph {
  std::vector<Node> nodes;  // sorted, no duplicates
  std::set<std::tuple<std::size_t, StackAction, std::size_t>> edges;
  std::set<std::pair<std::size_t, std::size_t>> eps;
  std::optional<std::size_t> root;
  bool operator==(const CanonicalGraph&) const = default;
};

template <class Node, class Project>
auto canonical_with(const DyckGraph<Node, AbsFrame>& g, Project proj) {
  using Out = std::decay_t<decltype(proj(g.nodes.front()))>;
  CanonicalGraph<Out> c;
  std::map<Out, std::size_t> rank;
  for (const auto& n : g.nodes) rank.emplace(proj(n), 0);
  c.nodes.reserve(rank.size());
  for (auto& [n, r] : rank) {
    r = c.nodes.size();
    c.nodes.push_back(n);
  }
  std::vector<std::size_t> of(g.nodes.size());
  for (NodeId i = 0; i < g.nodes.size(); ++i) of[i] = rank.at(proj(g.nodes[i]));
  for (const auto& e : g.edges) {
    StackAction a;
    a.kind = e.kind;
    if (e.kind != ActionKind::Eps) a.frame = g.frames[e.frame];
    c.edges.emplace(of[e.src], std::move(a), of[e.dst]);
  }
  for (const auto& [a, b] : g.eps) c.eps.emplace(of[a], of[b]);
  if (!g.nodes.empty()) c.root = of[g.root];
  return c;
}

template <class Node>
CanonicalGraph<Node> canonical(const DyckGraph<Node, AbsFrame>& g) {
  return canonical_with(g, [](const Node& n) { return n; });
}

/// The graph with summaries dropped.
template <class Node>
CanonicalGraph<AbsState> control_projection(const DyckGraph<Node, AbsFrame>& g) {
  return canonical_with(g, [](const Node& n) { return control_state(n); });
}

/// Node ids in ascending node order; used for deterministic export.
template <class Node>
std::vector<NodeId> sorted_order(const DyckGraph<Node, AbsFrame>& g) {
  std::vector<NodeId> ids(g.nodes.size());
  for (NodeId i = 0; i < ids.size(); ++i) ids[i] = i;
  std::sort(ids.begin(), ids.end(), [&](NodeId a, NodeId b) { return g.nodes[a] < g.nodes[b]; });
  return ids;
}

}  // namespace sscfa

#endif  // SSCFA_DSG_HPP
