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

#include <algorithm>
#include <map>

#include "sscfa/dsg.hpp"

namespace sscfa {

template SscfaGraph<FrameSetScheme> build_dyck(const Expr&, const FrameSetScheme&, const AnalysisOptions&);
template SscfaGraph<ReachAddrScheme> build_dyck(const Expr&, const ReachAddrScheme&,
                                                const AnalysisOptions&);
template SscfaGraph<TopScheme> build_dyck(const Expr&, const TopScheme&, const AnalysisOptions&);

namespace {

AbsState bind_and_enter(const Expr* body, AbsEnv env, const Var& v, const ValueSet& values,
                        const AbsState& from, const AllocPolicy& policy) {
  AbsAddr a = abs_alloc(policy, v, from);
  AbsStore store = from.store;
  store.join(a, values);
  env[v] = std::move(a);
  return AbsState{body, std::move(env), std::move(store), tick(policy, from)};
}

}  // namespace

std::vector<LocalMove> local_moves(const AbsState& s, const AllocPolicy& policy) {
  std::vector<LocalMove> out;
  const Expr& e = *s.expr;
  switch (e.kind) {
    case Expr::Kind::Tail: {
      ValueSet args = abs_atomic_eval(e.arg, s.env, s.store);
      if (args.empty()) break;
      for (const auto& f : abs_atomic_eval(e.fun, s.env, s.store)) {
        const auto* clo = std::get_if<AbsClosure>(&f);
        if (!clo) continue;
        out.push_back({ActionKind::Eps, std::nullopt,
                       bind_and_enter(clo->lam->body, clo->env, clo->lam->param, args, s, policy)});
      }
      break;
    }
    case Expr::Kind::LetCall:
      out.push_back({ActionKind::Push, AbsFrame{e.var, e.body, s.env},
                     AbsState{e.call, s.env, s.store, s.context}});
      break;
    case Expr::Kind::Return:
      break;
  }
  return out;
}

std::vector<AbsState> pop_successors(const AbsState& s, const AbsFrame& f, const AllocPolicy& policy) {
  if (s.expr->kind != Expr::Kind::Return) return {};
  ValueSet values = abs_atomic_eval(s.expr->atom, s.env, s.store);
  if (values.empty()) return {};
  return {bind_and_enter(f.body, f.env, f.var, values, s, policy)};
}

PdcfaGraph build_pdcfa(const Expr& e, const AnalysisOptions& opts) {
  if (opts.gc || opts.canonicalize_gc) throw ConfigError("pushdown CFA has no garbage collection");
  if (opts.node_merge) throw ConfigError("pushdown CFA has no node merging");
  if (!e.free.empty()) throw ConfigError("program is not closed: free variable '" + *e.free.begin() + "'");

  // States and frames are interned; the rules below only see ids.
  std::vector<AbsState> states;
  std::map<AbsState, NodeId> state_id;
  std::vector<AbsFrame> frames;
  std::map<AbsFrame, FrameId> frame_id;
  bool changed = false;

  auto node = [&](AbsState s) {
    auto it = state_id.find(s);
    if (it != state_id.end()) return it->second;
    if (states.size() >= opts.limits.max_nodes) {
      throw ResourceLimitError("node limit of " + std::to_string(opts.limits.max_nodes) + " exceeded");
    }
    auto id = static_cast<NodeId>(states.size());
    state_id.emplace(s, id);
    states.push_back(std::move(s));
    changed = true;
    return id;
  };
  auto frame = [&](const AbsFrame& f) {
    auto [it, inserted] = frame_id.try_emplace(f, static_cast<FrameId>(frames.size()));
    if (inserted) frames.push_back(f);
    return it->second;
  };

  std::set<DyckEdge> edges;
  std::vector<std::set<NodeId>> h;  // h[a] = {b | (a, b) in H}
  auto add_edge = [&](DyckEdge ed) {
    if (!edges.insert(ed).second) return;
    if (edges.size() > opts.limits.max_edges) {
      throw ResourceLimitError("edge limit of " + std::to_string(opts.limits.max_edges) + " exceeded");
    }
    changed = true;
  };
  auto add_h = [&](NodeId a, NodeId b) {
    if (h.size() <= std::max(a, b)) h.resize(std::max(a, b) + 1);
    changed |= h[a].insert(b).second;
  };

  const NodeId root = node(AbsState{&e, {}, {}, {}});
  std::size_t rounds = 0;

  // Each round applies every rule to the whole current graph; stop when a
  // round adds nothing.
  for (changed = true; changed; ++rounds) {
    changed = false;
    for (NodeId n = 0, count = static_cast<NodeId>(states.size()); n < count; ++n) {
      for (auto& m : local_moves(states[n], opts.policy)) {
        FrameId f = m.kind == ActionKind::Push ? frame(*m.frame) : kNoFrame;
        add_edge(DyckEdge{n, m.kind, f, node(std::move(m.target))});
      }
    }
    const std::vector<std::set<NodeId>> reach = h;
    for (const auto& ed : std::vector<DyckEdge>(edges.begin(), edges.end())) {
      if (ed.kind == ActionKind::Eps) add_h(ed.src, ed.dst);
      if (ed.kind != ActionKind::Push) continue;
      std::set<NodeId> at{ed.dst};
      if (ed.dst < reach.size()) at.insert(reach[ed.dst].begin(), reach[ed.dst].end());
      for (NodeId s3 : at) {
        for (auto& t : pop_successors(states[s3], frames[ed.frame], opts.policy)) {
          NodeId tid = node(std::move(t));
          add_h(ed.src, tid);
          add_edge(DyckEdge{s3, ActionKind::Pop, ed.frame, tid});
        }
      }
    }
    for (NodeId a = 0; a < reach.size(); ++a) {
      for (NodeId b : reach[a]) {
        if (b >= reach.size()) continue;
        for (NodeId c : reach[b]) add_h(a, c);
      }
    }
  }

  // Renumber nodes in AbsState order and frames in AbsFrame order.
  PdcfaGraph g;
  std::vector<NodeId> new_id(states.size());
  for (const auto& [s, old] : state_id) {
    new_id[old] = static_cast<NodeId>(g.nodes.size());
    g.nodes.push_back(s);
  }
  std::vector<FrameId> new_frame(frames.size());
  for (const auto& [f, old] : frame_id) {
    new_frame[old] = static_cast<FrameId>(g.frames.size());
    g.frames.push_back(f);
  }
  for (const auto& ed : edges) {
    FrameId f = ed.frame == kNoFrame ? kNoFrame : new_frame[ed.frame];
    g.edges.insert(DyckEdge{new_id[ed.src], ed.kind, f, new_id[ed.dst]});
  }
  for (NodeId a = 0; a < h.size(); ++a) {
    for (NodeId b : h[a]) g.eps.emplace(new_id[a], new_id[b]);
  }
  g.root = new_id[root];
  g.iterations = rounds;
  return g;
}

}  // namespace sscfa
