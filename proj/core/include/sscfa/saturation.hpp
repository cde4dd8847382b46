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

// Worklist construction of a Dyck state graph and its ε-closure graph.
//
// The engine is generic in the transition system. A System provides
//
//   using Node, Frame, Key;          Node and Frame totally ordered
//   Node root() const;
//   Key key(const Node&) const;
//   bool merge(Node& into, const Node& from) const;   // true if `into` grew
//   void moves(const Node&, Emit) const;     // Emit(ActionKind, const Frame*, Node)
//   void pops(const Node& ret, const Frame&, const Node& push_src, Emit) const;
//                                            // Emit(Node)
//
// `moves` yields the ε and push transitions of a node. `pops` yields the
// targets of popping `frame` at `ret` when the frame was pushed at
// `push_src`; the source is passed because summaries are restored from it.
// When key(n) is n itself `merge` never fires and nodes are exact.
//
// Three worklists hold new shortcut pairs, new edges and new nodes and are
// drained in that priority. Every fact is queued once, when it is first
// discovered, so the number of iterations is bounded by
// |nodes| + |edges| + |nodes|^2 unless merging re-queues grown nodes.

#ifndef SSCFA_SATURATION_HPP
#define SSCFA_SATURATION_HPP

#include <cstdint>
#include <deque>
#include <limits>
#include <map>
#include <optional>
#include <random>
#include <set>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "sscfa/errors.hpp"
#include "sscfa/summaries.hpp"

namespace sscfa {

using NodeId = std::uint32_t;
using FrameId = std::uint32_t;
inline constexpr FrameId kNoFrame = std::numeric_limits<FrameId>::max();

struct DyckEdge {
  NodeId src = 0;
  ActionKind kind = ActionKind::Eps;
  FrameId frame = kNoFrame;
  NodeId dst = 0;

  auto operator<=>(const DyckEdge&) const = default;
};

using NodePair = std::pair<NodeId, NodeId>;

template <class Node, class Frame>
struct DyckGraph {
  std::vector<Node> nodes;
  std::vector<Frame> frames;
  std::set<DyckEdge> edges;
  std::set<NodePair> eps;  // ε-closure graph H
  NodeId root = 0;
  std::size_t iterations = 0;

  std::size_t count(ActionKind k) const {
    std::size_t n = 0;
    for (const auto& e : edges) n += e.kind == k;
    return n;
  }
  /// |nodes| + |edges| + |nodes|^2.
  std::size_t iteration_bound() const {
    return nodes.size() + edges.size() + nodes.size() * nodes.size();
  }
};

struct SaturationOptions {
  std::size_t max_nodes = 1'000'000;
  std::size_t max_edges = 4'000'000;
  /// Draw work items in random order instead of first-in first-out.
  std::optional<std::uint64_t> shuffle_seed;
};

/// Facts discovered by one call of explore, add_edge or add_short.
struct Delta {
  std::vector<NodeId> nodes;
  std::vector<DyckEdge> edges;
  std::vector<NodePair> shortcuts;

  bool empty() const { return nodes.empty() && edges.empty() && shortcuts.empty(); }
};

template <class System>
class Saturator {
 public:
  using Node = typename System::Node;
  using Frame = typename System::Frame;
  using Key = typename System::Key;
  using Graph = DyckGraph<Node, Frame>;

  Saturator(System sys, SaturationOptions opts) : sys_(std::move(sys)), opts_(opts) {
    if (opts_.shuffle_seed) rng_.emplace(*opts_.shuffle_seed);
    Delta d;
    root_ = intern(sys_.root(), d);
    enqueue(d);
  }

  /// Successors of node `n` through ε and push transitions.
  Delta explore(NodeId n) {
    Delta d;
    const Node src = nodes_[n];
    explored_[n] = true;
    sys_.moves(src, [&](ActionKind k, const Frame* f, Node target) {
      FrameId fid = f ? intern_frame(*f) : kNoFrame;
      NodeId t = intern(std::move(target), d);
      note_edge(DyckEdge{n, k, fid, t}, d);
    });
    return d;
  }

  /// Consequences of edge `e`, which must already be known.
  Delta add_edge(const DyckEdge& e) {
    Delta d;
    switch (e.kind) {
      case ActionKind::Eps:
        note_short(e.src, e.dst, d);
        break;
      case ActionKind::Push:
        push_in_[e.dst].emplace_back(e.src, e.frame);
        push_out_[e.src].emplace_back(e.frame, e.dst);
        fire_pops(e.src, e.frame, e.dst, d);
        break;
      case ActionKind::Pop:
        for_each_push_reaching(e.src, e.frame, [&](NodeId s1) { fire(s1, e.frame, e.src, d); });
        break;
    }
    return d;
  }

  /// Consequences of the shortcut (a, b), which must already be known.
  Delta add_short(NodeId a, NodeId b) {
    Delta d;
    h_fwd_[a].insert(b);
    h_bwd_[b].insert(a);
    for (const auto& [s1, f] : push_in_[a]) fire(s1, f, b, d);
    for (NodeId x : std::vector<NodeId>(h_bwd_[a].begin(), h_bwd_[a].end())) note_short(x, b, d);
    for (NodeId y : std::vector<NodeId>(h_fwd_[b].begin(), h_fwd_[b].end())) note_short(a, y, d);
    return d;
  }

  /// Processes one work item. Returns false once every worklist is empty.
  bool step() {
    Delta d;
    if (!shorts_.empty()) {
      NodePair p = take(shorts_);
      d = add_short(p.first, p.second);
    } else if (!edges_work_.empty()) {
      d = add_edge(take(edges_work_));
    } else if (!nodes_work_.empty()) {
      NodeId n = take(nodes_work_);
      bool again = explored_[n];
      d = explore(n);
      if (again) refire_grown(n, d);
    } else {
      return false;
    }
    ++iterations_;
    enqueue(d);
    return true;
  }

  Graph run() {
    while (step()) {
    }
    Graph g;
    g.nodes.assign(nodes_.begin(), nodes_.end());
    g.frames.assign(frames_.begin(), frames_.end());
    g.edges = edges_;
    g.eps = eps_;
    g.root = root_;
    g.iterations = iterations_;
    if (!merged_ && g.iterations > g.iteration_bound()) {
      throw std::logic_error("saturation took " + std::to_string(g.iterations) +
                             " iterations, above the bound " + std::to_string(g.iteration_bound()));
    }
    return g;
  }

  NodeId root() const { return root_; }
  const Node& node(NodeId n) const { return nodes_[n]; }
  std::size_t node_count() const { return nodes_.size(); }

 private:
  template <class T>
  T take(std::deque<T>& q) {
    if (rng_ && q.size() > 1) {
      std::uniform_int_distribution<std::size_t> pick(0, q.size() - 1);
      std::swap(q.front(), q[pick(*rng_)]);
    }
    T out = std::move(q.front());
    q.pop_front();
    return out;
  }

  void enqueue(const Delta& d) {
    shorts_.insert(shorts_.end(), d.shortcuts.begin(), d.shortcuts.end());
    edges_work_.insert(edges_work_.end(), d.edges.begin(), d.edges.end());
    nodes_work_.insert(nodes_work_.end(), d.nodes.begin(), d.nodes.end());
  }

  NodeId intern(Node n, Delta& d) {
    Key k = sys_.key(n);
    auto it = index_.find(k);
    if (it != index_.end()) {
      if (sys_.merge(nodes_[it->second], n)) {
        merged_ = true;
        d.nodes.push_back(it->second);
      }
      return it->second;
    }
    if (nodes_.size() >= opts_.max_nodes) {
      throw ResourceLimitError("node limit of " + std::to_string(opts_.max_nodes) + " exceeded");
    }
    auto id = static_cast<NodeId>(nodes_.size());
    nodes_.push_back(std::move(n));
    explored_.push_back(false);
    push_in_.emplace_back();
    push_out_.emplace_back();
    h_fwd_.emplace_back();
    h_bwd_.emplace_back();
    index_.emplace(std::move(k), id);
    d.nodes.push_back(id);
    return id;
  }

  FrameId intern_frame(const Frame& f) {
    auto [it, inserted] = frame_index_.try_emplace(f, static_cast<FrameId>(frames_.size()));
    if (inserted) frames_.push_back(f);
    return it->second;
  }

  void note_edge(const DyckEdge& e, Delta& d) {
    if (edges_.contains(e)) return;
    if (edges_.size() >= opts_.max_edges) {
      throw ResourceLimitError("edge limit of " + std::to_string(opts_.max_edges) + " exceeded");
    }
    edges_.insert(e);
    d.edges.push_back(e);
  }

  void note_short(NodeId a, NodeId b, Delta& d) {
    if (eps_.emplace(a, b).second) d.shortcuts.emplace_back(a, b);
  }

  // Pops of frame `f` at `ret` matched with the push at `s1`; each target
  // `t` gives a pop edge and the shortcut (s1, t).
  void fire(NodeId s1, FrameId f, NodeId ret, Delta& d) {
    const Node src = nodes_[s1];
    const Node at = nodes_[ret];
    sys_.pops(at, frames_[f], src, [&](Node target) {
      NodeId t = intern(std::move(target), d);
      note_edge(DyckEdge{ret, ActionKind::Pop, f, t}, d);
      note_short(s1, t, d);
    });
  }

  // Pops at every node the push target reaches with no net stack change,
  // including the target itself.
  void fire_pops(NodeId s1, FrameId f, NodeId s2, Delta& d) {
    fire(s1, f, s2, d);
    for (NodeId s3 : std::vector<NodeId>(h_fwd_[s2].begin(), h_fwd_[s2].end())) fire(s1, f, s3, d);
  }

  // Calls `fn(s1)` for every push (s1, f, s2) whose target reaches `ret`.
  template <class Fn>
  void for_each_push_reaching(NodeId ret, FrameId f, Fn fn) {
    auto visit = [&](NodeId s2) {
      for (const auto& [s1, g] : std::vector<std::pair<NodeId, FrameId>>(push_in_[s2])) {
        if (g == f) fn(s1);
      }
    };
    visit(ret);
    for (NodeId s2 : std::vector<NodeId>(h_bwd_[ret].begin(), h_bwd_[ret].end())) visit(s2);
  }

  // A merged node grew: pops where it is the push source or the popping node
  // may now produce different targets.
  void refire_grown(NodeId n, Delta& d) {
    for (const auto& [f, s2] : std::vector<std::pair<FrameId, NodeId>>(push_out_[n])) {
      fire_pops(n, f, s2, d);
    }
    std::set<FrameId> popped;
    for (const auto& e : edges_) {
      if (e.src == n && e.kind == ActionKind::Pop) popped.insert(e.frame);
    }
    for (FrameId f : popped) {
      for_each_push_reaching(n, f, [&](NodeId s1) { fire(s1, f, n, d); });
    }
  }

  System sys_;
  SaturationOptions opts_;
  std::optional<std::mt19937_64> rng_;

  std::deque<Node> nodes_;
  std::map<Key, NodeId> index_;
  std::vector<bool> explored_;
  std::vector<Frame> frames_;
  std::map<Frame, FrameId> frame_index_;
  std::set<DyckEdge> edges_;
  std::set<NodePair> eps_;
  NodeId root_ = 0;

  std::vector<std::vector<std::pair<NodeId, FrameId>>> push_in_;   // by push target
  std::vector<std::vector<std::pair<FrameId, NodeId>>> push_out_;  // by push source
  std::vector<std::set<NodeId>> h_fwd_;
  std::vector<std::set<NodeId>> h_bwd_;

  std::deque<NodePair> shorts_;
  std::deque<DyckEdge> edges_work_;
  std::deque<NodeId> nodes_work_;
  std::size_t iterations_ = 0;
  bool merged_ = false;
};

}  // namespace sscfa

#endif  // SSCFA_SATURATION_HPP
