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

#include "sscfa/classical.hpp"

#include <deque>

#include "sscfa/dsg.hpp"
#include "sscfa/gc.hpp"
#include "sscfa/summaries.hpp"

namespace sscfa {

bool ClassicalFrame::operator==(const ClassicalFrame& o) const {
  return var == o.var && body->label == o.body->label && env == o.env && rp == o.rp;
}

std::strong_ordering ClassicalFrame::operator<=>(const ClassicalFrame& o) const {
  if (auto c = index(body->label) <=> index(o.body->label); c != 0) return c;
  if (auto c = var <=> o.var; c != 0) return c;
  if (auto c = env <=> o.env; c != 0) return c;
  return rp <=> o.rp;
}

ClassicalConfig classical_inject(const Expr& e) {
  if (!e.free.empty()) throw ConfigError("program is not closed: free variable '" + *e.free.begin() + "'");
  return ClassicalConfig{AbsState{&e, {}, {}, {}}, {}, AbsAddr::halt()};
}

ClassicalConfig classical_collect(const ClassicalConfig& c) {
  RootSet roots;
  KontStore live;
  std::deque<AbsAddr> chain{c.rp};
  while (!chain.empty()) {
    AbsAddr k = std::move(chain.front());
    chain.pop_front();
    auto it = c.konts.find(k);
    if (it == c.konts.end() || live.contains(k)) continue;
    live.emplace(k, it->second);
    for (const auto& f : it->second) {
      roots.merge(touch_frame(AbsFrame{f.var, f.body, f.env}));
      chain.push_back(f.rp);
    }
  }
  return ClassicalConfig{collect_state(c.state, roots), std::move(live), c.rp};
}

std::set<ClassicalConfig> classical_step(const ClassicalConfig& in, const ClassicalOptions& opts) {
  const ClassicalConfig c = opts.gc ? classical_collect(in) : in;
  const AbsState& s = c.state;
  std::set<ClassicalConfig> out;
  switch (s.expr->kind) {
    case Expr::Kind::Tail:
      for (auto& m : local_moves(s, opts.policy)) out.insert({std::move(m.target), c.konts, c.rp});
      break;
    case Expr::Kind::LetCall: {
      const Expr& e = *s.expr;
      AbsAddr rp = AbsAddr::kont(e.var, tick(opts.policy, s));
      ClassicalConfig next{AbsState{e.call, s.env, s.store, s.context}, c.konts, rp};
      next.konts[rp].insert(ClassicalFrame{e.var, e.body, s.env, c.rp});
      out.insert(std::move(next));
      break;
    }
    case Expr::Kind::Return: {
      auto it = c.konts.find(c.rp);
      if (it == c.konts.end()) break;
      for (const auto& f : it->second) {
        for (auto& t : pop_successors(s, AbsFrame{f.var, f.body, f.env}, opts.policy)) {
          out.insert({std::move(t), c.konts, f.rp});
        }
      }
      break;
    }
  }
  return out;
}

std::set<ClassicalConfig> classical_analyze(const Expr& e, const ClassicalOptions& opts) {
  std::set<ClassicalConfig> seen{classical_inject(e)};
  std::deque<const ClassicalConfig*> work{&*seen.begin()};
  while (!work.empty()) {
    const ClassicalConfig* c = work.front();
    work.pop_front();
    for (auto& next : classical_step(*c, opts)) {
      auto [it, inserted] = seen.insert(std::move(next));
      if (!inserted) continue;
      if (seen.size() > opts.max_configs) {
        throw ResourceLimitError("configuration limit of " + std::to_string(opts.max_configs) +
                                 " exceeded");
      }
      work.push_back(&*it);
    }
  }
  return seen;
}

}  // namespace sscfa
