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

#include "sscfa/gc.hpp"

#include <vector>

namespace sscfa {

std::set<AbsAddr> touch_clo(const AbsValue& v) {
  std::set<AbsAddr> out;
  const auto* clo = std::get_if<AbsClosure>(&v);
  if (!clo) return out;
  for (const auto& x : clo->lam->free) {
    auto it = clo->env.find(x);
    if (it == clo->env.end()) {
      throw MalformedError("closure λ" + clo->lam->param + " does not bind '" + x + "'");
    }
    out.insert(it->second);
  }
  return out;
}

RootSet state_roots(const AbsState& s) {
  RootSet out;
  for (const auto& v : s.expr->free) {
    auto it = s.env.find(v);
    if (it == s.env.end()) throw MalformedError("state does not bind '" + v + "'");
    out.insert(it->second);
  }
  return out;
}

std::set<AbsAddr> reachable_from(const RootSet& roots, const AbsStore& store) {
  std::set<AbsAddr> seen;
  std::vector<AbsAddr> work(roots.begin(), roots.end());
  while (!work.empty()) {
    AbsAddr a = std::move(work.back());
    work.pop_back();
    if (!seen.insert(a).second) continue;
    for (const auto& v : store.lookup(a)) {
      for (auto& b : touch_clo(v)) {
        if (!seen.contains(b)) work.push_back(std::move(b));
      }
    }
  }
  return seen;
}

AbsState collect_state(const AbsState& s, const RootSet& extra) {
  RootSet roots = extra;
  roots.merge(state_roots(s));
  return AbsState{s.expr, s.env, s.store.restrict(reachable_from(roots, s.store)), s.context};
}

}  // namespace sscfa
