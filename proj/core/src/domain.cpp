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

#include "sscfa/domain.hpp"

#include <algorithm>
#include <sstream>

namespace sscfa {

bool AbsClosure::operator==(const AbsClosure& o) const {
  return lam->label == o.lam->label && env == o.env;
}

std::strong_ordering AbsClosure::operator<=>(const AbsClosure& o) const {
  if (auto c = index(lam->label) <=> index(o.lam->label); c != 0) return c;
  return env <=> o.env;
}

bool AbsState::operator==(const AbsState& o) const {
  return expr->label == o.expr->label && context == o.context && env == o.env &&
         store == o.store;
}

std::strong_ordering AbsState::operator<=>(const AbsState& o) const {
  if (auto c = index(expr->label) <=> index(o.expr->label); c != 0) return c;
  if (auto c = context <=> o.context; c != 0) return c;
  if (auto c = env <=> o.env; c != 0) return c;
  return store <=> o.store;
}

bool AbsFrame::operator==(const AbsFrame& o) const {
  return var == o.var && body->label == o.body->label && env == o.env;
}

std::strong_ordering AbsFrame::operator<=>(const AbsFrame& o) const {
  if (auto c = index(body->label) <=> index(o.body->label); c != 0) return c;
  if (auto c = var <=> o.var; c != 0) return c;
  return env <=> o.env;
}

// ---------------------------------------------------------------------------
// AbsStore

namespace {
const ValueSet kEmpty;
}

AbsStore::AbsStore(std::initializer_list<Map::value_type> init) {
  for (const auto& [a, vs] : init) join(a, vs);
}

const ValueSet& AbsStore::lookup(const AbsAddr& a) const {
  auto it = map_.find(a);
  return it == map_.end() ? kEmpty : it->second;
}

void AbsStore::join(const AbsAddr& a, const ValueSet& vs) {
  if (vs.empty()) return;
  auto [it, inserted] = map_.try_emplace(a, vs);
  if (!inserted) it->second.insert(vs.begin(), vs.end());
}

void AbsStore::join(const AbsStore& other) {
  for (const auto& [a, vs] : other.map_) join(a, vs);
}

bool AbsStore::leq(const AbsStore& other) const {
  for (const auto& [a, vs] : map_) {
    const ValueSet& theirs = other.lookup(a);
    if (!std::includes(theirs.begin(), theirs.end(), vs.begin(), vs.end())) return false;
  }
  return true;
}

AbsStore AbsStore::restrict(const std::set<AbsAddr>& keep) const {
  AbsStore out;
  for (const auto& entry : map_) {
    if (keep.contains(entry.first)) out.map_.insert(entry);
  }
  return out;
}

AbsStore store_join(const AbsStore& a, const AbsStore& b) {
  AbsStore out = a;
  out.join(b);
  return out;
}

// ---------------------------------------------------------------------------
// Allocation and evaluation

std::vector<Label> tick(const AllocPolicy& policy, const AbsState& s) {
  if (policy.monovariant()) return {};
  std::vector<Label> ctx;
  ctx.reserve(policy.k);
  ctx.push_back(s.expr->label);
  for (std::size_t i = 0; i < s.context.size() && ctx.size() < policy.k; ++i) {
    ctx.push_back(s.context[i]);
  }
  return ctx;
}

AbsAddr abs_alloc(const AllocPolicy& policy, const Var& v, const AbsState& s) {
  return AbsAddr::value(v, tick(policy, s));
}

ValueSet abs_atomic_eval(const Atom& ae, const AbsEnv& env, const AbsStore& store) {
  switch (ae.kind) {
    case Atom::Kind::Int:
      return {AbsValue{ae.value}};
    case Atom::Kind::Lam:
      return {AbsValue{AbsClosure{ae.lam, env}}};
    case Atom::Kind::Var: {
      auto a = env.find(ae.var);
      if (a == env.end()) return {};
      return store.lookup(a->second);
    }
  }
  return {};
}

// ---------------------------------------------------------------------------
// Abstraction

AbsAddr abstract_addr(const ConcAddr& a) { return AbsAddr::value(a.var); }

AbsEnv abstract_env(const ConcEnv& env) {
  AbsEnv out;
  for (const auto& [v, a] : env) out.emplace(v, abstract_addr(a));
  return out;
}

AbsValue abstract_value(const ConcValue& v) {
  if (auto* n = std::get_if<std::int64_t>(&v)) return *n;
  const auto& clo = std::get<ConcClosure>(v);
  return AbsClosure{clo.lam, abstract_env(clo.env)};
}

AbsStore abstract_store(const ConcStore& store) {
  AbsStore out;
  for (const auto& [a, v] : store) out.join(abstract_addr(a), {abstract_value(v)});
  return out;
}

AbsState abstract_state(const ConcState& s) {
  return AbsState{s.expr, abstract_env(s.env), abstract_store(s.store), {}};
}

AbsFrame abstract_frame(const ConcFrame& f) { return AbsFrame{f.var, f.body, abstract_env(f.env)}; }

bool subsumes(const AbsState& upper, const AbsState& lower) {
  if (upper.expr->label != lower.expr->label || upper.context != lower.context) return false;
  for (const auto& [v, a] : lower.env) {
    auto it = upper.env.find(v);
    if (it != upper.env.end() && it->second != a) return false;
  }
  return lower.store.leq(upper.store);
}

// ---------------------------------------------------------------------------
// Printing

std::string to_string(const AbsAddr& a) {
  std::ostringstream out;
  if (a.kind == AddrKind::Kont) {
    out << "k:" << (a.var.empty() ? std::string("halt") : a.var);
  } else {
    out << a.var;
  }
  for (std::size_t i = 0; i < a.context.size(); ++i) {
    out << (i ? "." : "@") << index(a.context[i]);
  }
  return out.str();
}

std::string to_string(const AbsEnv& env) {
  std::ostringstream out;
  out << "{";
  bool first = true;
  for (const auto& [v, a] : env) {
    out << (first ? "" : ",") << v;
    std::string addr = to_string(a);
    if (addr != v) out << "=" << addr;
    first = false;
  }
  out << "}";
  return out.str();
}

std::string to_string(const AbsValue& v) {
  if (auto* n = std::get_if<std::int64_t>(&v)) return std::to_string(*n);
  const auto& clo = std::get<AbsClosure>(v);
  std::ostringstream out;
  out << "λ" << clo.lam->param << "@" << index(clo.lam->label);
  return out.str();
}

std::string to_string(const AbsFrame& f) {
  std::ostringstream out;
  out << "(" << f.var << ", L" << index(f.body->label) << ", " << to_string(f.env) << ")";
  return out.str();
}

}  // namespace sscfa
