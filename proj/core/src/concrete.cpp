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

#include "sscfa/concrete.hpp"

#include <sstream>

namespace sscfa {

bool ConcClosure::operator==(const ConcClosure& o) const {
  return lam->label == o.lam->label && env == o.env;
}

std::strong_ordering ConcClosure::operator<=>(const ConcClosure& o) const {
  if (auto c = index(lam->label) <=> index(o.lam->label); c != 0) return c;
  return env <=> o.env;
}

bool ConcFrame::operator==(const ConcFrame& o) const {
  return var == o.var && body->label == o.body->label && env == o.env;
}

ConcConfig inject(const Expr& e) {
  if (!e.free.empty()) {
    throw std::invalid_argument("program is not closed: free variable '" + *e.free.begin() + "'");
  }
  ConcConfig c;
  c.state.expr = &e;
  return c;
}

ConcValue atomic_eval(const Atom& ae, const ConcEnv& env, const ConcStore& store) {
  switch (ae.kind) {
    case Atom::Kind::Int:
      return ae.value;
    case Atom::Kind::Lam:
      return ConcClosure{ae.lam, env};
    case Atom::Kind::Var: {
      auto a = env.find(ae.var);
      if (a == env.end()) throw StuckError("unbound variable '" + ae.var + "'");
      auto v = store.find(a->second);
      if (v == store.end()) throw StuckError("dangling address for '" + ae.var + "'");
      return v->second;
    }
  }
  throw StuckError("unknown atom");
}

ConcAddr alloc(const Var& v, const ConcState& s) { return ConcAddr{v, s.store.size()}; }

bool is_terminal(const ConcConfig& c) {
  return c.state.expr->kind == Expr::Kind::Return && c.stack.empty();
}

namespace {

// Binds `v` to `value` in `env` and stores it; returns the extended env.
ConcEnv bind(ConcEnv env, const Var& v, ConcValue value, ConcState& next, const ConcState& from) {
  ConcAddr a = alloc(v, from);
  env[v] = a;
  next.store.emplace(std::move(a), std::move(value));
  return env;
}

}  // namespace

std::optional<ConcConfig> step(const ConcConfig& c) {
  const ConcState& s = c.state;
  const Expr& e = *s.expr;
  switch (e.kind) {
    case Expr::Kind::Tail: {
      ConcValue f = atomic_eval(e.fun, s.env, s.store);
      auto* clo = std::get_if<ConcClosure>(&f);
      if (!clo) throw StuckError("applying a non-closure value " + to_string(f));
      ConcValue arg = atomic_eval(e.arg, s.env, s.store);
      ConcConfig next{ConcState{clo->lam->body, {}, s.store}, c.stack};
      next.state.env = bind(clo->env, clo->lam->param, std::move(arg), next.state, s);
      return next;
    }
    case Expr::Kind::LetCall: {
      ConcConfig next{ConcState{e.call, s.env, s.store}, c.stack};
      next.stack.push_back(ConcFrame{e.var, e.body, s.env});
      return next;
    }
    case Expr::Kind::Return: {
      if (c.stack.empty()) return std::nullopt;
      const ConcFrame& top = c.stack.back();
      ConcValue value = atomic_eval(e.atom, s.env, s.store);
      ConcConfig next{ConcState{top.body, {}, s.store}, c.stack};
      next.stack.pop_back();
      next.state.env = bind(top.env, top.var, std::move(value), next.state, s);
      return next;
    }
  }
  throw StuckError("unknown expression");
}

RunResult execute(const Expr& e, std::size_t max_steps,
                  const std::function<void(const ConcConfig&)>& observe) {
  RunResult r{inject(e), StepLimit{}, 0};
  if (observe) observe(r.last);
  for (;;) {
    if (is_terminal(r.last)) {
      try {
        const Expr& ret = *r.last.state.expr;
        r.status = Halted{atomic_eval(ret.atom, r.last.state.env, r.last.state.store)};
      } catch (const StuckError& err) {
        r.status = Stuck{err.what()};
      }
      return r;
    }
    if (r.steps >= max_steps) {
      r.status = StepLimit{};
      return r;
    }
    try {
      auto next = step(r.last);
      r.last = std::move(*next);
    } catch (const StuckError& err) {
      r.status = Stuck{err.what()};
      return r;
    }
    ++r.steps;
    if (observe) observe(r.last);
  }
}

Trace run(const Expr& e, std::size_t max_steps) {
  Trace t;
  RunResult r = execute(e, max_steps, [&](const ConcConfig& c) { t.configs.push_back(c); });
  t.status = std::move(r.status);
  t.steps = r.steps;
  return t;
}

namespace {

void touch_env(const ConcEnv& env, const std::set<Var>& vars, const Var* skip,
               std::vector<ConcAddr>& work) {
  for (const auto& v : vars) {
    if (skip && v == *skip) continue;
    if (auto a = env.find(v); a != env.end()) work.push_back(a->second);
  }
}

}  // namespace

std::set<ConcAddr> live_addresses(const ConcConfig& c) {
  std::vector<ConcAddr> work;
  touch_env(c.state.env, c.state.expr->free, nullptr, work);
  for (const auto& f : c.stack) touch_env(f.env, f.body->free, &f.var, work);
  std::set<ConcAddr> live;
  while (!work.empty()) {
    ConcAddr a = std::move(work.back());
    work.pop_back();
    if (!live.insert(a).second) continue;
    auto v = c.state.store.find(a);
    if (v == c.state.store.end()) continue;
    if (auto* clo = std::get_if<ConcClosure>(&v->second)) {
      touch_env(clo->env, clo->lam->free, nullptr, work);
    }
  }
  return live;
}

ConcConfig without_garbage(const ConcConfig& c) {
  ConcConfig out{ConcState{c.state.expr, c.state.env, {}}, c.stack};
  for (const auto& a : live_addresses(c)) {
    if (auto v = c.state.store.find(a); v != c.state.store.end()) out.state.store.insert(*v);
  }
  return out;
}

bool addresses_closed(const ConcConfig& c) {
  auto bound = [&](const ConcEnv& env) {
    for (const auto& [v, a] : env) {
      if (!c.state.store.contains(a)) return false;
    }
    return true;
  };
  if (!bound(c.state.env)) return false;
  for (const auto& f : c.stack) {
    if (!bound(f.env)) return false;
  }
  return true;
}

std::string to_string(const ConcValue& v) {
  if (auto* n = std::get_if<std::int64_t>(&v)) return std::to_string(*n);
  const auto& clo = std::get<ConcClosure>(v);
  std::ostringstream out;
  out << "λ" << clo.lam->param << "@" << index(clo.lam->label);
  return out.str();
}

}  // namespace sscfa
