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

#include "support.hpp"

#include <algorithm>
#include <cstdlib>
#include <deque>
#include <filesystem>
#include <fstream>
#include <limits>
#include <map>
#include <memory>
#include <sstream>
#include <stdexcept>

namespace sscfa::testing {

std::uint64_t test_seed() {
  if (const char* s = std::getenv("SSCFA_SEED"); s && *s) return std::strtoull(s, nullptr, 10);
  return 20261015;
}

std::string read_program(const std::string& name) {
  std::ifstream in(std::string(SSCFA_PROGRAMS_DIR) + "/" + name);
  if (!in) throw std::runtime_error("cannot open program " + name);
  std::ostringstream out;
  out << in.rdbuf();
  return out.str();
}

std::vector<std::string> corpus_names() {
  std::vector<std::string> out;
  for (const auto& e : std::filesystem::directory_iterator(SSCFA_PROGRAMS_DIR)) {
    if (e.path().extension() == ".scm") out.push_back(e.path().filename().string());
  }
  std::sort(out.begin(), out.end());
  return out;
}

// ---------------------------------------------------------------------------
// Random programs

namespace {

class ProgramGen {
 public:
  ProgramGen(std::mt19937_64& rng, unsigned max_binders) : rng_(rng), budget_(max_binders) {}

  const Expr* expr(const std::vector<Var>& scope, unsigned depth) {
    int roll = pick(0, 9);
    if (budget_ > 0 && depth < 4 && roll < 3) {
      Atom f = op(scope, depth);
      Atom a = atom(scope, depth);
      Var v = fresh();
      std::vector<Var> inner = scope;
      inner.push_back(v);
      const Expr* body = expr(inner, depth + 1);
      return b_.let_call(v, std::move(f), std::move(a), body);
    }
    if (roll < 7) {
      Atom f = op(scope, depth);
      return b_.tail(std::move(f), atom(scope, depth));
    }
    return b_.ret(atom(scope, depth));
  }

  ProgramBuilder& builder() { return b_; }

 private:
  int pick(int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(rng_); }

  Var fresh() {
    --budget_;
    return "v" + std::to_string(next_++);
  }

  Atom lambda(const std::vector<Var>& scope, unsigned depth) {
    Var p = fresh();
    std::vector<Var> inner = scope;
    inner.push_back(p);
    const Expr* body = expr(inner, depth + 1);
    return b_.lam(p, body);
  }

  // Operators are mostly variables or lambdas so that programs do something.
  Atom op(const std::vector<Var>& scope, unsigned depth) {
    int roll = pick(0, 9);
    if (!scope.empty() && roll < 6) return b_.var(scope[pick(0, static_cast<int>(scope.size()) - 1)]);
    if (budget_ > 0 && roll < 9) return lambda(scope, depth);
    if (!scope.empty()) return b_.var(scope[pick(0, static_cast<int>(scope.size()) - 1)]);
    return b_.lit(pick(0, 2));
  }

  Atom atom(const std::vector<Var>& scope, unsigned depth) {
    int roll = pick(0, 9);
    if (!scope.empty() && roll < 5) return b_.var(scope[pick(0, static_cast<int>(scope.size()) - 1)]);
    if (budget_ > 0 && roll < 8) return lambda(scope, depth);
    return b_.lit(pick(0, 2));
  }

  std::mt19937_64& rng_;
  unsigned budget_;
  unsigned next_ = 0;
  ProgramBuilder b_;
};

}  // namespace

Program random_program(std::mt19937_64& rng, unsigned max_binders) {
  ProgramGen gen(rng, max_binders);
  const Expr* root = gen.expr({}, 0);
  return gen.builder().finish(root);
}

// ---------------------------------------------------------------------------
// Substitution evaluator

namespace {

constexpr Label kLetLabel{std::numeric_limits<std::uint32_t>::max()};

struct Term;
using TermPtr = std::shared_ptr<const Term>;

struct Term {
  enum class Kind { Var, Lam, Int, App } kind;
  Var name;             // Var, and the parameter of Lam
  Label label{};        // Lam
  std::int64_t value = 0;
  TermPtr a, b;         // Lam body in a; App operator and operand
};

TermPtr mk(Term t) { return std::make_shared<const Term>(std::move(t)); }

TermPtr from_expr(const Expr& e);

TermPtr from_atom(const Atom& at) {
  switch (at.kind) {
    case Atom::Kind::Var: return mk({Term::Kind::Var, at.var, {}, 0, nullptr, nullptr});
    case Atom::Kind::Int: return mk({Term::Kind::Int, {}, {}, at.value, nullptr, nullptr});
    case Atom::Kind::Lam:
      return mk({Term::Kind::Lam, at.lam->param, at.lam->label, 0, from_expr(*at.lam->body), nullptr});
  }
  return nullptr;
}

TermPtr from_expr(const Expr& e) {
  switch (e.kind) {
    case Expr::Kind::Return: return from_atom(e.atom);
    case Expr::Kind::Tail: return mk({Term::Kind::App, {}, {}, 0, from_atom(e.fun), from_atom(e.arg)});
    case Expr::Kind::LetCall: {
      TermPtr call = from_expr(*e.call);
      TermPtr lam = mk({Term::Kind::Lam, e.var, kLetLabel, 0, from_expr(*e.body), nullptr});
      return mk({Term::Kind::App, {}, {}, 0, lam, call});
    }
  }
  return nullptr;
}

// Only closed values are ever substituted (closed program, call by value),
// so no renaming is needed to avoid capture; shadowing stops substitution.
TermPtr subst(const TermPtr& t, const Var& x, const TermPtr& v) {
  switch (t->kind) {
    case Term::Kind::Var: return t->name == x ? v : t;
    case Term::Kind::Int: return t;
    case Term::Kind::Lam:
      if (t->name == x) return t;
      return mk({Term::Kind::Lam, t->name, t->label, 0, subst(t->a, x, v), nullptr});
    case Term::Kind::App: return mk({Term::Kind::App, {}, {}, 0, subst(t->a, x, v), subst(t->b, x, v)});
  }
  return t;
}

struct OutOfFuel {};
struct StuckTerm {};

// Nested operand evaluation also draws on the fuel as depth, so a runaway
// non-tail recursion ends as OutOfFuel instead of overflowing the C++ stack.
constexpr std::size_t kMaxDepth = 5000;

TermPtr eval(TermPtr t, std::size_t& fuel, std::size_t depth = 0) {
  if (depth > kMaxDepth) throw OutOfFuel{};
  for (;;) {
    switch (t->kind) {
      case Term::Kind::Var: throw StuckTerm{};
      case Term::Kind::Int:
      case Term::Kind::Lam: return t;
      case Term::Kind::App: {
        TermPtr f = eval(t->a, fuel, depth + 1);
        TermPtr arg = eval(t->b, fuel, depth + 1);
        if (f->kind != Term::Kind::Lam) throw StuckTerm{};
        if (fuel == 0) throw OutOfFuel{};
        --fuel;
        t = subst(f->a, f->name, arg);
        break;
      }
    }
  }
}

}  // namespace

SubstOutcome subst_eval(const Program& p, std::size_t fuel) {
  try {
    TermPtr v = eval(from_expr(p.root()), fuel);
    SubstValue out;
    if (v->kind == Term::Kind::Int) {
      out.value = v->value;
    } else {
      out.kind = SubstValue::Kind::Lam;
      out.lam = v->label;
    }
    return SubstHalted{out};
  } catch (const OutOfFuel&) {
    return SubstOutOfFuel{};
  } catch (const StuckTerm&) {
    return SubstStuck{};
  }
}

// ---------------------------------------------------------------------------
// Pushdown systems

Pds random_pds(std::mt19937_64& rng, std::uint32_t max_states) {
  auto pick = [&](std::uint32_t lo, std::uint32_t hi) {
    return std::uniform_int_distribution<std::uint32_t>(lo, hi)(rng);
  };
  Pds p;
  p.states = pick(2, max_states);
  p.symbols = pick(1, 2);
  for (std::uint32_t s = 0; s < p.states; ++s) {
    std::uint32_t k = pick(0, 3);
    for (std::uint32_t i = 0; i < k; ++i) {
      std::uint32_t roll = pick(0, 9);
      ActionKind kind = roll < 4 ? ActionKind::Eps : roll < 7 ? ActionKind::Push : ActionKind::Pop;
      p.rules.push_back({kind, s, kind == ActionKind::Eps ? 0 : pick(0, p.symbols - 1), pick(0, p.states - 1)});
    }
  }
  return p;
}

PdsFacts cfl_fixpoint(const Pds& pds) {
  std::set<std::pair<std::uint32_t, std::uint32_t>> sl;
  for (bool changed = true; changed;) {
    changed = false;
    auto add = [&](std::uint32_t a, std::uint32_t b) { changed |= sl.emplace(a, b).second; };
    for (const auto& r : pds.rules) {
      if (r.kind == ActionKind::Eps) add(r.from, r.to);
      if (r.kind != ActionKind::Push) continue;
      std::set<std::uint32_t> at{r.to};
      for (const auto& [a, b] : sl) {
        if (a == r.to) at.insert(b);
      }
      for (const auto& q : pds.rules) {
        if (q.kind == ActionKind::Pop && q.symbol == r.symbol && at.contains(q.from)) add(r.from, q.to);
      }
    }
    for (const auto& [a, b] : std::set(sl)) {
      for (const auto& [c, d] : std::set(sl)) {
        if (b == c) add(a, d);
      }
    }
  }
  PdsFacts f;
  f.reachable.insert(pds.root);
  for (bool changed = true; changed;) {
    changed = false;
    for (const auto& r : pds.rules) {
      if (r.kind != ActionKind::Pop && f.reachable.contains(r.from)) changed |= f.reachable.insert(r.to).second;
    }
    for (const auto& [a, b] : sl) {
      if (f.reachable.contains(a)) changed |= f.reachable.insert(b).second;
    }
  }
  for (const auto& [a, b] : sl) {
    if (f.reachable.contains(a)) f.eps.emplace(a, b);
  }
  return f;
}

namespace {

using PdsConfig = std::pair<std::uint32_t, std::vector<std::uint32_t>>;

// Successors of `c` with stacks no deeper than `depth`. Pops need a matching
// symbol on the stack, so a search started from an empty stack never goes
// below its starting height.
std::vector<PdsConfig> pds_successors(const Pds& pds, const PdsConfig& c, std::size_t depth) {
  std::vector<PdsConfig> out;
  for (const auto& r : pds.rules) {
    if (r.from != c.first) continue;
    switch (r.kind) {
      case ActionKind::Eps: out.push_back({r.to, c.second}); break;
      case ActionKind::Push:
        if (c.second.size() < depth) {
          out.push_back({r.to, c.second});
          out.back().second.push_back(r.symbol);
        }
        break;
      case ActionKind::Pop:
        if (!c.second.empty() && c.second.back() == r.symbol) {
          out.push_back({r.to, c.second});
          out.back().second.pop_back();
        }
        break;
    }
  }
  return out;
}

}  // namespace

std::optional<PdsFacts> explicit_stack_search(const Pds& pds, std::size_t cap) {
  const std::size_t n = pds.states;
  std::size_t visited_total = 0;
  PdsFacts f;

  std::set<PdsConfig> seen{{pds.root, {}}};
  std::deque<PdsConfig> work{{pds.root, {}}};
  while (!work.empty()) {
    PdsConfig c = std::move(work.front());
    work.pop_front();
    f.reachable.insert(c.first);
    for (auto& d : pds_successors(pds, c, n * n + n)) {
      if (seen.insert(d).second) {
        if (++visited_total > cap) return std::nullopt;
        work.push_back(std::move(d));
      }
    }
  }

  for (std::uint32_t a : f.reachable) {
    std::set<PdsConfig> local;
    std::deque<PdsConfig> q;
    for (auto& d : pds_successors(pds, {a, {}}, n * n)) {
      if (local.insert(d).second) q.push_back(std::move(d));
    }
    while (!q.empty()) {
      PdsConfig c = std::move(q.front());
      q.pop_front();
      if (c.second.empty()) f.eps.emplace(a, c.first);
      for (auto& d : pds_successors(pds, c, n * n)) {
        if (local.insert(d).second) {
          if (++visited_total > cap) return std::nullopt;
          q.push_back(std::move(d));
        }
      }
    }
  }
  return f;
}

PdsFacts saturate(const Pds& pds, std::optional<std::uint64_t> shuffle_seed) {
  SaturationOptions opts;
  opts.shuffle_seed = shuffle_seed;
  auto g = Saturator<PdsSystem>(PdsSystem{&pds}, opts).run();
  PdsFacts f;
  for (auto s : g.nodes) f.reachable.insert(s);
  for (const auto& [a, b] : g.eps) f.eps.emplace(g.nodes[a], g.nodes[b]);
  return f;
}

}  // namespace sscfa::testing
