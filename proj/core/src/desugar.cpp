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

#include <functional>
#include <utility>

#include "sscfa/syntax.hpp"

namespace sscfa {

namespace {

using K = SurfaceExpr::Kind;

class NameSupply {
 public:
  void reserve(const std::string& n) { taken_.insert(n); }

  std::string fresh(const std::string& base) {
    if (taken_.insert(base).second) return base;
    for (unsigned n = 1;; ++n) {
      std::string candidate = base + "_" + std::to_string(n);
      if (taken_.insert(candidate).second) return candidate;
    }
  }

 private:
  std::set<std::string> taken_;
};

// Alpha-renames binders, resolves scope and checks arity. The result only
// uses Var, Int, Lambda (one parameter), App (one operand) and Let (one
// binding).
class Renamer {
 public:
  Renamer(NameSupply& names, bool allow_free) : names_(names), allow_free_(allow_free) {}

  SurfaceExpr rename(const SurfaceExpr& s) {
    SurfaceExpr out;
    out.pos = s.pos;
    switch (s.kind) {
      case K::Var:
        out.kind = K::Var;
        out.name = lookup(s);
        return out;
      case K::Int:
        return s;
      case K::Lambda: {
        if (s.params.size() != 1) {
          throw DesugarError(s.pos, "lambda must take exactly one parameter, got " +
                                        std::to_string(s.params.size()));
        }
        out.kind = K::Lambda;
        std::string fresh = names_.fresh(s.params.front());
        out.params.push_back(fresh);
        scope_.emplace_back(s.params.front(), fresh);
        out.items.push_back(rename(s.items.front()));
        scope_.pop_back();
        return out;
      }
      case K::App:
        if (s.items.size() != 2) {
          throw DesugarError(s.pos, "application must pass exactly one argument, got " +
                                        std::to_string(s.items.size() - 1));
        }
        out.kind = K::App;
        out.items.push_back(rename(s.items[0]));
        out.items.push_back(rename(s.items[1]));
        return out;
      case K::Let:
        if (s.bindings.size() != 1) {
          throw DesugarError(s.pos, "let must bind exactly one variable, got " +
                                        std::to_string(s.bindings.size()));
        }
        return rename_let(s.bindings.front(), s.items.front(), s.pos);
      case K::LetStar:
        return rename_let_star(s, 0);
    }
    return out;
  }

 private:
  std::string lookup(const SurfaceExpr& s) {
    for (auto it = scope_.rbegin(); it != scope_.rend(); ++it) {
      if (it->first == s.name) return it->second;
    }
    if (!allow_free_) throw DesugarError(s.pos, "unbound variable '" + s.name + "'");
    return s.name;
  }

  SurfaceExpr rename_let(const SurfaceBinding& b, const SurfaceExpr& body, SourcePos pos) {
    SurfaceExpr out;
    out.kind = K::Let;
    out.pos = pos;
    SurfaceExpr value = rename(b.value);
    std::string fresh = names_.fresh(b.name);
    scope_.emplace_back(b.name, fresh);
    out.items.push_back(rename(body));
    scope_.pop_back();
    out.bindings.push_back(SurfaceBinding{fresh, b.pos, std::move(value)});
    return out;
  }

  SurfaceExpr rename_let_star(const SurfaceExpr& s, std::size_t i) {
    if (i == s.bindings.size()) return rename(s.items.front());
    const SurfaceBinding& b = s.bindings[i];
    SurfaceExpr out;
    out.kind = K::Let;
    out.pos = b.pos;
    SurfaceExpr value = rename(b.value);
    std::string fresh = names_.fresh(b.name);
    scope_.emplace_back(b.name, fresh);
    out.items.push_back(rename_let_star(s, i + 1));
    scope_.pop_back();
    out.bindings.push_back(SurfaceBinding{fresh, b.pos, std::move(value)});
    return out;
  }

  NameSupply& names_;
  bool allow_free_;
  std::vector<std::pair<std::string, std::string>> scope_;
};

class AnfConverter {
 public:
  using Rest = std::function<const Expr*()>;
  using AtomRest = std::function<const Expr*(Atom)>;

  AnfConverter(ProgramBuilder& b, NameSupply& names) : b_(b), names_(names) {}

  const Expr* tail(const SurfaceExpr& s) {
    switch (s.kind) {
      case K::Var:
      case K::Int:
      case K::Lambda:
        return b_.ret(atom(s));
      case K::App:
        return atomize(s.items[0], [&](Atom f) {
          return atomize(s.items[1], [&](Atom a) { return b_.tail(f, std::move(a)); });
        });
      case K::Let: {
        const SurfaceBinding& bnd = s.bindings.front();
        return bind(bnd.value, bnd.name, [&] { return tail(s.items.front()); });
      }
      case K::LetStar:
        break;
    }
    throw DesugarError(s.pos, "internal: unexpected let* after renaming");
  }

 private:
  static bool atomic(const SurfaceExpr& s) {
    return s.kind == K::Var || s.kind == K::Int || s.kind == K::Lambda;
  }

  Atom atom(const SurfaceExpr& s) {
    switch (s.kind) {
      case K::Var: return b_.var(s.name);
      case K::Int: return b_.lit(s.value);
      case K::Lambda: return b_.lam(s.params.front(), tail(s.items.front()));
      default: break;
    }
    throw DesugarError(s.pos, "internal: expected an atomic expression");
  }

  // Evaluates `s`, binds the result to `target`, then continues with `rest`.
  const Expr* bind(const SurfaceExpr& s, const Var& target, const Rest& rest) {
    if (atomic(s)) {
      Atom value = atom(s);
      return b_.tail(b_.lam(target, rest()), std::move(value));
    }
    if (s.kind == K::App) {
      return atomize(s.items[0], [&](Atom f) {
        return atomize(s.items[1],
                       [&](Atom a) { return b_.let_call(target, f, std::move(a), rest()); });
      });
    }
    const SurfaceBinding& inner = s.bindings.front();
    return bind(inner.value, inner.name, [&] { return bind(s.items.front(), target, rest); });
  }

  const Expr* atomize(const SurfaceExpr& s, const AtomRest& rest) {
    if (atomic(s)) return rest(atom(s));
    Var t = names_.fresh("t");
    return bind(s, t, [&] { return rest(b_.var(t)); });
  }

  ProgramBuilder& b_;
  NameSupply& names_;
};

void reserve_all_names(const SurfaceExpr& s, NameSupply& names) {
  switch (s.kind) {
    case K::Var:
      names.reserve(s.name);
      break;
    case K::Int:
      break;
    default:
      for (const auto& b : s.bindings) reserve_all_names(b.value, names);
      for (const auto& i : s.items) reserve_all_names(i, names);
      break;
  }
}

}  // namespace

Program desugar(const SurfaceExpr& s, DesugarOptions opts) {
  NameSupply names;
  // Free names must never be reused for binders; bound occurrences are
  // claimed binder by binder so the first binder of a name keeps it.
  for (const auto& v : free_vars(s)) names.reserve(v);
  Renamer renamer(names, opts.allow_free);
  SurfaceExpr renamed = renamer.rename(s);
  // Temporaries must not collide with any name that survives renaming.
  reserve_all_names(renamed, names);
  for (const auto& v : free_vars(renamed)) names.reserve(v);

  ProgramBuilder builder;
  AnfConverter anf(builder, names);
  const Expr* root = anf.tail(renamed);
  return builder.finish(root);
}

}  // namespace sscfa
