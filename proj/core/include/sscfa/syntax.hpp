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

#ifndef SSCFA_SYNTAX_HPP
#define SSCFA_SYNTAX_HPP

#include <cstdint>
#include <deque>
#include <memory>
#include <set>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace sscfa {

using Var = std::string;

/// Unique per-program identifier of an expression or lambda node.
enum class Label : std::uint32_t {};

inline std::uint32_t index(Label l) { return static_cast<std::uint32_t>(l); }

struct Lam;
struct Expr;

/// Atomic expression: a variable, a lambda term or an integer literal.
struct Atom {
  enum class Kind : std::uint8_t { Var, Lam, Int };

  Kind kind = Kind::Int;
  Var var;
  const Lam* lam = nullptr;
  std::int64_t value = 0;

  static Atom variable(Var v) { return Atom{Kind::Var, std::move(v), nullptr, 0}; }
  static Atom lambda(const Lam* l) { return Atom{Kind::Lam, {}, l, 0}; }
  static Atom literal(std::int64_t n) { return Atom{Kind::Int, {}, nullptr, n}; }
};

struct Lam {
  Label label{};
  Var param;
  const Expr* body = nullptr;
  std::set<Var> free;  // free(body) - {param}
};

/// ANF expression.
///
///   LetCall  (let ((var call)) body)   `call` points at a Tail node
///   Tail     (fun arg)
///   Return   atom
///
/// The call of a LetCall is its own Tail node so that the state reached by a
/// push transition has an expression with a label of its own.
struct Expr {
  enum class Kind : std::uint8_t { LetCall, Tail, Return };

  Kind kind = Kind::Return;
  Label label{};
  Var var;
  const Expr* call = nullptr;
  const Expr* body = nullptr;
  Atom fun;
  Atom arg;
  Atom atom;
  std::set<Var> free;
};

/// An ANF program. Owns every node; node addresses are stable for the life of
/// the program, which is why analyses hold plain `const Expr*`.
class Program {
 public:
  Program() = default;
  Program(const Program&) = delete;
  Program& operator=(const Program&) = delete;
  Program(Program&&) = default;
  Program& operator=(Program&&) = default;

  const Expr& root() const { return *root_; }

  /// Every binder (lambda parameters and let-bound variables), sorted.
  const std::set<Var>& binders() const { return binders_; }
  std::size_t label_count() const { return label_count_; }

  const std::deque<Expr>& exprs() const { return exprs_; }
  const std::deque<Lam>& lams() const { return lams_; }

  /// Node lookup by label; nullptr when the label names the other node kind.
  const Expr* expr_at(Label l) const;
  const Lam* lam_at(Label l) const;

 private:
  friend class ProgramBuilder;

  std::deque<Expr> exprs_;
  std::deque<Lam> lams_;
  const Expr* root_ = nullptr;
  std::set<Var> binders_;
  std::size_t label_count_ = 0;
  std::vector<const Expr*> expr_by_label_;
  std::vector<const Lam*> lam_by_label_;
};

/// Bottom-up construction of ANF programs. `finish` assigns labels in
/// preorder and caches free-variable sets on every node.
class ProgramBuilder {
 public:
  ProgramBuilder();

  Atom var(Var v) { return Atom::variable(std::move(v)); }
  Atom lit(std::int64_t n) { return Atom::literal(n); }
  Atom lam(Var param, const Expr* body);

  const Expr* let_call(Var v, Atom fun, Atom arg, const Expr* body);
  const Expr* tail(Atom fun, Atom arg);
  const Expr* ret(Atom a);

  Program finish(const Expr* root);

 private:
  std::unique_ptr<Program> program_;
};

// ---------------------------------------------------------------------------
// Surface language

struct SourcePos {
  int line = 1;
  int column = 1;
};

struct SurfaceBinding;

struct SurfaceExpr {
  enum class Kind : std::uint8_t { Var, Int, Lambda, App, Let, LetStar };

  Kind kind = Kind::Int;
  SourcePos pos;
  std::string name;                      // Var
  std::int64_t value = 0;                // Int
  std::vector<std::string> params;       // Lambda
  std::vector<SurfaceExpr> items;        // App: operator then operands; others: body
  std::vector<SurfaceBinding> bindings;  // Let, LetStar
};

struct SurfaceBinding {
  std::string name;
  SourcePos pos;
  SurfaceExpr value;
};

class ParseError : public std::runtime_error {
 public:
  ParseError(SourcePos pos, const std::string& what);
  SourcePos pos() const { return pos_; }

 private:
  SourcePos pos_;
};

class DesugarError : public std::runtime_error {
 public:
  DesugarError(SourcePos pos, const std::string& what);
  SourcePos pos() const { return pos_; }

 private:
  SourcePos pos_;
};

/// Reads one surface program. `;` starts a comment that runs to end of line.
SurfaceExpr parse(std::string_view text);

struct DesugarOptions {
  /// Keep free variables instead of rejecting them. Used for open terms in
  /// tests; analyses require closed programs.
  bool allow_free = false;
};

/// Converts to ANF: atomic-RHS `let` becomes `((lambda (v) body) atom)`,
/// `let*` nests, non-atomic operands get fresh `let`s, every binder is
/// renamed to be globally unique (the first binder of a name keeps it).
Program desugar(const SurfaceExpr& s, DesugarOptions opts = {});

/// parse + desugar.
Program load_program(std::string_view text);

std::set<Var> free_vars(const Expr& e);
std::set<Var> free_vars(const Atom& a);
std::set<Var> free_vars(const SurfaceExpr& s);

/// Grammar check: operands atomic, labels unique, binders unique.
bool is_anf(const Program& p, std::string* why = nullptr);

/// Equality ignoring labels.
bool structurally_equal(const Expr& a, const Expr& b);

std::string to_string(const Expr& e);
std::string to_string(const Atom& a);
std::string to_string(const SurfaceExpr& s);

}  // namespace sscfa

#endif  // SSCFA_SYNTAX_HPP
