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

#include "sscfa/syntax.hpp"

#include <cctype>
#include <charconv>
#include <sstream>

namespace sscfa {

namespace {

std::string positioned(SourcePos pos, const std::string& what) {
  std::ostringstream out;
  out << pos.line << ":" << pos.column << ": " << what;
  return out.str();
}

}  // namespace

ParseError::ParseError(SourcePos pos, const std::string& what)
    : std::runtime_error(positioned(pos, what)), pos_(pos) {}

DesugarError::DesugarError(SourcePos pos, const std::string& what)
    : std::runtime_error(positioned(pos, what)), pos_(pos) {}

// ---------------------------------------------------------------------------
// Program / ProgramBuilder

const Expr* Program::expr_at(Label l) const {
  auto i = index(l);
  return i < expr_by_label_.size() ? expr_by_label_[i] : nullptr;
}

const Lam* Program::lam_at(Label l) const {
  auto i = index(l);
  return i < lam_by_label_.size() ? lam_by_label_[i] : nullptr;
}

ProgramBuilder::ProgramBuilder() : program_(std::make_unique<Program>()) {}

Atom ProgramBuilder::lam(Var param, const Expr* body) {
  Lam& l = program_->lams_.emplace_back();
  l.param = std::move(param);
  l.body = body;
  return Atom::lambda(&l);
}

const Expr* ProgramBuilder::let_call(Var v, Atom fun, Atom arg, const Expr* body) {
  const Expr* call = tail(std::move(fun), std::move(arg));
  Expr& e = program_->exprs_.emplace_back();
  e.kind = Expr::Kind::LetCall;
  e.var = std::move(v);
  e.call = call;
  e.body = body;
  return &e;
}

const Expr* ProgramBuilder::tail(Atom fun, Atom arg) {
  Expr& e = program_->exprs_.emplace_back();
  e.kind = Expr::Kind::Tail;
  e.fun = std::move(fun);
  e.arg = std::move(arg);
  return &e;
}

const Expr* ProgramBuilder::ret(Atom a) {
  Expr& e = program_->exprs_.emplace_back();
  e.kind = Expr::Kind::Return;
  e.atom = std::move(a);
  return &e;
}

namespace {

// Labels and free-variable caches are filled in after construction. The
// builder owns the nodes, so the const_casts are confined to finish().
class LabelAssigner {
 public:
  LabelAssigner(std::vector<const Expr*>& exprs, std::vector<const Lam*>& lams,
                std::set<Var>& binders)
      : exprs_(exprs), lams_(lams), binders_(binders) {}

  void visit(const Expr* ce) {
    auto* e = const_cast<Expr*>(ce);
    e->label = next(e, nullptr);
    switch (e->kind) {
      case Expr::Kind::LetCall:
        binders_.insert(e->var);
        visit(e->call);
        visit(e->body);
        e->free = e->call->free;
        for (const auto& v : e->body->free) {
          if (v != e->var) e->free.insert(v);
        }
        break;
      case Expr::Kind::Tail:
        visit(e->fun);
        visit(e->arg);
        e->free = atom_free(e->fun);
        for (const auto& v : atom_free(e->arg)) e->free.insert(v);
        break;
      case Expr::Kind::Return:
        visit(e->atom);
        e->free = atom_free(e->atom);
        break;
    }
  }

  std::uint32_t count() const { return next_; }

 private:
  void visit(const Atom& a) {
    if (a.kind != Atom::Kind::Lam) return;
    auto* l = const_cast<Lam*>(a.lam);
    l->label = next(nullptr, l);
    binders_.insert(l->param);
    visit(l->body);
    l->free = l->body->free;
    l->free.erase(l->param);
  }

  static std::set<Var> atom_free(const Atom& a) {
    switch (a.kind) {
      case Atom::Kind::Var: return {a.var};
      case Atom::Kind::Lam: return a.lam->free;
      case Atom::Kind::Int: return {};
    }
    return {};
  }

  Label next(const Expr* e, const Lam* l) {
    exprs_.push_back(e);
    lams_.push_back(l);
    return Label{next_++};
  }

  std::vector<const Expr*>& exprs_;
  std::vector<const Lam*>& lams_;
  std::set<Var>& binders_;
  std::uint32_t next_ = 0;
};

}  // namespace

Program ProgramBuilder::finish(const Expr* root) {
  Program& p = *program_;
  p.root_ = root;
  LabelAssigner assign(p.expr_by_label_, p.lam_by_label_, p.binders_);
  assign.visit(root);
  p.label_count_ = assign.count();
  Program out = std::move(p);
  program_ = std::make_unique<Program>();
  return out;
}

// ---------------------------------------------------------------------------
// Free variables

std::set<Var> free_vars(const Atom& a) {
  switch (a.kind) {
    case Atom::Kind::Var: return {a.var};
    case Atom::Kind::Lam: return a.lam->free;
    case Atom::Kind::Int: return {};
  }
  return {};
}

std::set<Var> free_vars(const Expr& e) { return e.free; }

std::set<Var> free_vars(const SurfaceExpr& s) {
  using K = SurfaceExpr::Kind;
  std::set<Var> out;
  switch (s.kind) {
    case K::Var:
      out.insert(s.name);
      break;
    case K::Int:
      break;
    case K::Lambda:
      for (const auto& b : s.items) {
        for (const auto& v : free_vars(b)) out.insert(v);
      }
      for (const auto& p : s.params) out.erase(p);
      break;
    case K::App:
      for (const auto& i : s.items) {
        for (const auto& v : free_vars(i)) out.insert(v);
      }
      break;
    case K::Let: {
      for (const auto& b : s.items) {
        for (const auto& v : free_vars(b)) out.insert(v);
      }
      for (const auto& b : s.bindings) out.erase(b.name);
      for (const auto& b : s.bindings) {
        for (const auto& v : free_vars(b.value)) out.insert(v);
      }
      break;
    }
    case K::LetStar: {
      // Scope runs right to left: each binder covers later bindings and body.
      for (const auto& b : s.items) {
        for (const auto& v : free_vars(b)) out.insert(v);
      }
      for (auto it = s.bindings.rbegin(); it != s.bindings.rend(); ++it) {
        out.erase(it->name);
        for (const auto& v : free_vars(it->value)) out.insert(v);
      }
      break;
    }
  }
  return out;
}

// ---------------------------------------------------------------------------
// Reader

namespace {

struct Datum {
  enum class Kind { Symbol, Int, List };
  Kind kind = Kind::Symbol;
  SourcePos pos;
  std::string text;
  std::int64_t value = 0;
  std::vector<Datum> items;
};

class Reader {
 public:
  explicit Reader(std::string_view text) : text_(text) {}

  Datum read_program() {
    skip_space();
    if (at_end()) throw ParseError(pos_, "empty program");
    Datum d = read();
    skip_space();
    if (!at_end()) throw ParseError(pos_, "unexpected text after program");
    return d;
  }

 private:
  bool at_end() const { return i_ >= text_.size(); }
  char peek() const { return text_[i_]; }

  void advance() {
    if (text_[i_] == '\n') {
      ++pos_.line;
      pos_.column = 1;
    } else {
      ++pos_.column;
    }
    ++i_;
  }

  void skip_space() {
    while (!at_end()) {
      char c = peek();
      if (c == ';') {
        while (!at_end() && peek() != '\n') advance();
      } else if (std::isspace(static_cast<unsigned char>(c))) {
        advance();
      } else {
        break;
      }
    }
  }

  static bool delimiter(char c) {
    return std::isspace(static_cast<unsigned char>(c)) || c == '(' || c == ')' || c == ';' ||
           c == '[' || c == ']';
  }

  Datum read() {
    skip_space();
    if (at_end()) throw ParseError(pos_, "unexpected end of input");
    Datum d;
    d.pos = pos_;
    char c = peek();
    if (c == '(' || c == '[') {
      char close = c == '(' ? ')' : ']';
      advance();
      d.kind = Datum::Kind::List;
      for (;;) {
        skip_space();
        if (at_end()) throw ParseError(d.pos, "unclosed list");
        if (peek() == ')' || peek() == ']') {
          if (peek() != close) throw ParseError(pos_, "mismatched closing bracket");
          advance();
          return d;
        }
        d.items.push_back(read());
      }
    }
    if (c == ')' || c == ']') throw ParseError(pos_, "unexpected closing bracket");
    std::string tok;
    while (!at_end() && !delimiter(peek())) {
      tok.push_back(peek());
      advance();
    }
    d.text = tok;
    std::int64_t n = 0;
    const char* first = tok.data();
    const char* last = tok.data() + tok.size();
    bool digits = !tok.empty() && (std::isdigit(static_cast<unsigned char>(tok[0])) ||
                                   ((tok[0] == '-' || tok[0] == '+') && tok.size() > 1 &&
                                    std::isdigit(static_cast<unsigned char>(tok[1]))));
    if (digits) {
      if (tok[0] == '+') ++first;
      auto [ptr, ec] = std::from_chars(first, last, n);
      if (ec != std::errc() || ptr != last) throw ParseError(d.pos, "malformed integer '" + tok + "'");
      d.kind = Datum::Kind::Int;
      d.value = n;
    } else {
      d.kind = Datum::Kind::Symbol;
    }
    return d;
  }

  std::string_view text_;
  std::size_t i_ = 0;
  SourcePos pos_;
};

bool is_symbol(const Datum& d, std::string_view s) {
  return d.kind == Datum::Kind::Symbol && d.text == s;
}

bool is_keyword(const std::string& s) {
  return s == "lambda" || s == "let" || s == "let*";
}

std::string expect_identifier(const Datum& d, const char* what) {
  if (d.kind != Datum::Kind::Symbol || is_keyword(d.text)) {
    throw ParseError(d.pos, std::string("expected identifier for ") + what);
  }
  return d.text;
}

SurfaceExpr convert(const Datum& d);

std::vector<SurfaceBinding> convert_bindings(const Datum& d) {
  if (d.kind != Datum::Kind::List) throw ParseError(d.pos, "expected binding list");
  std::vector<SurfaceBinding> out;
  for (const auto& b : d.items) {
    if (b.kind != Datum::Kind::List || b.items.size() != 2) {
      throw ParseError(b.pos, "binding must have the form (name expr)");
    }
    out.push_back(SurfaceBinding{expect_identifier(b.items[0], "binding"), b.items[0].pos,
                                 convert(b.items[1])});
  }
  return out;
}

SurfaceExpr convert(const Datum& d) {
  using K = SurfaceExpr::Kind;
  SurfaceExpr s;
  s.pos = d.pos;
  switch (d.kind) {
    case Datum::Kind::Int:
      s.kind = K::Int;
      s.value = d.value;
      return s;
    case Datum::Kind::Symbol:
      if (is_keyword(d.text)) throw ParseError(d.pos, "keyword '" + d.text + "' used as a variable");
      s.kind = K::Var;
      s.name = d.text;
      return s;
    case Datum::Kind::List:
      break;
  }
  if (d.items.empty()) throw ParseError(d.pos, "empty application");
  const Datum& head = d.items.front();
  if (is_symbol(head, "lambda")) {
    if (d.items.size() != 3) throw ParseError(d.pos, "lambda expects a parameter list and one body");
    const Datum& ps = d.items[1];
    if (ps.kind != Datum::Kind::List) throw ParseError(ps.pos, "expected parameter list");
    s.kind = K::Lambda;
    for (const auto& p : ps.items) s.params.push_back(expect_identifier(p, "parameter"));
    s.items.push_back(convert(d.items[2]));
    return s;
  }
  if (is_symbol(head, "let") || is_symbol(head, "let*")) {
    if (d.items.size() != 3) throw ParseError(d.pos, head.text + " expects bindings and one body");
    s.kind = is_symbol(head, "let") ? K::Let : K::LetStar;
    s.bindings = convert_bindings(d.items[1]);
    s.items.push_back(convert(d.items[2]));
    return s;
  }
  s.kind = K::App;
  for (const auto& item : d.items) s.items.push_back(convert(item));
  return s;
}

}  // namespace

SurfaceExpr parse(std::string_view text) {
  Reader reader(text);
  return convert(reader.read_program());
}

Program load_program(std::string_view text) { return desugar(parse(text)); }

// ---------------------------------------------------------------------------
// Queries

namespace {

class AnfChecker {
 public:
  bool check(const Program& p, std::string* why) {
    why_ = why;
    return expr(p.root());
  }

 private:
  bool fail(const std::string& msg) {
    if (why_) *why_ = msg;
    return false;
  }

  bool label(Label l) {
    if (!labels_.insert(index(l)).second) return fail("duplicate label " + std::to_string(index(l)));
    return true;
  }

  bool binder(const Var& v) {
    if (!binders_.insert(v).second) return fail("binder '" + v + "' is not unique");
    return true;
  }

  bool atom(const Atom& a) {
    if (a.kind != Atom::Kind::Lam) return true;
    if (!a.lam || !a.lam->body) return fail("lambda without body");
    return label(a.lam->label) && binder(a.lam->param) && expr(*a.lam->body);
  }

  bool expr(const Expr& e) {
    if (!label(e.label)) return false;
    switch (e.kind) {
      case Expr::Kind::LetCall:
        if (!e.call || e.call->kind != Expr::Kind::Tail) return fail("let-bound value is not a call");
        if (!e.body) return fail("let without body");
        return binder(e.var) && expr(*e.call) && expr(*e.body);
      case Expr::Kind::Tail:
        return atom(e.fun) && atom(e.arg);
      case Expr::Kind::Return:
        return atom(e.atom);
    }
    return fail("unknown expression kind");
  }

  std::string* why_ = nullptr;
  std::set<std::uint32_t> labels_;
  std::set<Var> binders_;
};

void print(std::ostream& out, const Expr& e);

void print(std::ostream& out, const Atom& a) {
  switch (a.kind) {
    case Atom::Kind::Var: out << a.var; break;
    case Atom::Kind::Int: out << a.value; break;
    case Atom::Kind::Lam:
      out << "(lambda (" << a.lam->param << ") ";
      print(out, *a.lam->body);
      out << ")";
      break;
  }
}

void print(std::ostream& out, const Expr& e) {
  switch (e.kind) {
    case Expr::Kind::LetCall:
      out << "(let ((" << e.var << " ";
      print(out, *e.call);
      out << ")) ";
      print(out, *e.body);
      out << ")";
      break;
    case Expr::Kind::Tail:
      out << "(";
      print(out, e.fun);
      out << " ";
      print(out, e.arg);
      out << ")";
      break;
    case Expr::Kind::Return:
      print(out, e.atom);
      break;
  }
}

void print(std::ostream& out, const SurfaceExpr& s) {
  using K = SurfaceExpr::Kind;
  switch (s.kind) {
    case K::Var: out << s.name; return;
    case K::Int: out << s.value; return;
    case K::Lambda:
      out << "(lambda (";
      for (std::size_t i = 0; i < s.params.size(); ++i) out << (i ? " " : "") << s.params[i];
      out << ") ";
      print(out, s.items.front());
      out << ")";
      return;
    case K::App:
      out << "(";
      for (std::size_t i = 0; i < s.items.size(); ++i) {
        if (i) out << " ";
        print(out, s.items[i]);
      }
      out << ")";
      return;
    case K::Let:
    case K::LetStar:
      out << (s.kind == K::Let ? "(let (" : "(let* (");
      for (std::size_t i = 0; i < s.bindings.size(); ++i) {
        if (i) out << " ";
        out << "(" << s.bindings[i].name << " ";
        print(out, s.bindings[i].value);
        out << ")";
      }
      out << ") ";
      print(out, s.items.front());
      out << ")";
      return;
  }
}

bool atoms_equal(const Atom& a, const Atom& b) {
  if (a.kind != b.kind) return false;
  switch (a.kind) {
    case Atom::Kind::Var: return a.var == b.var;
    case Atom::Kind::Int: return a.value == b.value;
    case Atom::Kind::Lam:
      return a.lam->param == b.lam->param && structurally_equal(*a.lam->body, *b.lam->body);
  }
  return false;
}

}  // namespace

bool is_anf(const Program& p, std::string* why) {
  AnfChecker checker;
  return checker.check(p, why);
}

bool structurally_equal(const Expr& a, const Expr& b) {
  if (a.kind != b.kind) return false;
  switch (a.kind) {
    case Expr::Kind::LetCall:
      return a.var == b.var && structurally_equal(*a.call, *b.call) &&
             structurally_equal(*a.body, *b.body);
    case Expr::Kind::Tail:
      return atoms_equal(a.fun, b.fun) && atoms_equal(a.arg, b.arg);
    case Expr::Kind::Return:
      return atoms_equal(a.atom, b.atom);
  }
  return false;
}

std::string to_string(const Expr& e) {
  std::ostringstream out;
  print(out, e);
  return out.str();
}

std::string to_string(const Atom& a) {
  std::ostringstream out;
  print(out, a);
  return out.str();
}

std::string to_string(const SurfaceExpr& s) {
  std::ostringstream out;
  print(out, s);
  return out.str();
}

}  // namespace sscfa
