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

// Generators and independent oracles shared by the unit and acceptance
// tests. Nothing here uses the analysis code it is meant to check.

#ifndef SSCFA_TESTS_SUPPORT_HPP
#define SSCFA_TESTS_SUPPORT_HPP

#include <cstdint>
#include <optional>
#include <random>
#include <set>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include "sscfa/saturation.hpp"
#include "sscfa/syntax.hpp"

namespace sscfa::testing {

/// SSCFA_SEED if set, otherwise a fixed default.
std::uint64_t test_seed();

/// Reads a corpus program from the programs directory.
std::string read_program(const std::string& name);
std::vector<std::string> corpus_names();

// ---------------------------------------------------------------------------
// Random closed ANF programs

/// A closed program with at most `max_binders` binders (lambda parameters and
/// let-bound variables together).
Program random_program(std::mt19937_64& rng, unsigned max_binders = 6);

// ---------------------------------------------------------------------------
// Substitution-based evaluator

struct SubstValue {
  enum class Kind { Int, Lam } kind = Kind::Int;
  std::int64_t value = 0;
  Label lam{};  // label of the lambda a closure value came from
  bool operator==(const SubstValue&) const = default;
};

struct SubstHalted {
  SubstValue value;
};
struct SubstOutOfFuel {};
struct SubstStuck {};
using SubstOutcome = std::variant<SubstHalted, SubstOutOfFuel, SubstStuck>;

/// Call-by-value reduction of the program read as a lambda term, by
/// substitution. `fuel` bounds the number of beta steps.
SubstOutcome subst_eval(const Program& p, std::size_t fuel);

// ---------------------------------------------------------------------------
// Pushdown systems

struct PdsRule {
  ActionKind kind = ActionKind::Eps;
  std::uint32_t from = 0;
  std::uint32_t symbol = 0;  // unused for Eps
  std::uint32_t to = 0;
};

struct Pds {
  std::uint32_t states = 1;
  std::uint32_t symbols = 1;
  std::uint32_t root = 0;
  std::vector<PdsRule> rules;
};

Pds random_pds(std::mt19937_64& rng, std::uint32_t max_states = 8);

/// The engine's view of a PDS. Pop targets do not depend on the push source.
struct PdsSystem {
  using Node = std::uint32_t;
  using Frame = std::uint32_t;
  using Key = std::uint32_t;

  const Pds* pds;

  Node root() const { return pds->root; }
  Key key(const Node& n) const { return n; }
  bool merge(Node&, const Node&) const { return false; }

  template <class Emit>
  void moves(const Node& n, Emit&& emit) const {
    for (const auto& r : pds->rules) {
      if (r.from != n || r.kind == ActionKind::Pop) continue;
      emit(r.kind, r.kind == ActionKind::Push ? &r.symbol : nullptr, r.to);
    }
  }

  template <class Emit>
  void pops(const Node& ret, const Frame& f, const Node&, Emit&& emit) const {
    for (const auto& r : pds->rules) {
      if (r.kind == ActionKind::Pop && r.from == ret && r.symbol == f) emit(r.to);
    }
  }
};

struct PdsFacts {
  std::set<std::uint32_t> reachable;
  std::set<std::pair<std::uint32_t, std::uint32_t>> eps;  // nonempty well-matched paths

  bool operator==(const PdsFacts&) const = default;
};

/// Least fixed point of the same-level and reachability rules, by naive
/// iteration over all rules until nothing changes.
PdsFacts cfl_fixpoint(const Pds& pds);

/// Explicit-stack breadth-first search with stacks bounded by n*n + n, which
/// is enough for minimal witnesses. Returns nullopt when more than `cap`
/// configurations would be visited.
std::optional<PdsFacts> explicit_stack_search(const Pds& pds, std::size_t cap);

/// The engine's result for `pds` in terms of PDS states.
PdsFacts saturate(const Pds& pds, std::optional<std::uint64_t> shuffle_seed = std::nullopt);

}  // namespace sscfa::testing

#endif  // SSCFA_TESTS_SUPPORT_HPP
