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

// Finite-state CFA with continuations allocated in the store. The baseline
// the pushdown analyses are compared against.

#ifndef SSCFA_CLASSICAL_HPP
#define SSCFA_CLASSICAL_HPP

#include <map>
#include <set>

#include "sscfa/domain.hpp"
#include "sscfa/errors.hpp"

namespace sscfa {

/// A frame with its return pointer: the address of the frames below it.
struct ClassicalFrame {
  Var var;
  const Expr* body = nullptr;
  AbsEnv env;
  AbsAddr rp;

  bool operator==(const ClassicalFrame& o) const;
  std::strong_ordering operator<=>(const ClassicalFrame& o) const;
};

/// Continuation part of the store. Its addresses are Kont addresses, so it
/// never overlaps the value part kept in `state.store`.
using KontStore = std::map<AbsAddr, std::set<ClassicalFrame>>;

struct ClassicalConfig {
  AbsState state;
  KontStore konts;
  AbsAddr rp;

  bool operator==(const ClassicalConfig&) const = default;
  auto operator<=>(const ClassicalConfig&) const = default;
};

struct ClassicalOptions {
  AllocPolicy policy;
  bool gc = false;
  std::size_t max_configs = 1'000'000;
};

/// (e, [], [], halt). Throws ConfigError if `e` is open.
ClassicalConfig classical_inject(const Expr& e);

/// Collects both store parts. Roots are the free variables of the expression
/// and the addresses of every frame on a chain from rp; chains are walked
/// with a visited set since they may be cyclic.
ClassicalConfig classical_collect(const ClassicalConfig& c);

/// Tail calls fork per closure, non-tail calls allocate a return pointer and
/// store the frame under it, returns fork per frame stored at rp.
std::set<ClassicalConfig> classical_step(const ClassicalConfig& c, const ClassicalOptions& opts);

/// Every configuration reachable from the injected one. Throws
/// ResourceLimitError past opts.max_configs.
std::set<ClassicalConfig> classical_analyze(const Expr& e, const ClassicalOptions& opts);

}  // namespace sscfa

#endif  // SSCFA_CLASSICAL_HPP
