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

// Concrete CESK machine. This is the ground truth the analyses are checked
// against, so it stays as literal as possible: no garbage collection, no
// sharing tricks, one successor per step.

#ifndef SSCFA_CONCRETE_HPP
#define SSCFA_CONCRETE_HPP

#include <compare>
#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <variant>
#include <vector>

#include "sscfa/syntax.hpp"

namespace sscfa {

/// Concrete address. The binder is kept so the monovariant abstraction can
/// simply drop the serial number.
struct ConcAddr {
  Var var;
  std::uint64_t serial = 0;

  auto operator<=>(const ConcAddr&) const = default;
};

using ConcEnv = std::map<Var, ConcAddr>;

struct ConcClosure {
  const Lam* lam = nullptr;
  ConcEnv env;

  bool operator==(const ConcClosure& o) const;
  std::strong_ordering operator<=>(const ConcClosure& o) const;
};

using ConcValue = std::variant<std::int64_t, ConcClosure>;
using ConcStore = std::map<ConcAddr, ConcValue>;

struct ConcFrame {
  Var var;
  const Expr* body = nullptr;
  ConcEnv env;

  bool operator==(const ConcFrame& o) const;
};

struct ConcState {
  const Expr* expr = nullptr;
  ConcEnv env;
  ConcStore store;
};

/// `stack.back()` is the top frame.
struct ConcConfig {
  ConcState state;
  std::vector<ConcFrame> stack;
};

/// Raised when the machine cannot take a step: applying a non-closure, an
/// unbound variable or a dangling address.
class StuckError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Requires `e` closed; throws std::invalid_argument otherwise.
ConcConfig inject(const Expr& e);

ConcValue atomic_eval(const Atom& ae, const ConcEnv& env, const ConcStore& store);

/// Next free address: the serial is the number of addresses allocated so far.
ConcAddr alloc(const Var& v, const ConcState& s);

/// A `Return` with an empty stack.
bool is_terminal(const ConcConfig& c);

/// One deterministic transition; nullopt on a terminal configuration.
/// Throws StuckError when no rule applies.
std::optional<ConcConfig> step(const ConcConfig& c);

struct Halted {
  ConcValue value;
};
struct StepLimit {};
struct Stuck {
  std::string reason;
};
using RunStatus = std::variant<Halted, StepLimit, Stuck>;

struct Trace {
  std::vector<ConcConfig> configs;  // configs[0] is the injected configuration
  RunStatus status;
  std::size_t steps = 0;
};

Trace run(const Expr& e, std::size_t max_steps);

struct RunResult {
  ConcConfig last;
  RunStatus status;
  std::size_t steps = 0;
};

/// Like run(), but streams configurations to `observe` instead of keeping
/// them. Used for long runs.
RunResult execute(const Expr& e, std::size_t max_steps,
                  const std::function<void(const ConcConfig&)>& observe = {});

/// Addresses reachable from the free variables of the current expression and
/// from every stack frame, closed under closure environments.
std::set<ConcAddr> live_addresses(const ConcConfig& c);

/// Store restricted to live_addresses(c). The machine never does this; it is
/// the concrete side of garbage-collection soundness checks.
ConcConfig without_garbage(const ConcConfig& c);

/// Every address in the range of the environment or of a frame environment is
/// bound in the store.
bool addresses_closed(const ConcConfig& c);

std::string to_string(const ConcValue& v);

}  // namespace sscfa

#endif  // SSCFA_CONCRETE_HPP
