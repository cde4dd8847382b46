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

#ifndef SSCFA_DOMAIN_HPP
#define SSCFA_DOMAIN_HPP

#include <compare>
#include <cstdint>
#include <map>
#include <set>
#include <string>
#include <variant>
#include <vector>

#include "sscfa/concrete.hpp"
#include "sscfa/syntax.hpp"

namespace sscfa {

enum class AddrKind : std::uint8_t { Value, Kont };

/// Abstract address. Monovariant value addresses are just the binder; the
/// k-call-site policy adds up to k call labels. Continuation addresses are
/// only used by the classical analysis, which keeps frames in the store.
struct AbsAddr {
  AddrKind kind = AddrKind::Value;
  Var var;
  std::vector<Label> context;

  auto operator<=>(const AbsAddr&) const = default;

  static AbsAddr value(Var v, std::vector<Label> ctx = {}) {
    return AbsAddr{AddrKind::Value, std::move(v), std::move(ctx)};
  }
  static AbsAddr kont(Var v, std::vector<Label> ctx = {}) {
    return AbsAddr{AddrKind::Kont, std::move(v), std::move(ctx)};
  }
  /// The empty-stack return pointer. Never bound in any store.
  static AbsAddr halt() { return AbsAddr{AddrKind::Kont, {}, {}}; }
};

using AbsEnv = std::map<Var, AbsAddr>;

struct AbsClosure {
  const Lam* lam = nullptr;
  AbsEnv env;

  bool operator==(const AbsClosure& o) const;
  std::strong_ordering operator<=>(const AbsClosure& o) const;
};

/// An integer literal or a closure.
using AbsValue = std::variant<std::int64_t, AbsClosure>;
using ValueSet = std::set<AbsValue>;

/// Abstract store: address -> finite set of values. Absent addresses read as
/// the empty set and empty sets are never stored, so equality is structural.
class AbsStore {
 public:
  using Map = std::map<AbsAddr, ValueSet>;

  AbsStore() = default;
  AbsStore(std::initializer_list<Map::value_type> init);

  const ValueSet& lookup(const AbsAddr& a) const;
  bool contains(const AbsAddr& a) const { return map_.contains(a); }

  /// Pointwise union with [a -> vs].
  void join(const AbsAddr& a, const ValueSet& vs);
  void join(const AbsStore& other);

  /// Pointwise inclusion.
  bool leq(const AbsStore& other) const;

  /// Addresses outside `keep` map to the empty set.
  AbsStore restrict(const std::set<AbsAddr>& keep) const;

  std::size_t size() const { return map_.size(); }
  bool empty() const { return map_.empty(); }
  Map::const_iterator begin() const { return map_.begin(); }
  Map::const_iterator end() const { return map_.end(); }

  bool operator==(const AbsStore&) const = default;
  auto operator<=>(const AbsStore&) const = default;

 private:
  Map map_;
};

AbsStore store_join(const AbsStore& a, const AbsStore& b);

/// Abstract control state (expression, environment, store). `context` holds
/// the k most recent call labels under the k-call-site policy and is empty
/// for the monovariant policy.
struct AbsState {
  const Expr* expr = nullptr;
  AbsEnv env;
  AbsStore store;
  std::vector<Label> context;

  bool operator==(const AbsState& o) const;
  std::strong_ordering operator<=>(const AbsState& o) const;
};

/// Continuation frame: the let-bound variable, the let body and the
/// environment the body runs in.
struct AbsFrame {
  Var var;
  const Expr* body = nullptr;
  AbsEnv env;

  bool operator==(const AbsFrame& o) const;
  std::strong_ordering operator<=>(const AbsFrame& o) const;
};

/// A control state paired with a stack summary.
template <class Summary>
struct AbsConfig {
  AbsState state;
  Summary summary;

  bool operator==(const AbsConfig&) const = default;
  auto operator<=>(const AbsConfig&) const = default;
};

struct AllocPolicy {
  unsigned k = 0;

  static AllocPolicy mono() { return {}; }
  static AllocPolicy kcall(unsigned k) { return AllocPolicy{k}; }
  bool monovariant() const { return k == 0; }

  bool operator==(const AllocPolicy&) const = default;
};

/// The context after a transition out of `s`: the label of `s`'s expression
/// pushed onto the history and truncated to k entries.
std::vector<Label> tick(const AllocPolicy& policy, const AbsState& s);

/// Address for binding `v` on a transition out of `s`.
AbsAddr abs_alloc(const AllocPolicy& policy, const Var& v, const AbsState& s);

/// Lambda -> {closure}, literal -> {literal}, variable -> store lookup (empty
/// when unbound).
ValueSet abs_atomic_eval(const Atom& ae, const AbsEnv& env, const AbsStore& store);

// Monovariant abstraction of concrete structures. alpha_addr drops the
// serial; everything else recurs structurally, and stores join the images
// of colliding addresses.
AbsAddr abstract_addr(const ConcAddr& a);
AbsEnv abstract_env(const ConcEnv& env);
AbsValue abstract_value(const ConcValue& v);
AbsStore abstract_store(const ConcStore& store);
AbsState abstract_state(const ConcState& s);
AbsFrame abstract_frame(const ConcFrame& f);

/// `upper` subsumes `lower`: same expression and context, environments agree
/// on shared variables, store of `lower` pointwise included in `upper`'s.
bool subsumes(const AbsState& upper, const AbsState& lower);

std::string to_string(const AbsAddr& a);
std::string to_string(const AbsValue& v);
std::string to_string(const AbsFrame& f);
std::string to_string(const AbsEnv& env);

}  // namespace sscfa

#endif  // SSCFA_DOMAIN_HPP
