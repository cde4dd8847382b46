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

// Abstract garbage collection over summarized configurations.

#ifndef SSCFA_GC_HPP
#define SSCFA_GC_HPP

#include <set>

#include "sscfa/domain.hpp"
#include "sscfa/errors.hpp"
#include "sscfa/summaries.hpp"

namespace sscfa {

using RootSet = std::set<AbsAddr>;

/// Addresses a closure's environment gives to the lambda's free variables.
/// Literals touch nothing. Throws MalformedError for an incomplete env.
std::set<AbsAddr> touch_clo(const AbsValue& v);

/// Addresses of the free variables of the state's expression.
RootSet state_roots(const AbsState& s);

/// Least set containing `roots` and closed under the touching relation
/// through `store`.
std::set<AbsAddr> reachable_from(const RootSet& roots, const AbsStore& store);

/// The state with its store restricted to what `extra` plus its own roots
/// reach.
AbsState collect_state(const AbsState& s, const RootSet& extra);

/// Throws ConfigError unless `S` exposes the addresses held by the stack.
template <SummaryScheme S>
void require_gc_support(const S&) {
  if constexpr (!AddressView<S>) {
    throw ConfigError("garbage collection needs a summary with an address view; '" +
                      std::string(S::name) + "' has none");
  }
}

template <AddressView S>
RootSet root(const S& scheme, const AbsConfig<typename S::Summary>& c) {
  RootSet out = scheme.root_addresses(c.summary);
  out.merge(state_roots(c.state));
  return out;
}

template <AddressView S>
std::set<AbsAddr> reachable(const S& scheme, const AbsConfig<typename S::Summary>& c) {
  return reachable_from(root(scheme, c), c.state.store);
}

template <AddressView S>
AbsConfig<typename S::Summary> collect(const S& scheme, const AbsConfig<typename S::Summary>& c) {
  return {collect_state(c.state, scheme.root_addresses(c.summary)), c.summary};
}

}  // namespace sscfa

#endif  // SSCFA_GC_HPP
