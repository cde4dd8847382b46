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

// Stack actions and stack summaries.
//
// A summary scheme is any type satisfying `SummaryScheme`: a finite lattice
// (bottom, leq, join) with an abstraction of concrete stacks and a push
// operator. Schemes that can name the addresses held by the stack also model
// `AddressView`, which is what garbage collection needs for its root set.

#ifndef SSCFA_SUMMARIES_HPP
#define SSCFA_SUMMARIES_HPP

#include <algorithm>
#include <concepts>
#include <set>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "sscfa/concrete.hpp"
#include "sscfa/domain.hpp"
#include "sscfa/errors.hpp"

namespace sscfa {

enum class ActionKind : std::uint8_t { Eps, Push, Pop };

struct StackAction {
  ActionKind kind = ActionKind::Eps;
  AbsFrame frame;  // unused for Eps

  static StackAction eps() { return {}; }
  static StackAction push(AbsFrame f) { return {ActionKind::Push, std::move(f)}; }
  static StackAction pop(AbsFrame f) { return {ActionKind::Pop, std::move(f)}; }

  bool operator==(const StackAction& o) const;
  std::strong_ordering operator<=>(const StackAction& o) const;
};

/// Deletes every Eps and cancels adjacent Push(f), Pop(f) pairs until no rule
/// applies. Mismatched pairs are left in place.
std::vector<StackAction> net(const std::vector<StackAction>& actions);

/// Addresses the frame's environment gives to the free variables of its body,
/// excluding the frame's own variable. Throws MalformedError if one is
/// missing.
std::set<AbsAddr> touch_frame(const AbsFrame& f);

template <class S>
concept SummaryScheme = requires(const S& scheme, const typename S::Summary& s,
                                 std::span<const ConcFrame> stack, const AbsFrame& f) {
  typename S::Summary;
  { S::name } -> std::convertible_to<std::string_view>;
  { scheme.bottom() } -> std::same_as<typename S::Summary>;
  { scheme.leq(s, s) } -> std::same_as<bool>;
  { scheme.join(s, s) } -> std::same_as<typename S::Summary>;
  { scheme.alpha(stack) } -> std::same_as<typename S::Summary>;
  { scheme.push(f, s) } -> std::same_as<typename S::Summary>;
  { s == s } -> std::same_as<bool>;
  { s < s } -> std::same_as<bool>;
};

/// A scheme whose summaries determine a set of stack-held addresses.
template <class S>
concept AddressView = SummaryScheme<S> && requires(const S& scheme, const typename S::Summary& s) {
  { scheme.root_addresses(s) } -> std::same_as<std::set<AbsAddr>>;
};

// ---------------------------------------------------------------------------
// Frame-set summaries: the set of frames on the stack.

struct FrameSetSummary {
  std::set<AbsFrame> frames;

  bool operator==(const FrameSetSummary&) const = default;
  auto operator<=>(const FrameSetSummary&) const = default;
};

struct FrameSetScheme {
  using Summary = FrameSetSummary;
  static constexpr std::string_view name = "frame-set";

  Summary bottom() const { return {}; }
  bool leq(const Summary& a, const Summary& b) const;
  Summary join(const Summary& a, const Summary& b) const;
  Summary alpha(std::span<const ConcFrame> stack) const;
  Summary push(const AbsFrame& f, const Summary& s) const;
  /// Union of touch_frame over the summarized frames.
  std::set<AbsAddr> root_addresses(const Summary& s) const;
};

// ---------------------------------------------------------------------------
// Reachable-address summaries: addresses directly touched by stack frames.

struct ReachAddrSummary {
  std::set<AbsAddr> addrs;

  bool operator==(const ReachAddrSummary&) const = default;
  auto operator<=>(const ReachAddrSummary&) const = default;
};

struct ReachAddrScheme {
  using Summary = ReachAddrSummary;
  static constexpr std::string_view name = "reach-addr";

  Summary bottom() const { return {}; }
  bool leq(const Summary& a, const Summary& b) const;
  Summary join(const Summary& a, const Summary& b) const;
  Summary alpha(std::span<const ConcFrame> stack) const;
  Summary push(const AbsFrame& f, const Summary& s) const;
  std::set<AbsAddr> root_addresses(const Summary& s) const { return s.addrs; }
};

// ---------------------------------------------------------------------------
// The one-point summary. Carries no information, so configurations are just
// control states and the analysis is plain pushdown CFA.

struct TopSummary {
  bool operator==(const TopSummary&) const = default;
  auto operator<=>(const TopSummary&) const = default;
};

struct TopScheme {
  using Summary = TopSummary;
  static constexpr std::string_view name = "top";

  Summary bottom() const { return {}; }
  bool leq(const Summary&, const Summary&) const { return true; }
  Summary join(const Summary&, const Summary&) const { return {}; }
  Summary alpha(std::span<const ConcFrame>) const { return {}; }
  Summary push(const AbsFrame&, const Summary&) const { return {}; }
};

static_assert(AddressView<FrameSetScheme>);
static_assert(AddressView<ReachAddrScheme>);
static_assert(SummaryScheme<TopScheme> && !AddressView<TopScheme>);

std::string to_string(const FrameSetSummary& s);
std::string to_string(const ReachAddrSummary& s);
std::string to_string(const TopSummary& s);
std::string to_string(const StackAction& a);

// ---------------------------------------------------------------------------
// Configuration abstraction and ordering.

/// Abstracts a concrete configuration. Only the monovariant policy has a
/// concrete counterpart for its addresses; other policies throw ConfigError.
template <SummaryScheme S>
AbsConfig<typename S::Summary> abstract(const ConcConfig& c, const AllocPolicy& policy,
                                        const S& scheme) {
  if (!policy.monovariant()) {
    throw ConfigError("abstraction of concrete configurations needs the monovariant policy");
  }
  return {abstract_state(c.state), scheme.alpha(c.stack)};
}

/// `upper` subsumes `lower`: the states are ordered as by
/// subsumes(AbsState, AbsState) and lower's summary is below upper's.
template <SummaryScheme S>
bool subsumes(const S& scheme, const AbsConfig<typename S::Summary>& upper,
              const AbsConfig<typename S::Summary>& lower) {
  return subsumes(upper.state, lower.state) && scheme.leq(lower.summary, upper.summary);
}

}  // namespace sscfa

#endif  // SSCFA_SUMMARIES_HPP
