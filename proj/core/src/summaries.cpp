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

#include "sscfa/summaries.hpp"

#include <sstream>

namespace sscfa {

bool StackAction::operator==(const StackAction& o) const {
  if (kind != o.kind) return false;
  return kind == ActionKind::Eps || frame == o.frame;
}

std::strong_ordering StackAction::operator<=>(const StackAction& o) const {
  if (auto c = kind <=> o.kind; c != 0) return c;
  if (kind == ActionKind::Eps) return std::strong_ordering::equal;
  return frame <=> o.frame;
}

std::vector<StackAction> net(const std::vector<StackAction>& actions) {
  // One left-to-right pass with a stack of survivors reaches the normal form:
  // a cancellation can only expose the previous survivor to the next action.
  std::vector<StackAction> out;
  for (const auto& a : actions) {
    if (a.kind == ActionKind::Eps) continue;
    if (a.kind == ActionKind::Pop && !out.empty() && out.back().kind == ActionKind::Push &&
        out.back().frame == a.frame) {
      out.pop_back();
      continue;
    }
    out.push_back(a);
  }
  return out;
}

std::set<AbsAddr> touch_frame(const AbsFrame& f) {
  std::set<AbsAddr> out;
  for (const auto& v : f.body->free) {
    if (v == f.var) continue;
    auto it = f.env.find(v);
    if (it == f.env.end()) throw MalformedError("frame for '" + f.var + "' does not bind '" + v + "'");
    out.insert(it->second);
  }
  return out;
}

namespace {

template <class T>
std::set<T> set_union(const std::set<T>& a, const std::set<T>& b) {
  std::set<T> out = a;
  out.insert(b.begin(), b.end());
  return out;
}

template <class T>
bool subset(const std::set<T>& a, const std::set<T>& b) {
  return std::includes(b.begin(), b.end(), a.begin(), a.end());
}

}  // namespace

bool FrameSetScheme::leq(const Summary& a, const Summary& b) const { return subset(a.frames, b.frames); }

FrameSetSummary FrameSetScheme::join(const Summary& a, const Summary& b) const {
  return {set_union(a.frames, b.frames)};
}

FrameSetSummary FrameSetScheme::alpha(std::span<const ConcFrame> stack) const {
  Summary out;
  for (const auto& f : stack) out.frames.insert(abstract_frame(f));
  return out;
}

FrameSetSummary FrameSetScheme::push(const AbsFrame& f, const Summary& s) const {
  Summary out = s;
  out.frames.insert(f);
  return out;
}

std::set<AbsAddr> FrameSetScheme::root_addresses(const Summary& s) const {
  std::set<AbsAddr> out;
  for (const auto& f : s.frames) out.merge(touch_frame(f));
  return out;
}

bool ReachAddrScheme::leq(const Summary& a, const Summary& b) const { return subset(a.addrs, b.addrs); }

ReachAddrSummary ReachAddrScheme::join(const Summary& a, const Summary& b) const {
  return {set_union(a.addrs, b.addrs)};
}

ReachAddrSummary ReachAddrScheme::alpha(std::span<const ConcFrame> stack) const {
  Summary out;
  for (const auto& f : stack) out.addrs.merge(touch_frame(abstract_frame(f)));
  return out;
}

ReachAddrSummary ReachAddrScheme::push(const AbsFrame& f, const Summary& s) const {
  Summary out = s;
  out.addrs.merge(touch_frame(f));
  return out;
}

std::string to_string(const FrameSetSummary& s) {
  std::ostringstream out;
  out << "{";
  bool first = true;
  for (const auto& f : s.frames) {
    out << (first ? "" : ",") << to_string(f);
    first = false;
  }
  out << "}";
  return out.str();
}

std::string to_string(const ReachAddrSummary& s) {
  std::ostringstream out;
  out << "{";
  bool first = true;
  for (const auto& a : s.addrs) {
    out << (first ? "" : ",") << to_string(a);
    first = false;
  }
  out << "}";
  return out.str();
}

std::string to_string(const TopSummary&) { return "T"; }

std::string to_string(const StackAction& a) {
  switch (a.kind) {
    case ActionKind::Eps: return "ε";
    case ActionKind::Push: return "+" + to_string(a.frame);
    case ActionKind::Pop: return "-" + to_string(a.frame);
  }
  return "?";
}

}  // namespace sscfa
