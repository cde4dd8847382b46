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

#include "sscfa/encode.hpp"

namespace sscfa {

Json encode(const AbsAddr& a) { return to_string(a); }

Json encode(const AbsEnv& env) {
  Json out = Json::object();
  for (const auto& [v, a] : env) out[v] = encode(a);
  return out;
}

Json encode(const AbsValue& v) {
  if (auto* n = std::get_if<std::int64_t>(&v)) return *n;
  return to_string(v);
}

Json encode(const ValueSet& vs) {
  Json out = Json::array();
  for (const auto& v : vs) out.push_back(encode(v));
  return out;
}

Json encode(const AbsStore& store) {
  Json out = Json::object();
  for (const auto& [a, vs] : store) out[to_string(a)] = encode(vs);
  return out;
}

Json encode(const AbsFrame& f) {
  return Json{{"var", f.var}, {"body", index(f.body->label)}, {"env", encode(f.env)}};
}

Json encode(const FrameSetSummary& s) {
  Json out = Json::array();
  for (const auto& f : s.frames) out.push_back(encode(f));
  return out;
}

Json encode(const ReachAddrSummary& s) {
  Json out = Json::array();
  for (const auto& a : s.addrs) out.push_back(encode(a));
  return out;
}

Json encode(const TopSummary&) { return "T"; }

Json encode(const ConcAddr& a) { return a.var + "#" + std::to_string(a.serial); }

Json encode(const ConcEnv& env) {
  Json out = Json::object();
  for (const auto& [v, a] : env) out[v] = encode(a);
  return out;
}

Json encode(const ConcValue& v) {
  if (auto* n = std::get_if<std::int64_t>(&v)) return *n;
  const auto& clo = std::get<ConcClosure>(v);
  return Json{{"lambda", index(clo.lam->label)}, {"param", clo.lam->param}, {"env", encode(clo.env)}};
}

Json encode(const ConcStore& store) {
  Json out = Json::object();
  for (const auto& [a, v] : store) out[encode(a).get<std::string>()] = encode(v);
  return out;
}

Json encode(const ConcFrame& f) {
  return Json{{"var", f.var}, {"body", index(f.body->label)}, {"env", encode(f.env)}};
}

Json encode(const FlowSets& flows) {
  Json out = Json::object();
  for (const auto& [v, vs] : flows) out[v] = encode(vs);
  return out;
}

Json encode(const PointFlows& flows) {
  Json out = Json::object();
  for (const auto& [l, f] : flows) out["L" + std::to_string(index(l))] = encode(f);
  return out;
}

Json encode(const ClassicalConfig& c) {
  Json j = detail::encode_state_fields(c.state);
  Json konts = Json::object();
  for (const auto& [k, frames] : c.konts) {
    Json fs = Json::array();
    for (const auto& f : frames) {
      Json fj = encode(AbsFrame{f.var, f.body, f.env});
      fj["rp"] = encode(f.rp);
      fs.push_back(std::move(fj));
    }
    konts[to_string(k)] = std::move(fs);
  }
  j["konts"] = std::move(konts);
  j["rp"] = encode(c.rp);
  return j;
}

Json encode_classical(const std::set<ClassicalConfig>& configs) {
  Json list = Json::array();
  std::size_t id = 0;
  for (const auto& c : configs) {
    Json j = encode(c);
    j["id"] = id++;
    list.push_back(std::move(j));
  }
  return Json{{"configs", std::move(list)}};
}

Json encode_trace_line(std::size_t step, const ConcConfig& c) {
  Json stack = Json::array();
  for (auto it = c.stack.rbegin(); it != c.stack.rend(); ++it) stack.push_back(encode(*it));
  return Json{{"step", step},
              {"expr_label", index(c.state.expr->label)},
              {"env", encode(c.state.env)},
              {"store", encode(c.state.store)},
              {"stack", std::move(stack)}};
}

namespace detail {

Json encode_state_fields(const AbsState& s) {
  Json j{{"expr", index(s.expr->label)}, {"env", encode(s.env)}, {"store", encode(s.store)}};
  if (!s.context.empty()) {
    Json ctx = Json::array();
    for (Label l : s.context) ctx.push_back(index(l));
    j["context"] = std::move(ctx);
  }
  return j;
}

std::string dot_escape(const std::string& s) {
  std::string out;
  for (char c : s) {
    if (c == '"' || c == '\\') out += '\\';
    out += c;
  }
  return out;
}

}  // namespace detail

}  // namespace sscfa
