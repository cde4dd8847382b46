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

// sscfa analyze <file> [options]
// sscfa compare <file>
//
// Exit status: 0 on success (a stuck concrete run included), 1 when a
// resource cap or the step limit is hit, 2 on usage, configuration or
// parse errors.

#include <CLI11.hpp>

#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>

#include "sscfa/classical.hpp"
#include "sscfa/concrete.hpp"
#include "sscfa/dsg.hpp"
#include "sscfa/encode.hpp"
#include "sscfa/report.hpp"

namespace {

using namespace sscfa;

class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct Request {
  std::string path;
  std::string analysis = "ssgcfa";
  std::string summary = "reach-addr";
  std::string policy = "mono";
  bool gc = false;
  bool node_merge = false;
  bool canonicalize_gc = false;
  bool per_point = false;
  std::string dot, json, report;
  std::size_t max_steps = 100'000;
  std::size_t max_nodes = 1'000'000;
};

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw UsageError("cannot read '" + path + "'");
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

void write_file(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw UsageError("cannot write '" + path + "'");
  out << text;
}

AllocPolicy parse_policy(const std::string& s) {
  if (s == "mono") return AllocPolicy::mono();
  if (s.rfind("kcall:", 0) == 0) {
    try {
      std::size_t used = 0;
      unsigned long k = std::stoul(s.substr(6), &used);
      if (used == s.size() - 6) return AllocPolicy::kcall(static_cast<unsigned>(k));
    } catch (const std::exception&) {
    }
  }
  throw UsageError("bad policy '" + s + "'; expected mono or kcall:K");
}

Program load(const std::string& path) {
  std::string text = read_file(path);
  try {
    return load_program(text);
  } catch (const ParseError& e) {
    throw UsageError(path + ":" + e.what());
  } catch (const DesugarError& e) {
    throw UsageError(path + ":" + e.what());
  }
}

void emit_report(const Request& r, const FlowSets& flows, const PointFlows& points) {
  std::string text = r.per_point ? render_point_flows(points) : render_flows(flows);
  std::cout << text;
  if (r.report.empty()) return;
  if (std::filesystem::path(r.report).extension() == ".json") {
    write_file(r.report, (r.per_point ? encode(points) : encode(flows)).dump(2) + "\n");
  } else {
    write_file(r.report, text);
  }
}

template <class G>
void emit_graph(const Request& r, const G& g, const FlowSets& flows, const PointFlows& points) {
  std::cout << "nodes " << g.nodes.size() << ", edges " << g.edges.size() << " (eps "
            << g.count(ActionKind::Eps) << ", push " << g.count(ActionKind::Push) << ", pop "
            << g.count(ActionKind::Pop) << "), shortcuts " << g.eps.size() << ", iterations " << g.iterations
            << "\n";
  if (!r.dot.empty()) write_file(r.dot, graph_to_dot(g));
  if (!r.json.empty()) write_file(r.json, graph_to_json(g).dump(2) + "\n");
  emit_report(r, flows, points);
}

template <SummaryScheme S>
void run_dyck(const Request& r, const Program& p, const S& scheme, const AnalysisOptions& opts) {
  auto g = build_dyck(p.root(), scheme, opts);
  emit_graph(r, g, graph_flows(g), graph_point_flows(g));
}

AnalysisOptions analysis_options(const Request& r, bool gc) {
  AnalysisOptions o;
  o.policy = parse_policy(r.policy);
  o.gc = gc;
  o.canonicalize_gc = r.canonicalize_gc;
  o.node_merge = r.node_merge;
  o.limits.max_nodes = r.max_nodes;
  return o;
}

int analyze(const Request& r) {
  Program p = load(r.path);
  const std::string& a = r.analysis;

  if (a == "concrete") {
    if (!r.dot.empty()) throw UsageError("--dot is not available for the concrete machine");
    std::ofstream trace;
    if (!r.json.empty()) {
      trace.open(r.json, std::ios::binary);
      if (!trace) throw UsageError("cannot write '" + r.json + "'");
    }
    std::size_t n = 0;
    RunResult res = execute(p.root(), r.max_steps, [&](const ConcConfig& c) {
      if (trace.is_open()) trace << encode_trace_line(n, c).dump() << "\n";
      ++n;
    });
    FlowSets flows = concrete_flows(res.last.state.store);
    PointFlows points;  // one configuration at a time; only the last is kept
    merge_flows(points[res.last.state.expr->label], flows);
    int code = 0;
    if (auto* h = std::get_if<Halted>(&res.status)) {
      std::cout << "halted with " << to_string(h->value) << " after " << res.steps << " steps\n";
    } else if (auto* s = std::get_if<Stuck>(&res.status)) {
      std::cout << "stuck after " << res.steps << " steps: " << s->reason << "\n";
    } else {
      std::cout << "step limit of " << r.max_steps << " reached\n";
      code = 1;
    }
    emit_report(r, flows, points);
    return code;
  }

  if (a == "classical") {
    if (!r.dot.empty()) throw UsageError("--dot is not available for the classical analysis");
    if (r.node_merge || r.canonicalize_gc) throw ConfigError("the classical analysis has no graph options");
    ClassicalOptions o;
    o.policy = parse_policy(r.policy);
    o.gc = r.gc;
    o.max_configs = r.max_nodes;
    auto configs = classical_analyze(p.root(), o);
    std::cout << "configurations " << configs.size() << "\n";
    if (!r.json.empty()) write_file(r.json, encode_classical(configs).dump(2) + "\n");
    emit_report(r, classical_flows(configs), classical_point_flows(configs));
    return 0;
  }

  if (a == "pdcfa") {
    if (r.summary != "top" && r.summary != "reach-addr") {
      throw ConfigError("pushdown CFA keeps no summary; --summary " + r.summary + " does not apply");
    }
    auto g = build_pdcfa(p.root(), analysis_options(r, r.gc));
    emit_graph(r, g, graph_flows(g), graph_point_flows(g));
    return 0;
  }

  if (a == "sscfa" || a == "ssgcfa") {
    AnalysisOptions o = analysis_options(r, a == "ssgcfa" || r.gc);
    if (r.summary == "frame-set") {
      run_dyck(r, p, FrameSetScheme{}, o);
    } else if (r.summary == "reach-addr") {
      run_dyck(r, p, ReachAddrScheme{}, o);
    } else if (r.summary == "top") {
      run_dyck(r, p, TopScheme{}, o);
    } else {
      throw UsageError("unknown summary '" + r.summary + "'");
    }
    return 0;
  }
  throw UsageError("unknown analysis '" + a + "'");
}

int compare(const Request& r) {
  Program p = load(r.path);
  AnalysisOptions mono;
  AnalysisOptions collected;
  collected.gc = true;
  mono.limits.max_nodes = collected.limits.max_nodes = r.max_nodes;
  ClassicalOptions co;
  co.max_configs = r.max_nodes;
  std::cout << render_comparison({
      {"classical", classical_flows(classical_analyze(p.root(), co))},
      {"pdcfa", graph_flows(build_pdcfa(p.root(), mono))},
      {"ssgcfa", graph_flows(build_dyck(p.root(), ReachAddrScheme{}, collected))},
  });
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Stack-summarizing control-flow analysis"};
  app.require_subcommand(1);
  Request r;

  auto* an = app.add_subcommand("analyze", "Run one analysis on a program");
  an->add_option("file", r.path, "Program file")->required();
  an->add_option("--analysis", r.analysis, "concrete, classical, pdcfa, sscfa or ssgcfa")
      ->check(CLI::IsMember({"concrete", "classical", "pdcfa", "sscfa", "ssgcfa"}));
  an->add_option("--summary", r.summary, "frame-set, reach-addr or top")
      ->check(CLI::IsMember({"frame-set", "reach-addr", "top"}));
  an->add_option("--policy", r.policy, "mono or kcall:K");
  an->add_flag("--gc", r.gc, "Collect garbage before each transition");
  an->add_option("--dot", r.dot, "Write the graph in DOT format");
  an->add_option("--json", r.json, "Write the graph (or trace, or configurations) as JSON");
  an->add_option("--report", r.report, "Write the flow report; JSON if the name ends in .json");
  an->add_option("--max-steps", r.max_steps, "Concrete step limit");
  an->add_option("--max-nodes", r.max_nodes, "Node or configuration cap");
  an->add_flag("--node-merge", r.node_merge, "One node per control state");
  an->add_flag("--canonicalize-gc", r.canonicalize_gc, "Store collected configurations");
  an->add_flag("--per-point", r.per_point, "Report flows per program point");

  auto* cmp = app.add_subcommand("compare", "Classical, pushdown and collecting analyses side by side");
  cmp->add_option("file", r.path, "Program file")->required();
  cmp->add_option("--max-nodes", r.max_nodes, "Node or configuration cap");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  try {
    return an->parsed() ? analyze(r) : compare(r);
  } catch (const UsageError& e) {
    std::cerr << "sscfa: " << e.what() << "\n";
    return 2;
  } catch (const ConfigError& e) {
    std::cerr << "sscfa: configuration error: " << e.what() << "\n";
    return 2;
  } catch (const ResourceLimitError& e) {
    std::cerr << "sscfa: " << e.what() << "\n";
    return 1;
  }
}
