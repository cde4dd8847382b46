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

// Acceptance checks. Prints one PASS or FAIL line per criterion and exits
// non-zero if any criterion fails.

#include <chrono>
#include <exception>
#include <functional>
#include <iostream>
#include <map>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "sscfa/classical.hpp"
#include "sscfa/dsg.hpp"
#include "sscfa/encode.hpp"
#include "sscfa/report.hpp"
#include "support.hpp"

namespace sscfa {
namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0) {
  return std::chrono::duration<double>(Clock::now() - t0).count();
}

struct Outcome {
  bool pass = true;
  std::ostringstream detail;

  void require(bool ok, const std::string& what) {
    if (!ok) {
      if (pass) detail << "first failure: " << what << "; ";
      pass = false;
    }
  }
};

AnalysisOptions ssgcfa_options() {
  AnalysisOptions o;
  o.gc = true;
  return o;
}

// ---------------------------------------------------------------------------

void intro_precision(Outcome& out) {
  auto t0 = Clock::now();
  Program p = load_program(testing::read_program("intro.scm"));
  ValueSet three_four{std::int64_t{3}, std::int64_t{4}}, four{std::int64_t{4}};

  auto classical = classical_flows(classical_analyze(p.root(), {}));
  auto ss = graph_flows(build_dyck(p.root(), ReachAddrScheme{}, ssgcfa_options()));
  RunResult run = execute(p.root(), 1000);
  double elapsed = seconds_since(t0);

  out.require(classical["x"] == three_four, "classical x = " + render_value_set(classical["x"]));
  out.require(classical["b"] == three_four, "classical b = " + render_value_set(classical["b"]));
  out.require(ss["b"] == four, "ssgcfa b = " + render_value_set(ss["b"]));
  auto* halted = std::get_if<Halted>(&run.status);
  out.require(halted && halted->value == ConcValue(std::int64_t{4}), "concrete run does not halt with 4");
  out.require(elapsed < 1.0, "took " + std::to_string(elapsed) + " s");
  out.detail << "classical x=" << render_value_set(classical["x"]) << " b=" << render_value_set(classical["b"])
             << ", ssgcfa b=" << render_value_set(ss["b"]) << ", concrete halts with "
             << (halted ? to_string(halted->value) : std::string("?")) << ", " << elapsed << " s";
}

// ---------------------------------------------------------------------------

void soundness(Outcome& out) {
  auto t0 = Clock::now();
  std::mt19937_64 rng(testing::test_seed());
  ReachAddrScheme ra;
  std::size_t programs = 0, configs = 0, counterexamples = 0;
  for (; programs < 200; ++programs) {
    Program p = testing::random_program(rng, 6);
    auto g = build_dyck(p.root(), ra, ssgcfa_options());
    std::multimap<const Expr*, const AbsConfig<ReachAddrSummary>*> by_expr;
    for (const auto& n : g.nodes) by_expr.emplace(n.state.expr, &n);

    Trace t = run(p.root(), 300);
    for (const auto& c : t.configs) {
      auto a = abstract(without_garbage(c), AllocPolicy::mono(), ra);
      bool covered = false;
      auto [lo, hi] = by_expr.equal_range(c.state.expr);
      for (auto it = lo; it != hi && !covered; ++it) covered = subsumes(ra, *it->second, a);
      ++configs;
      if (!covered) {
        if (counterexamples == 0) out.detail << "counterexample in: " << to_string(p.root()) << "; ";
        ++counterexamples;
      }
    }
  }
  double elapsed = seconds_since(t0);
  out.require(counterexamples == 0, std::to_string(counterexamples) + " counterexamples");
  out.require(elapsed < 60.0, "took " + std::to_string(elapsed) + " s");
  out.detail << programs << " programs, " << configs << " configurations, " << counterexamples
             << " counterexamples, " << elapsed << " s";
}

// ---------------------------------------------------------------------------

// Stacks of real runs, used as the random source for summaries.
std::vector<std::vector<ConcFrame>> stack_pool(std::mt19937_64& rng, std::vector<Program>& keep) {
  std::vector<std::vector<ConcFrame>> pool;
  while (pool.size() < 400) {
    keep.push_back(testing::random_program(rng, 6));
    Trace t = run(keep.back().root(), 300);
    for (const auto& c : t.configs) {
      if (!c.stack.empty()) pool.push_back(c.stack);
    }
  }
  return pool;
}

template <SummaryScheme S>
std::size_t summary_laws(const S& scheme, std::mt19937_64& rng,
                         const std::vector<std::vector<ConcFrame>>& pool, Outcome& out) {
  std::uniform_int_distribution<std::size_t> pick(0, pool.size() - 1);
  std::uniform_int_distribution<int> kind(0, 2), len(0, 10);
  const std::string name(S::name);
  std::size_t cases = 0;
  for (; cases < 1000; ++cases) {
    const auto& st = pool[pick(rng)];
    std::span<const ConcFrame> whole(st);

    // Push-faithfulness: alpha(f :: stack) = push(abstract f, alpha(stack)).
    std::uniform_int_distribution<std::size_t> cut(1, st.size());
    std::size_t n = cut(rng);
    out.require(scheme.alpha(whole.first(n)) == scheme.push(abstract_frame(st[n - 1]), scheme.alpha(whole.first(n - 1))),
                name + ": push-faithfulness");

    // Lattice laws on alphas of three random stacks.
    auto a = scheme.alpha(std::span<const ConcFrame>(pool[pick(rng)]));
    auto b = scheme.alpha(std::span<const ConcFrame>(pool[pick(rng)]));
    auto c = scheme.alpha(whole);
    out.require(scheme.join(a, b) == scheme.join(b, a), name + ": join commutative");
    out.require(scheme.join(scheme.join(a, b), c) == scheme.join(a, scheme.join(b, c)), name + ": join associative");
    out.require(scheme.join(a, a) == a, name + ": join idempotent");
    out.require(scheme.leq(a, a), name + ": leq reflexive");
    out.require(scheme.leq(a, scheme.join(a, b)) && scheme.leq(b, scheme.join(a, b)), name + ": join is an upper bound");
    out.require(scheme.leq(scheme.bottom(), a), name + ": bottom is least");
    out.require(scheme.join(scheme.bottom(), a) == a, name + ": bottom is a unit");
    out.require(scheme.leq(a, b) == (scheme.join(a, b) == b), name + ": leq agrees with join");
    out.require(!(scheme.leq(a, b) && scheme.leq(b, a)) || a == b, name + ": leq antisymmetric");

    // net idempotence on random action words over the stack's frames.
    std::vector<StackAction> word;
    for (int i = len(rng); i > 0; --i) {
      std::uniform_int_distribution<std::size_t> fi(0, st.size() - 1);
      AbsFrame f = abstract_frame(st[fi(rng)]);
      int k = kind(rng);
      word.push_back(k == 0 ? StackAction::eps() : k == 1 ? StackAction::push(f) : StackAction::pop(f));
    }
    out.require(net(net(word)) == net(word), name + ": net idempotent");
  }
  return cases;
}

void laws(Outcome& out) {
  std::mt19937_64 rng(testing::test_seed() + 3);
  std::vector<Program> keep;
  auto pool = stack_pool(rng, keep);
  std::size_t fs = summary_laws(FrameSetScheme{}, rng, pool, out);
  std::size_t ra = summary_laws(ReachAddrScheme{}, rng, pool, out);
  std::size_t top = summary_laws(TopScheme{}, rng, pool, out);
  out.detail << fs << " frame-set, " << ra << " reach-addr, " << top << " top cases";
}

// ---------------------------------------------------------------------------

void epsilon_closure(Outcome& out) {
  std::mt19937_64 rng(testing::test_seed() + 4);
  std::size_t compared = 0, over_cap = 0, mismatches = 0;
  for (int i = 0; compared < 200 && i < 1000; ++i) {
    testing::Pds pds = testing::random_pds(rng, 8);
    auto brute = testing::explicit_stack_search(pds, 500'000);
    if (!brute) {
      ++over_cap;
      continue;
    }
    ++compared;
    auto got = testing::saturate(pds);
    if (got.eps != brute->eps || got.reachable != brute->reachable) {
      if (mismatches == 0) out.detail << "mismatch on instance " << i << "; ";
      ++mismatches;
    }
  }
  out.require(compared >= 200, "only " + std::to_string(compared) + " instances compared");
  out.require(mismatches == 0, std::to_string(mismatches) + " mismatches");
  out.detail << compared << " pushdown systems compared, " << mismatches << " mismatches, " << over_cap
             << " skipped over the search cap";
}

// ---------------------------------------------------------------------------

void termination(Outcome& out) {
  for (const char* name : {"omega.scm", "evenodd.scm"}) {
    Program p = load_program(testing::read_program(name));
    auto t0 = Clock::now();
    auto g = build_dyck(p.root(), ReachAddrScheme{}, ssgcfa_options());
    double elapsed = seconds_since(t0);
    auto plain = build_dyck(p.root(), ReachAddrScheme{}, {});
    out.require(elapsed < 1.0, std::string(name) + " took " + std::to_string(elapsed) + " s");
    out.require(g.nodes.size() < 200, std::string(name) + " has " + std::to_string(g.nodes.size()) + " nodes");
    out.require(g.iterations <= g.iteration_bound(), std::string(name) + " iteration bound");
    out.require(plain.iterations <= plain.iteration_bound(), std::string(name) + " iteration bound without collection");
    out.detail << name << ": " << g.nodes.size() << " nodes, " << g.edges.size() << " edges, " << g.iterations
               << "/" << g.iteration_bound() << " iterations, " << elapsed << " s (" << plain.nodes.size()
               << " nodes without collection); ";
  }
}

// ---------------------------------------------------------------------------

void perfect_precision(Outcome& out) {
  for (const char* name : {"countdown.scm", "chain.scm", "tailid.scm", "cpstwice.scm", "pingpong.scm"}) {
    Program p = load_program(testing::read_program(name));
    auto g = build_dyck(p.root(), ReachAddrScheme{}, ssgcfa_options());
    std::size_t bad = 0;
    for (const auto& n : g.nodes) bad += !all_singletons(n.state.store);
    out.require(bad == 0, std::string(name) + ": " + std::to_string(bad) + " configurations bind a variable to several values");
    // Per variable over the whole run, the analysis predicts exactly what the
    // machine binds.
    RunResult r = execute(p.root(), 100000);
    out.require(std::holds_alternative<Halted>(r.status), std::string(name) + " does not halt");
    out.require(graph_flows(g) == concrete_flows(r.last.state.store), std::string(name) + ": flows differ from the concrete run");
    out.detail << name << " " << g.nodes.size() << " nodes; ";
  }
}

// ---------------------------------------------------------------------------

void pdcfa_equivalence(Outcome& out) {
  std::size_t n = 0;
  for (const auto& name : testing::corpus_names()) {
    Program p = load_program(testing::read_program(name));
    auto top = build_dyck(p.root(), TopScheme{}, {});
    auto pd = build_pdcfa(p.root(), {});
    out.require(control_projection(top) == canonical(pd), name + " differs");
    ++n;
  }
  out.detail << n << " programs";
}

// ---------------------------------------------------------------------------

void determinism(Outcome& out) {
  std::size_t n = 0;
  for (const auto& name : testing::corpus_names()) {
    Program p = load_program(testing::read_program(name));
    auto g1 = build_dyck(p.root(), ReachAddrScheme{}, ssgcfa_options());
    auto g2 = build_dyck(p.root(), ReachAddrScheme{}, ssgcfa_options());
    out.require(graph_to_json(g1).dump(2) == graph_to_json(g2).dump(2), name + ": JSON differs");
    out.require(graph_to_dot(g1) == graph_to_dot(g2), name + ": DOT differs");
    auto base = canonical(g1);
    for (std::uint64_t s = 0; s < 5; ++s) {
      AnalysisOptions o = ssgcfa_options();
      o.limits.shuffle_seed = testing::test_seed() + s;
      out.require(canonical(build_dyck(p.root(), ReachAddrScheme{}, o)) == base, name + ": shuffled order differs");
      AnalysisOptions fo;
      fo.limits.shuffle_seed = testing::test_seed() + s;
      out.require(canonical(build_dyck(p.root(), FrameSetScheme{}, fo)) == canonical(build_dyck(p.root(), FrameSetScheme{}, {})),
                  name + ": shuffled frame-set order differs");
    }
    ++n;
  }
  out.detail << n << " programs, 5 shuffle seeds each";
}

}  // namespace
}  // namespace sscfa

int main() {
  using sscfa::Outcome;
  const std::vector<std::pair<std::string, std::function<void(Outcome&)>>> criteria{
      {"1 motivating example precision gap", sscfa::intro_precision},
      {"2 soundness against concrete traces", sscfa::soundness},
      {"3 summary laws", sscfa::laws},
      {"4 epsilon-closure against brute force", sscfa::epsilon_closure},
      {"5 termination and iteration bound", sscfa::termination},
      {"6 singleton flow sets on tail-call corpus", sscfa::perfect_precision},
      {"7 top summary equals pushdown CFA", sscfa::pdcfa_equivalence},
      {"8 deterministic output and order independence", sscfa::determinism},
  };
  std::cout << "seed " << sscfa::testing::test_seed() << "\n";
  int failed = 0;
  for (const auto& [name, check] : criteria) {
    Outcome o;
    try {
      check(o);
    } catch (const std::exception& e) {
      o.pass = false;
      o.detail << "exception: " << e.what();
    }
    std::cout << (o.pass ? "PASS" : "FAIL") << " [" << name << "] " << o.detail.str() << "\n" << std::flush;
    failed += !o.pass;
  }
  return failed == 0 ? 0 : 1;
}
