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

#include <gtest/gtest.h>

#include "sscfa/classical.hpp"
#include "sscfa/dsg.hpp"
#include "sscfa/report.hpp"
#include "support.hpp"

namespace sscfa {
namespace {

const char* kP0 = "((lambda (x) x) (lambda (y) y))";
const char* kIntro = "(let* ((id (lambda (x) x)) (a (id 3)) (b (id 4))) b)";
const char* kOmega = "((lambda (f) (f f)) (lambda (f) (f f)))";

bool includes(const ValueSet& big, const ValueSet& small) {
  return std::includes(big.begin(), big.end(), small.begin(), small.end());
}

TEST(ClassicalInject, EmptyStack) {
  Program p = load_program(kP0);
  ClassicalConfig c = classical_inject(p.root());
  EXPECT_EQ(c.rp, AbsAddr::halt());
  EXPECT_TRUE(c.state.env.empty());
  EXPECT_TRUE(c.konts.empty());
  EXPECT_FALSE(c.konts.contains(c.rp));
  Program open = desugar(parse("(f x)"), {.allow_free = true});
  EXPECT_THROW(classical_inject(open.root()), ConfigError);
}

TEST(ClassicalStep, TailCallForksPerClosure) {
  // (f 1) with f bound to two closures.
  ProgramBuilder b;
  const Expr* call = b.tail(b.var("f"), b.lit(1));
  Atom l1 = b.lam("u", b.ret(b.var("u")));
  Atom l2 = b.lam("w", b.ret(b.lit(2)));
  Program p = b.finish(b.let_call("z", l1, b.lit(0), call));
  AbsState s{call, {{"f", AbsAddr::value("f")}}, {{AbsAddr::value("f"), {AbsClosure{l1.lam, {}}, AbsClosure{l2.lam, {}}}}}, {}};
  auto next = classical_step(ClassicalConfig{s, {}, AbsAddr::halt()}, {});
  EXPECT_EQ(next.size(), 2u);
  for (const auto& n : next) EXPECT_EQ(n.rp, AbsAddr::halt());
}

TEST(ClassicalStep, ReturnForksPerFrame) {
  ProgramBuilder b;
  const Expr* ret = b.ret(b.lit(7));
  const Expr* k1 = b.ret(b.var("r"));
  const Expr* k2 = b.ret(b.lit(0));
  Program p = b.finish(b.let_call("r", b.lam("q", ret), b.lit(0), b.let_call("s", b.lam("q2", k1), b.lit(0), k2)));
  AbsAddr rp = AbsAddr::kont("r");
  KontStore konts{{rp, {ClassicalFrame{"r", k1, {}, AbsAddr::halt()}, ClassicalFrame{"r", k2, {}, rp}}}};
  auto next = classical_step(ClassicalConfig{AbsState{ret, {}, {}, {}}, konts, rp}, {});
  ASSERT_EQ(next.size(), 2u);
  std::set<AbsAddr> rps;
  for (const auto& n : next) {
    rps.insert(n.rp);
    EXPECT_EQ(n.state.store.lookup(AbsAddr::value("r")), (ValueSet{std::int64_t{7}}));
  }
  EXPECT_EQ(rps, (std::set<AbsAddr>{AbsAddr::halt(), rp}));
}

TEST(ClassicalCollect, CyclicChainsTerminate) {
  Program p = load_program(kIntro);
  const Expr* body = p.root().fun.lam->body->body;  // let b = ... in b
  AbsAddr k1 = AbsAddr::kont("a"), k2 = AbsAddr::kont("b"), dead = AbsAddr::kont("z");
  AbsEnv env{{"id", AbsAddr::value("id")}};
  KontStore konts{{k1, {ClassicalFrame{"a", body, env, k2}}},
                  {k2, {ClassicalFrame{"a", body, env, k1}}},
                  {dead, {ClassicalFrame{"a", body, env, AbsAddr::halt()}}}};
  AbsStore store{{AbsAddr::value("id"), {std::int64_t{1}}}, {AbsAddr::value("g"), {std::int64_t{2}}}};
  ClassicalConfig c{AbsState{&p.root(), {}, store, {}}, konts, k1};
  auto out = classical_collect(c);
  EXPECT_EQ(out.konts.size(), 2u);
  EXPECT_FALSE(out.konts.contains(dead));
  EXPECT_EQ(out.state.store, (AbsStore{{AbsAddr::value("id"), {std::int64_t{1}}}}));
}

TEST(ClassicalAnalyze, P0) {
  Program p = load_program(kP0);
  auto configs = classical_analyze(p.root(), {});
  auto flows = classical_flows(configs);
  ASSERT_TRUE(flows.contains("x"));
  EXPECT_EQ(flows.at("x"), (ValueSet{AbsClosure{p.root().arg.lam, {}}}));
}

TEST(ClassicalAnalyze, OmegaTerminates) {
  Program p = load_program(kOmega);
  auto configs = classical_analyze(p.root(), {});
  EXPECT_LE(configs.size(), 4u);
}

TEST(ClassicalAnalyze, IntroMergesReturns) {
  Program p = load_program(kIntro);
  auto flows = classical_flows(classical_analyze(p.root(), {}));
  ValueSet three_four{std::int64_t{3}, std::int64_t{4}};
  EXPECT_EQ(flows.at("x"), three_four);
  EXPECT_EQ(flows.at("b"), three_four);
}

TEST(ClassicalAnalyze, CapRaises) {
  Program p = load_program(testing::read_program("evenodd.scm"));
  ClassicalOptions o;
  o.max_configs = 3;
  EXPECT_THROW(classical_analyze(p.root(), o), ResourceLimitError);
}

TEST(ClassicalAnalyze, SoundAndLessPreciseOnCorpus) {
  for (const auto& name : testing::corpus_names()) {
    SCOPED_TRACE(name);
    Program p = load_program(testing::read_program(name));
    for (bool gc : {false, true}) {
      ClassicalOptions o;
      o.gc = gc;
      auto classical = classical_flows(classical_analyze(p.root(), o));
      // Every value the concrete machine binds is predicted.
      if (name != "omega.scm") {
        RunResult r = execute(p.root(), 100000);
        ASSERT_TRUE(std::holds_alternative<Halted>(r.status));
        for (const auto& [v, vs] : concrete_flows(r.last.state.store)) {
          EXPECT_TRUE(includes(classical[v], vs)) << v;
        }
      }
      if (gc) continue;
      AnalysisOptions sopts;
      sopts.gc = true;
      auto ss = graph_flows(build_dyck(p.root(), ReachAddrScheme{}, sopts));
      for (const auto& [v, vs] : ss) EXPECT_TRUE(includes(classical[v], vs)) << v;
    }
  }
}

TEST(ClassicalAnalyze, KCallPolicyRuns) {
  Program p = load_program(kIntro);
  ClassicalOptions o;
  o.policy = AllocPolicy::kcall(1);
  auto configs = classical_analyze(p.root(), o);
  for (const auto& c : configs) {
    EXPECT_LE(c.rp.context.size(), 1u);
  }
  EXPECT_TRUE(classical_flows(configs).at("b").contains(AbsValue{std::int64_t{4}}));
}

}  // namespace
}  // namespace sscfa
