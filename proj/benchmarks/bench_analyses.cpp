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

#include <benchmark/benchmark.h>

#include <fstream>
#include <sstream>
#include <string>

#include "sscfa/classical.hpp"
#include "sscfa/dsg.hpp"

namespace {

using namespace sscfa;

const char* kNames[] = {"intro", "evenodd", "countdown", "cpstwice", "pingpong"};

Program load(const std::string& name) {
  std::ifstream in(std::string(SSCFA_PROGRAMS_DIR) + "/" + name + ".scm");
  std::ostringstream s;
  s << in.rdbuf();
  return load_program(s.str());
}

template <class Fn>
void run(benchmark::State& state, Fn fn) {
  Program p = load(kNames[state.range(0)]);
  state.SetLabel(kNames[state.range(0)]);
  std::size_t nodes = 0;
  for (auto _ : state) {
    nodes = fn(p.root());
    benchmark::DoNotOptimize(nodes);
  }
  state.counters["nodes"] = static_cast<double>(nodes);
}

void BM_DyckGc(benchmark::State& state) {
  run(state, [](const Expr& e) {
    AnalysisOptions o;
    o.gc = true;
    return build_dyck(e, ReachAddrScheme{}, o).nodes.size();
  });
}

void BM_DyckFrameSet(benchmark::State& state) {
  run(state, [](const Expr& e) { return build_dyck(e, FrameSetScheme{}, {}).nodes.size(); });
}

void BM_DyckKCall(benchmark::State& state) {
  run(state, [](const Expr& e) {
    AnalysisOptions o;
    o.gc = true;
    o.policy = AllocPolicy::kcall(1);
    return build_dyck(e, ReachAddrScheme{}, o).nodes.size();
  });
}

void BM_Classical(benchmark::State& state) {
  run(state, [](const Expr& e) { return classical_analyze(e, {}).size(); });
}

// The pushdown baseline is slow on evenodd; keep to the small programs.
void BM_Pdcfa(benchmark::State& state) {
  run(state, [](const Expr& e) { return build_pdcfa(e, {}).nodes.size(); });
}

}  // namespace

BENCHMARK(BM_DyckGc)->DenseRange(0, 4)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_DyckFrameSet)->DenseRange(0, 4)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_DyckKCall)->DenseRange(0, 4)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_Classical)->DenseRange(0, 4)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_Pdcfa)->Arg(0)->Arg(2)->Arg(3)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
