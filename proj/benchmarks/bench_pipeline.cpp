// Copyright 2026 The aspdbg Authors
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

#include <aspdbg/debug_program.hpp>
#include <aspdbg/diagnosis.hpp>
#include <aspdbg/ground.hpp>
#include <aspdbg/parser.hpp>
#include <aspdbg/solver.hpp>

#include <benchmark/benchmark.h>

#include <string>

using namespace aspdbg;

namespace {

// Correct 3-coloring encoding over a path of n nodes.
std::string coloring(int n, bool buggy) {
    std::string text = "node(X) :- edge(X,Y).\n"
                       "node(X) :- edge(Y,X).\n"
                       "col(X,blue) | col(X,red) | col(X,green) :- node(X).\n";
    text += buggy ? ":- col(X,C1), col(Y,C2), edge(X,Y), X != Y, C1 != C2.\n"
                  : ":- col(X,C), col(Y,C), edge(X,Y).\n";
    for (int i = 1; i < n; ++i) {
        text += "edge(" + std::to_string(i) + "," + std::to_string(i + 1) + ").\n";
    }
    return text;
}

void BM_Ground(benchmark::State& state) {
    Program p = parse_program(coloring(static_cast<int>(state.range(0)), false));
    for (auto _ : state) {
        benchmark::DoNotOptimize(ground(p));
    }
}
BENCHMARK(BM_Ground)->Arg(8)->Arg(32)->Arg(128);

void BM_FirstAnswerSet(benchmark::State& state) {
    GroundingOptions simplify;
    simplify.mode = GroundingMode::Simplify;
    GroundProgram g = ground(parse_program(coloring(static_cast<int>(state.range(0)), false)), simplify);
    for (auto _ : state) {
        benchmark::DoNotOptimize(enumerate_answer_sets(g, 1));
    }
}
BENCHMARK(BM_FirstAnswerSet)->Arg(8)->Arg(32)->Arg(128);

void BM_AssembleDebuggingProgram(benchmark::State& state) {
    Program p = parse_program(coloring(static_cast<int>(state.range(0)), true));
    TestCase t = parse_test_case("assertTrue(col(1,blue)). assertTrue(col(2,red)).");
    std::set<RuleId> background = default_background(p);
    for (auto _ : state) {
        benchmark::DoNotOptimize(assemble_gamma(p, t, background));
    }
}
BENCHMARK(BM_AssembleDebuggingProgram)->Arg(8)->Arg(32);

void BM_StartSession(benchmark::State& state) {
    Program p = parse_program(coloring(static_cast<int>(state.range(0)), true));
    TestCase t = parse_test_case("assertTrue(col(1,blue)). assertTrue(col(2,red)).");
    auto context = make_session_context(p, t, default_background(p));
    for (auto _ : state) {
        benchmark::DoNotOptimize(start_session(context));
    }
}
BENCHMARK(BM_StartSession)->Arg(4)->Arg(8)->Arg(16)->Unit(benchmark::kMillisecond);

void BM_PropositionalSession(benchmark::State& state) {
    Program p = parse_program("a :- c.\nb :- not c.\nc :- not b.\n:- c, not b.\n");
    auto context = make_session_context(p, parse_test_case("assertTrue(a)."), {});
    for (auto _ : state) {
        SessionState s = start_session(context);
        s = apply_answer(s, *s.atoms().find(Atom{"b", {}}), true);
        s = apply_answer(s, *s.atoms().find(Atom{"c", {}}), false);
        benchmark::DoNotOptimize(s);
    }
}
BENCHMARK(BM_PropositionalSession);

} // namespace

BENCHMARK_MAIN();
