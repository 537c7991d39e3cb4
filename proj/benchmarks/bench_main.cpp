#include <benchmark/benchmark.h>

#include "qmflow/brooks.hpp"
#include "qmflow/flow.hpp"
#include "qmflow/rho.hpp"
#include "qmflow/surface.hpp"

namespace {

using namespace qmflow;

Scenario grid(int N) {
  BuildParams p;
  p.N = N;
  p.T = 0.16 / N;
  p.m = 16 * N;
  return build_scenario(p);
}

void BM_ComposedStep(benchmark::State& state) {
  const Scenario sc = grid(static_cast<int>(state.range(0)));
  Point p{0.31, 0.27};
  for (auto _ : state) {
    p = apply_composed_visit(sc, sc.tau(), p, [](int, Point, Point) {});
    benchmark::DoNotOptimize(p);
  }
}
BENCHMARK(BM_ComposedStep)->Arg(1)->Arg(8);

void BM_IterateWord(benchmark::State& state) {
  const Scenario sc = grid(static_cast<int>(state.range(0)));
  const Point p{sc.strips()[0].offset + 0.5 * sc.T(), 0.77};
  for (auto _ : state) benchmark::DoNotOptimize(iterate_word(sc, {p.y, p.x}, 4 * sc.m()));
}
BENCHMARK(BM_IterateWord)->Arg(1)->Arg(8);

void BM_Homogenized(benchmark::State& state) {
  const CountingQM q(Word::parse("ab"));
  const Word g = power(Word::parse("abAbbaBA"), static_cast<int>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(homogenized(q, g));
}
BENCHMARK(BM_Homogenized)->Arg(4)->Arg(64);

void BM_CrossingWord(benchmark::State& state) {
  const Segment s{{0.13, 0.29}, {0.13 + state.range(0) * 1.01, 0.29 + state.range(0) * 0.73}};
  for (auto _ : state) benchmark::DoNotOptimize(crossing_word(s));
}
BENCHMARK(BM_CrossingWord)->Arg(1)->Arg(32);

}  // namespace

BENCHMARK_MAIN();
