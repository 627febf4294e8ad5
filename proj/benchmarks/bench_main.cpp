#include <benchmark/benchmark.h>

#include "aplab/distribution.hpp"
#include "aplab/martingale.hpp"
#include "aplab/process.hpp"
#include "aplab/property.hpp"
#include "aplab/random.hpp"
#include "aplab/strategies.hpp"

using namespace aplab;

namespace {

void BM_MinDegreeRun(benchmark::State& state) {
  const auto n = static_cast<Vertex>(state.range(0));
  const auto dist = Distribution::semi_random(n);
  const auto strategy = min_degree_strategy(1);
  const auto property = min_degree_property(1);
  RunOptions opts;
  opts.max_steps = 10ULL * n;
  std::uint64_t trial = 0;
  for (auto _ : state) {
    opts.trial = trial++;
    benchmark::DoNotOptimize(run_process(dist, strategy, property, opts).stopping_time);
  }
  state.SetItemsProcessed(state.iterations() * n);
}
BENCHMARK(BM_MinDegreeRun)->Arg(1000)->Arg(10000)->Arg(100000)->Unit(benchmark::kMillisecond);

void BM_MatchingRun(benchmark::State& state) {
  const auto n = static_cast<Vertex>(state.range(0));
  const auto dist = Distribution::semi_random(n);
  const auto strategy = matching_strategy();
  const auto property = perfect_matching_property();
  RunOptions opts;
  opts.max_steps = 10ULL * n;
  std::uint64_t trial = 0;
  for (auto _ : state) {
    opts.trial = trial++;
    benchmark::DoNotOptimize(run_process(dist, strategy, property, opts).stopping_time);
  }
}
BENCHMARK(BM_MatchingRun)->Arg(1000)->Arg(10000)->Unit(benchmark::kMillisecond);

void BM_StarSample(benchmark::State& state) {
  const auto dist = Distribution::semi_random(static_cast<Vertex>(state.range(0)));
  const CounterRng rng(1, Stream::kEnvironment, 0);
  std::uint64_t step = 0;
  for (auto _ : state) {
    StepRandom r(rng, ++step);
    benchmark::DoNotOptimize(dist.sample(r));
  }
}
BENCHMARK(BM_StarSample)->Arg(1000)->Arg(100000);

void BM_ExactDoob(benchmark::State& state) {
  const Edge e1(1, 2), e2(1, 3), e3(2, 3);
  const auto dist = Distribution::explicit_subsets(
      3, {{{e1}, Rational(1, 3)}, {{e2}, Rational(1, 3)}, {{e3}, Rational(1, 3)}});
  const auto property = upset_property({{e1, e3}});
  const auto strategy = min_degree_strategy(1);
  const auto N = static_cast<std::size_t>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(exact_doob(dist, strategy, property, N).mu());
}
BENCHMARK(BM_ExactDoob)->DenseRange(4, 10, 3)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
