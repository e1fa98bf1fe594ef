// Batch runner throughput: serial reference vs the OpenMP runner, plus a
// single-simulation baseline.

#include <benchmark/benchmark.h>

#include "amoebot/experiment.hpp"

namespace {

using namespace amoebot;

ExperimentSpec batch(std::size_t n) {
  ExperimentSpec s;
  s.algorithms = {Algorithm::Hex, Algorithm::Tri};
  s.n = {n};
  s.generator = "random";
  s.repetitions = 4;
  s.sched_seeds = {1, 2};
  return s;
}

void BM_BatchSerial(benchmark::State& state) {
  const auto spec = batch(static_cast<std::size_t>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(run_experiment_serial(spec));
  state.SetItemsProcessed(state.iterations() * static_cast<std::int64_t>(expand_cases(spec).size()));
}

void BM_BatchParallel(benchmark::State& state) {
  const auto spec = batch(static_cast<std::size_t>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(run_experiment_parallel(spec));
  state.SetItemsProcessed(state.iterations() * static_cast<std::int64_t>(expand_cases(spec).size()));
}

void BM_SingleLine(benchmark::State& state) {
  RunRequest req;
  req.algorithm = state.range(1) ? Algorithm::Tri : Algorithm::Hex;
  req.init = gen_line(static_cast<std::size_t>(state.range(0)));
  std::uint64_t work = 0;
  for (auto _ : state) {
    const auto res = simulate(req);
    work = res.stats.movements;
    benchmark::DoNotOptimize(work);
  }
  state.counters["work"] = static_cast<double>(work);
}

}  // namespace

BENCHMARK(BM_BatchSerial)->Arg(16)->Arg(64)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_BatchParallel)->Arg(16)->Arg(64)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_SingleLine)->ArgsProduct({{32, 128}, {0, 1}})->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
