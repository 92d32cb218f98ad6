// Serial reference vs OpenMP execution of the same experiment.

#include <benchmark/benchmark.h>

#include "safebandit/config.hpp"
#include "safebandit/harness.hpp"

namespace sb = safebandit;

namespace {

sb::ExperimentConfig bench_config(const char* algorithm) {
  auto doc = nlohmann::json::parse(R"({
    "instance": {"preset": "drug-trial"},
    "horizon": 5000, "trials": 8, "base_seed": 1, "agents": []
  })");
  doc["agents"].push_back(algorithm);
  return sb::parse_config(doc);
}

void BM_Serial(benchmark::State& state, const char* algorithm) {
  const auto cfg = bench_config(algorithm);
  for (auto _ : state) benchmark::DoNotOptimize(sb::run_experiment_serial(cfg));
  state.SetItemsProcessed(state.iterations() * cfg.trials * cfg.horizon);
}

void BM_Parallel(benchmark::State& state, const char* algorithm) {
  const auto cfg = bench_config(algorithm);
  const int workers = static_cast<int>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(sb::run_experiment(cfg, workers));
  state.SetItemsProcessed(state.iterations() * cfg.trials * cfg.horizon);
}

}  // namespace

BENCHMARK_CAPTURE(BM_Serial, docb, "docb")->Unit(benchmark::kMillisecond);
BENCHMARK_CAPTURE(BM_Parallel, docb, "docb")->Arg(1)->Arg(2)->Arg(4)->Unit(benchmark::kMillisecond)->UseRealTime();
BENCHMARK_CAPTURE(BM_Serial, tsbu, "tsbu")->Unit(benchmark::kMillisecond);
BENCHMARK_CAPTURE(BM_Parallel, tsbu, "tsbu")->Arg(1)->Arg(2)->Arg(4)->Unit(benchmark::kMillisecond)->UseRealTime();

BENCHMARK_MAIN();
