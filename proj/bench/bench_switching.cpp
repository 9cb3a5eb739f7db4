// Serial reference vs Gray-code vs OpenMP exhaustive search, and sweep
// throughput at different job counts.

#include <benchmark/benchmark.h>
#include <omp.h>

#include "mtcs/simulation.hpp"
#include "mtcs/switching.hpp"

namespace {

struct Fixture {
  mtcs::ScenarioConfig config = mtcs::default_case_study();
  mtcs::Network net = mtcs::build_network(config);
  mtcs::Snapshot snap;

  explicit Fixture(int density) {
    mtcs::SnapshotStream stream(config, density, 7);
    snap = stream.next();
  }
};

void BM_Es(benchmark::State& state, mtcs::EsKernel kernel) {
  const Fixture f(static_cast<int>(state.range(0)));
  for (auto _ : state) {
    auto d = mtcs::es_switch(f.net, f.snap, mtcs::Approach::energy_focused, kernel);
    benchmark::DoNotOptimize(d.power.grand_total);
  }
}

void BM_Greedy(benchmark::State& state) {
  const Fixture f(static_cast<int>(state.range(0)));
  for (auto _ : state) {
    auto d = mtcs::greedy_switch(f.net, f.snap, mtcs::Approach::energy_focused);
    benchmark::DoNotOptimize(d.power.grand_total);
  }
}

void BM_Sweep(benchmark::State& state) {
  mtcs::ScenarioConfig config = mtcs::default_case_study();
  config.slot_count = 50;
  mtcs::SweepPlan plan = mtcs::default_plan(config);
  plan.seeds = {1, 2};
  plan.jobs = static_cast<int>(state.range(0));
  for (auto _ : state) {
    auto r = mtcs::sweep(config, plan);
    benchmark::DoNotOptimize(r.cells.size());
  }
}

}  // namespace

BENCHMARK_CAPTURE(BM_Es, reference, mtcs::EsKernel::reference)->Arg(50)->Arg(200)->Arg(800);
BENCHMARK_CAPTURE(BM_Es, gray_code, mtcs::EsKernel::gray_code)->Arg(50)->Arg(200)->Arg(800);
BENCHMARK_CAPTURE(BM_Es, parallel, mtcs::EsKernel::parallel)->Arg(50)->Arg(200)->Arg(800);
BENCHMARK(BM_Greedy)->Arg(50)->Arg(200)->Arg(800);
BENCHMARK(BM_Sweep)->Arg(1)->Arg(omp_get_num_procs())->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
