#include <benchmark/benchmark.h>

#include "gocoexist/go_optimizer.hpp"
#include "gocoexist/presets.hpp"
#include "gocoexist/rf_model.hpp"
#include "gocoexist/sim_engine.hpp"

using namespace gocoexist;

static void BM_SampleChannel(benchmark::State& state) {
  ChannelSampler s(Geometry{}, FadingParams{});
  RngStream rng(1);
  for (auto _ : state) benchmark::DoNotOptimize(s.sample(rng));
}
BENCHMARK(BM_SampleChannel);

static void BM_QInv(benchmark::State& state) {
  double p = 1e-7;
  for (auto _ : state) {
    benchmark::DoNotOptimize(q_inv(p));
    p = p < 0.4 ? p * 1.1 : 1e-7;
  }
}
BENCHMARK(BM_QInv);

// Full 13 x P_d search for one slot.
static void BM_SolveSlot(benchmark::State& state) {
  RadioConfig radio;
  radio.p_d_points = static_cast<std::size_t>(state.range(0));
  SolverConfig cfg;
  cfg.per_grid = radio.per_grid;
  cfg.power_grid = radio.power_grid();
  SuccessProbTable table{cfg.per_grid, std::vector<double>(13, 0.9), std::vector<std::uint64_t>(13, 1)};
  ChannelSampler s(Geometry{}, FadingParams{});
  RngStream rng(2);
  const auto ch = s.sample(rng);
  for (auto _ : state)
    benchmark::DoNotOptimize(solve_slot(3.0, ch, 0.017, table, cfg, radio, GoalRequirements{}));
  state.SetItemsProcessed(state.iterations() * 13 * state.range(0));
}
BENCHMARK(BM_SolveSlot)->Arg(50)->Arg(500);

static void BM_SmallGrid(benchmark::State& state) {
  ScenarioConfig c = make_preset("fig7");
  c.slots = 2000;
  c.threads = 1;
  c.se_batches = 10;
  c.solver.validation_batches = 500;
  c.sweep.power_grid_w = {0.0, 0.1, 0.2};
  for (auto _ : state) benchmark::DoNotOptimize(run_grid(c));
}
BENCHMARK(BM_SmallGrid)->Unit(benchmark::kMillisecond);

static void BM_AdaptiveRun(benchmark::State& state) {
  ScenarioConfig c = make_preset("default");
  c.slots = 2000;
  c.window = 500;
  c.threads = 1;
  c.se_batches = 10;
  c.solver.validation_batches = 500;
  for (auto _ : state) benchmark::DoNotOptimize(run_adaptive(c));
}
BENCHMARK(BM_AdaptiveRun)->Unit(benchmark::kMillisecond);
BENCHMARK_MAIN();
