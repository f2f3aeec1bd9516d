// Hot-path timings: per-slot equilibrium search, closed-form allocation,
// trajectory SCA, relay prediction, and whole-slot engine throughput.
#include <benchmark/benchmark.h>

#include <random>
#include <vector>

#include "sagimec/engine.hpp"
#include "../tests/support.hpp"

using namespace sagimec;
using namespace testsupport;

namespace {

std::vector<SlotContext> contexts(int iotds, int count) {
  std::mt19937_64 rng(42);
  CtxKnobs k;
  k.iotds = iotds;
  std::vector<SlotContext> out;
  out.reserve(count);
  for (int i = 0; i < count; ++i) out.push_back(random_ctx(rng, k));
  return out;
}

void BM_NashSolve(benchmark::State& state) {
  const auto ctxs = contexts(static_cast<int>(state.range(0)), 64);
  std::size_t i = 0;
  for (auto _ : state) {
    const SlotContext& ctx = ctxs[i++ % ctxs.size()];
    OffloadProfile warm(ctx.size(), OffloadMode::local);
    benchmark::DoNotOptimize(nash_solve(warm, ctx));
  }
}
BENCHMARK(BM_NashSolve)->Arg(5)->Arg(10)->Arg(20)->Arg(40);

void BM_OptimalAllocation(benchmark::State& state) {
  const auto ctxs = contexts(static_cast<int>(state.range(0)), 64);
  std::vector<OffloadProfile> profiles;
  std::mt19937_64 rng(7);
  for (const SlotContext& ctx : ctxs) {
    OffloadProfile q(ctx.size());
    for (auto& m : q) {
      const int r = static_cast<int>(rng() % 3);
      m = r == 0 ? OffloadMode::local
                 : r == 1 ? OffloadMode::uav : OffloadMode::cloud;
    }
    profiles.push_back(q);
  }
  std::size_t i = 0;
  for (auto _ : state) {
    const std::size_t j = i++ % ctxs.size();
    benchmark::DoNotOptimize(optimal_allocation(profiles[j], ctxs[j]));
  }
}
BENCHMARK(BM_OptimalAllocation)->Arg(10)->Arg(20)->Arg(40);

void BM_ScaOptimize(benchmark::State& state) {
  std::mt19937_64 rng(11);
  std::vector<TrajectoryProblem> probs;
  for (int i = 0; i < 32; ++i)
    probs.push_back(random_traj(rng, static_cast<int>(state.range(0))));
  std::size_t i = 0;
  for (auto _ : state) {
    const TrajectoryProblem& p = probs[i++ % probs.size()];
    benchmark::DoNotOptimize(sca_optimize(p, p.current_position_m));
  }
}
BENCHMARK(BM_ScaOptimize)->Arg(2)->Arg(5)->Arg(10);

void BM_BanditPredict(benchmark::State& state) {
  std::vector<SatelliteSpec> sats;
  for (int s = 0; s < 10; ++s)
    sats.push_back({s, 15e-8, 35e-8, 1e-7});
  BanditStats stats(sats, BonusLog::natural);
  std::vector<int> visible{0, 1, 2, 3, 4};
  std::mt19937_64 rng(3);
  std::uniform_real_distribution<double> u(15e-8, 35e-8);
  for (int t = 1; t <= 500; ++t) {
    stats.tick_visibility(t, visible);
    stats.record_feedback(static_cast<int>(t % 5), u(rng));
  }
  int id = 0;
  for (auto _ : state) {
    benchmark::DoNotOptimize(stats.predict_rtt(id, 500));
    id = (id + 1) % 5;
  }
}
BENCHMARK(BM_BanditPredict);

void BM_EngineSlots(benchmark::State& state) {
  ScenarioConfig cfg;
  cfg.scenario.horizon_slots = static_cast<int>(state.range(0));
  cfg.scenario.seed = 5;
  for (auto _ : state) {
    benchmark::DoNotOptimize(run(cfg));
  }
  state.SetItemsProcessed(state.iterations() * state.range(0));
}
BENCHMARK(BM_EngineSlots)->Arg(50)->Arg(200)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
