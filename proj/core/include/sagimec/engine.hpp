#pragma once

#include <cstdint>
#include <functional>
#include <memory>
#include <string>
#include <vector>

#include "sagimec/bandit.hpp"
#include "sagimec/config.hpp"
#include "sagimec/environment.hpp"
#include "sagimec/game.hpp"
#include "sagimec/metrics.hpp"
#include "sagimec/trajectory.hpp"

namespace sagimec {

enum class Policy { odoa, uac, era, eps_greedy, ocq };

Policy parse_policy(const std::string& name);
const char* policy_name(Policy p);

// Optional per-slot taps for tests and trace dumps; null members are skipped.
struct RunHooks {
  std::function<void(int slot, const SlotContext& ctx, const NashResult& nash,
                     const AllocationResult& alloc, int satellite_id)>
      on_decision;
  std::function<void(int slot, const TrajectoryProblem& prob, Vec2 next,
                     const ScaTrace& trace)>
      on_trajectory;
  std::function<void(int slot, const BanditStats& bandit)> on_slot_end;
  bool collect_nash_trace = false;
  bool collect_sca_trace = false;
};

// Builds the world deterministically from cfg.scenario.seed. Exposed so
// tests can replay the exact environment a run sees.
EnvironmentSetup make_environment_setup(const ScenarioConfig& cfg);

// Runs one full episode and returns finalized metrics. Aborts with a
// std::runtime_error naming the slot and the controller state if any slot
// produces an infeasible or non-finite decision.
MetricsSeries run(const ScenarioConfig& cfg, const RunHooks* hooks = nullptr);

struct SweepPoint {
  std::string policy;
  double axis_value = 0.0;
  std::uint64_t seed = 0;
  MetricsSeries series;
};

// Returns a copy of base with the named axis set to value. Axes:
// task_size (Mbit, pins min=max), uav_compute (GHz), v_coeff.
ScenarioConfig apply_axis(const ScenarioConfig& base, const std::string& axis,
                          double value);

// Full factorial policies x values x seeds {base.seed .. base.seed+count-1},
// every cell re-run from scratch so seeds are paired across policies and
// values. Rows come back in (value, policy, seed) order.
std::vector<SweepPoint> sweep(const ScenarioConfig& base,
                              const std::string& axis,
                              const std::vector<double>& values,
                              const std::vector<std::string>& policies,
                              int seed_count);

}  // namespace sagimec
