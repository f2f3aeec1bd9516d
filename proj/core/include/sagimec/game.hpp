#pragma once

#include <cstddef>
#include <random>
#include <vector>

#include "sagimec/core_model.hpp"
#include "sagimec/lyapunov.hpp"

namespace sagimec {

// Joint offloading choice, one entry per IoTD.
using OffloadProfile = std::vector<OffloadMode>;

// A visible satellite as the decision layer sees it: predicted (not true)
// round-trip latency plus its known relay energy rate.
struct SatelliteOption {
  int id = 0;
  double predicted_rtt_s_per_bit = 0.0;
  double energy_per_bit_j = 0.0;
};

enum class SatelliteTieBreak { lowest_id, seeded_random };

// Everything the per-slot decision problems need, frozen at the start of the
// slot: tasks, device parameters, full-bandwidth rates at the current UAV
// position, the visible satellites, and the controller weights.
struct SlotContext {
  std::vector<Task> tasks;
  std::vector<double> iotd_cpu_hz;
  std::vector<double> iotd_tx_power_w;
  std::vector<double> rate_full_bw_bps;  // r_{u,m}, w = 1
  std::vector<SatelliteOption> satellites;  // ascending id
  VirtualQueues queues;  // decision-time values; baselines may zero them
  double v_coeff = 10.0;
  CostWeights weights{};
  double uav_max_compute_hz = 30e9;
  double uav_energy_per_cycle_j = 8.2e-9;
  double switched_capacitance = 1e-28;
  bool allow_cloud = true;
  // Equal shares replace the closed-form allocation in both the utilities
  // and the executed allocation (baseline behaviour).
  bool equal_share_allocation = false;
  // A move must beat the incumbent by improvement_tol * max(1, |utility|);
  // the relative form keeps best-response chains short at any cost scale.
  double improvement_tol = 1e-9;
  double feasibility_tol = 1e-9;
  int max_passes = 0;  // 0 selects the default cap of 100 * M
  // With equal shares the game loses its exact potential, so the dynamics
  // may cycle; return the current profile at the cap instead of throwing.
  bool best_effort_on_cap = false;
  SatelliteTieBreak tie_break = SatelliteTieBreak::lowest_id;
  std::mt19937_64* tie_rng = nullptr;

  std::size_t size() const { return tasks.size(); }
};

// Fractions are zero for IoTDs outside the corresponding offloader set. The
// closed form pins the last participant's share so that a left-to-right sum
// over each nonempty set gives exactly 1.0; equal shares are exactly 1/n.
struct AllocationResult {
  std::vector<double> compute_fraction;    // z_{u,m}
  std::vector<double> bandwidth_fraction;  // w_{u,m}
};

// Square-root congestion coefficients of the offloading game.
struct GameCoefficients {
  std::vector<double> phi;    // compute congestion
  std::vector<double> gamma;  // bandwidth congestion
};

struct NashMove {
  int pass = 0;
  std::size_t player = 0;
  OffloadMode from = OffloadMode::local;
  OffloadMode to = OffloadMode::local;
  double utility_before = 0.0;
  double utility_after = 0.0;
  double potential_after = 0.0;
};

struct NashResult {
  OffloadProfile profile;
  int passes = 0;
  int moves = 0;
  int forced_local = 0;  // warm-start deadline violators dropped to local
  bool hit_cap = false;
  std::vector<NashMove> trace;
};

GameCoefficients game_coefficients(const SlotContext& ctx);

// Closed-form minimizer of the slot's resource-allocation problem: fractions
// proportional to the square-root coefficients over each offloader set.
AllocationResult optimal_allocation(const OffloadProfile& profile,
                                    const SlotContext& ctx);

// Equal shares over each offloader set.
AllocationResult equal_allocation(const OffloadProfile& profile,
                                  const SlotContext& ctx);

// Dispatches on ctx.equal_share_allocation.
AllocationResult allocation_for(const OffloadProfile& profile,
                                const SlotContext& ctx);

// Relay choice minimizing V*gamma^T*predicted_rtt + Q_u1*Z_s; independent of
// the offloading profile, so one selection serves the whole slot.
// Throws std::logic_error on an empty visible set.
int optimal_satellite(const SlotContext& ctx);

// Player m's cost-utility under the given profile, with the slot's
// allocation rule substituted in.
double utility(std::size_t m, const OffloadProfile& profile,
               const SlotContext& ctx);

// Exact potential of the offloading game (closed-form allocation only):
// every unilateral utility change equals the potential change.
double potential(const OffloadProfile& profile, const SlotContext& ctx);

// Utility-minimizing admissible choice for player m, keeping the current
// choice on ties or sub-tolerance improvements. Deadlines couple the players
// through the shares, so admissibility is joint: a move must leave every
// offloader in the resulting profile within its deadline. Exits to local are
// always admissible.
OffloadMode best_response(std::size_t m, const OffloadProfile& profile,
                          const SlotContext& ctx);

// Round-robin best responses from the initial profile until a full pass
// makes no move. Warm-start deadline violators are first dropped to local
// (counted in forced_local); afterwards every accepted move keeps the whole
// profile deadline-feasible, so the result is violation-free and admits no
// improving admissible deviation. Throws std::runtime_error if the pass cap
// is exceeded (unless ctx.best_effort_on_cap).
NashResult nash_solve(const OffloadProfile& initial, const SlotContext& ctx,
                      bool collect_trace = false);

// Decision-time latency of player m's offloaded task under an allocation;
// used for the deadline feasibility restriction.
double offload_latency(std::size_t m, const OffloadProfile& profile,
                       const AllocationResult& alloc, const SlotContext& ctx);

}  // namespace sagimec
