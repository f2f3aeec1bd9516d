#pragma once

#include <cstdint>
#include <random>
#include <vector>

#include "sagimec/core_model.hpp"
#include "sagimec/vec2.hpp"

namespace sagimec {

// Ground truth for one relay satellite; the decision layer never sees the
// true latency distribution, only realized samples and the [min, max] bounds.
struct SatelliteSpec {
  int id = 0;
  double rtt_min_s_per_bit = 0.0;  // L_s^min
  double rtt_max_s_per_bit = 0.0;  // L_s^max
  double energy_per_bit_j = 0.0;   // Z_s
};

// Visibility is constant within epochs of epoch_len_slots slots.
struct SnapshotSchedule {
  int epoch_len_slots = 300;
  std::vector<std::vector<int>> epochs;  // ascending satellite ids per epoch

  // slot is 1-based; throws std::out_of_range past the schedule horizon.
  const std::vector<int>& visible_set(int slot) const;
};

struct AreaBounds {
  double width_m = 600.0;
  double height_m = 600.0;
};

// Gauss-Markov velocity process, applied per axis.
struct MobilityState {
  double memory_level = 0.9;       // alpha
  double mean_speed_mps = 1.0;     // v-bar, per-axis asymptotic mean
  double asymptotic_std_mps = 2.0; // sigma, per-axis asymptotic std
  std::vector<Vec2> velocity_mps;
};

struct TaskDistribution {
  double size_min_bits = 0.5e6;
  double size_max_bits = 3.0e6;
  double density_min = 500.0;   // cycles/bit
  double density_max = 1000.0;  // cycles/bit
  double deadline_s = 1.0;
};

std::vector<Task> generate_tasks(const TaskDistribution& dist,
                                 std::size_t count, std::mt19937_64& rng);

// One Gauss-Markov step; positions advance by v'*tau and reflect at the
// area boundary (the velocity component flips with the position).
void step_mobility(MobilityState& state, std::vector<Vec2>& positions_m,
                   double tau_s, const AreaBounds& area, std::mt19937_64& rng);

// Truncated Gaussian on [rtt_min, rtt_max] centred at the midpoint with
// pre-truncation std (rtt_max - rtt_min) / std_divisor.
double sample_rtt(const SatelliteSpec& sat, double std_divisor,
                  std::mt19937_64& rng);

struct EnvironmentSetup {
  std::size_t iotd_count = 20;
  AreaBounds area{};
  TaskDistribution tasks{};
  std::vector<SatelliteSpec> satellites;  // ascending id
  SnapshotSchedule schedule{};
  std::vector<Vec2> initial_positions_m;  // per IoTD
  std::vector<double> cpu_hz;             // per IoTD
  std::vector<double> tx_power_w;         // per IoTD
  bool mobile_iotds = true;
  double memory_level = 0.9;
  double mean_speed_mps = 1.0;
  double asymptotic_std_mps = 2.0;
  double rtt_std_divisor = 4.0;
  double slot_duration_s = 1.0;
  std::uint64_t seed = 1;
};

struct SlotObservation {
  int slot = 0;
  std::vector<Task> tasks;
  const std::vector<Vec2>* iotd_positions_m = nullptr;
  const std::vector<int>* visible_satellites = nullptr;  // ascending ids
  std::vector<double> realized_rtt_s_per_bit;  // parallel to visible ids
};

// Seeded world state for one run. Draw order per slot is fixed (tasks, then
// per-satellite latencies, then mobility on advance), so replays with the
// same seed are bit-identical and independent of policy decisions.
class Environment {
 public:
  explicit Environment(EnvironmentSetup setup);

  // Must be called with slot = 1, 2, ... in order, once each.
  SlotObservation begin_slot(int slot);

  // Advances mobility after the slot's accounting; no-op for static IoTDs.
  void advance();

  const std::vector<SatelliteSpec>& satellites() const { return satellites_; }
  const SatelliteSpec& satellite(int id) const;
  const std::vector<Vec2>& iotd_positions() const { return positions_; }
  const std::vector<double>& iotd_cpu_hz() const { return setup_.cpu_hz; }
  const std::vector<double>& iotd_tx_power_w() const {
    return setup_.tx_power_w;
  }
  const SnapshotSchedule& schedule() const { return setup_.schedule; }
  double task_deadline_s() const { return setup_.tasks.deadline_s; }

 private:
  EnvironmentSetup setup_;
  std::vector<SatelliteSpec> satellites_;
  std::vector<Vec2> positions_;
  MobilityState mobility_;
  std::mt19937_64 rng_;
  int next_slot_ = 1;
};

}  // namespace sagimec
