#include "sagimec/environment.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace sagimec {

const std::vector<int>& SnapshotSchedule::visible_set(int slot) const {
  if (slot < 1) {
    throw std::out_of_range("visible_set: slot must be >= 1");
  }
  const std::size_t epoch =
      static_cast<std::size_t>((slot - 1) / epoch_len_slots);
  if (epoch >= epochs.size()) {
    throw std::out_of_range(
        "visible_set: slot " + std::to_string(slot) +
        " is past the schedule horizon (config/horizon mismatch)");
  }
  return epochs[epoch];
}

std::vector<Task> generate_tasks(const TaskDistribution& dist,
                                 std::size_t count, std::mt19937_64& rng) {
  std::uniform_real_distribution<double> size(dist.size_min_bits,
                                              dist.size_max_bits);
  std::uniform_real_distribution<double> density(dist.density_min,
                                                 dist.density_max);
  std::vector<Task> tasks;
  tasks.reserve(count);
  for (std::size_t m = 0; m < count; ++m) {
    tasks.push_back(Task{size(rng), density(rng), dist.deadline_s});
  }
  return tasks;
}

namespace {

// Reflects a coordinate into [0, hi], flipping the velocity sign per bounce.
void reflect_axis(double& pos, double& vel, double hi) {
  while (pos < 0.0 || pos > hi) {
    if (pos < 0.0) {
      pos = -pos;
      vel = -vel;
    } else {
      pos = 2.0 * hi - pos;
      vel = -vel;
    }
  }
}

}  // namespace

void step_mobility(MobilityState& state, std::vector<Vec2>& positions_m,
                   double tau_s, const AreaBounds& area, std::mt19937_64& rng) {
  std::normal_distribution<double> normal(0.0, 1.0);
  const double a = state.memory_level;
  const double noise_scale = state.asymptotic_std_mps * std::sqrt(1.0 - a * a);
  for (std::size_t m = 0; m < positions_m.size(); ++m) {
    Vec2& v = state.velocity_mps[m];
    v.x = a * v.x + (1.0 - a) * state.mean_speed_mps +
          noise_scale * normal(rng);
    v.y = a * v.y + (1.0 - a) * state.mean_speed_mps +
          noise_scale * normal(rng);
    Vec2& p = positions_m[m];
    p.x += v.x * tau_s;
    p.y += v.y * tau_s;
    reflect_axis(p.x, v.x, area.width_m);
    reflect_axis(p.y, v.y, area.height_m);
  }
}

double sample_rtt(const SatelliteSpec& sat, double std_divisor,
                  std::mt19937_64& rng) {
  const double lo = sat.rtt_min_s_per_bit;
  const double hi = sat.rtt_max_s_per_bit;
  if (lo >= hi) {
    return lo;
  }
  const double mean = 0.5 * (lo + hi);
  const double std = (hi - lo) / std_divisor;
  std::normal_distribution<double> normal(mean, std);
  // Rejection keeps the symmetric shape (and the midpoint mean) exactly.
  for (;;) {
    const double draw = normal(rng);
    if (draw >= lo && draw <= hi) {
      return draw;
    }
  }
}

Environment::Environment(EnvironmentSetup setup)
    : setup_(std::move(setup)),
      satellites_(setup_.satellites),
      positions_(setup_.initial_positions_m),
      rng_(setup_.seed) {
  if (positions_.size() != setup_.iotd_count ||
      setup_.cpu_hz.size() != setup_.iotd_count ||
      setup_.tx_power_w.size() != setup_.iotd_count) {
    throw std::invalid_argument(
        "Environment: per-IoTD vectors must match iotd_count");
  }
  mobility_.memory_level = setup_.memory_level;
  mobility_.mean_speed_mps = setup_.mean_speed_mps;
  mobility_.asymptotic_std_mps = setup_.asymptotic_std_mps;
  mobility_.velocity_mps.assign(setup_.iotd_count, Vec2{});
}

const SatelliteSpec& Environment::satellite(int id) const {
  for (const SatelliteSpec& sat : satellites_) {
    if (sat.id == id) {
      return sat;
    }
  }
  throw std::invalid_argument("Environment: unknown satellite id " +
                              std::to_string(id));
}

SlotObservation Environment::begin_slot(int slot) {
  if (slot != next_slot_) {
    throw std::logic_error("Environment: begin_slot called out of order");
  }
  ++next_slot_;

  SlotObservation obs;
  obs.slot = slot;
  obs.tasks = generate_tasks(setup_.tasks, setup_.iotd_count, rng_);
  obs.iotd_positions_m = &positions_;
  obs.visible_satellites = &setup_.schedule.visible_set(slot);
  obs.realized_rtt_s_per_bit.reserve(obs.visible_satellites->size());
  // Realized latencies are drawn for every visible satellite regardless of
  // which one a policy later selects, keeping the stream policy-independent.
  for (int id : *obs.visible_satellites) {
    obs.realized_rtt_s_per_bit.push_back(
        sample_rtt(satellite(id), setup_.rtt_std_divisor, rng_));
  }
  return obs;
}

void Environment::advance() {
  if (!setup_.mobile_iotds) {
    return;
  }
  step_mobility(mobility_, positions_, setup_.slot_duration_s, setup_.area,
                rng_);
}

}  // namespace sagimec
