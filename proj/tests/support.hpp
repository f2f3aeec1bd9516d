// Shared fixtures and independent oracles for unit and acceptance tests.
// Oracles here deliberately avoid the library's closed forms: allocation by
// pairwise mass transfer on the simplex, satellite choice by plain score
// enumeration, trajectory by grid search.
#pragma once

#include <algorithm>
#include <cmath>
#include <random>
#include <vector>

#include "sagimec/core_model.hpp"
#include "sagimec/game.hpp"
#include "sagimec/trajectory.hpp"

namespace testsupport {

using namespace sagimec;

// ---- random slot contexts -------------------------------------------------

struct CtxKnobs {
  int iotds = 4;
  int satellites = 3;
  bool allow_cloud = true;
  bool tight_deadlines = false;  // mixes in deadlines that force local
  double q_u1_max = 200.0;
};

inline SlotContext random_ctx(std::mt19937_64& rng, const CtxKnobs& k = {}) {
  std::uniform_real_distribution<double> usize(0.5e6, 3e6);
  std::uniform_real_distribution<double> udens(500.0, 1000.0);
  std::uniform_real_distribution<double> urate(2e6, 2e7);
  std::uniform_real_distribution<double> u01(0.0, 1.0);
  std::uniform_real_distribution<double> umin(15e-8, 20e-8);
  std::uniform_real_distribution<double> umax(30e-8, 35e-8);
  std::uniform_real_distribution<double> uz(5e-8, 2e-7);

  SlotContext ctx;
  for (int m = 0; m < k.iotds; ++m) {
    Task t;
    t.data_size_bits = usize(rng);
    t.compute_density = udens(rng);
    t.deadline_s = k.tight_deadlines && u01(rng) < 0.3 ? 0.05 + 0.3 * u01(rng)
                                                       : 1.0;
    ctx.tasks.push_back(t);
    ctx.iotd_cpu_hz.push_back((1.0 + 0.5 * std::floor(3.0 * u01(rng))) * 1e9);
    ctx.iotd_tx_power_w.push_back(0.1);
    ctx.rate_full_bw_bps.push_back(urate(rng));
  }
  for (int s = 0; s < k.satellites; ++s) {
    SatelliteOption o;
    o.id = s;
    double lo = umin(rng), hi = umax(rng);
    o.predicted_rtt_s_per_bit = lo + (hi - lo) * u01(rng);
    o.energy_per_bit_j = uz(rng);
    ctx.satellites.push_back(o);
  }
  ctx.queues.q_u1_j = k.q_u1_max * u01(rng);
  ctx.queues.q_u2_j = 0.0;  // not part of the offloading game
  ctx.allow_cloud = k.allow_cloud;
  return ctx;
}

// ---- allocation oracle ----------------------------------------------------

// The allocation-dependent slot objective: sum of a_i/z_i over compute
// participants plus b_i/w_i over bandwidth participants, the quantity the
// closed form claims to minimize over two independent simplices.
inline double allocation_objective(const std::vector<double>& a,
                                   const std::vector<double>& z,
                                   const std::vector<double>& b,
                                   const std::vector<double>& w) {
  double j = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) j += a[i] / z[i];
  for (std::size_t i = 0; i < b.size(); ++i) j += b[i] / w[i];
  return j;
}

// Minimizes sum c_i/x_i over the simplex by repeated pairwise mass transfer,
// each pair optimized by ternary search. No square-root formula involved.
inline std::vector<double> simplex_oracle(const std::vector<double>& c) {
  const std::size_t n = c.size();
  std::vector<double> x(n, 1.0 / static_cast<double>(n));
  if (n <= 1) {
    if (n == 1) x[0] = 1.0;
    return x;
  }
  auto pair_cost = [&](std::size_t i, std::size_t j, double xi, double s) {
    return c[i] / xi + c[j] / (s - xi);
  };
  for (int sweep = 0; sweep < 200; ++sweep) {
    double moved = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t j = i + 1; j < n; ++j) {
        const double s = x[i] + x[j];
        double lo = 1e-12 * s, hi = s - 1e-12 * s;
        for (int it = 0; it < 200; ++it) {
          double m1 = lo + (hi - lo) / 3.0, m2 = hi - (hi - lo) / 3.0;
          if (pair_cost(i, j, m1, s) < pair_cost(i, j, m2, s))
            hi = m2;
          else
            lo = m1;
        }
        double xi = 0.5 * (lo + hi);
        moved += std::abs(x[i] - xi);
        x[i] = xi;
        x[j] = s - xi;
      }
    }
    if (moved < 1e-14) break;
  }
  return x;
}

// Extracts the (a, b) coefficient vectors of the allocation objective for a
// profile, straight from the cost definitions (no phi/gamma closed forms).
struct AllocationCoeffs {
  std::vector<double> a;           // compute: gammaT * eta_i * D_i / F_max
  std::vector<double> b;           // bandwidth: (gammaT + gammaE P_i) D_i / r_i
  std::vector<std::size_t> a_idx;  // players behind each entry
  std::vector<std::size_t> b_idx;
};

inline AllocationCoeffs allocation_coeffs(const OffloadProfile& profile,
                                          const SlotContext& ctx) {
  AllocationCoeffs c;
  for (std::size_t m = 0; m < ctx.size(); ++m) {
    const Task& t = ctx.tasks[m];
    if (profile[m] == OffloadMode::uav) {
      c.a.push_back(ctx.weights.latency_weight * t.compute_density *
                    t.data_size_bits / ctx.uav_max_compute_hz);
      c.a_idx.push_back(m);
    }
    if (profile[m] != OffloadMode::local) {
      c.b.push_back((ctx.weights.latency_weight +
                     ctx.weights.energy_weight * ctx.iotd_tx_power_w[m]) *
                    t.data_size_bits / ctx.rate_full_bw_bps[m]);
      c.b_idx.push_back(m);
    }
  }
  return c;
}

// ---- satellite oracle -----------------------------------------------------

inline int satellite_oracle(const SlotContext& ctx) {
  int best = ctx.satellites.front().id;
  double best_score = std::numeric_limits<double>::infinity();
  for (const SatelliteOption& o : ctx.satellites) {
    double score = ctx.v_coeff * ctx.weights.latency_weight *
                       o.predicted_rtt_s_per_bit +
                   ctx.queues.q_u1_j * o.energy_per_bit_j;
    if (score < best_score) {
      best_score = score;
      best = o.id;
    }
  }
  return best;
}

// ---- trajectory instances -------------------------------------------------

inline TrajectoryProblem random_traj(std::mt19937_64& rng, int max_offloaders,
                                     bool allow_zero_queue = true) {
  std::uniform_real_distribution<double> u01(0.0, 1.0);
  std::uniform_real_distribution<double> upos(-400.0, 400.0);

  TrajectoryProblem p;
  p.current_position_m = {upos(rng), upos(rng)};
  p.altitude_m = 100.0;
  p.v_coeff = 10.0;
  p.slot_duration_s = 1.0;
  p.max_speed_mps = 25.0;
  double roll = u01(rng);
  p.queue_weight_j = (allow_zero_queue && roll < 0.25) ? 0.0
                     : roll < 0.5                      ? 5.0 * u01(rng)
                                                       : 300.0 * u01(rng);
  std::uniform_int_distribution<int> un(0, max_offloaders);
  int n = un(rng);
  for (int i = 0; i < n; ++i) {
    TrajOffloader off;
    off.position_m = {p.current_position_m.x + upos(rng) * 0.5,
                      p.current_position_m.y + upos(rng) * 0.5};
    // scales the engine produces: weight ~ (gammaT + gammaE P) D / (w B),
    // snr numerator ~ P * 10^(-L0/10) / noise at a 1 m reference
    off.comm_weight = 0.005 + 1.5 * u01(rng);
    off.snr_numerator_m2 = 1e6 + 5e7 * u01(rng);
    p.offloaders.push_back(off);
  }
  return p;
}

}  // namespace testsupport
