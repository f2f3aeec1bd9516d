#include "sagimec/game.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>
#include <string>

namespace sagimec {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

// Profile-independent pieces of the slot's game, computed once.
struct GameEval {
  const SlotContext& ctx;
  GameCoefficients co;
  int sat_id = -1;
  double sat_rtt = 0.0;  // predicted, s/bit
  std::vector<double> u_local;     // full local utility
  std::vector<double> uav_const;   // Q_u1 * comp energy / V
  std::vector<double> cloud_const; // Q_u1 * relay energy / V + latency term
};

double phi_coeff(const SlotContext& ctx, std::size_t i) {
  const Task& t = ctx.tasks[i];
  return std::sqrt(ctx.weights.latency_weight * t.compute_density *
                   t.data_size_bits / ctx.uav_max_compute_hz);
}

double gamma_coeff(const SlotContext& ctx, std::size_t i) {
  const Task& t = ctx.tasks[i];
  const double weighted_bits =
      ctx.weights.latency_weight * t.data_size_bits +
      ctx.weights.energy_weight * ctx.iotd_tx_power_w[i] * t.data_size_bits;
  return std::sqrt(weighted_bits / ctx.rate_full_bw_bps[i]);
}

double local_utility(const SlotContext& ctx, std::size_t i) {
  const Task& t = ctx.tasks[i];
  const double f = ctx.iotd_cpu_hz[i];
  const double latency = t.compute_density * t.data_size_bits / f;
  const double energy = ctx.switched_capacitance * f * f * f * latency;
  return ctx.weights.latency_weight * latency +
         ctx.weights.energy_weight * energy;
}

GameEval make_eval(const SlotContext& ctx) {
  GameEval ev{ctx, game_coefficients(ctx), -1, 0.0, {}, {}, {}};
  double sat_z = 0.0;
  if (!ctx.satellites.empty()) {
    ev.sat_id = optimal_satellite(ctx);
    for (const SatelliteOption& s : ctx.satellites) {
      if (s.id == ev.sat_id) {
        ev.sat_rtt = s.predicted_rtt_s_per_bit;
        sat_z = s.energy_per_bit_j;
        break;
      }
    }
  }
  const std::size_t n = ctx.size();
  ev.u_local.resize(n);
  ev.uav_const.resize(n);
  ev.cloud_const.resize(n);
  for (std::size_t i = 0; i < n; ++i) {
    const Task& t = ctx.tasks[i];
    ev.u_local[i] = local_utility(ctx, i);
    ev.uav_const[i] = ctx.queues.q_u1_j * ctx.uav_energy_per_cycle_j *
                      t.compute_density * t.data_size_bits / ctx.v_coeff;
    ev.cloud_const[i] =
        ctx.queues.q_u1_j * t.data_size_bits * sat_z / ctx.v_coeff +
        ctx.weights.latency_weight * t.data_size_bits * ev.sat_rtt;
  }
  return ev;
}

// Player m's bandwidth and compute shares under the tentative profile,
// without materializing the full allocation vectors.
struct Shares {
  double w = 0.0;
  double z = 0.0;
};

Shares shares_for(std::size_t m, const OffloadProfile& profile,
                  const GameEval& ev) {
  const SlotContext& ctx = ev.ctx;
  Shares out;
  if (ctx.equal_share_allocation) {
    std::size_t n_u = 0;
    std::size_t n_o = 0;
    for (OffloadMode a : profile) {
      n_u += a == OffloadMode::uav;
      n_o += a != OffloadMode::local;
    }
    if (n_o > 0) out.w = 1.0 / static_cast<double>(n_o);
    if (n_u > 0) out.z = 1.0 / static_cast<double>(n_u);
    return out;
  }
  double phi_sum = 0.0;
  double gamma_sum = 0.0;
  for (std::size_t i = 0; i < profile.size(); ++i) {
    if (profile[i] == OffloadMode::uav) phi_sum += ev.co.phi[i];
    if (profile[i] != OffloadMode::local) gamma_sum += ev.co.gamma[i];
  }
  if (gamma_sum > 0.0) out.w = ev.co.gamma[m] / gamma_sum;
  if (phi_sum > 0.0) out.z = ev.co.phi[m] / phi_sum;
  return out;
}

double offload_latency_from_shares(std::size_t m, OffloadMode mode,
                                   const Shares& sh, const GameEval& ev) {
  const SlotContext& ctx = ev.ctx;
  const Task& t = ctx.tasks[m];
  const double tx = t.data_size_bits / (sh.w * ctx.rate_full_bw_bps[m]);
  if (mode == OffloadMode::uav) {
    return tx + t.compute_density * t.data_size_bits /
                    (sh.z * ctx.uav_max_compute_hz);
  }
  return tx + t.data_size_bits * ev.sat_rtt;
}

double utility_impl(std::size_t m, const OffloadProfile& profile,
                    const GameEval& ev) {
  const SlotContext& ctx = ev.ctx;
  const OffloadMode mode = profile[m];
  if (mode == OffloadMode::local) {
    return ev.u_local[m];
  }
  if (ctx.equal_share_allocation) {
    const Shares sh = shares_for(m, profile, ev);
    const Task& t = ctx.tasks[m];
    const double tx_latency =
        t.data_size_bits / (sh.w * ctx.rate_full_bw_bps[m]);
    const double uplink =
        ctx.weights.latency_weight * tx_latency +
        ctx.weights.energy_weight * ctx.iotd_tx_power_w[m] * tx_latency;
    if (mode == OffloadMode::uav) {
      const double exec_latency = t.compute_density * t.data_size_bits /
                                  (sh.z * ctx.uav_max_compute_hz);
      return ev.uav_const[m] + uplink +
             ctx.weights.latency_weight * exec_latency;
    }
    // The relay leg (latency and energy terms) is already in cloud_const.
    return ev.cloud_const[m] + uplink;
  }
  // Closed-form allocation: congestion sums of square-root coefficients.
  double phi_sum = 0.0;
  double gamma_sum = 0.0;
  for (std::size_t i = 0; i < profile.size(); ++i) {
    if (profile[i] == OffloadMode::uav) phi_sum += ev.co.phi[i];
    if (profile[i] != OffloadMode::local) gamma_sum += ev.co.gamma[i];
  }
  if (mode == OffloadMode::uav) {
    return ev.uav_const[m] + ev.co.phi[m] * phi_sum +
           ev.co.gamma[m] * gamma_sum;
  }
  return ev.cloud_const[m] + ev.co.gamma[m] * gamma_sum;
}

// True when offloader m itself meets its deadline under the given profile.
bool own_latency_ok(std::size_t m, const OffloadProfile& profile,
                    const GameEval& ev) {
  if (profile[m] == OffloadMode::local) {
    return true;
  }
  const Shares sh = shares_for(m, profile, ev);
  const double latency = offload_latency_from_shares(m, profile[m], sh, ev);
  return latency <= ev.ctx.tasks[m].deadline_s + ev.ctx.feasibility_tol;
}

// Deadlines couple the players through the shares, so feasibility is a
// property of the whole profile: every offloader (not just the mover) must
// meet its deadline. Without the joint check an entrant can push incumbents
// over their deadlines, and the resulting forced exits can raise the
// potential, which lets best-response dynamics dance forever.
bool profile_feasible(const OffloadProfile& profile, const GameEval& ev) {
  for (std::size_t i = 0; i < profile.size(); ++i) {
    if (!own_latency_ok(i, profile, ev)) {
      return false;
    }
  }
  return true;
}

struct ResponseResult {
  OffloadMode choice;
  double utility_before;
  double utility_after;
};

ResponseResult best_response_impl(std::size_t m, OffloadProfile& profile,
                                  const GameEval& ev) {
  const SlotContext& ctx = ev.ctx;
  const OffloadMode current = profile[m];
  const OffloadMode candidates[3] = {OffloadMode::local, OffloadMode::uav,
                                     OffloadMode::cloud};
  OffloadMode best = OffloadMode::local;
  double best_u = kInf;
  double current_u = kInf;
  bool current_feasible = false;
  for (OffloadMode c : candidates) {
    if (c == OffloadMode::cloud &&
        (!ctx.allow_cloud || ctx.satellites.empty())) {
      continue;
    }
    profile[m] = c;
    // Exits to local never hurt anyone (the surviving shares only grow), so
    // they are always admissible; entries and switches must keep the whole
    // profile feasible.
    const bool feasible =
        c == OffloadMode::local || profile_feasible(profile, ev);
    if (feasible) {
      const double u = utility_impl(m, profile, ev);
      if (u < best_u) {
        best_u = u;
        best = c;
      }
      if (c == current) {
        current_u = u;
        current_feasible = true;
      }
    }
  }
  profile[m] = current;
  const double keep_margin =
      ctx.improvement_tol * std::max(1.0, std::abs(current_u));
  if (current_feasible && best_u >= current_u - keep_margin) {
    return {current, current_u, current_u};
  }
  // Forced move when the current choice is infeasible; local always is.
  const double before =
      current_feasible ? current_u : utility_impl(m, profile, ev);
  return {best, before, best_u};
}

}  // namespace

GameCoefficients game_coefficients(const SlotContext& ctx) {
  GameCoefficients co;
  const std::size_t n = ctx.size();
  co.phi.resize(n);
  co.gamma.resize(n);
  for (std::size_t i = 0; i < n; ++i) {
    co.phi[i] = phi_coeff(ctx, i);
    co.gamma[i] = gamma_coeff(ctx, i);
  }
  return co;
}

// Overwrites fractions[last] with 1 minus the left-to-right sum of every
// other entry (zeros included), unless that would zero the share out.
void absorb_residue(std::vector<double>& fractions, std::size_t last) {
  if (last >= fractions.size()) return;  // no participants
  double others = 0.0;
  for (std::size_t i = 0; i < fractions.size(); ++i) {
    if (i != last) others += fractions[i];
  }
  const double pinned = 1.0 - others;
  if (pinned > 0.0) fractions[last] = pinned;
}

AllocationResult optimal_allocation(const OffloadProfile& profile,
                                    const SlotContext& ctx) {
  const GameCoefficients co = game_coefficients(ctx);
  const std::size_t n = profile.size();
  AllocationResult out;
  out.compute_fraction.assign(n, 0.0);
  out.bandwidth_fraction.assign(n, 0.0);
  double phi_sum = 0.0;
  double gamma_sum = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    if (profile[i] == OffloadMode::uav) phi_sum += co.phi[i];
    if (profile[i] != OffloadMode::local) gamma_sum += co.gamma[i];
  }
  std::size_t z_last = n;
  std::size_t w_last = n;
  for (std::size_t i = 0; i < n; ++i) {
    if (profile[i] == OffloadMode::uav) {
      out.compute_fraction[i] = co.phi[i] / phi_sum;
      z_last = i;
    }
    if (profile[i] != OffloadMode::local) {
      out.bandwidth_fraction[i] = co.gamma[i] / gamma_sum;
      w_last = i;
    }
  }
  // Pin the last participant to 1 minus the running sum of the others, so a
  // left-to-right re-summation reproduces exactly 1. The residue is a few
  // ulps; the shares stay positive because the coefficients are bounded.
  absorb_residue(out.compute_fraction, z_last);
  absorb_residue(out.bandwidth_fraction, w_last);
  return out;
}

AllocationResult equal_allocation(const OffloadProfile& profile,
                                  const SlotContext& ctx) {
  const std::size_t n = profile.size();
  AllocationResult out;
  out.compute_fraction.assign(n, 0.0);
  out.bandwidth_fraction.assign(n, 0.0);
  std::size_t n_u = 0;
  std::size_t n_o = 0;
  for (OffloadMode a : profile) {
    n_u += a == OffloadMode::uav;
    n_o += a != OffloadMode::local;
  }
  for (std::size_t i = 0; i < n; ++i) {
    if (profile[i] == OffloadMode::uav) {
      out.compute_fraction[i] = 1.0 / static_cast<double>(n_u);
    }
    if (profile[i] != OffloadMode::local) {
      out.bandwidth_fraction[i] = 1.0 / static_cast<double>(n_o);
    }
  }
  (void)ctx;
  return out;
}

AllocationResult allocation_for(const OffloadProfile& profile,
                                const SlotContext& ctx) {
  return ctx.equal_share_allocation ? equal_allocation(profile, ctx)
                                    : optimal_allocation(profile, ctx);
}

int optimal_satellite(const SlotContext& ctx) {
  if (ctx.satellites.empty()) {
    throw std::logic_error(
        "optimal_satellite: empty visible set (schedule bug)");
  }
  const double v_gamma_t = ctx.v_coeff * ctx.weights.latency_weight;
  double best_score = kInf;
  int best_id = -1;
  for (const SatelliteOption& s : ctx.satellites) {
    const double score = v_gamma_t * s.predicted_rtt_s_per_bit +
                         ctx.queues.q_u1_j * s.energy_per_bit_j;
    if (score < best_score) {
      best_score = score;
      best_id = s.id;
    }
  }
  if (ctx.tie_break == SatelliteTieBreak::seeded_random &&
      ctx.tie_rng != nullptr) {
    std::vector<int> tied;
    for (const SatelliteOption& s : ctx.satellites) {
      const double score = v_gamma_t * s.predicted_rtt_s_per_bit +
                           ctx.queues.q_u1_j * s.energy_per_bit_j;
      if (score == best_score) {
        tied.push_back(s.id);
      }
    }
    if (tied.size() > 1) {
      std::uniform_int_distribution<std::size_t> pick(0, tied.size() - 1);
      return tied[pick(*ctx.tie_rng)];
    }
  }
  return best_id;
}

double utility(std::size_t m, const OffloadProfile& profile,
               const SlotContext& ctx) {
  const GameEval ev = make_eval(ctx);
  return utility_impl(m, profile, ev);
}

double potential(const OffloadProfile& profile, const SlotContext& ctx) {
  if (ctx.equal_share_allocation) {
    throw std::logic_error(
        "potential: only defined for the closed-form allocation game");
  }
  const GameEval ev = make_eval(ctx);
  double value = 0.0;
  double phi_prefix = 0.0;
  double gamma_prefix = 0.0;
  for (std::size_t i = 0; i < profile.size(); ++i) {
    switch (profile[i]) {
      case OffloadMode::local:
        value += ev.u_local[i];
        break;
      case OffloadMode::uav:
        phi_prefix += ev.co.phi[i];
        gamma_prefix += ev.co.gamma[i];
        value += ev.uav_const[i] + ev.co.phi[i] * phi_prefix +
                 ev.co.gamma[i] * gamma_prefix;
        break;
      case OffloadMode::cloud:
        gamma_prefix += ev.co.gamma[i];
        value += ev.cloud_const[i] + ev.co.gamma[i] * gamma_prefix;
        break;
    }
  }
  return value;
}

OffloadMode best_response(std::size_t m, const OffloadProfile& profile,
                          const SlotContext& ctx) {
  const GameEval ev = make_eval(ctx);
  OffloadProfile scratch = profile;
  return best_response_impl(m, scratch, ev).choice;
}

double offload_latency(std::size_t m, const OffloadProfile& profile,
                       const AllocationResult& alloc, const SlotContext& ctx) {
  if (profile[m] == OffloadMode::local) {
    return 0.0;
  }
  const GameEval ev = make_eval(ctx);
  Shares sh{alloc.bandwidth_fraction[m], alloc.compute_fraction[m]};
  return offload_latency_from_shares(m, profile[m], sh, ev);
}

NashResult nash_solve(const OffloadProfile& initial, const SlotContext& ctx,
                      bool collect_trace) {
  const GameEval ev = make_eval(ctx);
  NashResult res;
  res.profile = initial;
  // Normalize the warm start: parameters move between slots, so an incoming
  // profile may violate deadlines. Drop violators to local until none remain
  // (dropping only grows the surviving shares, so this terminates). The main
  // loop then preserves feasibility, because every admissible move keeps the
  // whole profile feasible.
  for (;;) {
    bool dropped = false;
    for (std::size_t m = 0; m < res.profile.size(); ++m) {
      if (res.profile[m] != OffloadMode::local &&
          !own_latency_ok(m, res.profile, ev)) {
        res.profile[m] = OffloadMode::local;
        ++res.forced_local;
        dropped = true;
      }
    }
    if (!dropped) {
      break;
    }
  }
  const int cap = ctx.max_passes > 0 ? ctx.max_passes
                                     : 100 * static_cast<int>(ctx.size());
  for (int pass = 1;; ++pass) {
    if (pass > cap) {
      if (ctx.best_effort_on_cap) {
        res.hit_cap = true;
        break;
      }
      throw std::runtime_error(
          "nash_solve: best-response pass cap exceeded; a finite improvement "
          "path should have terminated (likely an inconsistent context)");
    }
    res.passes = pass;
    bool changed = false;
    for (std::size_t m = 0; m < res.profile.size(); ++m) {
      const OffloadMode before = res.profile[m];
      const ResponseResult r = best_response_impl(m, res.profile, ev);
      if (r.choice != before) {
        res.profile[m] = r.choice;
        changed = true;
        ++res.moves;
        if (collect_trace) {
          NashMove mv;
          mv.pass = pass;
          mv.player = m;
          mv.from = before;
          mv.to = r.choice;
          mv.utility_before = r.utility_before;
          mv.utility_after = r.utility_after;
          mv.potential_after = ctx.equal_share_allocation
                                   ? std::numeric_limits<double>::quiet_NaN()
                                   : potential(res.profile, ctx);
          res.trace.push_back(mv);
        }
      }
    }
    if (!changed) {
      break;
    }
  }
  // Admissible moves preserve feasibility, so even a best-effort cap exit
  // should be violation-free; this sweep is defensive only.
  if (res.hit_cap) {
    for (;;) {
      bool repaired = false;
      for (std::size_t m = 0; m < res.profile.size(); ++m) {
        if (res.profile[m] == OffloadMode::local) {
          continue;
        }
        if (!own_latency_ok(m, res.profile, ev)) {
          res.profile[m] = OffloadMode::local;
          ++res.forced_local;
          repaired = true;
        }
      }
      if (!repaired) {
        break;
      }
    }
  }
  return res;
}

}  // namespace sagimec
