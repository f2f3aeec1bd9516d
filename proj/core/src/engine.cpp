#include "sagimec/engine.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <limits>
#include <random>
#include <sstream>
#include <stdexcept>
#include <thread>

#include "sagimec/core_model.hpp"
#include "sagimec/lyapunov.hpp"

namespace sagimec {
namespace {

// Offsets separating the world-build, slot-time, and policy RNG streams
// derived from one scenario seed.
constexpr std::uint64_t kStreamStride = 0x9E3779B97F4A7C15ull;

int pick_eps_greedy_arm(const std::vector<int>& visible,
                        const BanditStats& bandit, double epsilon,
                        std::mt19937_64& rng) {
  std::uniform_real_distribution<double> u01(0.0, 1.0);
  if (u01(rng) < epsilon) {
    std::uniform_int_distribution<std::size_t> pick(0, visible.size() - 1);
    return visible[pick(rng)];
  }
  int best = visible.front();
  double best_v = std::numeric_limits<double>::infinity();
  for (int id : visible) {
    const BanditStats::Arm& a = bandit.arm(id);
    double v = a.pull_count > 0 ? a.mean_rtt : a.rtt_min;
    if (v < best_v) {
      best_v = v;
      best = id;
    }
  }
  return best;
}

double eps_greedy_estimate(const BanditStats& bandit, int id) {
  const BanditStats::Arm& a = bandit.arm(id);
  return a.pull_count > 0 ? a.mean_rtt : a.rtt_min;
}

}  // namespace

Policy parse_policy(const std::string& name) {
  if (name == "odoa") return Policy::odoa;
  if (name == "uac") return Policy::uac;
  if (name == "era") return Policy::era;
  if (name == "eps_greedy") return Policy::eps_greedy;
  if (name == "ocq") return Policy::ocq;
  throw ConfigError("unknown policy: " + name);
}

const char* policy_name(Policy p) {
  switch (p) {
    case Policy::odoa: return "odoa";
    case Policy::uac: return "uac";
    case Policy::era: return "era";
    case Policy::eps_greedy: return "eps_greedy";
    case Policy::ocq: return "ocq";
  }
  return "?";
}

EnvironmentSetup make_environment_setup(const ScenarioConfig& cfg) {
  EnvironmentSetup s;
  std::mt19937_64 rng(cfg.scenario.seed);

  s.iotd_count = static_cast<std::size_t>(cfg.scenario.iotd_count);
  s.area = {cfg.scenario.area_width_m, cfg.scenario.area_height_m};
  s.tasks = cfg.task_distribution();

  std::uniform_real_distribution<double> umin(
      cfg.satellites.rtt_min_low_s_per_bit,
      cfg.satellites.rtt_min_high_s_per_bit);
  std::uniform_real_distribution<double> umax(
      cfg.satellites.rtt_max_low_s_per_bit,
      cfg.satellites.rtt_max_high_s_per_bit);
  std::uniform_real_distribution<double> uz(cfg.satellites.energy_per_bit_low_j,
                                            cfg.satellites.energy_per_bit_high_j);
  for (int i = 0; i < cfg.satellites.pool_size; ++i) {
    SatelliteSpec sp;
    sp.id = i;
    sp.rtt_min_s_per_bit = umin(rng);
    sp.rtt_max_s_per_bit = umax(rng);
    sp.energy_per_bit_j = uz(rng);
    s.satellites.push_back(sp);
  }

  const int pool = cfg.satellites.pool_size;
  const int vis = cfg.satellites.visible_count;
  const int epochs =
      std::max(1, (cfg.scenario.horizon_slots + cfg.satellites.epoch_len_slots -
                   1) / cfg.satellites.epoch_len_slots);
  std::uniform_int_distribution<int> uoff(0, pool - 1);
  const int offset = uoff(rng);
  s.schedule.epoch_len_slots = cfg.satellites.epoch_len_slots;
  for (int e = 0; e < epochs; ++e) {
    std::vector<int> ids;
    ids.reserve(static_cast<std::size_t>(vis));
    for (int k = 0; k < vis; ++k) ids.push_back((offset + e * vis + k) % pool);
    std::sort(ids.begin(), ids.end());
    s.schedule.epochs.push_back(std::move(ids));
  }

  std::uniform_real_distribution<double> ux(0.0, s.area.width_m);
  std::uniform_real_distribution<double> uy(0.0, s.area.height_m);
  std::uniform_int_distribution<std::size_t> ucpu(
      0, cfg.iotd.cpu_choices_ghz.size() - 1);
  const double tx_w = dbm_to_watts(cfg.iotd.tx_power_dbm);
  for (std::size_t m = 0; m < s.iotd_count; ++m) {
    double x = ux(rng);
    double y = uy(rng);
    s.initial_positions_m.push_back({x, y});
    s.cpu_hz.push_back(cfg.iotd.cpu_choices_ghz[ucpu(rng)] * 1e9);
    s.tx_power_w.push_back(tx_w);
  }

  s.mobile_iotds = !cfg.scenario.static_iotds;
  s.memory_level = cfg.mobility.memory_level;
  s.mean_speed_mps = cfg.mobility.mean_speed_mps;
  s.asymptotic_std_mps = cfg.mobility.asymptotic_std_mps;
  s.rtt_std_divisor = cfg.satellites.rtt_std_divisor;
  s.slot_duration_s = cfg.uav.slot_duration_s;
  s.seed = cfg.scenario.seed + kStreamStride;
  return s;
}

MetricsSeries run(const ScenarioConfig& cfg, const RunHooks* hooks) {
  {
    auto errors = validate(cfg);
    if (!errors.empty()) {
      std::string all;
      for (const auto& m : errors) all += (all.empty() ? "" : "; ") + m;
      throw ConfigError(all);
    }
  }

  const Policy pol = parse_policy(cfg.scenario.policy);
  const UavParams uavp = cfg.uav_params();
  const RadioParams radio = cfg.radio_params();
  const PropulsionParams prop = cfg.propulsion_params();
  const CostWeights w = cfg.weights();
  const EnergyBudgets budgets = cfg.energy_budgets();
  const double tau = uavp.slot_duration_s;
  const double deadline = cfg.tasks.deadline_s;
  const int horizon = cfg.scenario.horizon_slots;
  const std::size_t count = static_cast<std::size_t>(cfg.scenario.iotd_count);
  const BonusLog log_base =
      cfg.bandit.bonus_log == "log10" ? BonusLog::decimal : BonusLog::natural;
  const SatelliteTieBreak tie_break =
      cfg.game.satellite_tie_break == "seeded_random"
          ? SatelliteTieBreak::seeded_random
          : SatelliteTieBreak::lowest_id;
  const ScaOptions sca_opts{
      cfg.trajectory.max_outer_iterations, cfg.trajectory.outer_rel_tol,
      cfg.trajectory.max_inner_iterations, cfg.trajectory.inner_grad_tol};

  Environment env(make_environment_setup(cfg));
  BanditStats bandit(env.satellites(), log_base);
  std::mt19937_64 policy_rng(cfg.scenario.seed + 2 * kStreamStride);
  VirtualQueues queues{cfg.controller.initial_q_u1_j,
                       cfg.controller.initial_q_u2_j};
  Vec2 uav_pos = uavp.initial_position_m;
  OffloadProfile profile(count, OffloadMode::local);

  MetricsSeries series;
  series.slots.reserve(static_cast<std::size_t>(horizon));
  RunningTotals totals;

  for (int t = 1; t <= horizon; ++t) {
    try {
      SlotObservation obs = env.begin_slot(t);
      bandit.tick_visibility(t, *obs.visible_satellites);
      const std::vector<Vec2>& positions = *obs.iotd_positions_m;

      SlotContext ctx;
      ctx.tasks = obs.tasks;
      ctx.iotd_cpu_hz = env.iotd_cpu_hz();
      ctx.iotd_tx_power_w = env.iotd_tx_power_w();
      ctx.rate_full_bw_bps.resize(count);
      for (std::size_t m = 0; m < count; ++m)
        ctx.rate_full_bw_bps[m] = full_bandwidth_rate(
            positions[m], uav_pos, uavp, radio, ctx.iotd_tx_power_w[m]);
      ctx.queues = pol == Policy::ocq ? VirtualQueues{} : queues;
      ctx.v_coeff = cfg.controller.v_coeff;
      ctx.weights = w;
      ctx.uav_max_compute_hz = uavp.max_compute_hz;
      ctx.uav_energy_per_cycle_j = uavp.energy_per_cycle_j;
      ctx.switched_capacitance = radio.switched_capacitance;
      ctx.allow_cloud = pol != Policy::uac;
      ctx.equal_share_allocation = pol == Policy::era;
      ctx.best_effort_on_cap = pol == Policy::era;
      ctx.tie_break = tie_break;
      ctx.tie_rng =
          tie_break == SatelliteTieBreak::seeded_random ? &policy_rng : nullptr;

      // Relay menu: one satellite option the games below will price. The
      // selection score is profile-independent, so choosing before the game
      // and pricing only the winner changes no utility.
      int sat_id = -1;
      if (ctx.allow_cloud && !obs.visible_satellites->empty()) {
        if (pol == Policy::eps_greedy) {
          sat_id = pick_eps_greedy_arm(*obs.visible_satellites, bandit,
                                       cfg.scenario.epsilon, policy_rng);
          ctx.satellites = {{sat_id, eps_greedy_estimate(bandit, sat_id),
                             env.satellite(sat_id).energy_per_bit_j}};
        } else {
          for (int id : *obs.visible_satellites)
            ctx.satellites.push_back({id, bandit.predict_rtt(id, t),
                                      env.satellite(id).energy_per_bit_j});
          sat_id = optimal_satellite(ctx);
          ctx.satellites = {*std::find_if(
              ctx.satellites.begin(), ctx.satellites.end(),
              [&](const SatelliteOption& o) { return o.id == sat_id; })};
        }
      }

      NashResult nash =
          nash_solve(profile, ctx, hooks && hooks->collect_nash_trace);
      AllocationResult alloc = allocation_for(nash.profile, ctx);

      for (std::size_t m = 0; m < count; ++m) {
        if (nash.profile[m] == OffloadMode::local) continue;
        double lat = offload_latency(m, nash.profile, alloc, ctx);
        if (!(lat <= deadline + 1e-6)) {
          std::ostringstream os;
          os << "planned latency " << lat << " of IoTD " << m
             << " exceeds the deadline " << deadline;
          throw std::runtime_error(os.str());
        }
      }
      if (hooks && hooks->on_decision)
        hooks->on_decision(t, ctx, nash, alloc, sat_id);

      TrajectoryProblem prob;
      prob.current_position_m = uav_pos;
      prob.altitude_m = uavp.altitude_m;
      prob.queue_weight_j = pol == Policy::ocq ? 0.0 : queues.q_u2_j;
      prob.v_coeff = cfg.controller.v_coeff;
      prob.propulsion = prop;
      prob.slot_duration_s = tau;
      prob.max_speed_mps = uavp.max_speed_mps;
      for (std::size_t m = 0; m < count; ++m) {
        if (nash.profile[m] == OffloadMode::local) continue;
        TrajOffloader off;
        off.position_m = positions[m];
        off.comm_weight = (w.latency_weight * ctx.tasks[m].data_size_bits +
                           w.energy_weight * ctx.iotd_tx_power_w[m] *
                               ctx.tasks[m].data_size_bits) /
                          (alloc.bandwidth_fraction[m] * uavp.bandwidth_hz);
        off.snr_numerator_m2 = snr_numerator_m2(
            los_probability(distance(positions[m], uav_pos), uavp.altitude_m,
                            radio),
            radio, ctx.iotd_tx_power_w[m]);
        prob.offloaders.push_back(off);
      }
      ScaTrace trace;
      ScaTrace* trace_ptr =
          hooks && hooks->collect_sca_trace ? &trace : nullptr;
      Vec2 next_pos = sca_optimize(prob, uav_pos, sca_opts, trace_ptr);
      if (hooks && hooks->on_trajectory)
        hooks->on_trajectory(t, prob, next_pos, trace);

      double realized_rtt = std::numeric_limits<double>::quiet_NaN();
      if (sat_id >= 0) {
        const std::vector<int>& vis = *obs.visible_satellites;
        std::size_t idx = static_cast<std::size_t>(
            std::find(vis.begin(), vis.end(), sat_id) - vis.begin());
        realized_rtt = obs.realized_rtt_s_per_bit[idx];
      }

      double cost_sum = 0.0, lat_sum = 0.0, iotd_e = 0.0;
      double comp_j = 0.0, trans_j = 0.0;
      int n_local = 0, n_uav = 0, n_cloud = 0;
      for (std::size_t m = 0; m < count; ++m) {
        IotdParams ip{ctx.iotd_cpu_hz[m], ctx.iotd_tx_power_w[m], positions[m]};
        switch (nash.profile[m]) {
          case OffloadMode::local: {
            LocalTerms lt = local_terms(ctx.tasks[m], ip, radio);
            cost_sum +=
                slot_cost(OffloadMode::local, lt.latency_s, lt.energy_j, w);
            lat_sum += lt.latency_s;
            iotd_e += lt.energy_j;
            ++n_local;
            break;
          }
          case OffloadMode::uav: {
            double rate = alloc.bandwidth_fraction[m] * ctx.rate_full_bw_bps[m];
            UavTerms ut =
                uav_terms(ctx.tasks[m], rate,
                          alloc.compute_fraction[m] * uavp.max_compute_hz, ip,
                          uavp);
            cost_sum += slot_cost(OffloadMode::uav, ut.latency_s,
                                  ut.iotd_tx_energy_j, w);
            lat_sum += ut.latency_s;
            iotd_e += ut.iotd_tx_energy_j;
            comp_j += ut.uav_comp_energy_j;
            ++n_uav;
            break;
          }
          case OffloadMode::cloud: {
            if (sat_id < 0)
              throw std::logic_error("cloud decision without a satellite");
            double rate = alloc.bandwidth_fraction[m] * ctx.rate_full_bw_bps[m];
            CloudTerms ct =
                cloud_terms(ctx.tasks[m], rate, realized_rtt,
                            env.satellite(sat_id).energy_per_bit_j, ip);
            cost_sum += slot_cost(OffloadMode::cloud, ct.latency_s,
                                  ct.iotd_tx_energy_j, w);
            lat_sum += ct.latency_s;
            iotd_e += ct.iotd_tx_energy_j;
            trans_j += ct.uav_tx_energy_j;
            ++n_cloud;
            break;
          }
        }
      }
      double speed = distance(next_pos, uav_pos) / tau;
      UavEnergySplit split = slot_uav_energy(comp_j, trans_j, speed, prop, tau);
      if (!std::isfinite(cost_sum) || !std::isfinite(split.total_j) ||
          !std::isfinite(lat_sum))
        throw std::runtime_error("non-finite slot accounting");

      if (n_cloud > 0) bandit.record_feedback(sat_id, realized_rtt);

      SlotRecord rec;
      rec.slot = t;
      rec.total_cost = cost_sum;
      rec.mean_latency_s = lat_sum / static_cast<double>(count);
      rec.iotd_energy_j = iotd_e;
      rec.uav_energy_u1_j = split.e_u1_j;
      rec.uav_energy_u2_j = split.e_u2_j;
      rec.q_u1_j = queues.q_u1_j;
      rec.q_u2_j = queues.q_u2_j;
      rec.uav_x_m = uav_pos.x;
      rec.uav_y_m = uav_pos.y;
      rec.n_local = n_local;
      rec.n_uav = n_uav;
      rec.n_cloud = n_cloud;
      rec.satellite = sat_id;
      series.slots.push_back(rec);

      totals.cost += cost_sum;
      totals.latency += rec.mean_latency_s;
      totals.iotd_energy += iotd_e;
      totals.uav_energy_u1 += split.e_u1_j;
      totals.uav_energy_u2 += split.e_u2_j;

      queues = update_queues(queues, split.e_u1_j, split.e_u2_j, budgets);
      uav_pos = next_pos;
      profile = nash.profile;
      env.advance();

      if (hooks && hooks->on_slot_end) hooks->on_slot_end(t, bandit);
    } catch (const std::exception& ex) {
      std::ostringstream os;
      os << "run aborted at slot " << t << ": " << ex.what() << " [queues=("
         << queues.q_u1_j << ", " << queues.q_u2_j << "), uav=(" << uav_pos.x
         << ", " << uav_pos.y << ")]";
      throw std::runtime_error(os.str());
    }
  }

  series.final_q_u1_j = queues.q_u1_j;
  series.final_q_u2_j = queues.q_u2_j;
  series.finalize(totals);
  return series;
}

ScenarioConfig apply_axis(const ScenarioConfig& base, const std::string& axis,
                          double value) {
  ScenarioConfig c = base;
  if (axis == "task_size") {
    c.tasks.size_min_mbit = value;
    c.tasks.size_max_mbit = value;
  } else if (axis == "uav_compute") {
    c.uav.max_compute_ghz = value;
  } else if (axis == "v_coeff") {
    c.controller.v_coeff = value;
  } else {
    throw ConfigError("unknown sweep axis: " + axis);
  }
  return c;
}

std::vector<SweepPoint> sweep(const ScenarioConfig& base,
                              const std::string& axis,
                              const std::vector<double>& values,
                              const std::vector<std::string>& policies,
                              int seed_count) {
  if (seed_count < 1) throw ConfigError("sweep needs seed_count >= 1");
  if (values.empty() || policies.empty())
    throw ConfigError("sweep needs at least one value and one policy");

  std::vector<SweepPoint> out;
  std::vector<ScenarioConfig> jobs;
  for (double v : values) {
    ScenarioConfig with_value = apply_axis(base, axis, v);
    for (const std::string& pol : policies) {
      for (int s = 0; s < seed_count; ++s) {
        ScenarioConfig c = with_value;
        c.scenario.policy = pol;
        c.scenario.seed = base.scenario.seed + static_cast<std::uint64_t>(s);
        SweepPoint p;
        p.policy = pol;
        p.axis_value = v;
        p.seed = c.scenario.seed;
        out.push_back(std::move(p));
        jobs.push_back(std::move(c));
      }
    }
  }

  const std::size_t n_jobs = jobs.size();
  std::size_t n_threads = std::thread::hardware_concurrency();
  if (n_threads == 0) n_threads = 1;
  n_threads = std::min(n_threads, n_jobs);

  std::vector<std::exception_ptr> errors(n_jobs);
  if (n_threads <= 1) {
    for (std::size_t i = 0; i < n_jobs; ++i) {
      try {
        out[i].series = run(jobs[i]);
      } catch (...) {
        errors[i] = std::current_exception();
      }
    }
  } else {
    std::atomic<std::size_t> next{0};
    auto worker = [&] {
      for (;;) {
        std::size_t i = next.fetch_add(1);
        if (i >= n_jobs) return;
        try {
          out[i].series = run(jobs[i]);
        } catch (...) {
          errors[i] = std::current_exception();
        }
      }
    };
    std::vector<std::thread> pool;
    for (std::size_t i = 0; i < n_threads; ++i) pool.emplace_back(worker);
    for (auto& th : pool) th.join();
  }
  for (const auto& e : errors)
    if (e) std::rethrow_exception(e);
  return out;
}

}  // namespace sagimec
