// Release gate: one [PASS]/[FAIL] line per criterion, every criterion runs
// even after a failure, exit 1 if any line failed. Tolerances and time
// budgets are part of each criterion.
#include <chrono>
#include <cmath>
#include <cstdarg>
#include <cstdio>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "sagimec/engine.hpp"
#include "support.hpp"

using namespace sagimec;
using namespace testsupport;

namespace {

int g_failures = 0;

void report(const char* id, const char* name, bool ok, const std::string& detail) {
  std::printf("[%s] %-3s %-34s %s\n", ok ? "PASS" : "FAIL", id, name,
              detail.c_str());
  std::fflush(stdout);
  if (!ok) ++g_failures;
}

double now_s() {
  using clock = std::chrono::steady_clock;
  return std::chrono::duration<double>(clock::now().time_since_epoch()).count();
}

std::string fmt(const char* f, ...) {
  char buf[512];
  va_list ap;
  va_start(ap, f);
  std::vsnprintf(buf, sizeof buf, f, ap);
  va_end(ap);
  return buf;
}

Vec2 random_in_disc(std::mt19937_64& rng, Vec2 center, double radius) {
  std::uniform_real_distribution<double> u01(0.0, 1.0);
  double ang = 2.0 * M_PI * u01(rng);
  double r = radius * std::sqrt(u01(rng));
  return {center.x + r * std::cos(ang), center.y + r * std::sin(ang)};
}

// Joint admissibility: every offloader in the profile meets its deadline.
bool profile_ok(const OffloadProfile& q, const SlotContext& ctx) {
  AllocationResult alloc = allocation_for(q, ctx);
  for (std::size_t i = 0; i < q.size(); ++i) {
    if (q[i] == OffloadMode::local) continue;
    if (offload_latency(i, q, alloc, ctx) >
        ctx.tasks[i].deadline_s + ctx.feasibility_tol)
      return false;
  }
  return true;
}

// --- 1: every unilateral utility change equals the potential change --------

void criterion_potential_exactness() {
  const double t0 = now_s();
  std::mt19937_64 rng(101);
  const OffloadMode modes[3] = {OffloadMode::local, OffloadMode::uav,
                                OffloadMode::cloud};
  double worst = 0.0;
  long long checked = 0;
  for (int rep = 0; rep < 1000; ++rep) {
    CtxKnobs k;
    k.iotds = 4;
    k.satellites = 1 + rep % 3;
    k.tight_deadlines = rep % 2 == 1;
    SlotContext ctx = random_ctx(rng, k);
    double pot[81];
    OffloadProfile q(4);
    for (int idx = 0; idx < 81; ++idx) {
      int v = idx;
      for (int m = 0; m < 4; ++m, v /= 3) q[m] = modes[v % 3];
      pot[idx] = potential(q, ctx);
    }
    for (int idx = 0; idx < 81; ++idx) {
      int v = idx;
      for (int m = 0; m < 4; ++m, v /= 3) q[m] = modes[v % 3];
      int pow3 = 1;
      for (int m = 0; m < 4; ++m, pow3 *= 3) {
        const int cur = (idx / pow3) % 3;
        const double u_cur = utility(m, q, ctx);
        for (int alt = 0; alt < 3; ++alt) {
          if (alt == cur) continue;
          const OffloadMode keep = q[m];
          q[m] = modes[alt];
          const double du = utility(m, q, ctx) - u_cur;
          const double dphi = pot[idx + (alt - cur) * pow3] - pot[idx];
          q[m] = keep;
          worst = std::max(worst,
                           std::abs(du - dphi) / std::max(1.0, std::abs(du)));
          ++checked;
        }
      }
    }
  }
  const double el = now_s() - t0;
  report("1", "potential-exactness",
         worst <= 1e-9 && el < 10.0,
         fmt("deviations=%lld worst_rel=%.3g elapsed=%.2fs (<10s)", checked,
             worst, el));
}

// --- 2: closed-form allocation matches a derivative-free simplex oracle ----

void criterion_allocation_oracle() {
  const double t0 = now_s();
  std::mt19937_64 rng(202);
  std::uniform_int_distribution<int> unu(0, 3), unc(0, 2);
  double worst = 0.0;
  for (int rep = 0; rep < 100; ++rep) {
    int n_uav = 0, n_cloud = 0;
    do {
      n_uav = unu(rng);
      n_cloud = unc(rng);
    } while (n_uav + n_cloud == 0);
    CtxKnobs k;
    k.iotds = n_uav + n_cloud + 1;  // one local bystander
    SlotContext ctx = random_ctx(rng, k);
    OffloadProfile q(ctx.size(), OffloadMode::local);
    for (int i = 0; i < n_uav; ++i) q[i] = OffloadMode::uav;
    for (int i = 0; i < n_cloud; ++i) q[n_uav + i] = OffloadMode::cloud;

    const AllocationResult alloc = optimal_allocation(q, ctx);
    const AllocationCoeffs co = allocation_coeffs(q, ctx);
    std::vector<double> z, w;
    for (std::size_t i : co.a_idx) z.push_back(alloc.compute_fraction[i]);
    for (std::size_t i : co.b_idx) w.push_back(alloc.bandwidth_fraction[i]);
    const double j_closed = allocation_objective(co.a, z, co.b, w);
    const double j_oracle = allocation_objective(co.a, simplex_oracle(co.a),
                                                 co.b, simplex_oracle(co.b));
    worst = std::max(worst, std::abs(j_closed - j_oracle) /
                                std::max(1.0, std::abs(j_oracle)));
  }
  const double el = now_s() - t0;
  report("2", "allocation-oracle-equivalence",
         worst <= 1e-6 && el < 60.0,
         fmt("instances=100 worst_rel=%.3g elapsed=%.2fs (<60s)", worst, el));
}

// --- 3: relay selection equals exhaustive score enumeration, exactly -------

void criterion_satellite_oracle() {
  std::mt19937_64 rng(303);
  int mismatches = 0;
  for (int rep = 0; rep < 1000; ++rep) {
    CtxKnobs k;
    k.satellites = 1 + rep % 8;
    k.q_u1_max = rep % 5 == 0 ? 0.0 : 200.0;  // exercise the pure-rtt corner
    SlotContext ctx = random_ctx(rng, k);
    if (optimal_satellite(ctx) != satellite_oracle(ctx)) ++mismatches;
  }
  report("3", "satellite-selection-oracle", mismatches == 0,
         fmt("menus=1000 mismatches=%d", mismatches));
}

// --- 4: per-slot equilibria admit no improving admissible deviation --------

void criterion_equilibrium_audit() {
  ScenarioConfig cfg;
  cfg.scenario.iotd_count = 10;
  cfg.scenario.horizon_slots = 1000;
  cfg.scenario.seed = 7;
  long long slots = 0, deviations = 0;
  int violations = 0, infeasible_slots = 0;
  RunHooks hooks;
  hooks.on_decision = [&](int, const SlotContext& ctx, const NashResult& nash,
                          const AllocationResult&, int) {
    ++slots;
    if (!profile_ok(nash.profile, ctx)) ++infeasible_slots;
    const OffloadMode modes[3] = {OffloadMode::local, OffloadMode::uav,
                                  OffloadMode::cloud};
    OffloadProfile q = nash.profile;
    for (std::size_t m = 0; m < q.size(); ++m) {
      const OffloadMode cur = q[m];
      const double u_cur = utility(m, q, ctx);
      const double margin =
          (ctx.improvement_tol + 1e-12) * std::max(1.0, std::abs(u_cur));
      for (OffloadMode alt : modes) {
        if (alt == cur) continue;
        if (alt == OffloadMode::cloud &&
            (!ctx.allow_cloud || ctx.satellites.empty()))
          continue;
        q[m] = alt;
        const bool admissible =
            alt == OffloadMode::local || profile_ok(q, ctx);
        if (admissible) {
          ++deviations;
          if (utility(m, q, ctx) < u_cur - margin) ++violations;
        }
        q[m] = cur;
      }
    }
  };
  run(cfg, &hooks);
  report("4", "equilibrium-no-improving-deviation",
         slots == 1000 && violations == 0 && infeasible_slots == 0,
         fmt("slots=%lld deviations=%lld improving=%d infeasible=%d", slots,
             deviations, violations, infeasible_slots));
}

// --- 5: trajectory solver within 1% of a fine grid, descending iterates ----

void criterion_trajectory_quality() {
  const double t0 = now_s();
  std::mt19937_64 rng(505);
  double worst_gap = 0.0, worst_ascent = 0.0;
  for (int rep = 0; rep < 50; ++rep) {
    TrajectoryProblem p = random_traj(rng, 5);
    ScaTrace trace;
    const Vec2 qs = sca_optimize(p, p.current_position_m, {}, &trace);
    const double js = reduced_objective(qs, p);
    const Vec2 qg = grid_oracle(p, p.max_speed_mps * p.slot_duration_s / 200.0);
    const double jg = reduced_objective(qg, p);
    worst_gap = std::max(worst_gap,
                         (js - jg - 1e-12 * std::max(1.0, jg)) /
                             std::max(1e-300, jg));
    for (std::size_t i = 1; i < trace.objectives.size(); ++i) {
      const double prev = trace.objectives[i - 1];
      worst_ascent = std::max(
          worst_ascent, (trace.objectives[i] - prev) /
                            std::max(1.0, std::abs(prev)));
    }
  }
  const double el = now_s() - t0;
  report("5", "trajectory-sca-vs-grid",
         worst_gap <= 0.01 && worst_ascent <= 1e-9 && el < 120.0,
         fmt("instances=50 worst_gap=%.3g%% worst_ascent=%.3g elapsed=%.1fs "
             "(<120s)",
             100.0 * worst_gap, worst_ascent, el));
}

// --- 6: first-order surrogates under-estimate everywhere, exact at base ----

void criterion_taylor_bounds() {
  std::mt19937_64 rng(606);
  double worst_over = 0.0, worst_base = 0.0;
  for (int rep = 0; rep < 50; ++rep) {
    TrajectoryProblem p = random_traj(rng, 5);
    const Vec2 c = p.current_position_m;
    const Vec2 q_e = random_in_disc(rng, c, p.reach_m());
    const double xi_e = induced_speed_term(q_e, p);

    auto speed_truth = [&](Vec2 q, double xi) {
      const double v2 =
          (q - c).norm2() / (p.slot_duration_s * p.slot_duration_s);
      return xi * xi + v2;
    };
    const double base_truth = speed_truth(q_e, xi_e);
    worst_base = std::max(
        worst_base, std::abs(taylor_bound_xi(q_e, xi_e, q_e, xi_e, p) -
                             base_truth) /
                        std::max(1.0, base_truth));
    for (const TrajOffloader& off : p.offloaders) {
      const double truth = spectral_efficiency(q_e, off, p.altitude_m);
      worst_base = std::max(
          worst_base,
          std::abs(taylor_bound_rate(q_e, q_e, off, p.altitude_m) - truth) /
              std::max(1.0, truth));
    }

    for (int s = 0; s < 1000; ++s) {
      const Vec2 q = random_in_disc(rng, c, p.reach_m());
      const double xi = induced_speed_term(q, p);
      const double truth = speed_truth(q, xi);
      worst_over = std::max(
          worst_over, (taylor_bound_xi(q, xi, q_e, xi_e, p) - truth) /
                          std::max(1.0, truth));
      for (const TrajOffloader& off : p.offloaders) {
        const double rt = spectral_efficiency(q, off, p.altitude_m);
        worst_over = std::max(
            worst_over, (taylor_bound_rate(q, q_e, off, p.altitude_m) - rt) /
                            std::max(1.0, rt));
      }
    }
  }
  report("6", "taylor-underestimators",
         worst_over <= 1e-9 && worst_base <= 1e-9,
         fmt("instances=50 samples=1000 worst_over=%.3g worst_at_base=%.3g",
             worst_over, worst_base));
}

// --- 7: long-run energy compliance and queue stability at defaults ---------

void criterion_energy_compliance() {
  const double t0 = now_s();
  ScenarioConfig cfg;
  cfg.scenario.horizon_slots = 10000;
  const EnergyBudgets b = cfg.energy_budgets();
  double energy_sum = 0.0, worst_q1 = 0.0, worst_q2 = 0.0;
  for (int seed = 1; seed <= 20; ++seed) {
    cfg.scenario.seed = static_cast<std::uint64_t>(seed);
    MetricsSeries s = run(cfg);
    energy_sum += s.mean_uav_energy_j;
    worst_q1 = std::max(worst_q1, s.final_q_u1_j / 10000.0);
    worst_q2 = std::max(worst_q2, s.final_q_u2_j / 10000.0);
  }
  const double mean_e = energy_sum / 20.0;
  const double el = now_s() - t0;
  const bool ok = mean_e <= b.e_bar_total_j * 1.01 &&
                  worst_q1 < 0.01 * b.e_bar_u1_j &&
                  worst_q2 < 0.01 * b.e_bar_u2_j;
  report("7", "energy-budget-compliance", ok,
         fmt("mean_uav_e=%.2f (<=%.1f) worst_q1/T=%.4f (<%.2f) "
             "worst_q2/T=%.4f (<%.2f) elapsed=%.0fs",
             mean_e, b.e_bar_total_j * 1.01, worst_q1, 0.01 * b.e_bar_u1_j,
             worst_q2, 0.01 * b.e_bar_u2_j, el));
}

// --- 8: the latency learner locks onto the better of two relays ------------

void criterion_bandit_best_arm() {
  const double lo = 15e-8, hi = 35e-8;  // shared bounds, width 20e-8
  std::vector<SatelliteSpec> sats(2);
  sats[0] = {0, lo, hi, 1e-7};
  sats[1] = {1, lo, hi, 1e-7};
  const double mean0 = 21e-8, mean1 = 27e-8, sigma = 2e-8;  // gap 0.3 * width
  long long best_picks = 0, quarter = 0;
  for (int seed = 0; seed < 20; ++seed) {
    std::mt19937_64 rng(1000 + seed);
    std::normal_distribution<double> n0(mean0, sigma), n1(mean1, sigma);
    auto draw = [&](int arm) {
      for (;;) {
        double x = arm == 0 ? n0(rng) : n1(rng);
        if (x >= lo && x <= hi) return x;
      }
    };
    BanditStats stats(sats, BonusLog::natural);
    const std::vector<int> visible{0, 1};
    for (int t = 1; t <= 10000; ++t) {
      stats.tick_visibility(t, visible);
      const int arm =
          stats.predict_rtt(0, t) <= stats.predict_rtt(1, t) ? 0 : 1;
      stats.record_feedback(arm, draw(arm));
      if (t > 7500) {
        ++quarter;
        if (arm == 0) ++best_picks;
      }
    }
  }
  const double share =
      static_cast<double>(best_picks) / static_cast<double>(quarter);
  report("8", "bandit-best-arm-share", share > 0.9,
         fmt("share=%.4f (>0.9) over %lld final-quarter slots, 20 seeds",
             share, quarter));
}

// --- 9: orderings and monotone trends on paired-seed sweeps ----------------

struct PolicyMean {
  double tic = 0.0, uav_e = 0.0, latency = 0.0, iotd_e = 0.0;
  int n = 0;
};

PolicyMean mean_of(const std::vector<SweepPoint>& pts, const std::string& pol,
                   double value) {
  PolicyMean m;
  for (const SweepPoint& p : pts) {
    if (p.policy != pol || p.axis_value != value) continue;
    m.tic += p.series.tic;
    m.uav_e += p.series.mean_uav_energy_j;
    m.latency += p.series.mean_latency_s;
    m.iotd_e += p.series.mean_iotd_energy_j;
    ++m.n;
  }
  m.tic /= m.n;
  m.uav_e /= m.n;
  m.latency /= m.n;
  m.iotd_e /= m.n;
  return m;
}

void criterion_trends() {
  const ScenarioConfig base;
  const double v_default = base.controller.v_coeff;

  double t0 = now_s();
  const std::vector<SweepPoint> pol_sweep =
      sweep(base, "v_coeff", {v_default},
            {"odoa", "uac", "era", "eps_greedy", "ocq"}, 20);
  const double el_a = now_s() - t0;
  const PolicyMean odoa = mean_of(pol_sweep, "odoa", v_default);
  const PolicyMean uac = mean_of(pol_sweep, "uac", v_default);
  const PolicyMean era = mean_of(pol_sweep, "era", v_default);
  const PolicyMean eps = mean_of(pol_sweep, "eps_greedy", v_default);
  const PolicyMean ocq = mean_of(pol_sweep, "ocq", v_default);
  report("9a", "policy-ordering",
         odoa.tic <= uac.tic && odoa.tic <= era.tic && odoa.tic <= eps.tic &&
             odoa.tic <= ocq.tic && el_a < 600.0,
         fmt("tic odoa=%.4f uac=%.4f era=%.4f eps=%.4f ocq=%.4f "
             "(ocq margin %+.4f) elapsed=%.0fs (<600s)",
             odoa.tic, uac.tic, era.tic, eps.tic, ocq.tic,
             ocq.tic - odoa.tic, el_a));

  t0 = now_s();
  const std::vector<SweepPoint> size_sweep =
      sweep(base, "task_size", {1.0, 2.0, 3.0}, {"odoa"}, 20);
  const double el_b = now_s() - t0;
  PolicyMean s1 = mean_of(size_sweep, "odoa", 1.0);
  PolicyMean s2 = mean_of(size_sweep, "odoa", 2.0);
  PolicyMean s3 = mean_of(size_sweep, "odoa", 3.0);
  const bool mono =
      s1.tic <= s2.tic && s2.tic <= s3.tic && s1.latency <= s2.latency &&
      s2.latency <= s3.latency && s1.iotd_e <= s2.iotd_e &&
      s2.iotd_e <= s3.iotd_e && s1.uav_e <= s2.uav_e && s2.uav_e <= s3.uav_e;
  report("9b", "task-size-monotonicity", mono && el_b < 600.0,
         fmt("tic %.2f/%.2f/%.2f lat %.3f/%.3f/%.3f uav_e %.1f/%.1f/%.1f "
             "elapsed=%.0fs (<600s)",
             s1.tic, s2.tic, s3.tic, s1.latency, s2.latency, s3.latency,
             s1.uav_e, s2.uav_e, s3.uav_e, el_b));

  t0 = now_s();
  const std::vector<SweepPoint> comp_sweep =
      sweep(base, "uav_compute", {10.0, 20.0, 30.0}, {"odoa"}, 20);
  const double el_c = now_s() - t0;
  PolicyMean f10 = mean_of(comp_sweep, "odoa", 10.0);
  PolicyMean f20 = mean_of(comp_sweep, "odoa", 20.0);
  PolicyMean f30 = mean_of(comp_sweep, "odoa", 30.0);
  report("9c", "compute-monotonicity",
         f10.tic >= f20.tic && f20.tic >= f30.tic && el_c < 600.0,
         fmt("tic %.4f >= %.4f >= %.4f elapsed=%.0fs (<600s)", f10.tic,
             f20.tic, f30.tic, el_c));

  report("9d", "baseline-energy-ordering", ocq.uav_e > odoa.uav_e,
         fmt("uav_e ocq=%.2f > odoa=%.2f", ocq.uav_e, odoa.uav_e));
}

// --- 10: identical (config, seed) runs emit byte-identical CSV -------------

void criterion_determinism() {
  ScenarioConfig cfg;
  cfg.scenario.horizon_slots = 500;
  cfg.scenario.seed = 3;
  std::ostringstream a, b;
  write_csv(run(cfg), a);
  write_csv(run(cfg), b);
  report("10", "csv-determinism", a.str() == b.str(),
         fmt("bytes=%zu identical=%s", a.str().size(),
             a.str() == b.str() ? "yes" : "no"));
}

}  // namespace

int main() {
  criterion_potential_exactness();
  criterion_allocation_oracle();
  criterion_satellite_oracle();
  criterion_equilibrium_audit();
  criterion_trajectory_quality();
  criterion_taylor_bounds();
  criterion_energy_compliance();
  criterion_bandit_best_arm();
  criterion_trends();
  criterion_determinism();
  std::printf("%s: %d criterion line(s) failed\n",
              g_failures == 0 ? "ACCEPTANCE PASSED" : "ACCEPTANCE FAILED",
              g_failures);
  return g_failures == 0 ? 0 : 1;
}
