#include "sagimec/trajectory.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace sagimec {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();
const double kLog2E = 1.0 / std::log(2.0);

Vec2 project_disc(Vec2 q, Vec2 center, double radius) {
  const Vec2 d = q - center;
  const double n = d.norm();
  if (n <= radius || n == 0.0) {
    return q;
  }
  return center + (radius / n) * d;
}

// Smallest xi > 0 with b*xi^3 + a*xi^2 = c3 (b > 0, c3 > 0). The positive
// root is unique and the polynomial is increasing and convex at and past it,
// so Newton from any point at or right of the root converges monotonically.
double positive_cubic_root(double b, double a, double c3) {
  if (c3 <= 0.0) {
    return 0.0;
  }
  auto p = [&](double x) { return (b * x + a) * x * x - c3; };
  double hi = std::max(std::cbrt(c3 / b), 1e-9);
  while (p(hi) < 0.0) {
    hi *= 2.0;
  }
  double x = hi;
  for (int i = 0; i < 60; ++i) {
    const double px = p(x);
    const double dpx = x * (3.0 * b * x + 2.0 * a);
    if (dpx <= 0.0) {
      break;
    }
    const double next = x - px / dpx;
    if (!(next > 0.0) || std::abs(next - x) <= 1e-15 * x) {
      x = std::max(next, 0.0);
      break;
    }
    x = next;
  }
  return x;
}

// Expansion-dependent constants of the convexified subproblem.
struct Expansion {
  Vec2 q_u;        // current UAV position
  Vec2 q_i;        // expansion point
  double xi_i = 0.0;
  double v_i2 = 0.0;    // squared speed at the expansion point
  Vec2 lin_dir{};       // (2/tau^2) (q_i - q_u)
  double tau = 1.0;
  struct Off {
    Vec2 q_m{};
    double weight = 0.0;   // V * comm_weight
    double g_i = 0.0;      // spectral efficiency at the expansion point
    double kappa = 0.0;    // magnitude of the bound's slope in |q - q_m|^2
    double d_i2 = 0.0;     // squared distance at the expansion point
  };
  std::vector<Off> offs;
};

Expansion make_expansion(const ScaState& state, const TrajectoryProblem& prob) {
  Expansion e;
  e.q_u = prob.current_position_m;
  e.q_i = state.q;
  e.xi_i = state.xi;
  e.tau = prob.slot_duration_s;
  const Vec2 d = e.q_i - e.q_u;
  e.v_i2 = d.norm2() / (e.tau * e.tau);
  e.lin_dir = (2.0 / (e.tau * e.tau)) * d;
  e.offs.reserve(prob.offloaders.size());
  const double h2 = prob.altitude_m * prob.altitude_m;
  for (const TrajOffloader& off : prob.offloaders) {
    Expansion::Off o;
    o.q_m = off.position_m;
    o.weight = prob.v_coeff * off.comm_weight;
    o.d_i2 = (e.q_i - off.position_m).norm2();
    o.g_i = std::log2(1.0 + off.snr_numerator_m2 / (h2 + o.d_i2));
    o.kappa = off.snr_numerator_m2 * kLog2E /
              ((off.snr_numerator_m2 + h2 + o.d_i2) * (h2 + o.d_i2));
    e.offs.push_back(o);
  }
  return e;
}

// Linear part of the xi bound: f^(i)(q, xi) = A(q) + 2 xi_i xi with
// A(q) = -xi_i^2 + v_i^2 + lin_dir . (q - q_i).
double bound_linear_const(const Expansion& e, Vec2 q) {
  return -e.xi_i * e.xi_i + e.v_i2 + e.lin_dir.dot(q - e.q_i);
}

double convexified_eval(Vec2 q, const Expansion& e,
                        const TrajectoryProblem& prob) {
  double comm = 0.0;
  for (const Expansion::Off& o : e.offs) {
    const double g = o.g_i - o.kappa * ((q - o.q_m).norm2() - o.d_i2);
    if (g <= 1e-12) {
      return kInf;
    }
    comm += o.weight / g;
  }
  const double v = (q - e.q_u).norm() / e.tau;
  const PropulsionParams& pp = prob.propulsion;
  const double xi =
      positive_cubic_root(2.0 * e.xi_i, bound_linear_const(e, q), pp.c3);
  const double power =
      pp.c1_w * (1.0 + 3.0 * v * v / (pp.tip_speed_mps * pp.tip_speed_mps)) +
      pp.c2_w * xi + pp.c4 * v * v * v;
  return comm + prob.queue_weight_j * power * e.tau;
}

Vec2 convexified_grad(Vec2 q, const Expansion& e,
                      const TrajectoryProblem& prob) {
  Vec2 grad{};
  for (const Expansion::Off& o : e.offs) {
    const double g = o.g_i - o.kappa * ((q - o.q_m).norm2() - o.d_i2);
    const double scale = o.weight / (g * g) * o.kappa * 2.0;
    grad = grad + scale * (q - o.q_m);
  }
  const PropulsionParams& pp = prob.propulsion;
  const Vec2 d = q - e.q_u;
  const double nd = d.norm();
  const double tau2 = e.tau * e.tau;
  // C1 and C4 pieces, written so the v = 0 limit is explicit.
  const double radial =
      prob.queue_weight_j * e.tau *
      (6.0 * pp.c1_w / (pp.tip_speed_mps * pp.tip_speed_mps * tau2) +
       3.0 * pp.c4 * nd / (tau2 * e.tau));
  grad = grad + radial * d;
  if (pp.c3 > 0.0 && pp.c2_w > 0.0) {
    const double a = bound_linear_const(e, q);
    const double xi = positive_cubic_root(2.0 * e.xi_i, a, pp.c3);
    const double dp_dxi = xi * (6.0 * e.xi_i * xi + 2.0 * a);
    if (xi > 0.0 && dp_dxi > 1e-300) {
      // Implicit differentiation of the root in the linear coefficient.
      const double dxi_da = -xi * xi / dp_dxi;
      grad = grad + (prob.queue_weight_j * e.tau * pp.c2_w * dxi_da) *
                        e.lin_dir;
    }
  }
  return grad;
}

Vec2 inner_descent(Vec2 x0, double f0, const Expansion& e,
                   const TrajectoryProblem& prob, const ScaOptions& opts,
                   double* f_out) {
  const Vec2 center = prob.current_position_m;
  const double radius = prob.reach_m();
  Vec2 x = x0;
  double fx = f0;
  double step = 0.25 * std::max(radius, 1e-9);
  for (int it = 0; it < opts.max_inner_iterations; ++it) {
    const Vec2 g = convexified_grad(x, e, prob);
    const double gnorm = g.norm();
    if (gnorm * std::max(radius, 1.0) <
        opts.inner_grad_tol * (1.0 + std::abs(fx))) {
      break;
    }
    step = std::min(step * 2.0, 1e6 * std::max(radius, 1e-9) / gnorm);
    bool accepted = false;
    for (int bt = 0; bt < 60; ++bt) {
      const Vec2 cand = project_disc(x - step * g, center, radius);
      const Vec2 dx = x - cand;
      const double decrease = g.dot(dx);
      const double fc = convexified_eval(cand, e, prob);
      if (std::isfinite(fc) && fc <= fx - 1e-4 * decrease &&
          (dx.x != 0.0 || dx.y != 0.0)) {
        x = cand;
        fx = fc;
        accepted = true;
        break;
      }
      step *= 0.5;
    }
    if (!accepted) {
      break;
    }
  }
  *f_out = fx;
  return x;
}

}  // namespace

double spectral_efficiency(Vec2 q_next, const TrajOffloader& off,
                           double altitude_m) {
  const double d2 = (q_next - off.position_m).norm2();
  return std::log2(1.0 +
                   off.snr_numerator_m2 / (altitude_m * altitude_m + d2));
}

double induced_speed_term(Vec2 q_next, const TrajectoryProblem& prob) {
  const double tau = prob.slot_duration_s;
  const double v2 = (q_next - prob.current_position_m).norm2() / (tau * tau);
  return std::sqrt(std::sqrt(prob.propulsion.c3 + v2 * v2 / 4.0) - v2 / 2.0);
}

double reduced_objective(Vec2 q_next, const TrajectoryProblem& prob) {
  double comm = 0.0;
  for (const TrajOffloader& off : prob.offloaders) {
    comm += prob.v_coeff * off.comm_weight /
            spectral_efficiency(q_next, off, prob.altitude_m);
  }
  const double speed =
      (q_next - prob.current_position_m).norm() / prob.slot_duration_s;
  return comm + prob.queue_weight_j *
                    propulsion_power_w(speed, prob.propulsion) *
                    prob.slot_duration_s;
}

double taylor_bound_xi(Vec2 q_next, double xi, Vec2 local_point,
                       double xi_local, const TrajectoryProblem& prob) {
  const double tau2 = prob.slot_duration_s * prob.slot_duration_s;
  const Vec2 d_local = local_point - prob.current_position_m;
  return xi_local * xi_local + 2.0 * xi_local * (xi - xi_local) +
         d_local.norm2() / tau2 +
         (2.0 / tau2) * d_local.dot(q_next - local_point);
}

double taylor_bound_rate(Vec2 q_next, Vec2 local_point,
                         const TrajOffloader& off, double altitude_m) {
  const double h2 = altitude_m * altitude_m;
  const double d_i2 = (local_point - off.position_m).norm2();
  const double g_i = std::log2(1.0 + off.snr_numerator_m2 / (h2 + d_i2));
  const double kappa = off.snr_numerator_m2 * kLog2E /
                       ((off.snr_numerator_m2 + h2 + d_i2) * (h2 + d_i2));
  return g_i - kappa * ((q_next - off.position_m).norm2() - d_i2);
}

ScaState make_sca_state(Vec2 q, const TrajectoryProblem& prob, int iteration) {
  ScaState state;
  state.q = q;
  state.xi = induced_speed_term(q, prob);
  state.zeta.reserve(prob.offloaders.size());
  for (const TrajOffloader& off : prob.offloaders) {
    state.zeta.push_back(spectral_efficiency(q, off, prob.altitude_m));
  }
  state.objective = reduced_objective(q, prob);
  state.iteration = iteration;
  return state;
}

double convexified_objective(Vec2 q, const ScaState& expansion,
                             const TrajectoryProblem& prob) {
  const Expansion e = make_expansion(expansion, prob);
  return convexified_eval(q, e, prob);
}

ScaState solve_subproblem(const ScaState& state, const TrajectoryProblem& prob,
                          const ScaOptions& opts) {
  const Expansion e = make_expansion(state, prob);
  double fx = 0.0;
  const Vec2 q = inner_descent(state.q, state.objective, e, prob, opts, &fx);
  // The surrogate upper-bounds the true objective and touches it at the
  // expansion point, so surrogate descent implies true descent; re-tighten
  // the slacks at the new point so the returned state keeps the invariant.
  if (reduced_objective(q, prob) > state.objective) {
    return state;  // safe fallback: never worse than the incoming iterate
  }
  return make_sca_state(q, prob, state.iteration + 1);
}

namespace {

Vec2 sca_chain(Vec2 q_start, const TrajectoryProblem& prob,
               const ScaOptions& opts, double* obj_out, ScaTrace* trace) {
  ScaState state = make_sca_state(q_start, prob, 0);
  if (trace != nullptr) {
    trace->positions.push_back(state.q);
    trace->objectives.push_back(state.objective);
  }
  for (int it = 0; it < opts.max_outer_iterations; ++it) {
    const ScaState next = solve_subproblem(state, prob, opts);
    // solve_subproblem never returns a worse true objective; a zero step
    // means the expansion point is already stationary for the surrogate.
    const double delta = state.objective - next.objective;
    if (delta < 0.0) {
      break;
    }
    state = next;
    if (trace != nullptr) {
      trace->positions.push_back(state.q);
      trace->objectives.push_back(state.objective);
    }
    if (delta <
        opts.outer_rel_tol * std::max(std::abs(state.objective), 1e-12)) {
      break;
    }
  }
  *obj_out = state.objective;
  return state.q;
}

}  // namespace

Vec2 sca_optimize(const TrajectoryProblem& prob, Vec2 q_init,
                  const ScaOptions& opts, ScaTrace* trace) {
  const Vec2 center = prob.current_position_m;
  const double radius = prob.reach_m();
  q_init = project_disc(q_init, center, radius);

  // Hover is a stationary point of the propulsion power (its derivative
  // vanishes at zero speed while the power dips at intermediate speed), so a
  // single chain started there can stall. Deterministic extra starts cover
  // the propulsion ring and the offloader attraction basins; each chain
  // descends monotonically, and the best endpoint wins.
  std::vector<Vec2> starts;
  starts.push_back(q_init);
  starts.push_back(center);
  if (radius > 0.0) {
    double best_speed = 0.0;
    double best_power = propulsion_power_w(0.0, prob.propulsion);
    for (int i = 1; i <= 100; ++i) {
      const double v = prob.max_speed_mps * static_cast<double>(i) / 100.0;
      const double p = propulsion_power_w(v, prob.propulsion);
      if (p < best_power) {
        best_power = p;
        best_speed = v;
      }
    }
    const double ring = best_speed * prob.slot_duration_s;
    if (ring > 1e-9) {
      for (int k = 0; k < 6; ++k) {
        const double angle = 2.0 * 3.14159265358979323846 * k / 6.0;
        starts.push_back(center +
                         Vec2{ring * std::cos(angle), ring * std::sin(angle)});
      }
    }
    // Directions toward the strongest offloaders, and their weighted pull.
    std::vector<std::size_t> order(prob.offloaders.size());
    for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
    std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
      const double wa = prob.offloaders[a].comm_weight;
      const double wb = prob.offloaders[b].comm_weight;
      return wa != wb ? wa > wb : a < b;
    });
    Vec2 pull{};
    double pull_weight = 0.0;
    for (std::size_t i = 0; i < order.size(); ++i) {
      const TrajOffloader& off = prob.offloaders[order[i]];
      pull = pull + off.comm_weight * off.position_m;
      pull_weight += off.comm_weight;
      if (i < 6) {
        const Vec2 d = off.position_m - center;
        const double dist = d.norm();
        if (dist > 1e-9) {
          starts.push_back(center + (std::min(radius, dist) / dist) * d);
        }
      }
    }
    if (pull_weight > 0.0) {
      const Vec2 centroid = (1.0 / pull_weight) * pull;
      const Vec2 d = centroid - center;
      const double dist = d.norm();
      if (dist > 1e-9) {
        starts.push_back(center + (std::min(radius, dist) / dist) * d);
        starts.push_back(center + (0.5 * std::min(radius, dist) / dist) * d);
      }
    }
  }

  Vec2 best_q = q_init;
  double best_obj = reduced_objective(q_init, prob);
  ScaTrace best_trace;
  for (std::size_t i = 0; i < starts.size(); ++i) {
    bool duplicate = false;
    for (std::size_t j = 0; j < i; ++j) {
      if ((starts[i] - starts[j]).norm() < 1e-9) {
        duplicate = true;
        break;
      }
    }
    if (duplicate) {
      continue;
    }
    ScaTrace chain_trace;
    double obj = 0.0;
    const Vec2 q = sca_chain(starts[i], prob, opts,
                             &obj, trace != nullptr ? &chain_trace : nullptr);
    if (obj < best_obj) {
      best_obj = obj;
      best_q = q;
      if (trace != nullptr) {
        best_trace = std::move(chain_trace);
      }
    }
  }
  if (trace != nullptr) {
    if (best_trace.positions.empty()) {
      // No chain beat the initial point; report the trivial chain.
      best_trace.positions.push_back(q_init);
      best_trace.objectives.push_back(best_obj);
    }
    *trace = std::move(best_trace);
  }
  return best_q;
}

Vec2 grid_oracle(const TrajectoryProblem& prob, double resolution_m) {
  const Vec2 center = prob.current_position_m;
  const double radius = prob.reach_m();
  Vec2 best = center;
  double best_obj = reduced_objective(center, prob);
  const int n = static_cast<int>(std::floor(radius / resolution_m));
  for (int i = -n; i <= n; ++i) {
    for (int j = -n; j <= n; ++j) {
      const Vec2 p =
          center + Vec2{i * resolution_m, j * resolution_m};
      if ((p - center).norm() > radius + 1e-12) {
        continue;
      }
      const double obj = reduced_objective(p, prob);
      if (obj < best_obj) {
        best_obj = obj;
        best = p;
      }
    }
  }
  return best;
}

}  // namespace sagimec
