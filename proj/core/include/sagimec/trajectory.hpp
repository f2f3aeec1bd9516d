#pragma once

#include <vector>

#include "sagimec/core_model.hpp"
#include "sagimec/vec2.hpp"

namespace sagimec {

// One UAV/cloud offloader as seen by the trajectory subproblem. comm_weight
// folds the allocated bandwidth share and the latency/energy weights;
// snr_numerator_m2 is the linear SNR at 1 m 3D distance with the LoS mix
// frozen at the current position.
struct TrajOffloader {
  Vec2 position_m{};
  double comm_weight = 0.0;
  double snr_numerator_m2 = 0.0;
};

struct TrajectoryProblem {
  Vec2 current_position_m{};
  std::vector<TrajOffloader> offloaders;
  double altitude_m = 100.0;
  double queue_weight_j = 0.0;  // propulsion backlog Q_u2
  double v_coeff = 10.0;
  PropulsionParams propulsion{};
  double slot_duration_s = 1.0;
  double max_speed_mps = 25.0;

  double reach_m() const { return max_speed_mps * slot_duration_s; }
};

struct ScaOptions {
  int max_outer_iterations = 30;
  double outer_rel_tol = 1e-4;
  int max_inner_iterations = 50;
  double inner_grad_tol = 1e-6;
};

// One SCA iterate with its slack variables at their tight values; at such a
// point the convexified objective equals the true reduced objective.
struct ScaState {
  Vec2 q{};
  double xi = 0.0;
  std::vector<double> zeta;
  double objective = 0.0;
  int iteration = 0;
};

struct ScaTrace {
  std::vector<Vec2> positions;
  std::vector<double> objectives;  // reduced objective per accepted iterate
};

// Spectral efficiency of an offloader's uplink at the candidate position.
double spectral_efficiency(Vec2 q_next, const TrajOffloader& off,
                           double altitude_m);

// Induced-velocity term of the propulsion model as a function of the
// candidate position (the tight slack value).
double induced_speed_term(Vec2 q_next, const TrajectoryProblem& prob);

// Exact slot objective with slacks eliminated: weighted communication cost
// plus backlog-weighted propulsion energy. Continuous on the whole disc.
double reduced_objective(Vec2 q_next, const TrajectoryProblem& prob);

// First-order expansion of xi^2 + v^2 at (local_point, xi_local): a global
// under-estimator, exact at the expansion point.
double taylor_bound_xi(Vec2 q_next, double xi, Vec2 local_point,
                       double xi_local, const TrajectoryProblem& prob);

// First-order expansion of the spectral efficiency in the squared distance:
// a global under-estimator, exact at the expansion point.
double taylor_bound_rate(Vec2 q_next, Vec2 local_point,
                         const TrajOffloader& off, double altitude_m);

ScaState make_sca_state(Vec2 q, const TrajectoryProblem& prob,
                        int iteration = 0);

// Convex subproblem objective at q with both slacks eliminated at their
// constrained optima (bandwidth slack at the rate bound, speed slack at the
// unique positive root of the induced-power constraint). +inf outside the
// expansion's bound domain.
double convexified_objective(Vec2 q, const ScaState& expansion,
                             const TrajectoryProblem& prob);

// Projected-gradient solve of the convexified subproblem around the given
// expansion state; never returns a worse point than the input.
ScaState solve_subproblem(const ScaState& state, const TrajectoryProblem& prob,
                          const ScaOptions& opts);

// Successive convex approximation from deterministic starts inside the
// reachable disc; the returned position never increases the reduced
// objective relative to q_init and respects the speed constraint.
Vec2 sca_optimize(const TrajectoryProblem& prob, Vec2 q_init,
                  const ScaOptions& opts = {}, ScaTrace* trace = nullptr);

// Uniform-grid argmin of the reduced objective over the reachable disc;
// always evaluates the disc centre, and refining the resolution by an
// integer factor never increases the returned objective.
Vec2 grid_oracle(const TrajectoryProblem& prob, double resolution_m);

}  // namespace sagimec
