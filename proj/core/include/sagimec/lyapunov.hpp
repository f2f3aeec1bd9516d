#pragma once

#include <algorithm>

namespace sagimec {

// Virtual energy backlogs; both zero at the start of a run.
struct VirtualQueues {
  double q_u1_j = 0.0;  // compute + transmit backlog
  double q_u2_j = 0.0;  // propulsion backlog
};

// Per-slot energy budgets; e_bar_u1 + e_bar_u2 must equal e_bar_total.
struct EnergyBudgets {
  double e_bar_u1_j = 73.0;
  double e_bar_u2_j = 167.0;
  double e_bar_total_j = 240.0;
};

struct ControllerParams {
  double v_coeff = 10.0;  // V, cost-vs-backlog tradeoff
};

inline VirtualQueues update_queues(const VirtualQueues& q,
                                   double consumed_u1_j, double consumed_u2_j,
                                   const EnergyBudgets& budgets) {
  return {std::max(q.q_u1_j + consumed_u1_j - budgets.e_bar_u1_j, 0.0),
          std::max(q.q_u2_j + consumed_u2_j - budgets.e_bar_u2_j, 0.0)};
}

// Per-slot quantity every decision layer minimizes.
inline double dpp_objective(const VirtualQueues& q, double v_coeff,
                            double e_u1_j, double e_u2_j, double total_cost) {
  return q.q_u1_j * e_u1_j + q.q_u2_j * e_u2_j + v_coeff * total_cost;
}

// Finite constant bounding the one-slot Lyapunov drift; diagnostic only.
inline double drift_bound_constant(const EnergyBudgets& budgets,
                                   double e_u1_max_j, double e_u2_max_j) {
  const double a = std::max(budgets.e_bar_u1_j * budgets.e_bar_u1_j,
                            (e_u1_max_j - budgets.e_bar_u1_j) *
                                (e_u1_max_j - budgets.e_bar_u1_j));
  const double b = std::max(budgets.e_bar_u2_j * budgets.e_bar_u2_j,
                            (e_u2_max_j - budgets.e_bar_u2_j) *
                                (e_u2_max_j - budgets.e_bar_u2_j));
  return 0.5 * a + 0.5 * b;
}

}  // namespace sagimec
