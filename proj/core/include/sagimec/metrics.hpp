#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "sagimec/config.hpp"

namespace sagimec {

// One row of the per-slot CSV. Queue columns are the values in force when
// the slot's decisions were made; uav_x/uav_y is the position the slot's
// costs were charged at (the slot-start position).
struct SlotRecord {
  int slot = 0;
  double total_cost = 0.0;
  double mean_latency_s = 0.0;
  double iotd_energy_j = 0.0;
  double uav_energy_u1_j = 0.0;
  double uav_energy_u2_j = 0.0;
  double q_u1_j = 0.0;
  double q_u2_j = 0.0;
  double uav_x_m = 0.0;
  double uav_y_m = 0.0;
  int n_local = 0;
  int n_uav = 0;
  int n_cloud = 0;
  int satellite = -1;  // -1 when no satellite was selected this slot
};

// Sums the engine accumulates while running; finalize() recomputes them from
// the records and refuses to produce a summary if the two disagree.
struct RunningTotals {
  double cost = 0.0;
  double latency = 0.0;
  double iotd_energy = 0.0;
  double uav_energy_u1 = 0.0;
  double uav_energy_u2 = 0.0;
};

struct MetricsSeries {
  std::vector<SlotRecord> slots;
  double final_q_u1_j = 0.0;  // queue values after the last slot's update
  double final_q_u2_j = 0.0;

  // Filled by finalize().
  double tic = 0.0;  // time-average total cost
  double mean_latency_s = 0.0;
  double mean_iotd_energy_j = 0.0;
  double mean_uav_energy_j = 0.0;
  double mean_uav_energy_u1_j = 0.0;
  double mean_uav_energy_u2_j = 0.0;
  long long total_local = 0;
  long long total_uav = 0;
  long long total_cloud = 0;
  bool finalized = false;

  void finalize(const RunningTotals& running);
};

std::string csv_header();
void write_csv(const MetricsSeries& series, std::ostream& out);

nlohmann::ordered_json summary_json(const MetricsSeries& series,
                                    const ScenarioConfig& cfg);

}  // namespace sagimec
