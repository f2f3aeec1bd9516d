#include "sagimec/metrics.hpp"

#include <cmath>
#include <cstdio>
#include <ostream>
#include <stdexcept>

namespace sagimec {
namespace {

bool close(double a, double b) {
  return std::abs(a - b) <= 1e-9 * std::max({1.0, std::abs(a), std::abs(b)});
}

}  // namespace

void MetricsSeries::finalize(const RunningTotals& running) {
  RunningTotals sums;
  total_local = total_uav = total_cloud = 0;
  for (const SlotRecord& r : slots) {
    sums.cost += r.total_cost;
    sums.latency += r.mean_latency_s;
    sums.iotd_energy += r.iotd_energy_j;
    sums.uav_energy_u1 += r.uav_energy_u1_j;
    sums.uav_energy_u2 += r.uav_energy_u2_j;
    total_local += r.n_local;
    total_uav += r.n_uav;
    total_cloud += r.n_cloud;
  }
  if (!close(sums.cost, running.cost) || !close(sums.latency, running.latency) ||
      !close(sums.iotd_energy, running.iotd_energy) ||
      !close(sums.uav_energy_u1, running.uav_energy_u1) ||
      !close(sums.uav_energy_u2, running.uav_energy_u2))
    throw std::logic_error("metrics: running totals disagree with slot records");

  double t = slots.empty() ? 1.0 : static_cast<double>(slots.size());
  tic = sums.cost / t;
  mean_latency_s = sums.latency / t;
  mean_iotd_energy_j = sums.iotd_energy / t;
  mean_uav_energy_u1_j = sums.uav_energy_u1 / t;
  mean_uav_energy_u2_j = sums.uav_energy_u2 / t;
  mean_uav_energy_j = (sums.uav_energy_u1 + sums.uav_energy_u2) / t;
  finalized = true;
}

std::string csv_header() {
  return "slot,total_cost,mean_latency,iotd_energy,uav_energy_u1,"
         "uav_energy_u2,q_u1,q_u2,uav_x,uav_y,n_local,n_uav,n_cloud,satellite";
}

void write_csv(const MetricsSeries& series, std::ostream& out) {
  out << csv_header() << '\n';
  char buf[512];
  for (const SlotRecord& r : series.slots) {
    int n = std::snprintf(
        buf, sizeof buf,
        "%d,%.17g,%.17g,%.17g,%.17g,%.17g,%.17g,%.17g,%.17g,%.17g,%d,%d,%d,%d\n",
        r.slot, r.total_cost, r.mean_latency_s, r.iotd_energy_j,
        r.uav_energy_u1_j, r.uav_energy_u2_j, r.q_u1_j, r.q_u2_j, r.uav_x_m,
        r.uav_y_m, r.n_local, r.n_uav, r.n_cloud, r.satellite);
    out.write(buf, n);
  }
}

nlohmann::ordered_json summary_json(const MetricsSeries& series,
                                    const ScenarioConfig& cfg) {
  if (!series.finalized)
    throw std::logic_error("metrics: summary requested before finalize");
  nlohmann::ordered_json j;
  j["policy"] = cfg.scenario.policy;
  j["horizon_slots"] = cfg.scenario.horizon_slots;
  j["seed"] = cfg.scenario.seed;
  j["tic"] = series.tic;
  j["mean_latency_s"] = series.mean_latency_s;
  j["mean_iotd_energy_j"] = series.mean_iotd_energy_j;
  j["mean_uav_energy_j"] = series.mean_uav_energy_j;
  j["mean_uav_energy_u1_j"] = series.mean_uav_energy_u1_j;
  j["mean_uav_energy_u2_j"] = series.mean_uav_energy_u2_j;
  j["final_q_u1_j"] = series.final_q_u1_j;
  j["final_q_u2_j"] = series.final_q_u2_j;
  j["mode_totals"] = {{"local", series.total_local},
                      {"uav", series.total_uav},
                      {"cloud", series.total_cloud}};
  j["config"] = to_json(cfg);
  j["tuned_defaults"] = tuned_defaults(cfg);
  return j;
}

}  // namespace sagimec
