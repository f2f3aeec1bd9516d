#include "sagimec/core_model.hpp"

#include <cmath>

namespace sagimec {

namespace {
constexpr double kPi = 3.14159265358979323846;
constexpr double kRadToDeg = 180.0 / kPi;
}  // namespace

double los_probability(double horiz_dist_m, double altitude_m,
                       const RadioParams& radio) {
  const double d3d = std::hypot(horiz_dist_m, altitude_m);
  // altitude > 0 guarantees altitude/d3d in (0, 1].
  const double elevation_deg = kRadToDeg * std::asin(altitude_m / d3d);
  return 1.0 /
         (1.0 + radio.los_c1 *
                    std::exp(-radio.los_c2 * (elevation_deg - radio.los_c1)));
}

double path_loss_db(double dist_3d_m, double los_prob,
                    const RadioParams& radio) {
  const double fspl_db = 20.0 * std::log10(4.0 * kPi * radio.carrier_hz *
                                           dist_3d_m / radio.light_speed_mps);
  return fspl_db + los_prob * radio.extra_loss_los_db +
         (1.0 - los_prob) * radio.extra_loss_nlos_db;
}

double channel_gain(double loss_db) { return std::pow(10.0, -loss_db / 10.0); }

double uplink_rate(double bw_fraction, const RadioParams& radio, double bw_hz,
                   double tx_power_w, double gain) {
  const double snr = tx_power_w * gain / radio.noise_power_w;
  return bw_fraction * bw_hz * std::log2(1.0 + snr);
}

double full_bandwidth_rate(Vec2 iotd_pos_m, Vec2 uav_pos_m,
                           const UavParams& uav, const RadioParams& radio,
                           double tx_power_w) {
  const double horiz = distance(iotd_pos_m, uav_pos_m);
  const double rho = los_probability(horiz, uav.altitude_m, radio);
  const double d3d = std::hypot(horiz, uav.altitude_m);
  const double gain = channel_gain(path_loss_db(d3d, rho, radio));
  return uplink_rate(1.0, radio, uav.bandwidth_hz, tx_power_w, gain);
}

double snr_numerator_m2(double los_prob, const RadioParams& radio,
                        double tx_power_w) {
  const double l0_db =
      20.0 * std::log10(4.0 * kPi * radio.carrier_hz / radio.light_speed_mps) +
      los_prob * radio.extra_loss_los_db +
      (1.0 - los_prob) * radio.extra_loss_nlos_db;
  return tx_power_w * channel_gain(l0_db) / radio.noise_power_w;
}

LocalTerms local_terms(const Task& task, const IotdParams& iotd,
                       const RadioParams& radio) {
  const double latency =
      task.compute_density * task.data_size_bits / iotd.cpu_hz;
  const double power =
      radio.switched_capacitance * iotd.cpu_hz * iotd.cpu_hz * iotd.cpu_hz;
  return {latency, power * latency};
}

UavTerms uav_terms(const Task& task, double rate_bps, double alloc_hz,
                   const IotdParams& iotd, const UavParams& uav) {
  const double tx_latency = task.data_size_bits / rate_bps;
  const double exec_latency =
      task.compute_density * task.data_size_bits / alloc_hz;
  return {tx_latency + exec_latency, iotd.tx_power_w * tx_latency,
          uav.energy_per_cycle_j * task.compute_density * task.data_size_bits};
}

CloudTerms cloud_terms(const Task& task, double rate_bps,
                       double rtt_s_per_bit, double energy_per_bit_j,
                       const IotdParams& iotd) {
  // Cloud compute delay is negligible; the relay round trip dominates.
  const double tx_latency = task.data_size_bits / rate_bps;
  return {tx_latency + task.data_size_bits * rtt_s_per_bit,
          iotd.tx_power_w * tx_latency,
          task.data_size_bits * energy_per_bit_j};
}

double propulsion_power_w(double speed_mps, const PropulsionParams& prop) {
  const double v2 = speed_mps * speed_mps;
  const double tip2 = prop.tip_speed_mps * prop.tip_speed_mps;
  const double induced =
      std::sqrt(std::sqrt(prop.c3 + v2 * v2 / 4.0) - v2 / 2.0);
  return prop.c1_w * (1.0 + 3.0 * v2 / tip2) + prop.c2_w * induced +
         prop.c4 * v2 * speed_mps;
}

double slot_cost(OffloadMode /*mode*/, double latency_s, double iotd_energy_j,
                 const CostWeights& weights) {
  return weights.latency_weight * latency_s +
         weights.energy_weight * iotd_energy_j;
}

UavEnergySplit slot_uav_energy(double comp_j, double trans_j, double speed_mps,
                               const PropulsionParams& prop, double tau_s) {
  const double e_u1 = comp_j + trans_j;
  const double e_u2 = propulsion_power_w(speed_mps, prop) * tau_s;
  return {e_u1, e_u2, e_u1 + e_u2};
}

double dbm_to_watts(double dbm) { return std::pow(10.0, (dbm - 30.0) / 10.0); }

}  // namespace sagimec
