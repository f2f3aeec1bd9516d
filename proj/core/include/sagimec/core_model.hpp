#pragma once

#include "sagimec/vec2.hpp"

namespace sagimec {

// One computing task, generated per IoTD per slot.
struct Task {
  double data_size_bits = 0.0;     // D_m
  double compute_density = 0.0;    // eta_m, CPU cycles per bit
  double deadline_s = 0.0;         // T_m^max
};

// Static per-device parameters of an IoT device.
struct IotdParams {
  double cpu_hz = 0.0;       // f_m, local CPU frequency
  double tx_power_w = 0.0;   // P_m
  Vec2 position_m{};         // q_m
};

struct UavParams {
  double altitude_m = 100.0;            // H, fixed for a run
  double max_compute_hz = 30e9;         // F_u^max
  double bandwidth_hz = 15e6;           // B_u
  double max_speed_mps = 25.0;          // v_u^max
  Vec2 initial_position_m{0.0, 0.0};    // q^ini
  double energy_per_cycle_j = 8.2e-9;   // energy per CPU cycle on the UAV
  double slot_duration_s = 1.0;         // tau
};

struct RadioParams {
  double carrier_hz = 2.0e9;            // f_u
  double light_speed_mps = 3.0e8;       // v_c
  double noise_power_w = 1.5848931924611109e-13;  // -98 dBm
  double los_c1 = 10.0;                 // environment constant c1
  double los_c2 = 0.6;                  // environment constant c2
  double extra_loss_los_db = 1.0;
  double extra_loss_nlos_db = 20.0;
  double switched_capacitance = 1e-28;  // k, J*s^2/cycle^3
};

// Rotary-wing propulsion model constants.
struct PropulsionParams {
  double c1_w = 80.0;          // blade profile power at hover
  double c2_w = 22.0;          // induced power coefficient
  double c3 = 263.4;           // induced velocity constant (m^4/s^4)
  double c4 = 0.0092;          // parasite drag coefficient
  double tip_speed_mps = 120.0;
};

// Latency/energy tradeoff weights; must sum to 1.
struct CostWeights {
  double latency_weight = 0.7;  // gamma^T
  double energy_weight = 0.3;   // gamma^E
};

enum class OffloadMode { local, uav, cloud };

struct LocalTerms {
  double latency_s;
  double energy_j;  // IoTD compute energy
};

struct UavTerms {
  double latency_s;
  double iotd_tx_energy_j;
  double uav_comp_energy_j;
};

struct CloudTerms {
  double latency_s;
  double iotd_tx_energy_j;
  double uav_tx_energy_j;
};

struct UavEnergySplit {
  double e_u1_j;   // compute + transmit
  double e_u2_j;   // propulsion
  double total_j;
};

// Probability of a line-of-sight air-to-ground link as a function of the
// elevation angle; strictly decreasing in horizontal distance at fixed H.
double los_probability(double horiz_dist_m, double altitude_m,
                       const RadioParams& radio);

// Free-space path loss plus the LoS/non-LoS excess-loss mixture, in dB.
double path_loss_db(double dist_3d_m, double los_prob,
                    const RadioParams& radio);

// dB loss to linear power gain.
double channel_gain(double loss_db);

// Shannon rate over a bandwidth share; exactly linear in bw_fraction.
double uplink_rate(double bw_fraction, const RadioParams& radio, double bw_hz,
                   double tx_power_w, double gain);

// Full-bandwidth uplink rate between an IoTD and the UAV at given positions.
double full_bandwidth_rate(Vec2 iotd_pos_m, Vec2 uav_pos_m,
                           const UavParams& uav, const RadioParams& radio,
                           double tx_power_w);

// Reference SNR numerator: P * 10^(-L0/10) / noise with L0 the path loss at
// 1 m 3D distance, so that SNR(d) = snr_numerator / d^2.
double snr_numerator_m2(double los_prob, const RadioParams& radio,
                        double tx_power_w);

LocalTerms local_terms(const Task& task, const IotdParams& iotd,
                       const RadioParams& radio);

UavTerms uav_terms(const Task& task, double rate_bps, double alloc_hz,
                   const IotdParams& iotd, const UavParams& uav);

CloudTerms cloud_terms(const Task& task, double rate_bps,
                       double rtt_s_per_bit, double energy_per_bit_j,
                       const IotdParams& iotd);

double propulsion_power_w(double speed_mps, const PropulsionParams& prop);

// Weighted latency/energy cost of one task under the executed mode.
double slot_cost(OffloadMode mode, double latency_s, double iotd_energy_j,
                 const CostWeights& weights);

UavEnergySplit slot_uav_energy(double comp_j, double trans_j, double speed_mps,
                               const PropulsionParams& prop, double tau_s);

double dbm_to_watts(double dbm);

}  // namespace sagimec
