#pragma once

#include <vector>

#include <nlohmann/json.hpp>

#include "sagimec/environment.hpp"

namespace sagimec {

enum class BonusLog { natural, decimal };

// Optimistic per-satellite latency predictor. Visibility counts and pull
// counts are cumulative across epochs; only the selected relay's realized
// latency is ever observed.
class BanditStats {
 public:
  struct Arm {
    int id = 0;
    long long pull_count = 0;     // h_s
    long long visible_count = 0;  // slots visible so far
    double mean_rtt = 0.0;        // empirical mean, s/bit
    double rtt_min = 0.0;
    double rtt_max = 0.0;
    double last_prediction = 0.0;
  };

  explicit BanditStats(const std::vector<SatelliteSpec>& sats,
                       BonusLog log_base = BonusLog::natural);

  // Call exactly once per slot, before any prediction for that slot.
  void tick_visibility(int slot, const std::vector<int>& visible_ids);

  // Optimistic estimate: empirical mean minus an exploration bonus, clamped
  // to the known lower bound; the lower bound before any observation.
  double predict_rtt(int sat_id, int slot) const;

  void record_feedback(int sat_id, double observed_rtt_s_per_bit);

  const Arm& arm(int sat_id) const;
  nlohmann::json dump() const;

 private:
  Arm& find(int sat_id);
  const Arm& find(int sat_id) const;

  std::vector<Arm> arms_;
  BonusLog log_base_;
  int last_tick_slot_ = 0;
};

}  // namespace sagimec
