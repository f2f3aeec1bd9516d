#include "sagimec/bandit.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

namespace sagimec {

BanditStats::BanditStats(const std::vector<SatelliteSpec>& sats,
                         BonusLog log_base)
    : log_base_(log_base) {
  arms_.reserve(sats.size());
  for (const SatelliteSpec& sat : sats) {
    Arm arm;
    arm.id = sat.id;
    arm.rtt_min = sat.rtt_min_s_per_bit;
    arm.rtt_max = sat.rtt_max_s_per_bit;
    arm.last_prediction = arm.rtt_min;
    arms_.push_back(arm);
  }
}

BanditStats::Arm& BanditStats::find(int sat_id) {
  for (Arm& arm : arms_) {
    if (arm.id == sat_id) {
      return arm;
    }
  }
  throw std::invalid_argument("BanditStats: unknown satellite id " +
                              std::to_string(sat_id));
}

const BanditStats::Arm& BanditStats::find(int sat_id) const {
  return const_cast<BanditStats*>(this)->find(sat_id);
}

void BanditStats::tick_visibility(int slot, const std::vector<int>& visible) {
  if (slot == last_tick_slot_) {
    throw std::logic_error("BanditStats: visibility already ticked for slot " +
                           std::to_string(slot));
  }
  last_tick_slot_ = slot;
  for (int id : visible) {
    ++find(id).visible_count;
  }
}

double BanditStats::predict_rtt(int sat_id, int slot) const {
  const Arm& arm = find(sat_id);
  double prediction = arm.rtt_min;
  if (slot > 1 && arm.pull_count > 0) {
    const double omega0 = arm.rtt_max - arm.rtt_min;
    const double visible = static_cast<double>(arm.visible_count);
    const double log_visible = log_base_ == BonusLog::natural
                                   ? std::log(visible)
                                   : std::log10(visible);
    const double bonus = omega0 * std::sqrt(3.0 * log_visible /
                                            (2.0 * static_cast<double>(
                                                       arm.pull_count)));
    prediction = std::max(arm.mean_rtt - bonus, arm.rtt_min);
  }
  const_cast<Arm&>(arm).last_prediction = prediction;
  return prediction;
}

void BanditStats::record_feedback(int sat_id, double observed_rtt) {
  Arm& arm = find(sat_id);
  ++arm.pull_count;
  arm.mean_rtt +=
      (observed_rtt - arm.mean_rtt) / static_cast<double>(arm.pull_count);
}

const BanditStats::Arm& BanditStats::arm(int sat_id) const {
  return find(sat_id);
}

nlohmann::json BanditStats::dump() const {
  nlohmann::json out = nlohmann::json::array();
  for (const Arm& arm : arms_) {
    out.push_back({{"id", arm.id},
                   {"pull_count", arm.pull_count},
                   {"visible_count", arm.visible_count},
                   {"mean_rtt", arm.mean_rtt},
                   {"rtt_min", arm.rtt_min},
                   {"rtt_max", arm.rtt_max},
                   {"last_prediction", arm.last_prediction}});
  }
  return out;
}

}  // namespace sagimec
