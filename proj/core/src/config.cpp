#include "sagimec/config.hpp"

#include <cmath>
#include <fstream>
#include <sstream>

namespace sagimec {
namespace {

using nlohmann::json;
using nlohmann::ordered_json;

const json& navigate(const json& j, const std::string& path) {
  const json* p = &j;
  std::stringstream ss(path);
  std::string part;
  while (std::getline(ss, part, '.')) {
    if (!p->is_object() || !p->contains(part))
      throw ConfigError("missing config key: " + path);
    p = &(*p)[part];
  }
  return *p;
}

double get_num(const json& j, const std::string& path) {
  const json& v = navigate(j, path);
  if (!v.is_number())
    throw ConfigError("config key " + path + " must be a number");
  return v.get<double>();
}

int get_int(const json& j, const std::string& path) {
  double v = get_num(j, path);
  if (std::floor(v) != v)
    throw ConfigError("config key " + path + " must be an integer");
  return static_cast<int>(v);
}

std::uint64_t get_u64(const json& j, const std::string& path) {
  double v = get_num(j, path);
  if (std::floor(v) != v || v < 0)
    throw ConfigError("config key " + path + " must be a nonnegative integer");
  return static_cast<std::uint64_t>(v);
}

bool get_bool(const json& j, const std::string& path) {
  const json& v = navigate(j, path);
  if (!v.is_boolean())
    throw ConfigError("config key " + path + " must be a boolean");
  return v.get<bool>();
}

std::string get_str(const json& j, const std::string& path) {
  const json& v = navigate(j, path);
  if (!v.is_string())
    throw ConfigError("config key " + path + " must be a string");
  return v.get<std::string>();
}

// Overlays src onto dst, requiring every src key to already exist in dst with
// a structurally compatible value.
void merge_checked(json& dst, const json& src, const std::string& prefix,
                   std::vector<std::string>& errors) {
  if (!src.is_object()) {
    errors.push_back("config group " + (prefix.empty() ? "<root>" : prefix) +
                     " must be an object");
    return;
  }
  for (auto it = src.begin(); it != src.end(); ++it) {
    std::string path = prefix.empty() ? it.key() : prefix + "." + it.key();
    if (!dst.contains(it.key())) {
      errors.push_back("unknown config key: " + path);
      continue;
    }
    json& slot = dst[it.key()];
    if (slot.is_object()) {
      merge_checked(slot, it.value(), path, errors);
    } else if (slot.is_array() != it.value().is_array()) {
      errors.push_back("config key " + path + " has wrong type");
    } else {
      slot = it.value();
    }
  }
}

json parse_override_value(const std::string& text) {
  json v = json::parse(text, nullptr, false);
  if (v.is_discarded()) return json(text);  // bare strings allowed unquoted
  return v;
}

void apply_override(json& doc, const std::string& spec) {
  auto eq = spec.find('=');
  if (eq == std::string::npos || eq == 0)
    throw ConfigError("override must look like group.key=value: " + spec);
  std::string path = spec.substr(0, eq);
  json value = parse_override_value(spec.substr(eq + 1));

  json* p = &doc;
  std::stringstream ss(path);
  std::string part;
  std::vector<std::string> parts;
  while (std::getline(ss, part, '.')) parts.push_back(part);
  for (std::size_t i = 0; i + 1 < parts.size(); ++i) {
    if (!p->is_object() || !p->contains(parts[i]))
      throw ConfigError("unknown config key: " + path);
    p = &(*p)[parts[i]];
  }
  if (parts.empty() || !p->is_object() || !p->contains(parts.back()))
    throw ConfigError("unknown config key: " + path);
  json& slot = (*p)[parts.back()];
  if (slot.is_object())
    throw ConfigError("cannot assign to config group: " + path);
  slot = value;
}

}  // namespace

UavParams ScenarioConfig::uav_params() const {
  UavParams p;
  p.altitude_m = uav.altitude_m;
  p.max_compute_hz = uav.max_compute_ghz * 1e9;
  p.bandwidth_hz = uav.bandwidth_mhz * 1e6;
  p.max_speed_mps = uav.max_speed_mps;
  p.initial_position_m = {uav.initial_x_m, uav.initial_y_m};
  p.energy_per_cycle_j = uav.energy_per_cycle_j;
  p.slot_duration_s = uav.slot_duration_s;
  return p;
}

RadioParams ScenarioConfig::radio_params() const {
  RadioParams p;
  p.carrier_hz = radio.carrier_ghz * 1e9;
  p.light_speed_mps = radio.light_speed_mps;
  p.noise_power_w = dbm_to_watts(radio.noise_power_dbm);
  p.los_c1 = radio.los_c1;
  p.los_c2 = radio.los_c2;
  p.extra_loss_los_db = radio.extra_loss_los_db;
  p.extra_loss_nlos_db = radio.extra_loss_nlos_db;
  p.switched_capacitance = radio.switched_capacitance;
  return p;
}

PropulsionParams ScenarioConfig::propulsion_params() const {
  return {propulsion.c1_w, propulsion.c2_w, propulsion.c3, propulsion.c4,
          propulsion.tip_speed_mps};
}

CostWeights ScenarioConfig::weights() const {
  return {cost_weights.latency_weight, cost_weights.energy_weight};
}

EnergyBudgets ScenarioConfig::energy_budgets() const {
  return {controller.e_bar_u1_j, controller.e_bar_u2_j,
          controller.e_bar_u1_j + controller.e_bar_u2_j};
}

TaskDistribution ScenarioConfig::task_distribution() const {
  TaskDistribution d;
  d.size_min_bits = tasks.size_min_mbit * 1e6;
  d.size_max_bits = tasks.size_max_mbit * 1e6;
  d.density_min = tasks.density_min_cycles_per_bit;
  d.density_max = tasks.density_max_cycles_per_bit;
  d.deadline_s = tasks.deadline_s;
  return d;
}

std::vector<std::string> validate(const ScenarioConfig& cfg) {
  std::vector<std::string> e;
  auto req = [&](bool ok, const std::string& msg) {
    if (!ok) e.push_back(msg);
  };

  req(cfg.scenario.horizon_slots >= 1, "scenario.horizon_slots must be >= 1");
  req(cfg.scenario.iotd_count >= 1, "scenario.iotd_count must be >= 1");
  req(cfg.scenario.area_width_m > 0 && cfg.scenario.area_height_m > 0,
      "scenario area must be positive");
  req(cfg.scenario.policy == "odoa" || cfg.scenario.policy == "uac" ||
          cfg.scenario.policy == "era" || cfg.scenario.policy == "eps_greedy" ||
          cfg.scenario.policy == "ocq",
      "scenario.policy must be one of odoa|uac|era|eps_greedy|ocq");
  req(cfg.scenario.epsilon >= 0 && cfg.scenario.epsilon <= 1,
      "scenario.epsilon must lie in [0,1]");

  req(cfg.uav.altitude_m > 0, "uav.altitude_m must be positive");
  req(cfg.uav.max_compute_ghz > 0, "uav.max_compute_ghz must be positive");
  req(cfg.uav.bandwidth_mhz > 0, "uav.bandwidth_mhz must be positive");
  req(cfg.uav.max_speed_mps > 0, "uav.max_speed_mps must be positive");
  req(cfg.uav.energy_per_cycle_j > 0, "uav.energy_per_cycle_j must be positive");
  req(cfg.uav.slot_duration_s > 0, "uav.slot_duration_s must be positive");

  req(cfg.radio.carrier_ghz > 0, "radio.carrier_ghz must be positive");
  req(cfg.radio.light_speed_mps > 0, "radio.light_speed_mps must be positive");
  req(cfg.radio.los_c1 > 0 && cfg.radio.los_c2 > 0,
      "radio LoS shape parameters must be positive");
  req(cfg.radio.extra_loss_nlos_db >= cfg.radio.extra_loss_los_db,
      "radio.extra_loss_nlos_db must be >= extra_loss_los_db");
  req(cfg.radio.switched_capacitance > 0,
      "radio.switched_capacitance must be positive");

  req(cfg.propulsion.c1_w >= 0 && cfg.propulsion.c2_w >= 0 &&
          cfg.propulsion.c3 >= 0 && cfg.propulsion.c4 >= 0,
      "propulsion coefficients must be nonnegative");
  req(cfg.propulsion.tip_speed_mps > 0,
      "propulsion.tip_speed_mps must be positive");

  req(cfg.cost_weights.latency_weight >= 0 && cfg.cost_weights.energy_weight >= 0 &&
          std::abs(cfg.cost_weights.latency_weight +
                   cfg.cost_weights.energy_weight - 1.0) <= 1e-12,
      "cost weights must be nonnegative and sum to 1");

  req(cfg.tasks.size_min_mbit > 0 &&
          cfg.tasks.size_max_mbit >= cfg.tasks.size_min_mbit,
      "task size range must satisfy 0 < min <= max");
  req(cfg.tasks.density_min_cycles_per_bit > 0 &&
          cfg.tasks.density_max_cycles_per_bit >=
              cfg.tasks.density_min_cycles_per_bit,
      "task density range must satisfy 0 < min <= max");
  req(cfg.tasks.deadline_s > 0, "tasks.deadline_s must be positive");

  req(!cfg.iotd.cpu_choices_ghz.empty(), "iotd.cpu_choices_ghz must be nonempty");
  for (double c : cfg.iotd.cpu_choices_ghz)
    req(c > 0, "iotd.cpu_choices_ghz entries must be positive");

  req(cfg.mobility.memory_level >= 0 && cfg.mobility.memory_level <= 1,
      "mobility.memory_level must lie in [0,1]");
  req(cfg.mobility.mean_speed_mps >= 0, "mobility.mean_speed_mps must be >= 0");
  req(cfg.mobility.asymptotic_std_mps >= 0,
      "mobility.asymptotic_std_mps must be >= 0");

  req(cfg.satellites.visible_count >= 1, "satellites.visible_count must be >= 1");
  req(cfg.satellites.pool_size >= cfg.satellites.visible_count,
      "satellites.pool_size must be >= visible_count");
  req(cfg.satellites.epoch_len_slots >= 1,
      "satellites.epoch_len_slots must be >= 1");
  req(cfg.satellites.rtt_min_low_s_per_bit > 0 &&
          cfg.satellites.rtt_min_high_s_per_bit >=
              cfg.satellites.rtt_min_low_s_per_bit,
      "satellite rtt_min range must satisfy 0 < low <= high");
  req(cfg.satellites.rtt_max_low_s_per_bit >
              cfg.satellites.rtt_min_high_s_per_bit &&
          cfg.satellites.rtt_max_high_s_per_bit >=
              cfg.satellites.rtt_max_low_s_per_bit,
      "satellite rtt_max range must sit strictly above the rtt_min range");
  req(cfg.satellites.energy_per_bit_low_j > 0 &&
          cfg.satellites.energy_per_bit_high_j >=
              cfg.satellites.energy_per_bit_low_j,
      "satellite energy_per_bit range must satisfy 0 < low <= high");
  req(cfg.satellites.rtt_std_divisor > 0,
      "satellites.rtt_std_divisor must be positive");

  req(cfg.controller.v_coeff > 0, "controller.v_coeff must be positive");
  req(cfg.controller.e_bar_u1_j > 0 && cfg.controller.e_bar_u2_j > 0,
      "controller energy budgets must be positive");
  req(cfg.controller.initial_q_u1_j >= 0 && cfg.controller.initial_q_u2_j >= 0,
      "controller initial queues must be >= 0");

  req(cfg.bandit.bonus_log == "natural" || cfg.bandit.bonus_log == "log10",
      "bandit.bonus_log must be natural|log10");
  req(cfg.game.satellite_tie_break == "lowest_id" ||
          cfg.game.satellite_tie_break == "seeded_random",
      "game.satellite_tie_break must be lowest_id|seeded_random");

  req(cfg.trajectory.max_outer_iterations >= 1,
      "trajectory.max_outer_iterations must be >= 1");
  req(cfg.trajectory.outer_rel_tol > 0, "trajectory.outer_rel_tol must be positive");
  req(cfg.trajectory.max_inner_iterations >= 1,
      "trajectory.max_inner_iterations must be >= 1");
  req(cfg.trajectory.inner_grad_tol > 0,
      "trajectory.inner_grad_tol must be positive");

  return e;
}

nlohmann::ordered_json to_json(const ScenarioConfig& c) {
  ordered_json j;
  j["scenario"] = {{"horizon_slots", c.scenario.horizon_slots},
                   {"iotd_count", c.scenario.iotd_count},
                   {"area_width_m", c.scenario.area_width_m},
                   {"area_height_m", c.scenario.area_height_m},
                   {"seed", c.scenario.seed},
                   {"policy", c.scenario.policy},
                   {"static_iotds", c.scenario.static_iotds},
                   {"epsilon", c.scenario.epsilon}};
  j["uav"] = {{"altitude_m", c.uav.altitude_m},
              {"max_compute_ghz", c.uav.max_compute_ghz},
              {"bandwidth_mhz", c.uav.bandwidth_mhz},
              {"max_speed_mps", c.uav.max_speed_mps},
              {"initial_x_m", c.uav.initial_x_m},
              {"initial_y_m", c.uav.initial_y_m},
              {"energy_per_cycle_j", c.uav.energy_per_cycle_j},
              {"slot_duration_s", c.uav.slot_duration_s}};
  j["radio"] = {{"carrier_ghz", c.radio.carrier_ghz},
                {"light_speed_mps", c.radio.light_speed_mps},
                {"noise_power_dbm", c.radio.noise_power_dbm},
                {"los_c1", c.radio.los_c1},
                {"los_c2", c.radio.los_c2},
                {"extra_loss_los_db", c.radio.extra_loss_los_db},
                {"extra_loss_nlos_db", c.radio.extra_loss_nlos_db},
                {"switched_capacitance", c.radio.switched_capacitance}};
  j["propulsion"] = {{"c1_w", c.propulsion.c1_w},
                     {"c2_w", c.propulsion.c2_w},
                     {"c3", c.propulsion.c3},
                     {"c4", c.propulsion.c4},
                     {"tip_speed_mps", c.propulsion.tip_speed_mps}};
  j["cost_weights"] = {{"latency_weight", c.cost_weights.latency_weight},
                       {"energy_weight", c.cost_weights.energy_weight}};
  j["tasks"] = {{"size_min_mbit", c.tasks.size_min_mbit},
                {"size_max_mbit", c.tasks.size_max_mbit},
                {"density_min_cycles_per_bit", c.tasks.density_min_cycles_per_bit},
                {"density_max_cycles_per_bit", c.tasks.density_max_cycles_per_bit},
                {"deadline_s", c.tasks.deadline_s}};
  j["iotd"] = {{"cpu_choices_ghz", c.iotd.cpu_choices_ghz},
               {"tx_power_dbm", c.iotd.tx_power_dbm}};
  j["mobility"] = {{"memory_level", c.mobility.memory_level},
                   {"mean_speed_mps", c.mobility.mean_speed_mps},
                   {"asymptotic_std_mps", c.mobility.asymptotic_std_mps}};
  j["satellites"] = {
      {"pool_size", c.satellites.pool_size},
      {"visible_count", c.satellites.visible_count},
      {"epoch_len_slots", c.satellites.epoch_len_slots},
      {"rtt_min_low_s_per_bit", c.satellites.rtt_min_low_s_per_bit},
      {"rtt_min_high_s_per_bit", c.satellites.rtt_min_high_s_per_bit},
      {"rtt_max_low_s_per_bit", c.satellites.rtt_max_low_s_per_bit},
      {"rtt_max_high_s_per_bit", c.satellites.rtt_max_high_s_per_bit},
      {"energy_per_bit_low_j", c.satellites.energy_per_bit_low_j},
      {"energy_per_bit_high_j", c.satellites.energy_per_bit_high_j},
      {"rtt_std_divisor", c.satellites.rtt_std_divisor}};
  j["controller"] = {{"v_coeff", c.controller.v_coeff},
                     {"e_bar_u1_j", c.controller.e_bar_u1_j},
                     {"e_bar_u2_j", c.controller.e_bar_u2_j},
                     {"initial_q_u1_j", c.controller.initial_q_u1_j},
                     {"initial_q_u2_j", c.controller.initial_q_u2_j}};
  j["bandit"] = {{"bonus_log", c.bandit.bonus_log}};
  j["game"] = {{"satellite_tie_break", c.game.satellite_tie_break}};
  j["trajectory"] = {{"max_outer_iterations", c.trajectory.max_outer_iterations},
                     {"outer_rel_tol", c.trajectory.outer_rel_tol},
                     {"max_inner_iterations", c.trajectory.max_inner_iterations},
                     {"inner_grad_tol", c.trajectory.inner_grad_tol}};
  return j;
}

ScenarioConfig config_from_json(const nlohmann::json& j) {
  ScenarioConfig c;
  c.scenario.horizon_slots = get_int(j, "scenario.horizon_slots");
  c.scenario.iotd_count = get_int(j, "scenario.iotd_count");
  c.scenario.area_width_m = get_num(j, "scenario.area_width_m");
  c.scenario.area_height_m = get_num(j, "scenario.area_height_m");
  c.scenario.seed = get_u64(j, "scenario.seed");
  c.scenario.policy = get_str(j, "scenario.policy");
  c.scenario.static_iotds = get_bool(j, "scenario.static_iotds");
  c.scenario.epsilon = get_num(j, "scenario.epsilon");

  c.uav.altitude_m = get_num(j, "uav.altitude_m");
  c.uav.max_compute_ghz = get_num(j, "uav.max_compute_ghz");
  c.uav.bandwidth_mhz = get_num(j, "uav.bandwidth_mhz");
  c.uav.max_speed_mps = get_num(j, "uav.max_speed_mps");
  c.uav.initial_x_m = get_num(j, "uav.initial_x_m");
  c.uav.initial_y_m = get_num(j, "uav.initial_y_m");
  c.uav.energy_per_cycle_j = get_num(j, "uav.energy_per_cycle_j");
  c.uav.slot_duration_s = get_num(j, "uav.slot_duration_s");

  c.radio.carrier_ghz = get_num(j, "radio.carrier_ghz");
  c.radio.light_speed_mps = get_num(j, "radio.light_speed_mps");
  c.radio.noise_power_dbm = get_num(j, "radio.noise_power_dbm");
  c.radio.los_c1 = get_num(j, "radio.los_c1");
  c.radio.los_c2 = get_num(j, "radio.los_c2");
  c.radio.extra_loss_los_db = get_num(j, "radio.extra_loss_los_db");
  c.radio.extra_loss_nlos_db = get_num(j, "radio.extra_loss_nlos_db");
  c.radio.switched_capacitance = get_num(j, "radio.switched_capacitance");

  c.propulsion.c1_w = get_num(j, "propulsion.c1_w");
  c.propulsion.c2_w = get_num(j, "propulsion.c2_w");
  c.propulsion.c3 = get_num(j, "propulsion.c3");
  c.propulsion.c4 = get_num(j, "propulsion.c4");
  c.propulsion.tip_speed_mps = get_num(j, "propulsion.tip_speed_mps");

  c.cost_weights.latency_weight = get_num(j, "cost_weights.latency_weight");
  c.cost_weights.energy_weight = get_num(j, "cost_weights.energy_weight");

  c.tasks.size_min_mbit = get_num(j, "tasks.size_min_mbit");
  c.tasks.size_max_mbit = get_num(j, "tasks.size_max_mbit");
  c.tasks.density_min_cycles_per_bit =
      get_num(j, "tasks.density_min_cycles_per_bit");
  c.tasks.density_max_cycles_per_bit =
      get_num(j, "tasks.density_max_cycles_per_bit");
  c.tasks.deadline_s = get_num(j, "tasks.deadline_s");

  const json& cpus = j.at("iotd").at("cpu_choices_ghz");
  if (!cpus.is_array() || cpus.empty())
    throw ConfigError("iotd.cpu_choices_ghz must be a nonempty array");
  c.iotd.cpu_choices_ghz.clear();
  for (const auto& v : cpus) {
    if (!v.is_number())
      throw ConfigError("iotd.cpu_choices_ghz entries must be numbers");
    c.iotd.cpu_choices_ghz.push_back(v.get<double>());
  }
  c.iotd.tx_power_dbm = get_num(j, "iotd.tx_power_dbm");

  c.mobility.memory_level = get_num(j, "mobility.memory_level");
  c.mobility.mean_speed_mps = get_num(j, "mobility.mean_speed_mps");
  c.mobility.asymptotic_std_mps = get_num(j, "mobility.asymptotic_std_mps");

  c.satellites.pool_size = get_int(j, "satellites.pool_size");
  c.satellites.visible_count = get_int(j, "satellites.visible_count");
  c.satellites.epoch_len_slots = get_int(j, "satellites.epoch_len_slots");
  c.satellites.rtt_min_low_s_per_bit =
      get_num(j, "satellites.rtt_min_low_s_per_bit");
  c.satellites.rtt_min_high_s_per_bit =
      get_num(j, "satellites.rtt_min_high_s_per_bit");
  c.satellites.rtt_max_low_s_per_bit =
      get_num(j, "satellites.rtt_max_low_s_per_bit");
  c.satellites.rtt_max_high_s_per_bit =
      get_num(j, "satellites.rtt_max_high_s_per_bit");
  c.satellites.energy_per_bit_low_j =
      get_num(j, "satellites.energy_per_bit_low_j");
  c.satellites.energy_per_bit_high_j =
      get_num(j, "satellites.energy_per_bit_high_j");
  c.satellites.rtt_std_divisor = get_num(j, "satellites.rtt_std_divisor");

  c.controller.v_coeff = get_num(j, "controller.v_coeff");
  c.controller.e_bar_u1_j = get_num(j, "controller.e_bar_u1_j");
  c.controller.e_bar_u2_j = get_num(j, "controller.e_bar_u2_j");
  c.controller.initial_q_u1_j = get_num(j, "controller.initial_q_u1_j");
  c.controller.initial_q_u2_j = get_num(j, "controller.initial_q_u2_j");

  c.bandit.bonus_log = get_str(j, "bandit.bonus_log");
  c.game.satellite_tie_break = get_str(j, "game.satellite_tie_break");

  c.trajectory.max_outer_iterations =
      get_int(j, "trajectory.max_outer_iterations");
  c.trajectory.outer_rel_tol = get_num(j, "trajectory.outer_rel_tol");
  c.trajectory.max_inner_iterations =
      get_int(j, "trajectory.max_inner_iterations");
  c.trajectory.inner_grad_tol = get_num(j, "trajectory.inner_grad_tol");
  return c;
}

ScenarioConfig load_config(const std::string& path_or_empty,
                           const std::vector<std::string>& overrides) {
  json doc = to_json(ScenarioConfig{});
  if (!path_or_empty.empty()) {
    std::ifstream in(path_or_empty);
    if (!in) throw ConfigError("cannot open config file: " + path_or_empty);
    json file = json::parse(in, nullptr, false);
    if (file.is_discarded())
      throw ConfigError("config file is not valid JSON: " + path_or_empty);
    std::vector<std::string> errors;
    merge_checked(doc, file, "", errors);
    if (!errors.empty()) {
      std::string all;
      for (const auto& m : errors) all += (all.empty() ? "" : "; ") + m;
      throw ConfigError(all);
    }
  }
  for (const auto& o : overrides) apply_override(doc, o);

  ScenarioConfig cfg = config_from_json(doc);
  auto errors = validate(cfg);
  if (!errors.empty()) {
    std::string all;
    for (const auto& m : errors) all += (all.empty() ? "" : "; ") + m;
    throw ConfigError(all);
  }
  return cfg;
}

nlohmann::ordered_json tuned_defaults(const ScenarioConfig& c) {
  ordered_json j;
  j["scenario.horizon_slots"] = c.scenario.horizon_slots;
  j["scenario.static_iotds"] = c.scenario.static_iotds;
  j["scenario.epsilon"] = c.scenario.epsilon;
  j["radio.carrier_ghz"] = c.radio.carrier_ghz;
  j["satellites.pool_size"] = c.satellites.pool_size;
  j["satellites.visible_count"] = c.satellites.visible_count;
  j["satellites.energy_per_bit_low_j"] = c.satellites.energy_per_bit_low_j;
  j["satellites.energy_per_bit_high_j"] = c.satellites.energy_per_bit_high_j;
  j["satellites.rtt_std_divisor"] = c.satellites.rtt_std_divisor;
  j["controller.v_coeff"] = c.controller.v_coeff;
  j["controller.e_bar_u1_j"] = c.controller.e_bar_u1_j;
  j["controller.e_bar_u2_j"] = c.controller.e_bar_u2_j;
  j["controller.initial_q_u1_j"] = c.controller.initial_q_u1_j;
  j["controller.initial_q_u2_j"] = c.controller.initial_q_u2_j;
  j["bandit.bonus_log"] = c.bandit.bonus_log;
  j["game.satellite_tie_break"] = c.game.satellite_tie_break;
  j["trajectory.max_outer_iterations"] = c.trajectory.max_outer_iterations;
  j["trajectory.outer_rel_tol"] = c.trajectory.outer_rel_tol;
  j["trajectory.max_inner_iterations"] = c.trajectory.max_inner_iterations;
  j["trajectory.inner_grad_tol"] = c.trajectory.inner_grad_tol;
  return j;
}

}  // namespace sagimec
