#include <filesystem>
#include <fstream>
#include <iostream>
#include <map>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"

#include "sagimec/engine.hpp"

namespace {

using namespace sagimec;
using nlohmann::ordered_json;

// Unrecognized flags are dotted config overrides: --group.key=value.
std::vector<std::string> overrides_from_extras(
    const std::vector<std::string>& extras) {
  std::vector<std::string> out;
  for (const std::string& e : extras) {
    if (e.rfind("--", 0) == 0 && e.find('=') != std::string::npos &&
        e.find('.') != std::string::npos) {
      out.push_back(e.substr(2));
    } else {
      throw ConfigError("unrecognized argument: " + e +
                        " (overrides look like --group.key=value)");
    }
  }
  return out;
}

void write_text(const std::string& path, const std::string& text) {
  if (path.empty() || path == "-") {
    std::cout << text;
    return;
  }
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write " + path);
  out << text;
  if (!out) throw std::runtime_error("write failed: " + path);
}

void emit(const MetricsSeries& series, const ScenarioConfig& cfg,
          const std::string& format, const std::string& path) {
  if (format == "csv") {
    std::ostringstream os;
    write_csv(series, os);
    write_text(path, os.str());
  } else if (format == "json") {
    write_text(path, summary_json(series, cfg).dump(2) + "\n");
  } else {
    throw ConfigError("unknown format: " + format + " (want csv|json)");
  }
}

const char* mode_name(OffloadMode m) {
  switch (m) {
    case OffloadMode::local: return "local";
    case OffloadMode::uav: return "uav";
    case OffloadMode::cloud: return "cloud";
  }
  return "?";
}

int cmd_run(const std::string& config_path,
            const std::vector<std::string>& overrides,
            const std::string& format, const std::string& out,
            const std::string& summary) {
  ScenarioConfig cfg = load_config(config_path, overrides);
  MetricsSeries series = run(cfg);
  emit(series, cfg, format, out);
  if (!summary.empty()) emit(series, cfg, "json", summary);
  return 0;
}

int cmd_validate(const std::string& config_path,
                 const std::vector<std::string>& overrides) {
  ScenarioConfig cfg = load_config(config_path, overrides);
  ordered_json doc;
  doc["config"] = to_json(cfg);
  doc["tuned_defaults"] = tuned_defaults(cfg);
  std::cout << doc.dump(2) << "\n";
  return 0;
}

int cmd_sweep(const std::string& config_path,
              const std::vector<std::string>& overrides,
              const std::string& axis, const std::vector<double>& values,
              std::vector<std::string> policies, int seeds,
              const std::string& out_dir, bool emit_slots) {
  ScenarioConfig base = load_config(config_path, overrides);
  if (policies.empty())
    policies = {"odoa", "uac", "era", "eps_greedy", "ocq"};
  std::vector<SweepPoint> points = sweep(base, axis, values, policies, seeds);

  std::filesystem::create_directories(out_dir);
  ordered_json cells = ordered_json::array();
  std::map<std::pair<double, std::string>, std::vector<const SweepPoint*>>
      groups;
  for (const SweepPoint& p : points) {
    cells.push_back({{"policy", p.policy},
                     {"value", p.axis_value},
                     {"seed", p.seed},
                     {"tic", p.series.tic},
                     {"mean_latency_s", p.series.mean_latency_s},
                     {"mean_iotd_energy_j", p.series.mean_iotd_energy_j},
                     {"mean_uav_energy_j", p.series.mean_uav_energy_j},
                     {"final_q_u1_j", p.series.final_q_u1_j},
                     {"final_q_u2_j", p.series.final_q_u2_j}});
    groups[{p.axis_value, p.policy}].push_back(&p);
    if (emit_slots) {
      std::ostringstream name;
      name << axis << "=" << p.axis_value << "_" << p.policy << "_seed"
           << p.seed << ".csv";
      std::ostringstream os;
      write_csv(p.series, os);
      write_text((std::filesystem::path(out_dir) / name.str()).string(),
                 os.str());
    }
  }
  ordered_json means = ordered_json::array();
  for (const auto& [key, runs] : groups) {
    double tic = 0, lat = 0, ie = 0, ue = 0;
    for (const SweepPoint* p : runs) {
      tic += p->series.tic;
      lat += p->series.mean_latency_s;
      ie += p->series.mean_iotd_energy_j;
      ue += p->series.mean_uav_energy_j;
    }
    double n = static_cast<double>(runs.size());
    means.push_back({{"value", key.first},
                     {"policy", key.second},
                     {"runs", runs.size()},
                     {"mean_tic", tic / n},
                     {"mean_latency_s", lat / n},
                     {"mean_iotd_energy_j", ie / n},
                     {"mean_uav_energy_j", ue / n}});
  }
  ordered_json doc;
  doc["axis"] = axis;
  doc["values"] = values;
  doc["policies"] = policies;
  doc["seeds"] = seeds;
  doc["base_seed"] = base.scenario.seed;
  doc["means"] = means;
  doc["cells"] = cells;
  doc["base_config"] = to_json(base);
  doc["tuned_defaults"] = tuned_defaults(base);
  write_text((std::filesystem::path(out_dir) / "sweep_summary.json").string(),
             doc.dump(2) + "\n");
  return 0;
}

int cmd_traces(const std::string& config_path,
               const std::vector<std::string>& overrides, int slots,
               const std::string& out) {
  ScenarioConfig cfg = load_config(config_path, overrides);
  std::ostringstream lines;
  ordered_json cur;
  RunHooks hooks;
  hooks.collect_nash_trace = true;
  hooks.collect_sca_trace = true;
  hooks.on_decision = [&](int t, const SlotContext& ctx,
                          const NashResult& nash,
                          const AllocationResult& alloc, int sat) {
    if (t > slots) return;
    cur = ordered_json{};
    cur["slot"] = t;
    ordered_json profile = ordered_json::array();
    for (OffloadMode m : nash.profile) profile.push_back(mode_name(m));
    cur["profile"] = profile;
    cur["passes"] = nash.passes;
    cur["moves"] = nash.moves;
    cur["forced_local"] = nash.forced_local;
    cur["hit_cap"] = nash.hit_cap;
    ordered_json moves = ordered_json::array();
    for (const NashMove& mv : nash.trace)
      moves.push_back({{"pass", mv.pass},
                       {"player", mv.player},
                       {"from", mode_name(mv.from)},
                       {"to", mode_name(mv.to)},
                       {"utility_before", mv.utility_before},
                       {"utility_after", mv.utility_after},
                       {"potential_after", mv.potential_after}});
    cur["nash_moves"] = moves;
    cur["compute_fraction"] = alloc.compute_fraction;
    cur["bandwidth_fraction"] = alloc.bandwidth_fraction;
    cur["satellite"] = sat;
    ordered_json menu = ordered_json::array();
    for (const SatelliteOption& o : ctx.satellites)
      menu.push_back({{"id", o.id},
                      {"predicted_rtt_s_per_bit", o.predicted_rtt_s_per_bit},
                      {"energy_per_bit_j", o.energy_per_bit_j}});
    cur["satellite_menu"] = menu;
  };
  hooks.on_trajectory = [&](int t, const TrajectoryProblem&, Vec2 next,
                            const ScaTrace& tr) {
    if (t > slots) return;
    cur["uav_next"] = {next.x, next.y};
    ordered_json pos = ordered_json::array();
    for (Vec2 q : tr.positions) pos.push_back({q.x, q.y});
    cur["sca_positions"] = pos;
    cur["sca_objectives"] = tr.objectives;
  };
  hooks.on_slot_end = [&](int t, const BanditStats& b) {
    if (t > slots) return;
    cur["bandit"] = b.dump();
    lines << cur.dump() << "\n";
  };
  run(cfg, &hooks);
  write_text(out, lines.str());
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"space-air-ground integrated edge computing simulator"};
  app.require_subcommand(1);

  std::string config_path, format = "json", out, summary;
  std::string axis, out_dir = "sweep_out";
  std::vector<double> values;
  std::vector<std::string> policies;
  int seeds = 20, slots = 10;
  bool emit_slots = false;

  CLI::App* c_run = app.add_subcommand("run", "simulate one episode");
  c_run->allow_extras();
  c_run->add_option("--config", config_path, "JSON config file");
  c_run->add_option("--format", format, "csv|json (default json)");
  c_run->add_option("--out", out, "output path ('-' or empty -> stdout)");
  c_run->add_option("--summary", summary, "also write a JSON summary here");

  CLI::App* c_sweep =
      app.add_subcommand("sweep", "factorial policy/value/seed sweep");
  c_sweep->allow_extras();
  c_sweep->add_option("--config", config_path, "JSON config file");
  c_sweep->add_option("--axis", axis, "task_size|uav_compute|v_coeff")
      ->required();
  c_sweep->add_option("--values", values, "axis values")
      ->required()
      ->delimiter(',');
  c_sweep->add_option("--policies", policies, "default: all five")
      ->delimiter(',');
  c_sweep->add_option("--seeds", seeds, "seeds per cell (default 20)");
  c_sweep->add_option("--out-dir", out_dir, "output directory");
  c_sweep->add_flag("--emit-slots", emit_slots, "write per-run CSV files");

  CLI::App* c_val =
      app.add_subcommand("validate-config", "normalize and echo the config");
  c_val->allow_extras();
  c_val->add_option("--config", config_path, "JSON config file");

  CLI::App* c_tr =
      app.add_subcommand("dump-traces", "per-slot decision/solver traces");
  c_tr->allow_extras();
  c_tr->add_option("--config", config_path, "JSON config file");
  c_tr->add_option("--slots", slots, "how many slots to dump (default 10)");
  c_tr->add_option("--out", out, "output path ('-' or empty -> stdout)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  }

  try {
    if (c_run->parsed()) {
      auto ov = overrides_from_extras(c_run->remaining());
      return cmd_run(config_path, ov, format, out, summary);
    }
    if (c_sweep->parsed()) {
      auto ov = overrides_from_extras(c_sweep->remaining());
      return cmd_sweep(config_path, ov, axis, values, policies, seeds, out_dir,
                       emit_slots);
    }
    if (c_val->parsed()) {
      auto ov = overrides_from_extras(c_val->remaining());
      return cmd_validate(config_path, ov);
    }
    if (c_tr->parsed()) {
      auto ov = overrides_from_extras(c_tr->remaining());
      return cmd_traces(config_path, ov, slots, out);
    }
  } catch (const ConfigError& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 3;
  }
  return 2;
}
