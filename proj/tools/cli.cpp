#include "cli.hpp"

#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <map>
#include <memory>
#include <sstream>

#include "uavmesh/config.hpp"
#include "uavmesh/experiments.hpp"
#include "uavmesh/feasibility.hpp"

namespace uavmesh::cli {

namespace {

struct Flag {
  const char* name;  // command-line spelling
  const char* key;   // config key it overrides
  const char* help;
};

constexpr Flag kRunFlags[] = {
    {"--model", "model", "JNT-CH | JNT-RP | SPT-CH | SPT-RP"},
    {"--topology", "topology", "line | grid"},
    {"--n", "n", "topology size parameter"},
    {"--uavs", "uav_count", "fleet size (default: the model's lower bound)"},
    {"--batteries", "batteries", "RP models: total battery census (default: ample pool)"},
    {"--horizon-s", "horizon_s", "simulated horizon in seconds"},
};
constexpr Flag kSweepFlags[] = {
    {"--models", "models", "'all' or a comma-separated model list"},
    {"--topology", "topology", "line | grid"},
    {"--n-min", "n_min", "first n"},
    {"--n-max", "n_max", "last n"},
    {"--horizon-s", "horizon_s", "simulated horizon in seconds"},
    {"--threads", "threads", "worker threads (0 = all cores)"},
};
constexpr Flag kFeasibilityFlags[] = {
    {"--model", "model", "JNT-CH | JNT-RP | SPT-CH | SPT-RP"},
    {"--topology", "topology", "line | grid"},
    {"--n", "n", "topology size parameter"},
};
constexpr Flag kCurveFlags[] = {
    {"--mode", "curve_mode", "charge | discharge"},
    {"--power-w", "curve_power_W", "discharge power in W"},
    {"--step-s", "curve_step_s", "sampling step in seconds"},
};

struct Command {
  CLI::App* app = nullptr;
  std::map<std::string, std::string> values;  // config key -> flag text
  std::vector<std::pair<CLI::Option*, std::string>> options;
  std::string config;
  std::string out;
  std::string seed;
  bool timeline = false;
};

template <std::size_t N>
void add_flags(Command& cmd, const Flag (&flags)[N]) {
  for (const auto& f : flags) {
    auto* opt = cmd.app->add_option(f.name, cmd.values[f.key], f.help);
    cmd.options.emplace_back(opt, f.key);
  }
  cmd.app->add_option("--config", cmd.config, "key = value parameter file");
  cmd.app->add_option("--out", cmd.out, "CSV output path (default: standard output)");
  cmd.app->add_option("--seed", cmd.seed, "recorded only; the simulation is deterministic");
}

Settings resolve(const Command& cmd) {
  Settings settings;
  if (!cmd.config.empty())
    for (const auto& [key, value] : read_config_file(cmd.config)) apply_setting(settings, key, value);
  for (const auto& [opt, key] : cmd.options)
    if (opt->count() > 0) apply_setting(settings, key, cmd.values.at(key));
  if (!cmd.seed.empty()) apply_setting(settings, "seed", cmd.seed);
  if (cmd.timeline) settings.timeline_step_s = 60.0;
  settings.params.validate();
  return settings;
}

void echo(std::ostream& csv, std::string_view command, const Settings& settings) {
  csv << "# command = " << command << "\n";
  for (const auto& [key, value] : describe(settings)) csv << "# " << key << " = " << value << "\n";
}

// Writes to --out when given, otherwise to `fallback`.
class CsvSink {
 public:
  CsvSink(const std::string& path, std::ostream& fallback) {
    if (path.empty()) {
      stream_ = &fallback;
      return;
    }
    file_ = std::make_unique<std::ofstream>(path, std::ios::binary);
    if (!*file_) throw ConfigError("cannot open output file '" + path + "'");
    stream_ = file_.get();
  }
  std::ostream& operator*() { return *stream_; }

 private:
  std::unique_ptr<std::ofstream> file_;
  std::ostream* stream_ = nullptr;
};

int do_run(const Command& cmd, std::ostream& out) {
  Settings s = resolve(cmd);
  SimConfig cfg{.model = s.model,
                .topology = make_topology(s.topology, s.n, s.spacing_m),
                .params = s.params,
                .horizon_s = s.horizon_s,
                .timeline_step_s = s.timeline_step_s};
  int ap_count = static_cast<int>(cfg.topology.size());
  cfg.uav_count = s.uav_count.value_or(lower_bound_uavs(s.model, ap_count));
  if (is_replacement(s.model)) {
    int installed = cfg.uav_count + (is_joint(s.model) ? 0 : ap_count);
    if (s.batteries && *s.batteries < installed)
      throw ConfigError("--batteries " + std::to_string(*s.batteries) + " is below the " + std::to_string(installed) +
                        " batteries installed at t = 0");
    cfg.pool_size = s.batteries ? *s.batteries - installed : ample_pool(ap_count);
  } else if (s.batteries) {
    throw ConfigError("--batteries applies to RP models only");
  }
  s.uav_count = cfg.uav_count;
  SimReport report = run(cfg);

  CsvSink sink(cmd.out, out);
  echo(*sink, "run", s);
  if (cfg.timeline_step_s > 0.0) {
    write_timeline_csv(*sink, report.timeline);
  } else {
    write_report_summary_header(*sink);
    write_report_summary_row(*sink, cfg, report);
  }
  out << "# " << to_string(cfg.model) << " " << to_string(cfg.topology.kind()) << " n=" << cfg.topology.n()
      << " N=" << ap_count << " uavs=" << cfg.uav_count << " batteries=" << report.battery_census << ": "
      << (report.sustained ? "sustained" : "NOT sustained");
  if (report.failure)
    out << " (" << to_string(report.failure->cause) << " at t=" << report.failure->time_s << " s, device "
        << report.failure->device_id << ")";
  out << "\n";
  return report.sustained ? 0 : 1;
}

int do_sweep(const Command& cmd, std::ostream& out) {
  Settings s = resolve(cmd);
  auto rows = sweep(s.models, s.topology, s.n_min, s.n_max, s.params, s.horizon_s, s.threads, s.spacing_m);
  CsvSink sink(cmd.out, out);
  echo(*sink, "sweep", s);
  write_sweep_csv(*sink, rows);
  int infeasible = 0;
  for (const auto& r : rows)
    if (!r.min_uavs || (is_replacement(r.model) && !r.min_batteries)) ++infeasible;
  out << "# sweep: " << rows.size() << " cells, " << infeasible << " infeasible\n";
  return infeasible == 0 ? 0 : 1;
}

int do_feasibility(const Command& cmd, std::ostream& out) {
  Settings s = resolve(cmd);
  Topology topology = make_topology(s.topology, s.n, s.spacing_m);
  FeasibilityReport report = check_constraints(topology, s.model, s.params);
  CsvSink sink(cmd.out, out);
  echo(*sink, "feasibility", s);
  write_feasibility_csv(*sink, report);
  out << "# " << to_string(s.model) << " " << to_string(s.topology) << " n=" << s.n << ": constraints "
      << (report.constraints_ok() ? "hold" : "VIOLATED") << ", single redundant UAV "
      << (report.single_redundant_ok ? "suffices" : "does not suffice") << "\n";
  return report.constraints_ok() ? 0 : 1;
}

int do_curve(const Command& cmd, std::ostream& out) {
  Settings s = resolve(cmd);
  auto rows = export_curve(s.curve_mode, s.curve_power_W, s.curve_step_s, s.params.battery);
  CsvSink sink(cmd.out, out);
  echo(*sink, "battery-curve", s);
  write_curve_csv(*sink, rows);
  out << "# " << rows.size() << " samples\n";
  return 0;
}

}  // namespace

int parse_and_dispatch(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Discrete-event simulator for UAV-maintained wireless mesh networks", "sim"};
  app.require_subcommand(1);

  Command run_cmd, sweep_cmd, feas_cmd, curve_cmd;
  run_cmd.app = app.add_subcommand("run", "simulate one configuration");
  add_flags(run_cmd, kRunFlags);
  run_cmd.app->add_flag("--timeline", run_cmd.timeline, "emit per-device SOC samples every 60 s");
  sweep_cmd.app = app.add_subcommand("sweep", "minimum UAV and battery counts over a range of n");
  add_flags(sweep_cmd, kSweepFlags);
  feas_cmd.app = app.add_subcommand("feasibility", "analytic constraint check");
  add_flags(feas_cmd, kFeasibilityFlags);
  curve_cmd.app = app.add_subcommand("battery-curve", "export a charge or discharge curve");
  add_flags(curve_cmd, kCurveFlags);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return 0;
  } catch (const CLI::ParseError& e) {
    err << "sim: " << e.what() << "\n" << app.help();
    return 2;
  }

  try {
    if (run_cmd.app->parsed()) return do_run(run_cmd, out);
    if (sweep_cmd.app->parsed()) return do_sweep(sweep_cmd, out);
    if (feas_cmd.app->parsed()) return do_feasibility(feas_cmd, out);
    if (curve_cmd.app->parsed()) return do_curve(curve_cmd, out);
  } catch (const ConfigError& e) {
    err << "sim: " << e.what() << "\n";
    return 2;
  } catch (const std::invalid_argument& e) {
    err << "sim: " << e.what() << "\n";
    return 2;
  }
  err << app.help();
  return 2;
}

}  // namespace uavmesh::cli
