#include "uavmesh/config.hpp"

#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <functional>
#include <set>
#include <sstream>

namespace uavmesh {

namespace {

std::string_view trim(std::string_view s) {
  const char* ws = " \t\r";
  auto b = s.find_first_not_of(ws);
  if (b == std::string_view::npos) return {};
  auto e = s.find_last_not_of(ws);
  return s.substr(b, e - b + 1);
}

double to_double(std::string_view key, std::string_view value) {
  double out = 0.0;
  auto [ptr, ec] = std::from_chars(value.data(), value.data() + value.size(), out);
  if (ec != std::errc() || ptr != value.data() + value.size() || !std::isfinite(out))
    throw ConfigError("bad number for '" + std::string(key) + "': '" + std::string(value) + "'");
  return out;
}

long long to_int(std::string_view key, std::string_view value) {
  long long out = 0;
  auto [ptr, ec] = std::from_chars(value.data(), value.data() + value.size(), out);
  if (ec != std::errc() || ptr != value.data() + value.size())
    throw ConfigError("bad integer for '" + std::string(key) + "': '" + std::string(value) + "'");
  return out;
}

int to_count(std::string_view key, std::string_view value) {
  long long v = to_int(key, value);
  if (v < 0 || v > 1'000'000) throw ConfigError("out-of-range count for '" + std::string(key) + "'");
  return static_cast<int>(v);
}

std::string fmt(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.10g", v);
  return buf;
}

template <typename F>
auto rethrow_as_config(F&& f) {
  try {
    return f();
  } catch (const std::invalid_argument& e) {
    throw ConfigError(e.what());
  }
}

}  // namespace

std::vector<std::pair<std::string, std::string>> parse_config_text(std::string_view text) {
  std::vector<std::pair<std::string, std::string>> out;
  std::set<std::string, std::less<>> seen;
  int line_no = 0;
  while (!text.empty()) {
    ++line_no;
    auto nl = text.find('\n');
    std::string_view line = text.substr(0, nl);
    text = nl == std::string_view::npos ? std::string_view{} : text.substr(nl + 1);
    if (auto hash = line.find('#'); hash != std::string_view::npos) line = line.substr(0, hash);
    line = trim(line);
    if (line.empty()) continue;
    auto eq = line.find('=');
    if (eq == std::string_view::npos)
      throw ConfigError("config line " + std::to_string(line_no) + ": expected 'key = value'");
    std::string key(trim(line.substr(0, eq)));
    std::string value(trim(line.substr(eq + 1)));
    if (key.empty()) throw ConfigError("config line " + std::to_string(line_no) + ": empty key");
    if (!seen.insert(key).second) throw ConfigError("config line " + std::to_string(line_no) + ": duplicate key '" + key + "'");
    out.emplace_back(std::move(key), std::move(value));
  }
  return out;
}

std::vector<std::pair<std::string, std::string>> read_config_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open config file '" + path + "'");
  std::stringstream ss;
  ss << in.rdbuf();
  return parse_config_text(ss.str());
}

void apply_setting(Settings& s, std::string_view key, std::string_view value) {
  auto& b = s.params.battery;
  auto& f = s.params.flight;
  auto& x = s.params.transfer;
  auto num = [&] { return to_double(key, value); };

  if (key == "model") {
    s.model = rethrow_as_config([&] { return parse_model_kind(value); });
  } else if (key == "models") {
    std::vector<ModelKind> models;
    if (value == "all") {
      models.assign(kAllModels.begin(), kAllModels.end());
    } else {
      std::string_view rest = value;
      while (!rest.empty()) {
        auto comma = rest.find(',');
        auto item = trim(rest.substr(0, comma));
        models.push_back(rethrow_as_config([&] { return parse_model_kind(item); }));
        rest = comma == std::string_view::npos ? std::string_view{} : rest.substr(comma + 1);
      }
    }
    if (models.empty()) throw ConfigError("models: empty list");
    s.models = std::move(models);
  } else if (key == "topology") {
    s.topology = rethrow_as_config([&] { return parse_topology_kind(value); });
  } else if (key == "n") {
    s.n = to_count(key, value);
  } else if (key == "n_min") {
    s.n_min = to_count(key, value);
  } else if (key == "n_max") {
    s.n_max = to_count(key, value);
  } else if (key == "spacing_m") {
    s.spacing_m = num();
  } else if (key == "uav_count") {
    s.uav_count = to_count(key, value);
  } else if (key == "batteries") {
    s.batteries = to_count(key, value);
  } else if (key == "horizon_s") {
    s.horizon_s = num();
  } else if (key == "timeline_step_s") {
    s.timeline_step_s = num();
  } else if (key == "seed") {
    s.seed = to_int(key, value);
  } else if (key == "threads") {
    s.threads = static_cast<unsigned>(to_count(key, value));
  } else if (key == "capacity_mAh") {
    b.capacity_mAh = num();
  } else if (key == "nominal_voltage_V") {
    b.nominal_voltage_V = num();
  } else if (key == "exponent_n") {
    b.exponent_n = num();
  } else if (key == "cc_cv_breakpoint_s") {
    b.cc_cv_breakpoint_s = num();
  } else if (key == "cc_rate_mAh_per_s") {
    b.cc_rate_mAh_per_s = num();
  } else if (key == "full_threshold_pct") {
    b.full_threshold_pct = num();
  } else if (key == "speed_m_s") {
    f.speed_m_s = num();
  } else if (key == "fly_power_W") {
    f.fly_power_W = num();
  } else if (key == "comm_power_W") {
    f.comm_power_W = num();
  } else if (key == "transfer_power_W") {
    x.power_W = num();
  } else if (key == "transfer_efficiency") {
    x.efficiency = num();
  } else if (key == "reserve_margin_pct") {
    x.reserve_margin_pct = num();
  } else if (key == "curve_mode") {
    if (value == "charge")
      s.curve_mode = CurveMode::Charge;
    else if (value == "discharge")
      s.curve_mode = CurveMode::Discharge;
    else
      throw ConfigError("curve_mode must be charge or discharge");
  } else if (key == "curve_power_W") {
    s.curve_power_W = num();
  } else if (key == "curve_step_s") {
    s.curve_step_s = num();
  } else {
    throw ConfigError("unknown config key '" + std::string(key) + "'");
  }
}

std::vector<std::pair<std::string, std::string>> describe(const Settings& s) {
  std::string models;
  for (auto m : s.models) models += (models.empty() ? "" : ",") + std::string(to_string(m));
  const auto& b = s.params.battery;
  const auto& f = s.params.flight;
  const auto& x = s.params.transfer;
  return {
      {"model", std::string(to_string(s.model))},
      {"models", models},
      {"topology", std::string(to_string(s.topology))},
      {"n", std::to_string(s.n)},
      {"n_min", std::to_string(s.n_min)},
      {"n_max", std::to_string(s.n_max)},
      {"spacing_m", fmt(s.spacing_m)},
      {"uav_count", s.uav_count ? std::to_string(*s.uav_count) : "auto"},
      {"batteries", s.batteries ? std::to_string(*s.batteries) : "auto"},
      {"horizon_s", fmt(s.horizon_s)},
      {"timeline_step_s", fmt(s.timeline_step_s)},
      {"seed", std::to_string(s.seed)},
      {"capacity_mAh", fmt(b.capacity_mAh)},
      {"nominal_voltage_V", fmt(b.nominal_voltage_V)},
      {"exponent_n", fmt(b.exponent_n)},
      {"cc_cv_breakpoint_s", fmt(b.cc_cv_breakpoint_s)},
      {"cc_rate_mAh_per_s", fmt(b.cc_rate_mAh_per_s)},
      {"full_threshold_pct", fmt(b.full_threshold_pct)},
      {"speed_m_s", fmt(f.speed_m_s)},
      {"fly_power_W", fmt(f.fly_power_W)},
      {"comm_power_W", fmt(f.comm_power_W)},
      {"transfer_power_W", fmt(x.effective_power_W(b))},
      {"transfer_efficiency", fmt(x.efficiency)},
      {"reserve_margin_pct", fmt(x.reserve_margin_pct)},
      {"curve_mode", s.curve_mode == CurveMode::Charge ? "charge" : "discharge"},
      {"curve_power_W", fmt(s.curve_power_W)},
      {"curve_step_s", fmt(s.curve_step_s)},
  };
}

}  // namespace uavmesh
