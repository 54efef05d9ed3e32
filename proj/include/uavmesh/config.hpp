#pragma once

#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "uavmesh/battery.hpp"
#include "uavmesh/model.hpp"

namespace uavmesh {

struct ConfigError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// Every parameter a command can take, after the config file and flag
/// overrides are applied. Units are fixed: m, s, W, mAh, percent.
struct Settings {
  ModelKind model = ModelKind::JntRp;
  std::vector<ModelKind> models{kAllModels.begin(), kAllModels.end()};
  TopologyKind topology = TopologyKind::Line;
  int n = 4;
  int n_min = 1;
  int n_max = 8;
  double spacing_m = 100.0;
  std::optional<int> uav_count;
  /// Total battery census for RP runs; empty selects the ample pool.
  std::optional<int> batteries;
  double horizon_s = 172800.0;
  double timeline_step_s = 0.0;
  long long seed = 0;
  SystemParams params;
  CurveMode curve_mode = CurveMode::Discharge;
  double curve_power_W = 18.0;
  double curve_step_s = 60.0;
  unsigned threads = 0;
};

/// `key = value` lines; '#' starts a comment. Throws ConfigError on lines
/// without '=' or on a repeated key.
std::vector<std::pair<std::string, std::string>> parse_config_text(std::string_view text);
std::vector<std::pair<std::string, std::string>> read_config_file(const std::string& path);

/// Throws ConfigError for unknown keys and malformed values.
void apply_setting(Settings& settings, std::string_view key, std::string_view value);

/// Effective values in a fixed key order, for echoing into outputs.
std::vector<std::pair<std::string, std::string>> describe(const Settings& settings);

}  // namespace uavmesh
