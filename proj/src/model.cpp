#include "uavmesh/model.hpp"

#include <algorithm>
#include <cctype>
#include <stdexcept>
#include <string>

namespace uavmesh {

std::string_view to_string(ModelKind kind) {
  switch (kind) {
    case ModelKind::JntCh:
      return "JNT-CH";
    case ModelKind::JntRp:
      return "JNT-RP";
    case ModelKind::SptCh:
      return "SPT-CH";
    case ModelKind::SptRp:
      return "SPT-RP";
  }
  return "?";
}

ModelKind parse_model_kind(std::string_view text) {
  std::string norm(text);
  for (auto& c : norm) c = c == '_' ? '-' : static_cast<char>(std::toupper(static_cast<unsigned char>(c)));
  for (auto kind : kAllModels)
    if (norm == to_string(kind)) return kind;
  throw std::invalid_argument("unknown model '" + std::string(text) + "' (expected JNT-CH, JNT-RP, SPT-CH or SPT-RP)");
}

int baseline_uavs(ModelKind kind, int ap_count) { return is_joint(kind) ? 2 * ap_count : ap_count; }

int lower_bound_uavs(ModelKind kind, int ap_count) { return is_joint(kind) ? ap_count + 1 : 1; }

double TransferParams::effective_power_W(const BatteryParams& battery) const {
  if (power_W > 0.0) return power_W;
  // mAh/s * V * 3.6 = W
  return battery.cc_rate_mAh_per_s * battery.nominal_voltage_V * 3.6;
}

double TransferParams::ap_gain_mAh_per_s(const BatteryParams& battery, double comm_power_W) const {
  double net_W = effective_power_W(battery) * efficiency - comm_power_W;
  return net_W / battery.nominal_voltage_V / 3.6;
}

void TransferParams::validate() const {
  if (power_W < 0.0) throw std::invalid_argument("transfer power must be >= 0");
  if (!(efficiency > 0.0 && efficiency <= 1.0)) throw std::invalid_argument("transfer efficiency must lie in (0, 1]");
  if (!(reserve_margin_pct >= 0.0 && reserve_margin_pct < 100.0))
    throw std::invalid_argument("reserve margin must lie in [0, 100)");
}

}  // namespace uavmesh
