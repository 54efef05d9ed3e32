#pragma once

#include <array>
#include <string_view>

#include "uavmesh/battery.hpp"
#include "uavmesh/topology.hpp"

namespace uavmesh {

/// UAV-AP operation model: joint (the UAV is the AP) or separate, combined
/// with charging at the ES or battery replacement.
enum class ModelKind { JntCh, JntRp, SptCh, SptRp };

inline constexpr std::array<ModelKind, 4> kAllModels = {ModelKind::JntCh, ModelKind::JntRp, ModelKind::SptCh,
                                                       ModelKind::SptRp};

std::string_view to_string(ModelKind kind);
/// Accepts "JNT-CH", "JNT-RP", "SPT-CH", "SPT-RP" (case-insensitive, '_' allowed).
ModelKind parse_model_kind(std::string_view text);

constexpr bool is_joint(ModelKind kind) { return kind == ModelKind::JntCh || kind == ModelKind::JntRp; }
constexpr bool is_replacement(ModelKind kind) { return kind == ModelKind::JntRp || kind == ModelKind::SptRp; }

/// Reference fleet sizes: 2N / N+1 for joint models, N / 1 for separate ones.
int baseline_uavs(ModelKind kind, int ap_count);
int lower_bound_uavs(ModelKind kind, int ap_count);

/// UAV-to-AP energy transfer in SPT-CH.
struct TransferParams {
  /// 0 selects the ES constant-current rate expressed in watts.
  double power_W = 0.0;
  double efficiency = 1.0;
  /// SOC kept above what the flight back to the ES needs.
  double reserve_margin_pct = 5.0;

  double effective_power_W(const BatteryParams& battery) const;
  /// SOC gain of the receiving AP battery in mAh/s; the AP keeps drawing
  /// comm power from the incoming transfer.
  double ap_gain_mAh_per_s(const BatteryParams& battery, double comm_power_W) const;
  void validate() const;
};

struct SystemParams {
  BatteryParams battery;
  FlightParams flight;
  TransferParams transfer;

  void validate() const {
    battery.validate();
    flight.validate();
    transfer.validate();
  }
};

}  // namespace uavmesh
