#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <span>
#include <string_view>
#include <vector>

#include "uavmesh/scheduler.hpp"

namespace uavmesh {

struct SimConfig {
  ModelKind model = ModelKind::JntRp;
  Topology topology = make_line(1);
  SystemParams params;
  int uav_count = 1;
  /// Spare batteries at the ES (RP models; ignored for CH).
  int pool_size = 0;
  double horizon_s = 172800.0;
  /// Timeline sampling period; 0 disables the timeline.
  double timeline_step_s = 0.0;
  /// Keep every battery mode change for offline replay.
  bool record_battery_log = false;

  void validate() const;
};

enum class FailureCause { ApDepleted, UavDepletedInFlight, PositionVacant, PoolExhausted };

std::string_view to_string(FailureCause cause);

struct Failure {
  double time_s;
  FailureCause cause;
  int device_id;  // AP id for AP-side causes, UAV id otherwise

  friend bool operator==(const Failure&, const Failure&) = default;
};

enum class DeviceKind { Uav, Ap, Pool };

std::string_view to_string(DeviceKind kind);

struct TimelineRow {
  double t_s;
  DeviceKind device_kind;
  int device_id;  // pool rows use the battery id
  int battery_id;
  double soc_pct;
  std::string_view phase;

  friend bool operator==(const TimelineRow&, const TimelineRow&) = default;
};

enum class BatteryMode { Idle, Discharge, EsCharge, TransferIn };

/// A battery follows `mode` from t_start until its next segment.
struct BatterySegment {
  int battery_id;
  double t_start;
  BatteryMode mode;
  double power_W;          // Discharge
  double rate_mAh_per_s;   // TransferIn

  friend bool operator==(const BatterySegment&, const BatterySegment&) = default;
};

struct SimReport {
  bool sustained = true;
  std::optional<Failure> failure;
  double min_ap_soc_pct = 100.0;
  /// Distinct batteries that were installed in a UAV or AP at some point.
  int batteries_used = 0;
  /// Every battery in the run: installed at t = 0 plus the ES pool.
  int battery_census = 0;
  std::vector<TimelineRow> timeline;
  std::uint64_t event_count = 0;
  std::vector<BatterySegment> battery_log;

  friend bool operator==(const SimReport&, const SimReport&) = default;
};

/// Device states at one instant, with every SOC evaluated at that instant.
struct SimState {
  ModelKind model;
  std::vector<UavState> uavs;
  std::vector<ApState> aps;
};

struct SustainVerdict {
  bool sustained = true;
  std::optional<FailureCause> cause;
  int device_id = 0;
};

/// Every AP position hosts a live device and no airborne UAV is empty.
SustainVerdict is_sustained_at(const SimState& state, double t_s);

SimReport run(const SimConfig& config);

void write_timeline_csv(std::ostream& out, std::span<const TimelineRow> rows);
void write_report_summary_header(std::ostream& out);
void write_report_summary_row(std::ostream& out, const SimConfig& config, const SimReport& report);

}  // namespace uavmesh
