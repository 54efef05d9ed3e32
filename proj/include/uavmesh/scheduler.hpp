#pragma once

#include <compare>
#include <cstdint>
#include <optional>
#include <span>
#include <string_view>
#include <vector>

#include "uavmesh/model.hpp"

namespace uavmesh {

enum class UavPhase { AtAp, FlyingToEs, AtEs, FlyingToAp };

std::string_view to_string(UavPhase phase);

/// Orders arrivals at one AP position. Arrivals at the same instant are
/// ordered by the global sequence in which they were recorded.
struct ArrivalStamp {
  double time_s = 0.0;
  std::uint64_t sequence = 0;

  friend auto operator<=>(const ArrivalStamp&, const ArrivalStamp&) = default;
};

struct UavState {
  int id = 0;
  UavPhase phase = UavPhase::AtAp;
  Point position;
  std::optional<int> associated_ap;
  StateOfCharge battery;
  int battery_id = -1;
  /// Latest arrival T_u(i) per AP position, indexed by id - 1.
  std::vector<std::optional<ArrivalStamp>> arrivals;

  std::optional<ArrivalStamp> arrival_at(int ap_id) const;
};

struct ApState {
  int id = 0;
  /// Joint models: the UAV currently acting as the AP.
  std::optional<int> occupant_uav;
  /// Remaining capacity of the device located at the position.
  StateOfCharge battery;
  /// Separate models: the battery installed in the AP device.
  std::optional<int> battery_id;
  /// M_i
  int associated_count = 0;
};

/// Next AP position for a UAV leaving the ES: fewest associated UAVs, then
/// least remaining battery, then lowest id.
int select_ap_position(std::span<const ApState> aps);

/// True when another UAV associated with `ap_id` arrived there after `uav`.
bool joint_departure_check(const UavState& uav, int ap_id, std::span<const UavState> uavs);

struct PoolBattery {
  int id;
  StateOfCharge soc;
};

/// Spare batteries at the ES. Every port charges (unlimited ports).
struct EsPool {
  std::vector<PoolBattery> batteries;
};

struct ReplenishOutcome {
  double elapsed_s = 0.0;
  bool pool_exhausted = false;
  /// RP models: the battery that left the UAV for the pool.
  std::optional<int> returned_battery_id;
};

/// CH: charge the installed battery to the full threshold. RP: swap it with
/// the most-charged pool battery in zero time.
ReplenishOutcome es_replenish(UavState& uav, EsPool& pool, ModelKind model, const BatteryParams& battery);

/// SOC a UAV must keep at an AP position to fly back to the ES with the
/// reserve margin left.
StateOfCharge return_reserve(double return_flight_s, const SystemParams& params);

struct ServiceOutcome {
  double elapsed_s = 0.0;
  bool transferred = false;
  bool swapped = false;
};

/// What a UAV does for the separate AP it visits. SPT-RP swaps the two
/// batteries. SPT-CH transfers energy when the AP holds no more than the UAV,
/// until the AP is full or the UAV reaches its return reserve.
ServiceOutcome separate_service(UavState& uav, ApState& ap, ModelKind model, double return_flight_s,
                                const SystemParams& params);

}  // namespace uavmesh
