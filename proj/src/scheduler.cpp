#include "uavmesh/scheduler.hpp"

#include <algorithm>
#include <stdexcept>

namespace uavmesh {

std::string_view to_string(UavPhase phase) {
  switch (phase) {
    case UavPhase::AtAp:
      return "at_ap";
    case UavPhase::FlyingToEs:
      return "to_es";
    case UavPhase::AtEs:
      return "at_es";
    case UavPhase::FlyingToAp:
      return "to_ap";
  }
  return "?";
}

std::optional<ArrivalStamp> UavState::arrival_at(int ap_id) const {
  auto idx = static_cast<std::size_t>(ap_id - 1);
  if (ap_id < 1 || idx >= arrivals.size()) return std::nullopt;
  return arrivals[idx];
}

int select_ap_position(std::span<const ApState> aps) {
  if (aps.empty()) throw std::invalid_argument("select_ap_position: no AP positions");
  int fewest = std::min_element(aps.begin(), aps.end(), [](const ApState& a, const ApState& b) {
                 return a.associated_count < b.associated_count;
               })->associated_count;
  const ApState* best = nullptr;
  for (const auto& ap : aps) {
    if (ap.associated_count != fewest) continue;
    if (!best || ap.battery < best->battery || (ap.battery == best->battery && ap.id < best->id)) best = &ap;
  }
  return best->id;
}

bool joint_departure_check(const UavState& uav, int ap_id, std::span<const UavState> uavs) {
  auto mine = uav.arrival_at(ap_id);
  if (!mine) return false;
  return std::any_of(uavs.begin(), uavs.end(), [&](const UavState& v) {
    if (v.id == uav.id || v.associated_ap != ap_id || v.phase != UavPhase::AtAp) return false;
    auto theirs = v.arrival_at(ap_id);
    return theirs && *theirs > *mine;
  });
}

ReplenishOutcome es_replenish(UavState& uav, EsPool& pool, ModelKind model, const BatteryParams& battery) {
  if (uav.phase != UavPhase::AtEs) throw std::logic_error("es_replenish: UAV is not at the ES");
  ReplenishOutcome out;
  if (!is_replacement(model)) {
    out.elapsed_s = time_to_full(uav.battery, battery);
    uav.battery = charge(uav.battery, out.elapsed_s, battery);
    return out;
  }
  if (pool.batteries.empty()) {
    out.pool_exhausted = true;
    return out;
  }
  auto best = std::max_element(pool.batteries.begin(), pool.batteries.end(),
                               [](const PoolBattery& a, const PoolBattery& b) {
                                 return a.soc < b.soc || (a.soc == b.soc && a.id > b.id);
                               });
  PoolBattery taken = *best;
  *best = PoolBattery{uav.battery_id, uav.battery};
  out.returned_battery_id = uav.battery_id;
  uav.battery_id = taken.id;
  uav.battery = taken.soc;
  return out;
}

StateOfCharge return_reserve(double return_flight_s, const SystemParams& params) {
  DischargeProfile fly(params.battery, params.flight.fly_power_W);
  return fly.before(StateOfCharge(params.transfer.reserve_margin_pct), return_flight_s);
}

ServiceOutcome separate_service(UavState& uav, ApState& ap, ModelKind model, double return_flight_s,
                                const SystemParams& params) {
  if (is_joint(model)) throw std::logic_error("separate_service: joint model");
  ServiceOutcome out;
  if (model == ModelKind::SptRp) {
    std::swap(uav.battery, ap.battery);
    int ap_battery = ap.battery_id.value_or(-1);
    ap.battery_id = uav.battery_id;
    uav.battery_id = ap_battery;
    out.swapped = true;
    return out;
  }
  if (ap.battery > uav.battery) return out;
  const auto& battery = params.battery;
  StateOfCharge full(battery.full_threshold_pct);
  StateOfCharge reserve = return_reserve(return_flight_s, params);
  double gain = params.transfer.ap_gain_mAh_per_s(battery, params.flight.comm_power_W);
  if (gain <= 0.0 || ap.battery >= full || uav.battery <= reserve) return out;

  double power = params.transfer.effective_power_W(battery);
  double until_full = (battery.mAh_from_soc(full) - battery.mAh_from_soc(ap.battery)) / gain;
  double until_reserve = time_to_soc(uav.battery, power, reserve, battery);
  out.elapsed_s = std::min(until_full, until_reserve);
  out.transferred = out.elapsed_s > 0.0;
  uav.battery = discharge(uav.battery, power, out.elapsed_s, battery);
  ap.battery = battery.soc_from_mAh(battery.mAh_from_soc(ap.battery) + gain * out.elapsed_s);
  return out;
}

}  // namespace uavmesh
