#include "uavmesh/feasibility.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <ostream>
#include <string>

namespace uavmesh {

namespace {

// SOC of a UAV battery that leaves the ES at `start`, flies out, serves an AP
// duty of `duty_s` at comm power.
StateOfCharge after_duty(StateOfCharge start, double flight_s, double duty_s, const SystemParams& p) {
  StateOfCharge soc = discharge(start, p.flight.fly_power_W, flight_s, p.battery);
  return discharge(soc, p.flight.comm_power_W, duty_s, p.battery);
}

}  // namespace

bool FeasibilityReport::constraints_ok() const {
  return std::all_of(per_ap.begin(), per_ap.end(),
                     [](const ApFeasibility& a) { return a.replenish_ok && a.outbound_ok && a.return_ok; });
}

FeasibilityReport check_constraints(const Topology& topology, ModelKind model, const SystemParams& params) {
  params.validate();
  const auto& battery = params.battery;
  const auto& flight = params.flight;

  FeasibilityReport report{.model = model};
  int ap_count = static_cast<int>(topology.size());
  report.baseline_uavs = baseline_uavs(model, ap_count);
  report.lower_bound_uavs = lower_bound_uavs(model, ap_count);
  report.ap_lifetime_s = time_to_empty(StateOfCharge::full(), flight.comm_power_W, battery);

  double worst_flight = flight_time(topology.max_es_distance(), flight);
  StateOfCharge replenished = is_replacement(model) ? StateOfCharge::full() : StateOfCharge(battery.full_threshold_pct);

  if (model == ModelKind::SptCh) {
    double gain = params.transfer.ap_gain_mAh_per_s(battery, flight.comm_power_W);
    double deficit = battery.mAh_from_soc(StateOfCharge(battery.full_threshold_pct));
    report.transfer_s = gain > 0.0 ? deficit / gain : INFINITY;
  }

  // The duty cycle is the relief interval of the baseline rotation (one
  // redundant UAV per position): 2 T_f + T_ES. For CH models T_ES depends on
  // the SOC the battery returns with, so iterate to the fixed point.
  double replenish = 0.0;
  StateOfCharge arrival = replenished;
  for (int iter = 0; iter < 500; ++iter) {
    double duty = 2.0 * worst_flight + replenish;
    arrival = discharge(after_duty(replenished, worst_flight, duty, params), flight.fly_power_W, worst_flight, battery);
    double next = is_replacement(model) ? 0.0 : time_to_full(arrival, battery) + report.transfer_s;
    bool done = std::abs(next - replenish) < 1e-6;
    replenish = next;
    if (done || !std::isfinite(next)) break;
  }
  report.replenish_s = replenish;
  report.duty_s = 2.0 * worst_flight + replenish;
  report.arrival_soc_pct = arrival.pct();
  report.endurance_s = time_to_empty(replenished, flight.fly_power_W, battery);
  report.endurance_after_duty_s =
      time_to_empty(after_duty(replenished, worst_flight, report.duty_s, params), flight.fly_power_W, battery);

  std::vector<double> flights;
  for (const auto& ap : topology.aps()) {
    double d = topology.es_distance(ap.id);
    double tf = flight_time(d, flight);
    flights.push_back(tf);
    report.per_ap.push_back({.id = ap.id,
                             .distance_m = d,
                             .flight_s = tf,
                             .replenish_ok = 2.0 * tf + report.replenish_s < report.ap_lifetime_s,
                             .outbound_ok = tf < report.endurance_s,
                             .return_ok = tf < report.endurance_after_duty_s});
  }
  report.single_redundant_ok = check_single_redundant(ap_count, flights, report.replenish_s, report.ap_lifetime_s);
  return report;
}

bool check_single_redundant(const Topology& topology, ModelKind model, const SystemParams& params) {
  return check_constraints(topology, model, params).single_redundant_ok;
}

bool check_single_redundant(int ap_count, std::span<const double> flight_s, double replenish_s, double ap_lifetime_s) {
  return std::all_of(flight_s.begin(), flight_s.end(), [&](double tf) {
    return static_cast<double>(ap_count) * (2.0 * tf + replenish_s) < ap_lifetime_s;
  });
}

void write_feasibility_csv(std::ostream& out, const FeasibilityReport& r) {
  out << "i,d_m,Tf_s,c2,c3,c4\n";
  char buf[256];
  for (const auto& a : r.per_ap) {
    std::snprintf(buf, sizeof buf, "%d,%.6g,%.6g,%d,%d,%d\n", a.id, a.distance_m, a.flight_s, a.replenish_ok ? 1 : 0,
                  a.outbound_ok ? 1 : 0, a.return_ok ? 1 : 0);
    out << buf;
  }
  std::snprintf(buf, sizeof buf,
                "# summary,model=%s,T_AP_s=%.6g,T_ES_s=%.6g,T_UA_s=%.6g,T_b_s=%.6g,T_b_prime_s=%.6g,"
                "single_redundant=%d,baseline=%d,lower_bound=%d\n",
                std::string(to_string(r.model)).c_str(), r.ap_lifetime_s, r.replenish_s, r.transfer_s, r.endurance_s,
                r.endurance_after_duty_s, r.single_redundant_ok ? 1 : 0, r.baseline_uavs, r.lower_bound_uavs);
  out << buf;
}

}  // namespace uavmesh
