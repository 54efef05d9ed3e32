#pragma once

#include <iosfwd>
#include <span>
#include <vector>

#include "uavmesh/model.hpp"

namespace uavmesh {

struct ApFeasibility {
  int id;
  double distance_m;
  double flight_s;         // T_f(d_i)
  bool replenish_ok;       // 2 T_f + T_ES < T_AP
  bool outbound_ok;        // T_f < T_b
  bool return_ok;          // T_f < T'_b
};

struct FeasibilityReport {
  ModelKind model;
  std::vector<ApFeasibility> per_ap;
  bool single_redundant_ok = false;
  double ap_lifetime_s = 0.0;         // T_AP
  double replenish_s = 0.0;           // T_ES, including T_UA for SPT-CH
  double transfer_s = 0.0;            // T_UA (SPT-CH only)
  double endurance_s = 0.0;           // T_b
  double endurance_after_duty_s = 0.0;  // T'_b
  double duty_s = 0.0;                // AP duty cycle used for T'_b and the CH arrival SOC
  double arrival_soc_pct = 100.0;     // SOC on return to the ES after one duty cycle
  int baseline_uavs = 0;
  int lower_bound_uavs = 0;

  bool constraints_ok() const;
};

/// Evaluates the three per-position constraints and the single-redundant-UAV
/// condition for a topology. Infeasibility is reported, never thrown.
FeasibilityReport check_constraints(const Topology& topology, ModelKind model, const SystemParams& params);

bool check_single_redundant(const Topology& topology, ModelKind model, const SystemParams& params);

/// N (2 T_f(d_i) + T_ES) < T_AP for every i.
bool check_single_redundant(int ap_count, std::span<const double> flight_s, double replenish_s, double ap_lifetime_s);

void write_feasibility_csv(std::ostream& out, const FeasibilityReport& report);

}  // namespace uavmesh
