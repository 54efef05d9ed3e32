#pragma once

#include <iosfwd>
#include <optional>
#include <span>
#include <vector>

#include "uavmesh/sim.hpp"

namespace uavmesh {

struct UavSearch {
  /// Smallest sustaining fleet in [lower bound, 2 * baseline]; empty when
  /// infeasible.
  std::optional<int> min_uavs;
  bool constraints_ok = false;
  /// Audit runs around the minimum.
  std::optional<bool> sustained_below;
  std::optional<bool> sustained_above;
  int runs = 0;

  bool monotone() const { return sustained_above.value_or(true) && !sustained_below.value_or(false); }
};

/// Spare batteries used while searching the fleet size, so battery scarcity
/// never masks UAV scarcity.
int ample_pool(int ap_count);

/// Ascending linear scan over the fleet size with the model's heuristic.
UavSearch find_min_uavs(ModelKind model, const Topology& topology, const SystemParams& params,
                        double horizon_s = 172800.0);

struct BatterySearch {
  /// Smallest battery census (installed at t = 0 plus ES pool).
  std::optional<int> min_batteries;
  std::optional<int> pool_size;
  int runs = 0;
};

/// RP models only; scans the pool size upward from 0.
BatterySearch find_min_batteries(ModelKind model, const Topology& topology, const SystemParams& params, int uav_count,
                                 double horizon_s = 172800.0);

struct SweepRow {
  ModelKind model;
  TopologyKind topology;
  int n;
  int ap_count;
  std::optional<int> min_uavs;
  int baseline;
  int lower_bound;
  std::optional<int> min_batteries;
  double horizon_s;
  bool monotone;
  bool single_redundant_ok;
};

/// models x [n_min, n_max], row order model-major then n. Cells run on up to
/// `threads` workers (0 = hardware concurrency); output does not depend on it.
std::vector<SweepRow> sweep(std::span<const ModelKind> models, TopologyKind kind, int n_min, int n_max,
                            const SystemParams& params, double horizon_s = 172800.0, unsigned threads = 0,
                            double spacing_m = 100.0);

void write_sweep_csv(std::ostream& out, std::span<const SweepRow> rows);

}  // namespace uavmesh
