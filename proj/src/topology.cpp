#include "uavmesh/topology.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <ostream>
#include <stdexcept>

namespace uavmesh {

double distance(const Point& a, const Point& b) {
  return std::sqrt((a.x - b.x) * (a.x - b.x) + (a.y - b.y) * (a.y - b.y) + (a.z - b.z) * (a.z - b.z));
}

std::string_view to_string(TopologyKind kind) {
  switch (kind) {
    case TopologyKind::Line:
      return "line";
    case TopologyKind::Grid:
      return "grid";
    case TopologyKind::Custom:
      return "custom";
  }
  return "custom";
}

TopologyKind parse_topology_kind(std::string_view text) {
  if (text == "line") return TopologyKind::Line;
  if (text == "grid") return TopologyKind::Grid;
  throw std::invalid_argument("unknown topology '" + std::string(text) + "' (expected line or grid)");
}

Topology::Topology(TopologyKind kind, int n, double spacing_m, std::vector<ApPosition> aps,
                   std::vector<Point> energy_stations)
    : kind_(kind), n_(n), spacing_m_(spacing_m), aps_(std::move(aps)), energy_stations_(std::move(energy_stations)) {
  if (aps_.empty()) throw std::invalid_argument("topology needs at least one AP position");
  if (energy_stations_.empty()) throw std::invalid_argument("topology needs an energy station");
  for (std::size_t k = 0; k < aps_.size(); ++k)
    if (aps_[k].id != static_cast<int>(k) + 1) throw std::invalid_argument("AP ids must be contiguous from 1");
  es_distance_.reserve(aps_.size());
  for (const auto& ap : aps_) {
    double best = std::numeric_limits<double>::infinity();
    for (const auto& es : energy_stations_) best = std::min(best, distance(ap.position, es));
    es_distance_.push_back(best);
  }
}

const Point& Topology::es_for(int ap_id) const {
  const Point& p = ap(ap_id).position;
  return *std::min_element(energy_stations_.begin(), energy_stations_.end(),
                           [&](const Point& a, const Point& b) { return distance(p, a) < distance(p, b); });
}

double Topology::es_distance(int ap_id) const { return es_distance_.at(static_cast<std::size_t>(ap_id - 1)); }

double Topology::max_es_distance() const { return *std::max_element(es_distance_.begin(), es_distance_.end()); }

Topology Topology::with_energy_station(const Point& es) const { return Topology(kind_, n_, spacing_m_, aps_, {es}); }

Topology make_line(int n, double spacing_m) {
  if (n < 1) throw std::invalid_argument("make_line: n must be >= 1");
  if (!(spacing_m > 0.0)) throw std::invalid_argument("make_line: spacing must be > 0");
  std::vector<ApPosition> aps;
  for (int i = 1; i <= n; ++i) aps.push_back({i, {i * spacing_m, 0.0, 0.0}});
  return Topology(TopologyKind::Line, n, spacing_m, std::move(aps), {Point{}});
}

Topology make_grid(int n, double spacing_m) {
  if (n < 1) throw std::invalid_argument("make_grid: n must be >= 1");
  if (!(spacing_m > 0.0)) throw std::invalid_argument("make_grid: spacing must be > 0");
  std::vector<ApPosition> aps;
  int id = 1;
  for (int r = 1; r <= n; ++r)
    for (int c = 1; c <= n; ++c) aps.push_back({id++, {r * spacing_m, c * spacing_m, 0.0}});
  return Topology(TopologyKind::Grid, n, spacing_m, std::move(aps), {Point{}});
}

Topology make_topology(TopologyKind kind, int n, double spacing_m) {
  switch (kind) {
    case TopologyKind::Line:
      return make_line(n, spacing_m);
    case TopologyKind::Grid:
      return make_grid(n, spacing_m);
    case TopologyKind::Custom:
      break;
  }
  throw std::invalid_argument("make_topology: custom topologies have no generator");
}

void FlightParams::validate() const {
  if (!(speed_m_s > 0.0)) throw std::invalid_argument("speed_m_s must be > 0");
  if (!(fly_power_W > 0.0)) throw std::invalid_argument("fly_power_W must be > 0");
  if (!(comm_power_W > 0.0)) throw std::invalid_argument("comm_power_W must be > 0");
}

double flight_time(double distance_m, const FlightParams& fp) {
  if (distance_m < 0.0) throw std::invalid_argument("flight_time: distance must be >= 0");
  return distance_m / fp.speed_m_s;
}

void write_topology_csv(std::ostream& out, const Topology& topology) {
  out << "id,x_m,y_m,z_m,d_m\n";
  char buf[160];
  for (const auto& ap : topology.aps()) {
    std::snprintf(buf, sizeof buf, "%d,%.6g,%.6g,%.6g,%.6g\n", ap.id, ap.position.x, ap.position.y, ap.position.z,
                  topology.es_distance(ap.id));
    out << buf;
  }
}

}  // namespace uavmesh
