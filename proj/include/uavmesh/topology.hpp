#pragma once

#include <iosfwd>
#include <string>
#include <string_view>
#include <vector>

namespace uavmesh {

struct Point {
  double x = 0.0;
  double y = 0.0;
  double z = 0.0;

  friend bool operator==(const Point&, const Point&) = default;
};

double distance(const Point& a, const Point& b);

enum class TopologyKind { Line, Grid, Custom };

std::string_view to_string(TopologyKind kind);
/// Accepts "line" and "grid"; throws std::invalid_argument otherwise.
TopologyKind parse_topology_kind(std::string_view text);

struct ApPosition {
  int id;  // 1-based, contiguous
  Point position;
};

class Topology {
 public:
  Topology(TopologyKind kind, int n, double spacing_m, std::vector<ApPosition> aps, std::vector<Point> energy_stations);

  TopologyKind kind() const { return kind_; }
  int n() const { return n_; }
  double spacing_m() const { return spacing_m_; }
  std::size_t size() const { return aps_.size(); }
  const std::vector<ApPosition>& aps() const { return aps_; }
  const ApPosition& ap(int id) const { return aps_.at(static_cast<std::size_t>(id - 1)); }
  const std::vector<Point>& energy_stations() const { return energy_stations_; }
  /// The ES closest to the given AP.
  const Point& es_for(int ap_id) const;

  /// d_i: distance from AP i to its closest ES.
  double es_distance(int ap_id) const;
  double max_es_distance() const;

  /// Same AP layout with the ES moved.
  Topology with_energy_station(const Point& es) const;

 private:
  TopologyKind kind_;
  int n_;
  double spacing_m_;
  std::vector<ApPosition> aps_;
  std::vector<Point> energy_stations_;
  std::vector<double> es_distance_;
};

// Topology I: APs at x = i * spacing, ES at the origin.
Topology make_line(int n, double spacing_m = 100.0);
// Topology II: n x n grid whose corner nearest the ES is at (spacing, spacing).
Topology make_grid(int n, double spacing_m = 100.0);
Topology make_topology(TopologyKind kind, int n, double spacing_m = 100.0);

struct FlightParams {
  double speed_m_s = 15.0;
  double fly_power_W = 18.0;
  double comm_power_W = 2.0;

  void validate() const;
};

/// One-way straight-line trip time T_f.
double flight_time(double distance_m, const FlightParams& fp);

void write_topology_csv(std::ostream& out, const Topology& topology);

}  // namespace uavmesh
