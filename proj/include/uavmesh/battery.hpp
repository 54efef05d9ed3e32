#pragma once

#include <iosfwd>
#include <span>
#include <utility>
#include <vector>

namespace uavmesh {

// Percent of nominal capacity, always clamped to [0, 100].
class StateOfCharge {
 public:
  constexpr StateOfCharge() = default;
  constexpr explicit StateOfCharge(double pct) : pct_(pct < 0.0 ? 0.0 : (pct > 100.0 ? 100.0 : pct)) {}

  constexpr double pct() const { return pct_; }
  static constexpr StateOfCharge full() { return StateOfCharge(100.0); }
  static constexpr StateOfCharge empty() { return StateOfCharge(0.0); }

  friend constexpr auto operator<=>(StateOfCharge, StateOfCharge) = default;

 private:
  double pct_ = 100.0;
};

/// Unique discharge curve g(D) = V * I^n as a piecewise-linear table over the
/// discharged capacity D in mAh.
class DischargeCurve {
 public:
  struct Point {
    double discharged_mAh;
    double v_i_n;
  };

  explicit DischargeCurve(std::vector<Point> points);

  /// Default table for a 2700 mAh Li-ion pack. Starts at 3.643 and is scaled
  /// so that a 2 W draw delivers 2700 mAh * 3.7 V.
  static DischargeCurve standard();

  double operator()(double discharged_mAh) const;
  std::span<const Point> points() const { return points_; }

 private:
  std::vector<Point> points_;
};

struct BatteryParams {
  double capacity_mAh = 2700.0;
  double nominal_voltage_V = 3.7;
  double exponent_n = 0.081;
  double cc_cv_breakpoint_s = 2238.0;
  double cc_rate_mAh_per_s = 2700.0 / 3600.0;
  double full_threshold_pct = 99.5;
  DischargeCurve discharge_curve = DischargeCurve::standard();

  /// Throws std::invalid_argument when an invariant is violated.
  void validate() const;

  double mAh_from_soc(StateOfCharge soc) const { return soc.pct() / 100.0 * capacity_mAh; }
  StateOfCharge soc_from_mAh(double mAh) const { return StateOfCharge(100.0 * mAh / capacity_mAh); }
};

/// Terminal voltage at constant power draw. Solves V * (P / V)^n = g, which
/// has the closed form V = (g / P^n)^(1 / (1 - n)).
double terminal_voltage(double v_i_n, double power_W, double exponent_n);

/// Time map of a constant-power discharge. Discharging from D_a to D_b takes
/// the integral of 3.6 * V(D) / P over [D_a, D_b] seconds; the profile
/// precomputes it per table segment.
class DischargeProfile {
 public:
  DischargeProfile(const BatteryParams& params, double power_W);

  double power_W() const { return power_W_; }

  /// Seconds to move from SOC `from` down to SOC `to` (to <= from).
  double seconds_between(StateOfCharge from, StateOfCharge to) const;
  /// SOC after discharging for dt_s seconds from `soc`.
  StateOfCharge after(StateOfCharge soc, double dt_s) const;
  double seconds_to_empty(StateOfCharge soc) const;
  /// SOC from which a dt_s discharge ends exactly at `target`; 100 % when even
  /// a full battery falls short.
  StateOfCharge before(StateOfCharge target, double dt_s) const;

 private:
  double elapsed_at(double discharged_mAh) const;
  double discharged_after(double seconds) const;
  double rate_inverse(double discharged_mAh) const;
  double segment_integral(double a, double b) const;

  DischargeCurve curve_;
  double exponent_n_;
  double capacity_mAh_;
  double power_W_;
  std::vector<double> nodes_;       // D at the table points, clipped to capacity
  std::vector<double> cumulative_;  // elapsed seconds from D = 0 to each node
};

StateOfCharge discharge(StateOfCharge soc, double power_W, double dt_s, const BatteryParams& params);

/// CC/CV charge at an ES port: linear at cc_rate until the breakpoint, then
/// exponential saturation with the same slope at the knee.
StateOfCharge charge(StateOfCharge soc, double dt_s, const BatteryParams& params);

/// Capacity in mAh reached after charging from empty for t seconds.
double charged_capacity_from_empty(double t_s, const BatteryParams& params);
/// Inverse of charged_capacity_from_empty. Infinite at or above capacity.
double charge_time_from_empty(double capacity_mAh, const BatteryParams& params);

/// Throws std::invalid_argument for power_W <= 0.
double time_to_empty(StateOfCharge soc, double power_W, const BatteryParams& params);
/// Seconds of discharge at power_W until SOC falls to `target`; 0 if already there.
double time_to_soc(StateOfCharge soc, double power_W, StateOfCharge target, const BatteryParams& params);
double time_to_full(StateOfCharge soc, const BatteryParams& params);

enum class CurveMode { Charge, Discharge };

struct CurveSample {
  double t_s;
  double soc_pct;
};

/// Sampled curve. Discharge curves start full and end at 0 %; charge curves
/// start empty, include the CC/CV knee and end at the full threshold.
std::vector<CurveSample> export_curve(CurveMode mode, double power_W, double step_s, const BatteryParams& params);

void write_curve_csv(std::ostream& out, std::span<const CurveSample> rows);

}  // namespace uavmesh
