#include "uavmesh/battery.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdio>
#include <limits>
#include <ostream>
#include <stdexcept>

namespace uavmesh {

namespace {

// 5-point Gauss-Legendre on [-1, 1].
constexpr std::array<double, 5> kGaussNodes = {-0.9061798459386640, -0.5384693101056831, 0.0,
                                               0.5384693101056831, 0.9061798459386640};
constexpr std::array<double, 5> kGaussWeights = {0.2369268850561891, 0.4786286704993665, 0.5688888888888889,
                                                 0.4786286704993665, 0.2369268850561891};

// mAh per A*s.
constexpr double kMilliAmpHoursPerAmpSecond = 1000.0 / 3600.0;

}  // namespace

DischargeCurve::DischargeCurve(std::vector<Point> points) : points_(std::move(points)) {
  if (points_.empty()) throw std::invalid_argument("discharge curve needs at least one point");
  if (points_.front().discharged_mAh != 0.0) throw std::invalid_argument("discharge curve must start at D = 0");
  for (std::size_t k = 0; k < points_.size(); ++k) {
    if (!(points_[k].v_i_n > 0.0)) throw std::invalid_argument("discharge curve must be strictly positive");
    if (k > 0 && !(points_[k].discharged_mAh > points_[k - 1].discharged_mAh))
      throw std::invalid_argument("discharge curve capacities must be strictly increasing");
  }
}

DischargeCurve DischargeCurve::standard() {
  return DischargeCurve({{0.0, 3.643},
                         {100.0, 3.625},
                         {200.0, 3.614},
                         {2200.0, 3.5114},
                         {2400.0, 3.4314},
                         {2550.0, 3.2614},
                         {2650.0, 3.0114},
                         {2700.0, 2.7114}});
}

double DischargeCurve::operator()(double discharged_mAh) const {
  if (discharged_mAh <= points_.front().discharged_mAh) return points_.front().v_i_n;
  if (discharged_mAh >= points_.back().discharged_mAh) return points_.back().v_i_n;
  auto hi = std::upper_bound(points_.begin(), points_.end(), discharged_mAh,
                             [](double d, const Point& p) { return d < p.discharged_mAh; });
  auto lo = hi - 1;
  double w = (discharged_mAh - lo->discharged_mAh) / (hi->discharged_mAh - lo->discharged_mAh);
  return lo->v_i_n + w * (hi->v_i_n - lo->v_i_n);
}

void BatteryParams::validate() const {
  if (!(capacity_mAh > 0.0)) throw std::invalid_argument("capacity_mAh must be > 0");
  if (!(nominal_voltage_V > 0.0)) throw std::invalid_argument("nominal_voltage_V must be > 0");
  if (!(full_threshold_pct > 0.0 && full_threshold_pct <= 100.0))
    throw std::invalid_argument("full_threshold_pct must lie in (0, 100]");
  if (!(exponent_n >= 0.0 && exponent_n < 1.0)) throw std::invalid_argument("exponent_n must lie in [0, 1)");
  if (!(cc_cv_breakpoint_s >= 0.0)) throw std::invalid_argument("cc_cv_breakpoint_s must be >= 0");
  if (!(cc_rate_mAh_per_s > 0.0)) throw std::invalid_argument("cc_rate_mAh_per_s must be > 0");
}

double terminal_voltage(double v_i_n, double power_W, double exponent_n) {
  return std::pow(v_i_n / std::pow(power_W, exponent_n), 1.0 / (1.0 - exponent_n));
}

// ---------------------------------------------------------------------------
// Discharge

DischargeProfile::DischargeProfile(const BatteryParams& params, double power_W)
    : curve_(params.discharge_curve),
      exponent_n_(params.exponent_n),
      capacity_mAh_(params.capacity_mAh),
      power_W_(power_W) {
  if (!(power_W > 0.0)) throw std::invalid_argument("discharge profile needs power_W > 0");
  for (const auto& p : curve_.points()) {
    if (p.discharged_mAh >= capacity_mAh_) break;
    nodes_.push_back(p.discharged_mAh);
  }
  nodes_.push_back(capacity_mAh_);
  cumulative_.assign(nodes_.size(), 0.0);
  for (std::size_t k = 1; k < nodes_.size(); ++k)
    cumulative_[k] = cumulative_[k - 1] + segment_integral(nodes_[k - 1], nodes_[k]);
}

double DischargeProfile::rate_inverse(double discharged_mAh) const {
  double volts = terminal_voltage(curve_(discharged_mAh), power_W_, exponent_n_);
  // dt/dD = 1 / (I * mAh-per-As) with I = P / V.
  return volts / (power_W_ * kMilliAmpHoursPerAmpSecond);
}

double DischargeProfile::segment_integral(double a, double b) const {
  double half = 0.5 * (b - a);
  double mid = 0.5 * (a + b);
  double sum = 0.0;
  for (std::size_t k = 0; k < kGaussNodes.size(); ++k) sum += kGaussWeights[k] * rate_inverse(mid + half * kGaussNodes[k]);
  return half * sum;
}

double DischargeProfile::elapsed_at(double discharged_mAh) const {
  if (discharged_mAh <= 0.0) return 0.0;
  if (discharged_mAh >= capacity_mAh_) return cumulative_.back();
  auto it = std::upper_bound(nodes_.begin(), nodes_.end(), discharged_mAh);
  auto k = static_cast<std::size_t>(it - nodes_.begin()) - 1;
  return cumulative_[k] + segment_integral(nodes_[k], discharged_mAh);
}

double DischargeProfile::discharged_after(double seconds) const {
  if (seconds <= 0.0) return 0.0;
  if (seconds >= cumulative_.back()) return capacity_mAh_;
  auto it = std::upper_bound(cumulative_.begin(), cumulative_.end(), seconds);
  auto k = static_cast<std::size_t>(it - cumulative_.begin()) - 1;
  double lo = nodes_[k];
  double hi = nodes_[k + 1];
  double target = seconds - cumulative_[k];
  // Newton on the monotone time map, falling back to bisection when a step
  // leaves the bracket.
  double x = lo + (hi - lo) * target / (cumulative_[k + 1] - cumulative_[k]);
  for (int iter = 0; iter < 100; ++iter) {
    double f = segment_integral(nodes_[k], x) - target;
    if (f > 0.0)
      hi = x;
    else
      lo = x;
    if (std::abs(f) < 1e-10 || hi - lo < 1e-12) break;
    double next = x - f / rate_inverse(x);
    x = (next > lo && next < hi) ? next : 0.5 * (lo + hi);
  }
  return x;
}

double DischargeProfile::seconds_between(StateOfCharge from, StateOfCharge to) const {
  if (to >= from) return 0.0;
  double d_from = capacity_mAh_ * (1.0 - from.pct() / 100.0);
  double d_to = capacity_mAh_ * (1.0 - to.pct() / 100.0);
  return elapsed_at(d_to) - elapsed_at(d_from);
}

double DischargeProfile::seconds_to_empty(StateOfCharge soc) const {
  return seconds_between(soc, StateOfCharge::empty());
}

StateOfCharge DischargeProfile::before(StateOfCharge target, double dt_s) const {
  if (dt_s <= 0.0) return target;
  double end = elapsed_at(capacity_mAh_ * (1.0 - target.pct() / 100.0));
  if (end - dt_s <= 0.0) return StateOfCharge::full();
  return StateOfCharge(100.0 * (1.0 - discharged_after(end - dt_s) / capacity_mAh_));
}

StateOfCharge DischargeProfile::after(StateOfCharge soc, double dt_s) const {
  if (dt_s <= 0.0 || soc.pct() <= 0.0) return soc;
  double d0 = capacity_mAh_ * (1.0 - soc.pct() / 100.0);
  double start = elapsed_at(d0);
  if (dt_s >= cumulative_.back() - start) return StateOfCharge::empty();
  double d = discharged_after(start + dt_s);
  return std::min(soc, StateOfCharge(100.0 * (1.0 - d / capacity_mAh_)));
}

StateOfCharge discharge(StateOfCharge soc, double power_W, double dt_s, const BatteryParams& params) {
  if (power_W < 0.0) throw std::invalid_argument("discharge: power_W must be >= 0");
  if (dt_s < 0.0) throw std::invalid_argument("discharge: dt_s must be >= 0");
  if (power_W == 0.0 || dt_s == 0.0 || soc.pct() <= 0.0) return soc;
  return DischargeProfile(params, power_W).after(soc, dt_s);
}

double time_to_empty(StateOfCharge soc, double power_W, const BatteryParams& params) {
  if (!(power_W > 0.0)) throw std::invalid_argument("time_to_empty: power_W must be > 0");
  if (soc.pct() <= 0.0) return 0.0;
  return DischargeProfile(params, power_W).seconds_to_empty(soc);
}

double time_to_soc(StateOfCharge soc, double power_W, StateOfCharge target, const BatteryParams& params) {
  if (!(power_W > 0.0)) throw std::invalid_argument("time_to_soc: power_W must be > 0");
  if (soc <= target) return 0.0;
  return DischargeProfile(params, power_W).seconds_between(soc, target);
}

// ---------------------------------------------------------------------------
// Charge

namespace {

struct ChargeShape {
  double breakpoint_mAh;
  double cv_span_mAh;  // capacity still missing at the knee
  double cv_rate;      // 1/s, slope-matched at the knee
};

ChargeShape charge_shape(const BatteryParams& params) {
  double knee = params.cc_rate_mAh_per_s * params.cc_cv_breakpoint_s;
  double span = params.capacity_mAh - knee;
  return {knee, span, span > 0.0 ? params.cc_rate_mAh_per_s / span : 0.0};
}

}  // namespace

double charged_capacity_from_empty(double t_s, const BatteryParams& params) {
  if (t_s <= 0.0) return 0.0;
  ChargeShape shape = charge_shape(params);
  if (shape.cv_span_mAh <= 0.0) return std::min(params.cc_rate_mAh_per_s * t_s, params.capacity_mAh);
  if (t_s < params.cc_cv_breakpoint_s) return params.cc_rate_mAh_per_s * t_s;
  double tail = -std::expm1(-shape.cv_rate * (t_s - params.cc_cv_breakpoint_s));
  return std::min(params.capacity_mAh, shape.breakpoint_mAh + shape.cv_span_mAh * tail);
}

double charge_time_from_empty(double capacity_mAh, const BatteryParams& params) {
  if (capacity_mAh <= 0.0) return 0.0;
  if (capacity_mAh >= params.capacity_mAh) return std::numeric_limits<double>::infinity();
  ChargeShape shape = charge_shape(params);
  if (shape.cv_span_mAh <= 0.0 || capacity_mAh <= shape.breakpoint_mAh)
    return capacity_mAh / params.cc_rate_mAh_per_s;
  double missing = 1.0 - (capacity_mAh - shape.breakpoint_mAh) / shape.cv_span_mAh;
  return params.cc_cv_breakpoint_s - std::log(missing) / shape.cv_rate;
}

StateOfCharge charge(StateOfCharge soc, double dt_s, const BatteryParams& params) {
  if (dt_s < 0.0) throw std::invalid_argument("charge: dt_s must be >= 0");
  if (dt_s == 0.0 || soc.pct() >= 100.0) return soc;
  double start = charge_time_from_empty(params.mAh_from_soc(soc), params);
  return std::max(soc, params.soc_from_mAh(charged_capacity_from_empty(start + dt_s, params)));
}

double time_to_full(StateOfCharge soc, const BatteryParams& params) {
  StateOfCharge threshold(params.full_threshold_pct);
  if (soc >= threshold) return 0.0;
  double t = charge_time_from_empty(params.mAh_from_soc(threshold), params) -
             charge_time_from_empty(params.mAh_from_soc(soc), params);
  if (!std::isfinite(t)) throw std::invalid_argument("time_to_full: full threshold is unreachable");
  // Absorb rounding so that charge(soc, t) always reaches the threshold.
  while (charge(soc, t, params) < threshold) t = std::nextafter(t + 1e-9, std::numeric_limits<double>::infinity());
  return t;
}

// ---------------------------------------------------------------------------
// Curves

std::vector<CurveSample> export_curve(CurveMode mode, double power_W, double step_s, const BatteryParams& params) {
  if (!(step_s > 0.0)) throw std::invalid_argument("export_curve: step_s must be > 0");
  std::vector<CurveSample> rows;
  if (mode == CurveMode::Discharge) {
    DischargeProfile profile(params, power_W);
    double end = profile.seconds_to_empty(StateOfCharge::full());
    for (long k = 0;; ++k) {
      double t = static_cast<double>(k) * step_s;
      rows.push_back({t, profile.after(StateOfCharge::full(), t).pct()});
      if (t >= end) break;
    }
    return rows;
  }
  StateOfCharge threshold(params.full_threshold_pct);
  double knee = params.cc_cv_breakpoint_s;
  bool knee_done = false;
  for (long k = 0;; ++k) {
    double t = static_cast<double>(k) * step_s;
    if (!knee_done && knee > 0.0 && t > knee) {
      rows.push_back({knee, charge(StateOfCharge::empty(), knee, params).pct()});
      knee_done = true;
    }
    if (t == knee) knee_done = true;
    StateOfCharge soc = charge(StateOfCharge::empty(), t, params);
    rows.push_back({t, soc.pct()});
    if (soc >= threshold) break;
  }
  return rows;
}

void write_curve_csv(std::ostream& out, std::span<const CurveSample> rows) {
  out << "t_s,soc_pct\n";
  char buf[64];
  for (const auto& r : rows) {
    std::snprintf(buf, sizeof buf, "%.6g,%.6g\n", r.t_s, r.soc_pct);
    out << buf;
  }
}

}  // namespace uavmesh
