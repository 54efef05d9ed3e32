// Acceptance runner: one PASS/FAIL line per criterion, nonzero exit if any
// criterion fails.

#include <array>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <sstream>
#include <string>
#include <vector>

#include "oracle.hpp"
#include "properties.hpp"
#include "uavmesh/experiments.hpp"
#include "uavmesh/feasibility.hpp"

using namespace uavmesh;

namespace {

struct Verdict {
  bool pass = true;
  std::ostringstream detail;

  void require(bool ok, const std::string& what) {
    if (!ok) {
      pass = false;
      detail << " [" << what << "]";
    }
  }
};

const SweepRow* find_row(const std::vector<SweepRow>& rows, ModelKind model, int n) {
  for (const auto& r : rows)
    if (r.model == model && r.n == n) return &r;
  return nullptr;
}

std::string label(const SweepRow& r) {
  return std::string(to_string(r.model)) + " " + std::string(to_string(r.topology)) + " n=" + std::to_string(r.n);
}

// Least-squares fit y = a + b x + c x^2; returns the coefficient of determination.
double quadratic_r2(const std::vector<double>& x, const std::vector<double>& y) {
  std::array<std::array<double, 4>, 3> m{};
  for (std::size_t k = 0; k < x.size(); ++k) {
    double p[3] = {1.0, x[k], x[k] * x[k]};
    for (int i = 0; i < 3; ++i) {
      for (int j = 0; j < 3; ++j) m[i][j] += p[i] * p[j];
      m[i][3] += p[i] * y[k];
    }
  }
  for (int i = 0; i < 3; ++i) {
    int pivot = i;
    for (int r = i + 1; r < 3; ++r)
      if (std::abs(m[r][i]) > std::abs(m[pivot][i])) pivot = r;
    std::swap(m[i], m[pivot]);
    for (int r = 0; r < 3; ++r) {
      if (r == i) continue;
      double f = m[r][i] / m[i][i];
      for (int c = i; c < 4; ++c) m[r][c] -= f * m[i][c];
    }
  }
  double coef[3] = {m[0][3] / m[0][0], m[1][3] / m[1][1], m[2][3] / m[2][2]};
  double mean = 0.0;
  for (double v : y) mean += v;
  mean /= static_cast<double>(y.size());
  double ss_res = 0.0, ss_tot = 0.0;
  for (std::size_t k = 0; k < x.size(); ++k) {
    double fit = coef[0] + coef[1] * x[k] + coef[2] * x[k] * x[k];
    ss_res += (y[k] - fit) * (y[k] - fit);
    ss_tot += (y[k] - mean) * (y[k] - mean);
  }
  return 1.0 - ss_res / ss_tot;
}

void report(int id, const std::string& title, Verdict& v) {
  std::printf("criterion %d: %s - %s%s\n", id, v.pass ? "PASS" : "FAIL", title.c_str(), v.detail.str().c_str());
  std::fflush(stdout);
}

}  // namespace

int main() {
  SystemParams params;
  bool all_pass = true;
  auto finish = [&](int id, const std::string& title, Verdict& v) {
    report(id, title, v);
    all_pass = all_pass && v.pass;
  };

  auto start = std::chrono::steady_clock::now();
  auto line = sweep(kAllModels, TopologyKind::Line, 1, 8, params);
  double line_s = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  auto grid = sweep(kAllModels, TopologyKind::Grid, 1, 6, params);

  {
    Verdict v;
    for (int n = 2; n <= 8; ++n) {
      const SweepRow* jnt = find_row(line, ModelKind::JntRp, n);
      const SweepRow* spt = find_row(line, ModelKind::SptRp, n);
      v.require(jnt->min_uavs == n + 1, label(*jnt) + " min_uavs != n+1");
      v.require(spt->min_uavs == 1, label(*spt) + " min_uavs != 1");
    }
    v.detail << " (line sweep took " << std::lround(line_s) << " s)";
    finish(1, "JNT-RP = n+1 and SPT-RP = 1 on line n=2..8", v);
  }
  {
    Verdict v;
    for (int n = 2; n <= 8; ++n) {
      const SweepRow* spt = find_row(line, ModelKind::SptCh, n);
      int ap = spt->ap_count;
      v.require(spt->min_uavs && *spt->min_uavs >= ap - 1 && *spt->min_uavs <= ap, label(*spt) + " outside [N-1, N]");
      if (n >= 3) {
        const SweepRow* jnt = find_row(line, ModelKind::JntCh, n);
        v.require(jnt->min_uavs && *jnt->min_uavs > ap + 1 && *jnt->min_uavs <= 2 * ap,
                  label(*jnt) + " outside (N+1, 2N]");
      }
    }
    finish(2, "SPT-CH in [N-1, N], JNT-CH in (N+1, 2N] on line", v);
  }
  {
    Verdict v;
    for (const auto* rows : {&line, &grid}) {
      for (const auto& r : *rows) {
        if (r.model != ModelKind::JntRp) continue;
        const SweepRow* spt = find_row(*rows, ModelKind::SptRp, r.n);
        v.require(r.min_batteries && r.min_batteries == spt->min_batteries, label(r) + " battery count differs from SPT-RP");
      }
    }
    v.detail << " (line extra:";
    for (int n = 2; n <= 8; ++n) {
      const SweepRow* r = find_row(line, ModelKind::JntRp, n);
      int extra = r->min_batteries.value_or(-100) - r->ap_count;
      v.detail << " " << extra;
      v.require(extra >= 1 && extra <= 7, label(*r) + " additional batteries outside [1, 7]");
    }
    v.detail << "; grid extra:";
    int previous = -1;
    for (int n = 2; n <= 6; ++n) {
      const SweepRow* r = find_row(grid, ModelKind::JntRp, n);
      int extra = r->min_batteries.value_or(-100) - r->ap_count;
      v.detail << " " << extra;
      v.require(extra >= previous, label(*r) + " additional batteries decreased");
      previous = extra;
    }
    v.detail << ")";
    finish(3, "battery census equal for JNT-RP/SPT-RP, line extra in [1, 7], grid extra nondecreasing", v);
  }
  {
    Verdict v;
    for (ModelKind m : {ModelKind::JntCh, ModelKind::JntRp}) {
      std::vector<double> x, y;
      for (int n = 1; n <= 6; ++n) {
        const SweepRow* r = find_row(grid, m, n);
        v.require(r->min_uavs.has_value(), label(*r) + " infeasible");
        x.push_back(n);
        y.push_back(r->min_uavs.value_or(0));
      }
      double r2 = quadratic_r2(x, y);
      v.detail << " (" << to_string(m) << " R^2 = " << r2 << ")";
      v.require(r2 >= 0.98, std::string(to_string(m)) + " quadratic fit below 0.98");
    }
    finish(4, "grid min_uavs for JNT models is quadratic in n", v);
  }
  {
    Verdict v;
    BatteryParams b;
    double knee = charged_capacity_from_empty(2238.0, b);
    v.require(std::abs(knee - 1678.5) <= 0.001 * 1678.5, "charge at 2238 s is " + std::to_string(knee) + " mAh");
    double knee_soc = charge(StateOfCharge::empty(), 2238.0, b).pct();
    v.require(std::abs(knee_soc / 100.0 * b.capacity_mAh - 1678.5) <= 0.001 * 1678.5, "charge() SOC at 2238 s off");
    v.require(std::abs(b.discharge_curve(0.0) - 3.643) < 1e-12, "g(0) != 3.643");
    double tte = time_to_empty(StateOfCharge::full(), 2.0, b);
    v.require(std::abs(tte - 17982.0) <= 0.15 * 17982.0, "time_to_empty(100%, 2 W) = " + std::to_string(tte));

    double worst = 0.0;
    for (double power : {2.0, 9.99, 18.0, 25.0}) {
      auto curve = export_curve(CurveMode::Discharge, power, 60.0, b);
      double soc = 100.0;
      for (std::size_t k = 1; k < curve.size(); ++k) {
        soc = oracle::discharge(b, soc, power, curve[k].t_s - curve[k - 1].t_s, 0.1);
        worst = std::max(worst, std::abs(soc - curve[k].soc_pct));
      }
      double ref = oracle::time_to_empty(b, 100.0, power, 0.1);
      v.require(std::abs(time_to_empty(StateOfCharge::full(), power, b) - ref) <= 0.02 * ref,
                "time_to_empty deviates from the oracle at " + std::to_string(power) + " W");
    }
    auto charged = export_curve(CurveMode::Charge, 0.0, 60.0, b);
    double soc = 0.0;
    for (std::size_t k = 1; k < charged.size(); ++k) {
      soc = oracle::charge(b, soc, charged[k].t_s - charged[k - 1].t_s, 0.1);
      worst = std::max(worst, std::abs(soc - charged[k].soc_pct));
    }
    v.detail << " (max curve deviation from the 0.1 s integrator: " << worst << " % points)";
    v.require(worst <= 2.0, "curve deviates from the integrator by more than 2 %");
    finish(5, "battery model anchors and integrator agreement", v);
  }
  {
    Verdict v;
    int checked = 0;
    for (const auto* rows : {&line, &grid}) {
      for (const auto& r : *rows) {
        if (!is_replacement(r.model) || !r.single_redundant_ok) continue;
        ++checked;
        v.require(r.min_uavs == r.lower_bound, label(r) + " minimum differs from the lower bound");
      }
    }
    v.detail << " (" << checked << " cells)";
    v.require(checked > 0, "no RP cell predicted attainable");
    finish(6, "single-redundant prediction matches simulated minimum for RP models", v);
  }
  {
    Verdict v;
    for (const auto& out : props::run_all(20240611, 1000)) {
      v.require(out.ok(), out.name + ": " + out.counterexample);
      v.require(out.cases >= 1000, out.name + " ran fewer than 1000 cases");
    }
    finish(7, "property suites, 1000 cases each", v);
  }
  return all_pass ? 0 : 1;
}
