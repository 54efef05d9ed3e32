#include "uavmesh/experiments.hpp"

#include <algorithm>
#include <atomic>
#include <cstdio>
#include <ostream>
#include <stdexcept>
#include <string>
#include <thread>

#include "uavmesh/feasibility.hpp"

namespace uavmesh {

namespace {

bool sustains(ModelKind model, const Topology& topology, const SystemParams& params, int uavs, int pool,
              double horizon_s) {
  SimConfig cfg{.model = model,
                .topology = topology,
                .params = params,
                .uav_count = uavs,
                .pool_size = pool,
                .horizon_s = horizon_s};
  return run(cfg).sustained;
}

}  // namespace

int ample_pool(int ap_count) { return 3 * ap_count; }

UavSearch find_min_uavs(ModelKind model, const Topology& topology, const SystemParams& params, double horizon_s) {
  UavSearch out;
  FeasibilityReport report = check_constraints(topology, model, params);
  auto farthest = std::max_element(report.per_ap.begin(), report.per_ap.end(),
                                   [](const ApFeasibility& a, const ApFeasibility& b) {
                                     return a.distance_m < b.distance_m;
                                   });
  out.constraints_ok = farthest->replenish_ok && farthest->outbound_ok && farthest->return_ok;
  if (!out.constraints_ok) return out;

  int ap_count = static_cast<int>(topology.size());
  int pool = is_replacement(model) ? ample_pool(ap_count) : 0;
  int lo = lower_bound_uavs(model, ap_count);
  int hi = 2 * baseline_uavs(model, ap_count);
  auto attempt = [&](int m) {
    ++out.runs;
    return sustains(model, topology, params, m, pool, horizon_s);
  };
  for (int m = lo; m <= hi; ++m) {
    if (!attempt(m)) continue;
    out.min_uavs = m;
    break;
  }
  if (!out.min_uavs) return out;
  if (*out.min_uavs > 1) out.sustained_below = *out.min_uavs > lo ? false : attempt(*out.min_uavs - 1);
  out.sustained_above = attempt(*out.min_uavs + 1);
  return out;
}

BatterySearch find_min_batteries(ModelKind model, const Topology& topology, const SystemParams& params, int uav_count,
                                 double horizon_s) {
  if (!is_replacement(model)) throw std::invalid_argument("find_min_batteries: battery census needs an RP model");
  BatterySearch out;
  int ap_count = static_cast<int>(topology.size());
  int installed = uav_count + (is_joint(model) ? 0 : ap_count);
  for (int pool = 0; pool <= ample_pool(ap_count); ++pool) {
    ++out.runs;
    if (!sustains(model, topology, params, uav_count, pool, horizon_s)) continue;
    out.pool_size = pool;
    out.min_batteries = installed + pool;
    break;
  }
  return out;
}

std::vector<SweepRow> sweep(std::span<const ModelKind> models, TopologyKind kind, int n_min, int n_max,
                            const SystemParams& params, double horizon_s, unsigned threads, double spacing_m) {
  if (n_min < 1 || n_max < n_min) throw std::invalid_argument("sweep: empty or invalid n range");
  std::vector<SweepRow> rows;
  for (auto model : models)
    for (int n = n_min; n <= n_max; ++n) rows.push_back(SweepRow{.model = model, .topology = kind, .n = n});

  auto fill = [&](SweepRow& row) {
    Topology topology = make_topology(kind, row.n, spacing_m);
    int ap_count = static_cast<int>(topology.size());
    row.ap_count = ap_count;
    row.baseline = baseline_uavs(row.model, ap_count);
    row.lower_bound = lower_bound_uavs(row.model, ap_count);
    row.horizon_s = horizon_s;
    row.single_redundant_ok = check_single_redundant(topology, row.model, params);
    UavSearch search = find_min_uavs(row.model, topology, params, horizon_s);
    row.min_uavs = search.min_uavs;
    row.monotone = search.monotone();
    if (is_replacement(row.model) && row.min_uavs)
      row.min_batteries = find_min_batteries(row.model, topology, params, *row.min_uavs, horizon_s).min_batteries;
  };

  if (threads == 0) threads = std::max(1u, std::thread::hardware_concurrency());
  threads = std::min<unsigned>(threads, static_cast<unsigned>(rows.size()));
  std::atomic<std::size_t> next{0};
  std::vector<std::exception_ptr> errors(threads);
  std::vector<std::thread> workers;
  for (unsigned w = 0; w < threads; ++w) {
    workers.emplace_back([&, w] {
      try {
        for (std::size_t k = next++; k < rows.size(); k = next++) fill(rows[k]);
      } catch (...) {
        errors[w] = std::current_exception();
      }
    });
  }
  for (auto& t : workers) t.join();
  for (auto& e : errors)
    if (e) std::rethrow_exception(e);
  return rows;
}

void write_sweep_csv(std::ostream& out, std::span<const SweepRow> rows) {
  out << "model,topology,n,N,min_uavs,baseline,lower_bound,min_batteries,horizon_s,monotone_flag\n";
  for (const auto& r : rows) {
    std::string uavs = r.min_uavs ? std::to_string(*r.min_uavs) : "infeasible";
    std::string batteries =
        is_replacement(r.model) ? (r.min_batteries ? std::to_string(*r.min_batteries) : "infeasible") : "NA";
    char buf[256];
    std::snprintf(buf, sizeof buf, "%s,%s,%d,%d,%s,%d,%d,%s,%.6g,%d\n", std::string(to_string(r.model)).c_str(),
                  std::string(to_string(r.topology)).c_str(), r.n, r.ap_count, uavs.c_str(), r.baseline,
                  r.lower_bound, batteries.c_str(), r.horizon_s, r.monotone ? 1 : 0);
    out << buf;
  }
}

}  // namespace uavmesh
