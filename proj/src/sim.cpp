#include "uavmesh/sim.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <deque>
#include <limits>
#include <ostream>
#include <queue>
#include <stdexcept>
#include <string>
#include <tuple>

namespace uavmesh {

std::string_view to_string(FailureCause cause) {
  switch (cause) {
    case FailureCause::ApDepleted:
      return "ap-depleted";
    case FailureCause::UavDepletedInFlight:
      return "uav-depleted-in-flight";
    case FailureCause::PositionVacant:
      return "position-vacant";
    case FailureCause::PoolExhausted:
      return "pool-exhausted";
  }
  return "?";
}

std::string_view to_string(DeviceKind kind) {
  switch (kind) {
    case DeviceKind::Uav:
      return "uav";
    case DeviceKind::Ap:
      return "ap";
    case DeviceKind::Pool:
      return "pool";
  }
  return "?";
}

void SimConfig::validate() const {
  params.validate();
  if (uav_count < 1) throw std::invalid_argument("uav_count must be >= 1");
  if (pool_size < 0) throw std::invalid_argument("pool_size must be >= 0");
  if (!(horizon_s >= 0.0) || !std::isfinite(horizon_s)) throw std::invalid_argument("horizon_s must be finite and >= 0");
  if (!(timeline_step_s >= 0.0)) throw std::invalid_argument("timeline_step_s must be >= 0");
}

SustainVerdict is_sustained_at(const SimState& state, double /*t_s*/) {
  for (const auto& ap : state.aps) {
    if (is_joint(state.model)) {
      if (!ap.occupant_uav) return {false, FailureCause::PositionVacant, ap.id};
      const auto& occupant = state.uavs.at(static_cast<std::size_t>(*ap.occupant_uav - 1));
      if (occupant.battery.pct() <= 0.0) return {false, FailureCause::ApDepleted, ap.id};
    } else {
      if (!ap.battery_id) return {false, FailureCause::PositionVacant, ap.id};
      if (ap.battery.pct() <= 0.0) return {false, FailureCause::ApDepleted, ap.id};
    }
  }
  for (const auto& uav : state.uavs) {
    bool airborne = uav.phase == UavPhase::FlyingToEs || uav.phase == UavPhase::FlyingToAp;
    if (airborne && uav.battery.pct() <= 0.0) return {false, FailureCause::UavDepletedInFlight, uav.id};
  }
  return {};
}

namespace {

enum class EventKind { Depletion, ArriveAp, ArriveEs, ChargeDone, TransferDone };

// Depletion before arrival before decision at equal times.
int priority_of(EventKind kind) {
  switch (kind) {
    case EventKind::Depletion:
      return 0;
    case EventKind::ArriveAp:
    case EventKind::ArriveEs:
      return 1;
    case EventKind::ChargeDone:
    case EventKind::TransferDone:
      return 2;
  }
  return 2;
}

struct Event {
  double time;
  int priority;
  std::uint64_t seq;
  EventKind kind;
  int subject;  // battery id for depletion, UAV id otherwise
  std::uint64_t epoch;
};

struct LaterFirst {
  bool operator()(const Event& a, const Event& b) const {
    return std::tie(a.time, a.priority, a.seq) > std::tie(b.time, b.priority, b.seq);
  }
};

enum class Holder { Uav, Ap, Pool };

struct Battery {
  int id = 0;
  BatteryMode mode = BatteryMode::Idle;
  double power_W = 0.0;
  double rate_mAh_per_s = 0.0;
  double t0 = 0.0;
  StateOfCharge soc0 = StateOfCharge::full();
  std::uint64_t epoch = 0;
  bool used = false;
  Holder holder = Holder::Pool;
  int holder_id = 0;
};

class Engine {
 public:
  explicit Engine(const SimConfig& config)
      : cfg_(config), model_(config.model), params_(config.params), topo_(config.topology) {}

  SimReport run();

 private:
  const DischargeProfile& profile(double power_W);
  StateOfCharge soc(const Battery& b, double t);
  void set_mode(int battery_id, double t, BatteryMode mode, double power_W = 0.0, double rate = 0.0);
  void hand_to(int battery_id, Holder holder, int holder_id);
  void schedule(double t, EventKind kind, int subject, std::uint64_t epoch = 0);

  void initialize();
  void handle(const Event& e);
  void on_depletion(int battery_id, double t);
  void arrive_ap(UavState& u, double t);
  void arrive_es(UavState& u, double t);
  void transfer_done(UavState& u, double t);
  void depart(UavState& u, double t);
  void decide(UavState& u, double t);
  void fail(double t, FailureCause cause, int device_id);

  void refresh(double t);
  double hosted_soc(const ApState& ap, double t);
  void observe_min_ap_soc(double t);
  void sample(double t);
  void check_consistency() const;

  UavState& uav(int id) { return uavs_.at(static_cast<std::size_t>(id - 1)); }
  ApState& ap(int id) { return aps_.at(static_cast<std::size_t>(id - 1)); }
  Battery& battery(int id) { return batteries_.at(static_cast<std::size_t>(id)); }

  const SimConfig& cfg_;
  ModelKind model_;
  const SystemParams& params_;
  const Topology& topo_;

  std::vector<Battery> batteries_;
  std::vector<UavState> uavs_;
  std::vector<ApState> aps_;
  std::vector<int> pool_;
  std::vector<int> last_ap_;          // per UAV, the position it last left
  std::vector<bool> transfer_active_;  // per AP
  std::deque<DischargeProfile> profiles_;
  std::priority_queue<Event, std::vector<Event>, LaterFirst> queue_;
  std::uint64_t event_seq_ = 0;
  std::uint64_t arrival_seq_ = 0;
  SimReport report_;
};

const DischargeProfile& Engine::profile(double power_W) {
  for (const auto& p : profiles_)
    if (p.power_W() == power_W) return p;
  profiles_.emplace_back(params_.battery, power_W);
  return profiles_.back();
}

StateOfCharge Engine::soc(const Battery& b, double t) {
  double dt = t - b.t0;
  if (dt <= 0.0) return b.soc0;
  switch (b.mode) {
    case BatteryMode::Idle:
      return b.soc0;
    case BatteryMode::Discharge:
      return profile(b.power_W).after(b.soc0, dt);
    case BatteryMode::EsCharge:
      return charge(b.soc0, dt, params_.battery);
    case BatteryMode::TransferIn:
      return params_.battery.soc_from_mAh(params_.battery.mAh_from_soc(b.soc0) + b.rate_mAh_per_s * dt);
  }
  return b.soc0;
}

void Engine::set_mode(int battery_id, double t, BatteryMode mode, double power_W, double rate) {
  Battery& b = battery(battery_id);
  b.soc0 = soc(b, t);
  b.t0 = t;
  b.mode = mode;
  b.power_W = power_W;
  b.rate_mAh_per_s = rate;
  ++b.epoch;
  if (mode == BatteryMode::Discharge)
    schedule(t + profile(power_W).seconds_to_empty(b.soc0), EventKind::Depletion, battery_id, b.epoch);
  if (cfg_.record_battery_log) report_.battery_log.push_back({battery_id, t, mode, power_W, rate});
}

void Engine::hand_to(int battery_id, Holder holder, int holder_id) {
  Battery& b = battery(battery_id);
  b.holder = holder;
  b.holder_id = holder_id;
  if (holder != Holder::Pool) b.used = true;
}

void Engine::schedule(double t, EventKind kind, int subject, std::uint64_t epoch) {
  queue_.push({t, priority_of(kind), event_seq_++, kind, subject, epoch});
}

void Engine::initialize() {
  int ap_count = static_cast<int>(topo_.size());
  int m = cfg_.uav_count;
  int pool = is_replacement(model_) ? cfg_.pool_size : 0;
  bool joint = is_joint(model_);
  int total = (joint ? 0 : ap_count) + m + pool;
  batteries_.resize(static_cast<std::size_t>(total));
  for (int k = 0; k < total; ++k) batteries_[static_cast<std::size_t>(k)].id = k;
  report_.battery_census = total;

  for (const auto& pos : topo_.aps()) aps_.push_back(ApState{.id = pos.id});
  transfer_active_.assign(static_cast<std::size_t>(ap_count), false);
  int next_battery = 0;
  if (!joint) {
    for (auto& a : aps_) {
      a.battery_id = next_battery;
      hand_to(next_battery, Holder::Ap, a.id);
      set_mode(next_battery, 0.0, BatteryMode::Discharge, params_.flight.comm_power_W);
      ++next_battery;
    }
  }
  // Round-robin initial association; every UAV starts full at its position.
  for (int id = 1; id <= m; ++id) {
    int ap_id = (id - 1) % ap_count + 1;
    UavState u{.id = id,
               .phase = UavPhase::FlyingToAp,
               .position = topo_.ap(ap_id).position,
               .associated_ap = ap_id,
               .battery_id = next_battery};
    u.arrivals.assign(static_cast<std::size_t>(ap_count), std::nullopt);
    hand_to(next_battery, Holder::Uav, id);
    if (cfg_.record_battery_log) report_.battery_log.push_back({next_battery, 0.0, BatteryMode::Idle, 0.0, 0.0});
    ++next_battery;
    ap(ap_id).associated_count++;
    uavs_.push_back(std::move(u));
    schedule(0.0, EventKind::ArriveAp, id);
  }
  last_ap_.assign(static_cast<std::size_t>(m) + 1, 0);
  for (int k = 0; k < pool; ++k) {
    pool_.push_back(next_battery);
    hand_to(next_battery, Holder::Pool, 0);
    set_mode(next_battery, 0.0, BatteryMode::EsCharge);
    ++next_battery;
  }
}

void Engine::fail(double t, FailureCause cause, int device_id) {
  if (report_.failure) return;
  report_.sustained = false;
  report_.failure = Failure{t, cause, device_id};
}

void Engine::on_depletion(int battery_id, double t) {
  const Battery& b = battery(battery_id);
  switch (b.holder) {
    case Holder::Ap:
      fail(t, FailureCause::ApDepleted, b.holder_id);
      return;
    case Holder::Uav: {
      const UavState& u = uav(b.holder_id);
      if (is_joint(model_) && u.phase == UavPhase::AtAp && u.associated_ap)
        fail(t, FailureCause::ApDepleted, *u.associated_ap);
      else
        fail(t, FailureCause::UavDepletedInFlight, u.id);
      return;
    }
    case Holder::Pool:
      return;
  }
}

void Engine::arrive_ap(UavState& u, double t) {
  int ap_id = *u.associated_ap;
  ApState& a = ap(ap_id);
  u.phase = UavPhase::AtAp;
  u.position = topo_.ap(ap_id).position;
  u.arrivals[static_cast<std::size_t>(ap_id - 1)] = ArrivalStamp{t, arrival_seq_++};

  if (is_joint(model_)) {
    a.occupant_uav = u.id;
    set_mode(u.battery_id, t, BatteryMode::Discharge, params_.flight.comm_power_W);
    for (auto& v : uavs_)
      if (v.id != u.id && v.associated_ap == ap_id && v.phase == UavPhase::AtAp &&
          joint_departure_check(v, ap_id, uavs_))
        depart(v, t);
    return;
  }

  if (transfer_active_[static_cast<std::size_t>(ap_id - 1)]) {
    depart(u, t);
    return;
  }
  UavState probe = u;
  probe.battery = soc(battery(u.battery_id), t);
  ApState site = a;
  site.battery = soc(battery(*a.battery_id), t);
  double back = flight_time(topo_.es_distance(ap_id), params_.flight);
  ServiceOutcome out = separate_service(probe, site, model_, back, params_);
  if (out.swapped) {
    int to_ap = u.battery_id;
    int to_uav = *a.battery_id;
    u.battery_id = to_uav;
    a.battery_id = to_ap;
    hand_to(to_uav, Holder::Uav, u.id);
    hand_to(to_ap, Holder::Ap, ap_id);
    set_mode(to_ap, t, BatteryMode::Discharge, params_.flight.comm_power_W);
    depart(u, t);
    return;
  }
  if (out.transferred) {
    double gain = params_.transfer.ap_gain_mAh_per_s(params_.battery, params_.flight.comm_power_W);
    set_mode(u.battery_id, t, BatteryMode::Discharge, params_.transfer.effective_power_W(params_.battery));
    set_mode(*a.battery_id, t, BatteryMode::TransferIn, 0.0, gain);
    transfer_active_[static_cast<std::size_t>(ap_id - 1)] = true;
    schedule(t + out.elapsed_s, EventKind::TransferDone, u.id);
    return;
  }
  depart(u, t);
}

void Engine::transfer_done(UavState& u, double t) {
  int ap_id = *u.associated_ap;
  ApState& a = ap(ap_id);
  set_mode(*a.battery_id, t, BatteryMode::Discharge, params_.flight.comm_power_W);
  transfer_active_[static_cast<std::size_t>(ap_id - 1)] = false;
  depart(u, t);
}

void Engine::depart(UavState& u, double t) {
  int ap_id = *u.associated_ap;
  ApState& a = ap(ap_id);
  a.associated_count--;
  if (a.occupant_uav == u.id) a.occupant_uav.reset();
  u.associated_ap.reset();
  last_ap_[static_cast<std::size_t>(u.id)] = ap_id;
  u.phase = UavPhase::FlyingToEs;
  set_mode(u.battery_id, t, BatteryMode::Discharge, params_.flight.fly_power_W);
  schedule(t + flight_time(topo_.es_distance(ap_id), params_.flight), EventKind::ArriveEs, u.id);
}

void Engine::arrive_es(UavState& u, double t) {
  u.phase = UavPhase::AtEs;
  u.position = topo_.es_for(last_ap_[static_cast<std::size_t>(u.id)]);
  if (!is_replacement(model_)) {
    set_mode(u.battery_id, t, BatteryMode::EsCharge);
    schedule(t + time_to_full(battery(u.battery_id).soc0, params_.battery), EventKind::ChargeDone, u.id);
    return;
  }
  EsPool view;
  for (int id : pool_) view.batteries.push_back({id, soc(battery(id), t)});
  UavState probe = u;
  probe.battery = soc(battery(u.battery_id), t);
  ReplenishOutcome out = es_replenish(probe, view, model_, params_.battery);
  if (out.pool_exhausted) {
    fail(t, FailureCause::PoolExhausted, u.id);
    return;
  }
  int returned = *out.returned_battery_id;
  int taken = probe.battery_id;
  for (std::size_t k = 0; k < pool_.size(); ++k) pool_[k] = view.batteries[k].id;
  u.battery_id = taken;
  hand_to(taken, Holder::Uav, u.id);
  hand_to(returned, Holder::Pool, 0);
  set_mode(returned, t, BatteryMode::EsCharge);
  set_mode(taken, t, BatteryMode::Idle);
  decide(u, t);
}

double Engine::hosted_soc(const ApState& a, double t) {
  if (is_joint(model_)) return a.occupant_uav ? soc(battery(uav(*a.occupant_uav).battery_id), t).pct() : 0.0;
  return a.battery_id ? soc(battery(*a.battery_id), t).pct() : 0.0;
}

void Engine::decide(UavState& u, double t) {
  for (auto& a : aps_) a.battery = StateOfCharge(hosted_soc(a, t));
  int target = select_ap_position(aps_);
  u.associated_ap = target;
  ap(target).associated_count++;
  u.phase = UavPhase::FlyingToAp;
  set_mode(u.battery_id, t, BatteryMode::Discharge, params_.flight.fly_power_W);
  schedule(t + flight_time(topo_.es_distance(target), params_.flight), EventKind::ArriveAp, u.id);
}

void Engine::handle(const Event& e) {
  switch (e.kind) {
    case EventKind::Depletion:
      on_depletion(e.subject, e.time);
      return;
    case EventKind::ArriveAp:
      arrive_ap(uav(e.subject), e.time);
      return;
    case EventKind::ArriveEs:
      arrive_es(uav(e.subject), e.time);
      return;
    case EventKind::ChargeDone:
      set_mode(uav(e.subject).battery_id, e.time, BatteryMode::Idle);
      decide(uav(e.subject), e.time);
      return;
    case EventKind::TransferDone:
      transfer_done(uav(e.subject), e.time);
      return;
  }
}

void Engine::refresh(double t) {
  for (auto& u : uavs_) u.battery = soc(battery(u.battery_id), t);
  for (auto& a : aps_) a.battery = StateOfCharge(hosted_soc(a, t));
}

void Engine::observe_min_ap_soc(double t) {
  // Positions are empty only before the first arrivals at t = 0; a vacancy
  // later in the run is a failure of its own.
  for (const auto& a : aps_)
    if (is_joint(model_) ? a.occupant_uav.has_value() : a.battery_id.has_value())
      report_.min_ap_soc_pct = std::min(report_.min_ap_soc_pct, hosted_soc(a, t));
}

void Engine::sample(double t) {
  refresh(t);
  for (const auto& u : uavs_)
    report_.timeline.push_back({t, DeviceKind::Uav, u.id, u.battery_id, u.battery.pct(), to_string(u.phase)});
  if (!is_joint(model_)) {
    for (const auto& a : aps_) {
      std::string_view phase = battery(*a.battery_id).mode == BatteryMode::TransferIn ? "charging" : "active";
      report_.timeline.push_back({t, DeviceKind::Ap, a.id, *a.battery_id, a.battery.pct(), phase});
    }
  }
  std::vector<int> pool = pool_;
  std::sort(pool.begin(), pool.end());
  for (int id : pool) report_.timeline.push_back({t, DeviceKind::Pool, id, id, soc(battery(id), t).pct(), "charging"});
}

void Engine::check_consistency() const {
  std::vector<int> counts(aps_.size(), 0);
  for (const auto& u : uavs_)
    if (u.associated_ap) counts[static_cast<std::size_t>(*u.associated_ap - 1)]++;
  for (std::size_t k = 0; k < aps_.size(); ++k)
    if (counts[k] != aps_[k].associated_count) throw std::logic_error("association count out of sync");

  std::vector<int> seen(batteries_.size(), 0);
  for (const auto& u : uavs_) seen.at(static_cast<std::size_t>(u.battery_id))++;
  for (const auto& a : aps_)
    if (a.battery_id) seen.at(static_cast<std::size_t>(*a.battery_id))++;
  for (int id : pool_) seen.at(static_cast<std::size_t>(id))++;
  if (std::any_of(seen.begin(), seen.end(), [](int c) { return c != 1; }))
    throw std::logic_error("battery census out of sync");
}

SimReport Engine::run() {
  cfg_.validate();
  if (topo_.size() == 0) throw std::invalid_argument("run: empty topology");
  if (cfg_.horizon_s == 0.0) {
    report_.battery_census = (is_joint(model_) ? 0 : static_cast<int>(topo_.size())) + cfg_.uav_count +
                             (is_replacement(model_) ? cfg_.pool_size : 0);
    return report_;
  }
  initialize();
  const double step = cfg_.timeline_step_s;
  long next_sample = 0;
  auto sample_time = [&](long k) { return static_cast<double>(k) * step; };

  while (!queue_.empty() && !report_.failure) {
    double t = queue_.top().time;
    if (t > cfg_.horizon_s) break;
    if (step > 0.0)
      for (; sample_time(next_sample) <= t; ++next_sample) sample(sample_time(next_sample));
    observe_min_ap_soc(t);
    while (!queue_.empty() && queue_.top().time == t && !report_.failure) {
      Event e = queue_.top();
      queue_.pop();
      if (e.kind == EventKind::Depletion && battery(e.subject).epoch != e.epoch) continue;
      ++report_.event_count;
      handle(e);
    }
    if (report_.failure) break;
    check_consistency();
    refresh(t);
    SustainVerdict verdict = is_sustained_at(SimState{model_, uavs_, aps_}, t);
    if (!verdict.sustained) fail(t, *verdict.cause, verdict.device_id);
  }
  if (!report_.failure) {
    observe_min_ap_soc(cfg_.horizon_s);
    if (step > 0.0)
      for (; sample_time(next_sample) <= cfg_.horizon_s; ++next_sample) sample(sample_time(next_sample));
  }
  report_.batteries_used = static_cast<int>(
      std::count_if(batteries_.begin(), batteries_.end(), [](const Battery& b) { return b.used; }));
  return report_;
}

}  // namespace

SimReport run(const SimConfig& config) { return Engine(config).run(); }

void write_timeline_csv(std::ostream& out, std::span<const TimelineRow> rows) {
  out << "t_s,device_kind,device_id,soc_pct,phase\n";
  char buf[160];
  for (const auto& r : rows) {
    std::snprintf(buf, sizeof buf, "%.10g,%s,%d,%.6g,%s\n", r.t_s, std::string(to_string(r.device_kind)).c_str(),
                  r.device_id, r.soc_pct, std::string(r.phase).c_str());
    out << buf;
  }
}

void write_report_summary_header(std::ostream& out) {
  out << "model,topology,n,N,uavs,pool,battery_census,horizon_s,sustained,failure_time_s,failure_cause,"
         "failure_device,min_ap_soc_pct,batteries_used,event_count\n";
}

void write_report_summary_row(std::ostream& out, const SimConfig& config, const SimReport& report) {
  char buf[512];
  std::string cause = report.failure ? std::string(to_string(report.failure->cause)) : "";
  std::string when = "";
  std::string device = "";
  if (report.failure) {
    char tmp[64];
    std::snprintf(tmp, sizeof tmp, "%.6g", report.failure->time_s);
    when = tmp;
    device = std::to_string(report.failure->device_id);
  }
  std::snprintf(buf, sizeof buf, "%s,%s,%d,%zu,%d,%d,%d,%.6g,%d,%s,%s,%s,%.6g,%d,%llu\n",
                std::string(to_string(config.model)).c_str(), std::string(to_string(config.topology.kind())).c_str(),
                config.topology.n(), config.topology.size(), config.uav_count,
                is_replacement(config.model) ? config.pool_size : 0, report.battery_census, config.horizon_s,
                report.sustained ? 1 : 0, when.c_str(), cause.c_str(), device.c_str(), report.min_ap_soc_pct,
                report.batteries_used, static_cast<unsigned long long>(report.event_count));
  out << buf;
}

}  // namespace uavmesh
