#include <doctest.h>

#include <stdexcept>

#include <vector>

#include "uavmesh/scheduler.hpp"

using namespace uavmesh;

namespace {

ApState ap(int id, int m, double soc) { return ApState{.id = id, .battery = StateOfCharge(soc), .associated_count = m}; }

UavState uav_at(int id, int ap_id, std::optional<ArrivalStamp> stamp, int ap_count = 2) {
  UavState u{.id = id, .phase = UavPhase::AtAp, .associated_ap = ap_id};
  u.arrivals.assign(static_cast<std::size_t>(ap_count), std::nullopt);
  u.arrivals[static_cast<std::size_t>(ap_id - 1)] = stamp;
  return u;
}

}  // namespace

TEST_CASE("select_ap_position examples") {
  std::vector<ApState> a{ap(1, 1, 50), ap(2, 0, 90), ap(3, 1, 10)};
  CHECK(select_ap_position(a) == 2);
  std::vector<ApState> b{ap(1, 1, 40), ap(2, 1, 30)};
  CHECK(select_ap_position(b) == 2);
  std::vector<ApState> c{ap(3, 2, 70), ap(1, 2, 70), ap(2, 2, 70)};
  CHECK(select_ap_position(c) == 1);
  CHECK_THROWS_AS(select_ap_position(std::span<const ApState>{}), std::invalid_argument);
}

TEST_CASE("joint_departure_check examples") {
  std::vector<UavState> alone{uav_at(1, 1, ArrivalStamp{10.0, 1})};
  CHECK_FALSE(joint_departure_check(alone[0], 1, alone));

  std::vector<UavState> relieved{uav_at(1, 1, ArrivalStamp{10.0, 1}), uav_at(2, 1, ArrivalStamp{50.0, 2})};
  CHECK(joint_departure_check(relieved[0], 1, relieved));
  CHECK_FALSE(joint_departure_check(relieved[1], 1, relieved));

  std::vector<UavState> inbound{uav_at(1, 1, ArrivalStamp{10.0, 1}), uav_at(2, 1, std::nullopt)};
  inbound[1].phase = UavPhase::FlyingToAp;
  CHECK_FALSE(joint_departure_check(inbound[0], 1, inbound));

  // Same instant: the later-recorded arrival wins.
  std::vector<UavState> tie{uav_at(1, 1, ArrivalStamp{0.0, 0}), uav_at(2, 1, ArrivalStamp{0.0, 1})};
  CHECK(joint_departure_check(tie[0], 1, tie));
  CHECK_FALSE(joint_departure_check(tie[1], 1, tie));
}

TEST_CASE("es_replenish for JNT-CH charges to the threshold") {
  BatteryParams b;
  UavState u{.id = 1, .phase = UavPhase::AtEs, .battery = StateOfCharge(30.0), .battery_id = 0};
  EsPool pool;
  auto out = es_replenish(u, pool, ModelKind::JntCh, b);
  CHECK(out.elapsed_s == doctest::Approx(time_to_full(StateOfCharge(30.0), b)));
  CHECK(u.battery.pct() >= 99.5);
  CHECK(u.battery_id == 0);
  CHECK_FALSE(out.returned_battery_id);
}

TEST_CASE("es_replenish for JNT-RP swaps with the most-charged pool battery") {
  BatteryParams b;
  UavState u{.id = 1, .phase = UavPhase::AtEs, .battery = StateOfCharge(10.0), .battery_id = 7};
  EsPool pool{{{3, StateOfCharge(80.0)}, {4, StateOfCharge(95.0)}}};
  auto out = es_replenish(u, pool, ModelKind::JntRp, b);
  CHECK(out.elapsed_s == 0.0);
  CHECK(u.battery.pct() == 95.0);
  CHECK(u.battery_id == 4);
  CHECK(out.returned_battery_id == 7);
  REQUIRE(pool.batteries.size() == 2);
  CHECK(pool.batteries[0].soc.pct() == 80.0);
  CHECK(pool.batteries[1].id == 7);
  CHECK(pool.batteries[1].soc.pct() == 10.0);

  EsPool empty;
  UavState v{.id = 2, .phase = UavPhase::AtEs, .battery = StateOfCharge(10.0), .battery_id = 8};
  CHECK(es_replenish(v, empty, ModelKind::JntRp, b).pool_exhausted);
  CHECK(v.battery_id == 8);

  UavState away{.id = 3, .phase = UavPhase::AtAp};
  CHECK_THROWS_AS(es_replenish(away, pool, ModelKind::JntRp, b), std::logic_error);
}

TEST_CASE("separate_service for SPT-RP exchanges batteries") {
  SystemParams p;
  UavState u{.id = 1, .battery = StateOfCharge(90.0), .battery_id = 5};
  ApState a{.id = 1, .battery = StateOfCharge(15.0), .battery_id = 0};
  auto out = separate_service(u, a, ModelKind::SptRp, 10.0, p);
  CHECK(out.swapped);
  CHECK(out.elapsed_s == 0.0);
  CHECK(u.battery.pct() == 15.0);
  CHECK(a.battery.pct() == 90.0);
  CHECK(u.battery_id == 0);
  CHECK(a.battery_id == 5);
}

TEST_CASE("separate_service for SPT-CH") {
  SystemParams p;
  SUBCASE("AP holding more than the UAV is left alone") {
    UavState u{.id = 1, .battery = StateOfCharge(60.0), .battery_id = 5};
    ApState a{.id = 1, .battery = StateOfCharge(100.0), .battery_id = 0};
    auto out = separate_service(u, a, ModelKind::SptCh, 10.0, p);
    CHECK_FALSE(out.transferred);
    CHECK(u.battery.pct() == 60.0);
    CHECK(a.battery.pct() == 100.0);
  }
  SUBCASE("transfer stops when the AP is full") {
    UavState u{.id = 1, .battery = StateOfCharge(100.0), .battery_id = 5};
    ApState a{.id = 1, .battery = StateOfCharge(80.0), .battery_id = 0};
    auto out = separate_service(u, a, ModelKind::SptCh, 10.0, p);
    CHECK(out.transferred);
    CHECK(a.battery.pct() == doctest::Approx(99.5));
    double gain = p.transfer.ap_gain_mAh_per_s(p.battery, p.flight.comm_power_W);
    CHECK(out.elapsed_s == doctest::Approx(0.195 * 2700.0 / gain));
    CHECK(u.battery.pct() < 100.0);
  }
  SUBCASE("transfer stops at the return reserve") {
    UavState u{.id = 1, .battery = StateOfCharge(30.0), .battery_id = 5};
    ApState a{.id = 1, .battery = StateOfCharge(5.0), .battery_id = 0};
    auto out = separate_service(u, a, ModelKind::SptCh, 20.0, p);
    CHECK(out.transferred);
    CHECK(u.battery.pct() == doctest::Approx(return_reserve(20.0, p).pct()));
    CHECK(a.battery.pct() < 99.5);
  }
  SUBCASE("joint models are rejected") {
    UavState u{.id = 1};
    ApState a{.id = 1};
    CHECK_THROWS_AS(separate_service(u, a, ModelKind::JntCh, 1.0, p), std::logic_error);
  }
}

TEST_CASE("return reserve covers the flight back plus the margin") {
  SystemParams p;
  StateOfCharge r = return_reserve(20.0, p);
  CHECK(r.pct() > 5.0);
  CHECK(discharge(r, p.flight.fly_power_W, 20.0, p.battery).pct() == doctest::Approx(5.0));
}
