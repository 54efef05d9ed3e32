#include <doctest.h>

#include <stdexcept>

#include <sstream>
#include <vector>

#include "uavmesh/feasibility.hpp"

using namespace uavmesh;

TEST_CASE("JNT-RP on a 4-AP line satisfies every constraint") {
  SystemParams p;
  FeasibilityReport r = check_constraints(make_line(4), ModelKind::JntRp, p);
  CHECK(r.constraints_ok());
  CHECK(r.replenish_s == 0.0);
  CHECK(r.ap_lifetime_s == doctest::Approx(17981.9).epsilon(1e-4));
  REQUIRE(r.per_ap.size() == 4);
  CHECK(r.per_ap.back().flight_s == doctest::Approx(26.6667).epsilon(1e-4));
  CHECK(r.baseline_uavs == 8);
  CHECK(r.lower_bound_uavs == 5);
}

TEST_CASE("replenish time is zero for RP and positive for CH") {
  SystemParams p;
  for (ModelKind m : kAllModels) {
    FeasibilityReport r = check_constraints(make_line(3), m, p);
    if (is_replacement(m)) {
      CHECK(r.replenish_s == 0.0);
    } else {
      CHECK(r.arrival_soc_pct < 99.5);
      CHECK(r.replenish_s > 0.0);
    }
    CHECK((m == ModelKind::SptCh) == (r.transfer_s > 0.0));
  }
}

TEST_CASE("a flight longer than the UAV endurance fails the outbound constraint") {
  SystemParams p;
  double far = p.flight.speed_m_s * 2000.0;  // T_f = 2000 s > T_b
  for (ModelKind m : kAllModels) {
    FeasibilityReport r = check_constraints(make_line(1, far), m, p);
    CHECK_FALSE(r.per_ap[0].outbound_ok);
    CHECK_FALSE(r.constraints_ok());
  }
}

TEST_CASE("check_single_redundant arithmetic") {
  std::vector<double> tf(5, 10.0);
  CHECK(check_single_redundant(5, tf, 0.0, 18000.0));
  CHECK_FALSE(check_single_redundant(5, tf, 3600.0, 18000.0));
}

TEST_CASE("JNT-RP line predicts the lower bound for n up to 10") {
  SystemParams p;
  for (int n = 1; n <= 10; ++n) CHECK(check_single_redundant(make_line(n), ModelKind::JntRp, p));
}

TEST_CASE("single-redundant implies the replenish constraint at every AP") {
  SystemParams p;
  for (ModelKind m : kAllModels)
    for (int n = 1; n <= 6; ++n)
      for (const Topology& t : {make_line(n), make_grid(n)}) {
        FeasibilityReport r = check_constraints(t, m, p);
        if (!r.single_redundant_ok) continue;
        for (const auto& ap : r.per_ap) CHECK(ap.replenish_ok);
      }
}

TEST_CASE("feasibility CSV layout") {
  SystemParams p;
  std::ostringstream os;
  write_feasibility_csv(os, check_constraints(make_line(2), ModelKind::SptRp, p));
  std::string s = os.str();
  CHECK(s.rfind("i,d_m,Tf_s,c2,c3,c4\n1,100,6.66667,1,1,1\n2,200,13.3333,1,1,1\n# summary,model=SPT-RP,", 0) == 0);
}
