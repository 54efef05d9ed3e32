#include <doctest.h>

#include <stdexcept>

#include <algorithm>

#include "uavmesh/config.hpp"

using namespace uavmesh;

TEST_CASE("config text parsing") {
  auto kv = parse_config_text("# comment\nmodel = SPT-CH\n\n  n=3   # trailing\nspeed_m_s = 12.5\n");
  REQUIRE(kv.size() == 3);
  CHECK(kv[0] == std::pair<std::string, std::string>{"model", "SPT-CH"});
  CHECK(kv[1] == std::pair<std::string, std::string>{"n", "3"});
  CHECK(kv[2].second == "12.5");
  CHECK_THROWS_AS(parse_config_text("model SPT-CH\n"), ConfigError);
  CHECK_THROWS_AS(parse_config_text("n = 1\nn = 2\n"), ConfigError);
  CHECK_THROWS_AS(read_config_file("/nonexistent/sim.cfg"), ConfigError);
}

TEST_CASE("settings accept known keys and reject unknown ones") {
  Settings s;
  apply_setting(s, "model", "spt_rp");
  apply_setting(s, "topology", "grid");
  apply_setting(s, "n", "5");
  apply_setting(s, "models", "JNT-CH,SPT-RP");
  apply_setting(s, "fly_power_W", "20");
  apply_setting(s, "batteries", "12");
  CHECK(s.model == ModelKind::SptRp);
  CHECK(s.topology == TopologyKind::Grid);
  CHECK(s.n == 5);
  CHECK(s.models == std::vector<ModelKind>{ModelKind::JntCh, ModelKind::SptRp});
  CHECK(s.params.flight.fly_power_W == 20.0);
  CHECK(s.batteries == 12);
  apply_setting(s, "models", "all");
  CHECK(s.models.size() == 4);
  CHECK_THROWS_AS(apply_setting(s, "modle", "JNT-CH"), ConfigError);
  CHECK_THROWS_AS(apply_setting(s, "n", "three"), ConfigError);
  CHECK_THROWS_AS(apply_setting(s, "n", "3x"), ConfigError);
  CHECK_THROWS_AS(apply_setting(s, "model", "JNT"), ConfigError);
}

TEST_CASE("describe lists every effective parameter") {
  Settings s;
  apply_setting(s, "speed_m_s", "11");
  auto rows = describe(s);
  auto has = [&](const std::string& key, const std::string& value) {
    return std::find(rows.begin(), rows.end(), std::pair<std::string, std::string>{key, value}) != rows.end();
  };
  CHECK(has("speed_m_s", "11"));
  CHECK(has("horizon_s", "172800"));
  CHECK(has("capacity_mAh", "2700"));
  CHECK(has("uav_count", "auto"));
  // Every described key is accepted back.
  Settings copy;
  for (const auto& [k, v] : rows)
    if (v != "auto") CHECK_NOTHROW(apply_setting(copy, k, v));
  CHECK(describe(copy) == rows);
}
