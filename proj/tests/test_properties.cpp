#include <doctest.h>

#include <stdexcept>

#include "properties.hpp"

namespace {

constexpr std::uint64_t kSeed = 20240611;
constexpr int kCases = 1000;

void require_property(const props::Outcome& out) {
  INFO(out.name << ": " << out.counterexample);
  CHECK(out.ok());
  CHECK(out.cases == kCases);
}

}  // namespace

TEST_CASE("property: soc stays in [0, 100]") { require_property(props::soc_bounds(kSeed, kCases)); }
TEST_CASE("property: discharge and charge are monotone") { require_property(props::monotonicity(kSeed, kCases)); }
TEST_CASE("property: time_to_empty and time_to_full invert the curves") {
  require_property(props::inverse_laws(kSeed, kCases));
}
TEST_CASE("property: split discharges and charges compose") { require_property(props::semigroup(kSeed, kCases)); }
TEST_CASE("property: swaps conserve the soc multiset") { require_property(props::swap_conservation(kSeed, kCases)); }
TEST_CASE("property: battery ids are conserved over a run") {
  require_property(props::census_conservation(kSeed, kCases));
}
TEST_CASE("property: AP selection lies in K within J") { require_property(props::selection_membership(kSeed, kCases)); }
TEST_CASE("property: identical configs give identical reports") {
  require_property(props::run_determinism(kSeed, kCases));
}
TEST_CASE("property: timeline matches a 1 s fixed-step replay") {
  require_property(props::replay_equivalence(kSeed, kCases));
}
