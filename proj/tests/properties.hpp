#pragma once

// Randomized property checks shared by the doctest property suite and the
// acceptance runner. Each check draws `cases` inputs from a seeded mt19937_64
// and stops at the first counterexample.

#include <cstdint>
#include <string>
#include <vector>

namespace props {

struct Outcome {
  std::string name;
  int cases = 0;
  std::string counterexample;  // empty when every case held

  bool ok() const { return counterexample.empty(); }
};

Outcome soc_bounds(std::uint64_t seed, int cases);
Outcome monotonicity(std::uint64_t seed, int cases);
Outcome inverse_laws(std::uint64_t seed, int cases);
Outcome semigroup(std::uint64_t seed, int cases);
Outcome swap_conservation(std::uint64_t seed, int cases);
Outcome census_conservation(std::uint64_t seed, int cases);
Outcome selection_membership(std::uint64_t seed, int cases);
Outcome run_determinism(std::uint64_t seed, int cases);
Outcome replay_equivalence(std::uint64_t seed, int cases);

std::vector<Outcome> run_all(std::uint64_t seed, int cases);

}  // namespace props
