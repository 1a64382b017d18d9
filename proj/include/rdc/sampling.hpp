#pragma once

#include <cstdint>
#include <functional>
#include <random>
#include <vector>

#include "rdc/design.hpp"

namespace rdc {

// Seeded generators for property tests and law suites. Every draw depends only
// on the seed and the sequence of calls.
class sampler {
 public:
  explicit sampler(universe_ptr u, std::uint64_t seed = 0) : u_(std::move(u)), rng_(seed) {}

  const universe_ptr& uni_ptr() const { return u_; }
  std::mt19937_64& rng() { return rng_; }

  bool coin(double p = 0.5);
  int below(int n);

  // Each binding kept with probability `density`.
  rel relation(alpha a, double density = 0.5);
  // Rows with #tt ≤ max_tt, kept with probability `density`.
  rr reactive(rr_shape shape, int max_tt, double density = 0.3);
  // Prefix-closed condition; a trace survives with probability `keep` given its parent did.
  rr condition(double keep = 0.8);
  // Precondition is true_r with probability 1/3, otherwise a random condition.
  contract contract_sample(int max_tt, double density = 0.3);
  state_fn total_state_fn();
  std::function<bool(int)> state_predicate(double density = 0.5);
  // pre over the initial state only, so the design is H3 and hence normal.
  rel normal_design(double pre_density = 0.7, double post_density = 0.4);

 private:
  universe_ptr u_;
  std::mt19937_64 rng_;
};

}  // namespace rdc
