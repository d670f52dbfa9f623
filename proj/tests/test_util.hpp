#pragma once
#include <vector>

#include "cab/reservoir.hpp"

namespace cab::test {

inline ReservoirSpec make_spec(std::vector<double> mu, std::vector<double> alpha,
                               RewardFamily family = RewardFamily::Bernoulli,
                               double half_width = 0.0) {
  ReservoirSpec spec;
  spec.alpha = std::move(alpha);
  for (double m : mu)
    spec.types.push_back(
        {m, family, family == RewardFamily::UniformAround ? half_width : 0.0});
  return spec;
}

// Two equiprobable Bernoulli types, means 0.6 / 0.4 (the standard two-type
// benchmark instance used across these tests).
inline ReservoirSpec setup1() { return make_spec({0.6, 0.4}, {0.5, 0.5}); }

// Three uniform Bernoulli types, means 0.9 / 0.5 / 0.1.
inline ReservoirSpec setup2() {
  return make_spec({0.9, 0.5, 0.1}, {1.0 / 3, 1.0 / 3, 1.0 / 3});
}

}  // namespace cab::test
