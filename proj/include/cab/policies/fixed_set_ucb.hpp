#pragma once
#include <vector>

#include "cab/policy.hpp"

namespace cab {

// Number of upfront queries of the front-loaded baseline:
// ceil(c * ln(n) / alpha1_hint), at least 1, clamped to the horizon.
long front_loaded_query_count(double alpha1_hint, double query_scale,
                              double ln_horizon, long horizon);

// Queries a fixed number of arms upfront, then runs UCB1 over that set for
// the rest of the episode. Never discards, never commits. Backs both the
// front-loaded-query baseline and the plain fixed-set UCB1 baseline.
class FixedSetUcbPolicy final : public Policy {
 public:
  explicit FixedSetUcbPolicy(long query_count);

  PolicyAction step(std::optional<double> feedback) override;
  long epochs_started() const override { return 1; }

  long min_pull_count() const;  // test introspection

 private:
  long q_;
  int filled_ = 0;
  std::vector<long> counts_;
  std::vector<double> sums_;
  long t_ = 0;  // pulls issued
  int last_slot_ = -1;
};

}  // namespace cab
