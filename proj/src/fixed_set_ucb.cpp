#include "cab/policies/fixed_set_ucb.hpp"

#include <algorithm>
#include <cmath>

#include "cab/policies/nested_ucb.hpp"

namespace cab {

long front_loaded_query_count(double alpha1_hint, double query_scale,
                              double ln_horizon, long horizon) {
  if (!(alpha1_hint > 0.0) || alpha1_hint > 1.0)
    throw ConfigError("alpha1_hint must lie in (0, 1]");
  if (!(query_scale > 0.0)) throw ConfigError("query_scale must be > 0");
  const long q =
      static_cast<long>(std::ceil(query_scale * ln_horizon / alpha1_hint));
  return std::clamp(std::max(q, 1L), 1L, horizon);
}

FixedSetUcbPolicy::FixedSetUcbPolicy(long query_count)
    : q_(query_count),
      counts_(static_cast<std::size_t>(query_count), 0),
      sums_(static_cast<std::size_t>(query_count), 0.0) {
  if (query_count < 1) throw ConfigError("query count must be >= 1");
}

long FixedSetUcbPolicy::min_pull_count() const {
  if (filled_ < q_) return 0;
  return *std::min_element(counts_.begin(), counts_.end());
}

PolicyAction FixedSetUcbPolicy::step(std::optional<double> feedback) {
  if (feedback && last_slot_ >= 0) {
    counts_[static_cast<std::size_t>(last_slot_)] += 1;
    sums_[static_cast<std::size_t>(last_slot_)] += *feedback;
  }
  if (filled_ < q_) {
    last_slot_ = filled_++;
    t_ += 1;
    return PolicyAction::query();
  }
  int best = 0;
  double best_index = -1e300;
  for (int a = 0; a < static_cast<int>(q_); ++a) {
    const auto s = static_cast<std::size_t>(a);
    const double idx =
        ucb1_index(sums_[s] / static_cast<double>(counts_[s]), counts_[s], t_);
    if (idx > best_index) {
      best_index = idx;
      best = a;
    }
  }
  last_slot_ = best;
  t_ += 1;
  return PolicyAction::play(best);
}

}  // namespace cab
