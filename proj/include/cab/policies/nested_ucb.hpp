#pragma once
#include <vector>

#include "cab/policy.hpp"

namespace cab {

// UCB1 index with the clock convention used throughout: at the step following
// t_minus_1 completed pulls, an arm with n_pulls samples and empirical mean
// `mean` scores mean + sqrt(2 ln(t_minus_1) / n_pulls).
double ucb1_index(double mean, long n_pulls, long t_minus_1);

// Nested UCB1 over consideration sets of size K (two types is the K = 2
// special case). Anytime: never commits, requires no horizon. Each epoch
// queries K fresh arms, plays them by UCB1 on a within-epoch clock, and
// discards the whole set as soon as some pair's dithered aligned
// difference-of-reward statistic falls below 4 sqrt(m ln m), where m is the
// minimum within-epoch per-arm count.
class NestedUcbPolicy final : public Policy {
 public:
  NestedUcbPolicy(int k_types, Rng rng, bool record_dither, bool record_epochs);

  PolicyAction step(std::optional<double> feedback) override;
  long epochs_started() const override { return epochs_; }
  const std::vector<double>& dither_log() const override { return dither_log_; }
  const std::vector<long>& completed_epoch_lengths() const override {
    return epoch_lengths_;
  }

  // Test introspection.
  long aligned_min_count() const { return m_; }
  long epoch_clock() const { return t_epoch_; }

 private:
  void start_epoch();

  int k_;
  Rng rng_;
  bool record_dither_;
  bool record_epochs_;

  int filled_ = 0;  // arms queried so far in the current epoch
  std::vector<int> set_ids_;
  std::vector<long> counts_;
  std::vector<double> sums_;
  std::vector<std::vector<double>> logs_;  // per-arm within-epoch rewards
  std::vector<double> cum_m_;              // per-arm prefix sums at index m
  std::vector<double> dither_;
  long m_ = 0;
  long t_epoch_ = 0;  // within-epoch pulls issued
  long epochs_ = 0;
  int last_slot_ = -1;
  long arms_created_ = 0;

  std::vector<double> dither_log_;
  std::vector<long> epoch_lengths_;
};

}  // namespace cab
