#pragma once
#include <vector>

#include "cab/policy.hpp"

namespace cab {

// Per-epoch schedule of the fixed-design explore-then-commit policy:
// L = ceil(e^{2 sqrt(k)} ln n) pulls per arm, pairwise discard threshold
// scale 2 e^{-sqrt(k)} (multiplied by the realized per-arm count m).
struct Alg1EpochParams {
  long pulls_per_arm;
  double threshold_scale;
};
Alg1EpochParams alg1_epoch_params(long epoch_index, long horizon);

// Gap-aware variant: L = ceil(2 delta_lb^{-2} ln n), threshold scale delta_lb.
// Takes ln(n) directly so the formula can be evaluated at exact log values.
long etc_infinity_exploration_length(double delta_lb, double ln_horizon);

struct EpochVerdict {
  enum class Kind { Discard, Commit };
  Kind kind;
  int arm_index = -1;  // within-set index of the committed arm
};

// Verdict over a completed epoch with per-arm reward sums at equal count m.
// Discard iff some pair has |sum_a - sum_b| < m * threshold_scale (strict, so
// boundary equality commits); otherwise commit to the argmax sum, ties to the
// lowest index. m = 0 yields Commit(0): empty sums never trigger the strict
// inequality and the argmax tie-break picks the first arm.
EpochVerdict fixed_schedule_epoch_verdict(const std::vector<double>& sums,
                                          long m, double threshold_scale);

// Difference-of-reward thresholds of the adaptive-stopping-time policy.
double alg2_discard_threshold(long m);                  // 4 sqrt(m ln m)
double alg2_commit_threshold(long m, double ln_horizon);  // 4 sqrt(m ln n)

long default_burn_in(long horizon);  // ceil(sqrt(ln n))

// ALG1 / ETC-infinity: epochs of round-robin exploration with a pre-specified
// per-arm duration, ending in a pairwise similarity verdict.
class FixedScheduleEtcPolicy final : public Policy {
 public:
  FixedScheduleEtcPolicy(PolicyKind kind, int k_types, long horizon,
                         double delta_lb);

  PolicyAction step(std::optional<double> feedback) override;
  long epochs_started() const override { return epochs_; }
  std::optional<int> committed_arm() const override;

 private:
  void start_epoch();

  PolicyKind kind_;
  int k_;
  long n_;
  double ln_n_;
  double delta_lb_;

  enum class Phase { Rounds, Committed, Residual } phase_ = Phase::Rounds;
  long epoch_index_ = 0;  // schedule index k, survives across epochs
  long epochs_ = 0;
  long m_target_ = 0;
  long rounds_done_ = 0;
  int slot_to_play_ = 0;
  bool epoch_is_fresh_ = true;  // current round queries new arms
  std::vector<double> sums_;
  std::vector<int> set_ids_;
  int last_slot_ = -1;
  long pulls_issued_ = 0;
  long arms_created_ = 0;
  int committed_id_ = -1;
  int residual_id_ = -1;
};

// ALG2: burn-in of s_n rounds, then at every round boundary a dithered
// discard test against 4 sqrt(m ln m) and an undithered commit test against
// 4 sqrt(m ln n); otherwise one more round. Dither is drawn fresh per epoch.
class Alg2Policy final : public Policy {
 public:
  Alg2Policy(int k_types, long horizon, long burn_in, Rng rng,
             bool record_dither, bool record_epochs);

  PolicyAction step(std::optional<double> feedback) override;
  long epochs_started() const override { return epochs_; }
  std::optional<int> committed_arm() const override;
  const std::vector<double>& dither_log() const override { return dither_log_; }
  const std::vector<long>& completed_epoch_lengths() const override {
    return epoch_lengths_;
  }

 private:
  void start_epoch();

  int k_;
  long n_;
  double ln_n_;
  long s_n_;
  Rng rng_;
  bool record_dither_;
  bool record_epochs_;

  enum class Phase { Rounds, Committed, Residual } phase_ = Phase::Rounds;
  long epochs_ = 0;
  long rounds_done_ = 0;  // per-arm count m once the round completes
  int slot_to_play_ = 0;
  bool epoch_is_fresh_ = true;
  bool dither_drawn_ = false;
  std::vector<double> sums_;
  std::vector<double> dither_;  // pair (a,b), a<b, lexicographic
  std::vector<int> set_ids_;
  int last_slot_ = -1;
  long pulls_issued_ = 0;
  long epoch_pulls_ = 0;
  long arms_created_ = 0;
  int committed_id_ = -1;
  int residual_id_ = -1;

  std::vector<double> dither_log_;
  std::vector<long> epoch_lengths_;
};

}  // namespace cab
