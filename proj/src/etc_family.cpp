#include "cab/policies/etc_family.hpp"

#include <algorithm>
#include <cmath>

namespace cab {

Alg1EpochParams alg1_epoch_params(long epoch_index, long horizon) {
  if (epoch_index < 1) throw DomainError("epoch index must be >= 1");
  if (horizon < 2) throw DomainError("horizon must be >= 2");
  const double sk = std::sqrt(static_cast<double>(epoch_index));
  const long pulls = static_cast<long>(
      std::ceil(std::exp(2.0 * sk) * std::log(static_cast<double>(horizon))));
  return {pulls, 2.0 * std::exp(-sk)};
}

long etc_infinity_exploration_length(double delta_lb, double ln_horizon) {
  if (!(delta_lb > 0.0) || delta_lb > 1.0)
    throw DomainError("delta lower bound must lie in (0, 1]");
  return static_cast<long>(std::ceil(2.0 / (delta_lb * delta_lb) * ln_horizon));
}

EpochVerdict fixed_schedule_epoch_verdict(const std::vector<double>& sums,
                                          long m, double threshold_scale) {
  const double threshold = static_cast<double>(m) * threshold_scale;
  const int k = static_cast<int>(sums.size());
  for (int a = 0; a < k; ++a)
    for (int b = a + 1; b < k; ++b)
      if (std::abs(sums[static_cast<std::size_t>(a)] -
                   sums[static_cast<std::size_t>(b)]) < threshold)
        return {EpochVerdict::Kind::Discard, -1};
  int best = 0;
  for (int a = 1; a < k; ++a)
    if (sums[static_cast<std::size_t>(a)] > sums[static_cast<std::size_t>(best)])
      best = a;
  return {EpochVerdict::Kind::Commit, best};
}

double alg2_discard_threshold(long m) {
  if (m < 1) throw DomainError("per-arm count must be >= 1");
  const double md = static_cast<double>(m);
  return 4.0 * std::sqrt(md * std::log(md));  // 0 at m = 1
}

double alg2_commit_threshold(long m, double ln_horizon) {
  if (m < 1) throw DomainError("per-arm count must be >= 1");
  return 4.0 * std::sqrt(static_cast<double>(m) * ln_horizon);
}

long default_burn_in(long horizon) {
  return static_cast<long>(
      std::ceil(std::sqrt(std::log(static_cast<double>(horizon)))));
}

namespace {

int argmax_lowest(const std::vector<double>& v) {
  int best = 0;
  for (int i = 1; i < static_cast<int>(v.size()); ++i)
    if (v[static_cast<std::size_t>(i)] > v[static_cast<std::size_t>(best)])
      best = i;
  return best;
}

}  // namespace

// ---------------------------------------------------------------------------
// FixedScheduleEtcPolicy (ALG1 and ETC-infinity share the epoch skeleton)

FixedScheduleEtcPolicy::FixedScheduleEtcPolicy(PolicyKind kind, int k_types,
                                               long horizon, double delta_lb)
    : kind_(kind),
      k_(k_types),
      n_(horizon),
      ln_n_(std::log(static_cast<double>(horizon))),
      delta_lb_(delta_lb),
      sums_(static_cast<std::size_t>(k_types), 0.0),
      set_ids_(static_cast<std::size_t>(k_types), -1) {
  start_epoch();
}

void FixedScheduleEtcPolicy::start_epoch() {
  epoch_index_ += 1;
  epochs_ += 1;
  rounds_done_ = 0;
  slot_to_play_ = 0;
  epoch_is_fresh_ = true;
  std::fill(sums_.begin(), sums_.end(), 0.0);
  const long budget_rounds = (n_ - pulls_issued_) / k_;
  const long scheduled =
      kind_ == PolicyKind::Alg1
          ? alg1_epoch_params(epoch_index_, n_).pulls_per_arm
          : etc_infinity_exploration_length(delta_lb_, ln_n_);
  m_target_ = std::min(scheduled, budget_rounds);
}

std::optional<int> FixedScheduleEtcPolicy::committed_arm() const {
  if (phase_ == Phase::Committed) return committed_id_;
  return std::nullopt;
}

PolicyAction FixedScheduleEtcPolicy::step(std::optional<double> feedback) {
  if (feedback && last_slot_ >= 0) {
    sums_[static_cast<std::size_t>(last_slot_)] += *feedback;
    if (last_slot_ == k_ - 1 && phase_ == Phase::Rounds) {
      rounds_done_ += 1;
      if (rounds_done_ >= m_target_) {
        const double scale = kind_ == PolicyKind::Alg1
                                 ? alg1_epoch_params(epoch_index_, n_).threshold_scale
                                 : delta_lb_;
        const EpochVerdict v =
            fixed_schedule_epoch_verdict(sums_, rounds_done_, scale);
        if (v.kind == EpochVerdict::Kind::Commit) {
          committed_id_ = set_ids_[static_cast<std::size_t>(v.arm_index)];
          phase_ = Phase::Committed;
          last_slot_ = -1;
        } else if (n_ - pulls_issued_ < k_) {
          // Residual budget: commit to the empirically best arm of the epoch
          // that just ended.
          committed_id_ = set_ids_[static_cast<std::size_t>(argmax_lowest(sums_))];
          phase_ = Phase::Committed;
          last_slot_ = -1;
        } else {
          start_epoch();
        }
      }
    }
  }

  pulls_issued_ += 1;
  if (phase_ == Phase::Committed) return PolicyAction::play(committed_id_);

  const int slot = slot_to_play_;
  slot_to_play_ = (slot + 1) % k_;
  last_slot_ = slot;
  if (epoch_is_fresh_) {
    set_ids_[static_cast<std::size_t>(slot)] = static_cast<int>(arms_created_++);
    if (slot == k_ - 1) epoch_is_fresh_ = false;
    return PolicyAction::query();
  }
  return PolicyAction::play(set_ids_[static_cast<std::size_t>(slot)]);
}

// ---------------------------------------------------------------------------
// Alg2Policy

Alg2Policy::Alg2Policy(int k_types, long horizon, long burn_in, Rng rng,
                       bool record_dither, bool record_epochs)
    : k_(k_types),
      n_(horizon),
      ln_n_(std::log(static_cast<double>(horizon))),
      s_n_(burn_in),
      rng_(rng),
      record_dither_(record_dither),
      record_epochs_(record_epochs),
      sums_(static_cast<std::size_t>(k_types), 0.0),
      dither_(static_cast<std::size_t>(k_types * (k_types - 1) / 2), 0.0),
      set_ids_(static_cast<std::size_t>(k_types), -1) {
  start_epoch();
}

void Alg2Policy::start_epoch() {
  epochs_ += 1;
  rounds_done_ = 0;
  slot_to_play_ = 0;
  epoch_is_fresh_ = true;
  dither_drawn_ = false;
  epoch_pulls_ = 0;
  std::fill(sums_.begin(), sums_.end(), 0.0);
}

std::optional<int> Alg2Policy::committed_arm() const {
  if (phase_ == Phase::Committed) return committed_id_;
  return std::nullopt;
}

PolicyAction Alg2Policy::step(std::optional<double> feedback) {
  if (feedback && last_slot_ >= 0) {
    sums_[static_cast<std::size_t>(last_slot_)] += *feedback;
    if (last_slot_ == k_ - 1 && phase_ == Phase::Rounds) {
      rounds_done_ += 1;
      if (rounds_done_ >= s_n_) {
        if (!dither_drawn_) {
          for (auto& z : dither_) {
            z = rng_.normal();
            if (record_dither_) dither_log_.push_back(z);
          }
          dither_drawn_ = true;
        }
        if (n_ - pulls_issued_ < k_) {
          // While-guard failed without a commit: spend the residual pulls on
          // the current empirical best of the live set.
          residual_id_ = set_ids_[static_cast<std::size_t>(argmax_lowest(sums_))];
          phase_ = Phase::Residual;
          last_slot_ = -1;
        } else {
          const long m = rounds_done_;
          const double discard_thr = alg2_discard_threshold(m);
          bool discard = false;
          int pair = 0;
          for (int a = 0; a < k_ && !discard; ++a)
            for (int b = a + 1; b < k_; ++b, ++pair)
              if (std::abs(dither_[static_cast<std::size_t>(pair)] +
                           sums_[static_cast<std::size_t>(a)] -
                           sums_[static_cast<std::size_t>(b)]) < discard_thr) {
                discard = true;
                break;
              }
          if (discard) {
            if (record_epochs_) epoch_lengths_.push_back(epoch_pulls_);
            start_epoch();
          } else {
            const double commit_thr = alg2_commit_threshold(m, ln_n_);
            bool commit = true;
            for (int a = 0; a < k_ && commit; ++a)
              for (int b = a + 1; b < k_; ++b)
                if (std::abs(sums_[static_cast<std::size_t>(a)] -
                             sums_[static_cast<std::size_t>(b)]) < commit_thr) {
                  commit = false;
                  break;
                }
            if (commit) {
              committed_id_ =
                  set_ids_[static_cast<std::size_t>(argmax_lowest(sums_))];
              phase_ = Phase::Committed;
              last_slot_ = -1;
            }
          }
        }
      }
    }
  }

  pulls_issued_ += 1;
  if (phase_ == Phase::Committed) return PolicyAction::play(committed_id_);
  if (phase_ == Phase::Residual) return PolicyAction::play(residual_id_);

  epoch_pulls_ += 1;
  const int slot = slot_to_play_;
  slot_to_play_ = (slot + 1) % k_;
  last_slot_ = slot;
  if (epoch_is_fresh_) {
    set_ids_[static_cast<std::size_t>(slot)] = static_cast<int>(arms_created_++);
    if (slot == k_ - 1) epoch_is_fresh_ = false;
    return PolicyAction::query();
  }
  return PolicyAction::play(set_ids_[static_cast<std::size_t>(slot)]);
}

}  // namespace cab
