#include "cab/policies/nested_ucb.hpp"

#include <algorithm>
#include <cmath>

namespace cab {

double ucb1_index(double mean, long n_pulls, long t_minus_1) {
  return mean + std::sqrt(2.0 * std::log(static_cast<double>(t_minus_1)) /
                          static_cast<double>(n_pulls));
}

NestedUcbPolicy::NestedUcbPolicy(int k_types, Rng rng, bool record_dither,
                                 bool record_epochs)
    : k_(k_types),
      rng_(rng),
      record_dither_(record_dither),
      record_epochs_(record_epochs),
      set_ids_(static_cast<std::size_t>(k_types), -1),
      counts_(static_cast<std::size_t>(k_types), 0),
      sums_(static_cast<std::size_t>(k_types), 0.0),
      logs_(static_cast<std::size_t>(k_types)),
      cum_m_(static_cast<std::size_t>(k_types), 0.0),
      dither_(static_cast<std::size_t>(k_types * (k_types - 1) / 2), 0.0) {
  epochs_ = 1;
}

void NestedUcbPolicy::start_epoch() {
  epochs_ += 1;
  filled_ = 0;
  std::fill(counts_.begin(), counts_.end(), 0);
  std::fill(sums_.begin(), sums_.end(), 0.0);
  std::fill(cum_m_.begin(), cum_m_.end(), 0.0);
  for (auto& log : logs_) log.clear();
  m_ = 0;
  t_epoch_ = 0;
}

PolicyAction NestedUcbPolicy::step(std::optional<double> feedback) {
  if (feedback && last_slot_ >= 0) {
    const auto s = static_cast<std::size_t>(last_slot_);
    counts_[s] += 1;
    sums_[s] += *feedback;
    logs_[s].push_back(*feedback);
    if (filled_ == k_) {
      const long min_count = *std::min_element(counts_.begin(), counts_.end());
      if (min_count > m_) {
        // min advances by at most one per pull
        for (int a = 0; a < k_; ++a)
          cum_m_[static_cast<std::size_t>(a)] +=
              logs_[static_cast<std::size_t>(a)][static_cast<std::size_t>(m_)];
        m_ += 1;
      }
    }
  }

  if (filled_ < k_) {
    const int slot = filled_++;
    set_ids_[static_cast<std::size_t>(slot)] = static_cast<int>(arms_created_++);
    last_slot_ = slot;
    t_epoch_ += 1;
    if (filled_ == k_) {
      for (auto& z : dither_) {
        z = rng_.normal();
        if (record_dither_) dither_log_.push_back(z);
      }
    }
    return PolicyAction::query();
  }

  // Discard check before the UCB pull, with the current aligned count m.
  if (m_ >= 2) {
    const double md = static_cast<double>(m_);
    const double threshold = 4.0 * std::sqrt(md * std::log(md));
    int pair = 0;
    for (int a = 0; a < k_; ++a)
      for (int b = a + 1; b < k_; ++b, ++pair)
        if (std::abs(dither_[static_cast<std::size_t>(pair)] +
                     cum_m_[static_cast<std::size_t>(a)] -
                     cum_m_[static_cast<std::size_t>(b)]) < threshold) {
          if (record_epochs_) epoch_lengths_.push_back(t_epoch_);
          start_epoch();
          const int slot = filled_++;
          set_ids_[static_cast<std::size_t>(slot)] =
              static_cast<int>(arms_created_++);
          last_slot_ = slot;
          t_epoch_ = 1;
          return PolicyAction::query();
        }
  }

  int best = 0;
  double best_index = -1e300;
  for (int a = 0; a < k_; ++a) {
    const auto s = static_cast<std::size_t>(a);
    const double idx = ucb1_index(sums_[s] / static_cast<double>(counts_[s]),
                                  counts_[s], t_epoch_);
    if (idx > best_index) {
      best_index = idx;
      best = a;
    }
  }
  last_slot_ = best;
  t_epoch_ += 1;
  return PolicyAction::play(set_ids_[static_cast<std::size_t>(best)]);
}

}  // namespace cab
