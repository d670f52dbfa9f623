#pragma once
#include <string>
#include <vector>

#include "cab/errors.hpp"
#include "cab/rng.hpp"

namespace cab {

enum class RewardFamily { Bernoulli, UniformAround, PointMass };

std::string to_string(RewardFamily f);
RewardFamily parse_reward_family(const std::string& s);

// One latent arm-type: every arm of this type draws i.i.d. rewards from
// `family` with mean `mu`; the support must stay inside [0,1].
struct TypeSpec {
  double mu = 0.0;
  RewardFamily family = RewardFamily::Bernoulli;
  double half_width = 0.0;  // UniformAround only

  bool operator==(const TypeSpec&) const = default;
};

struct Gaps {
  double delta_bar;       // mu_1 - mu_K, maximal sub-optimality gap
  double delta_underbar;  // mu_1 - mu_2, minimal sub-optimality gap
  double delta_min;       // minimal gap between any two adjacent means
};

// Hidden ground truth of the arm population. Immutable once validated and
// shareable across threads.
struct ReservoirSpec {
  std::vector<TypeSpec> types;  // sorted by strictly decreasing mu
  std::vector<double> alpha;    // type probabilities, sum to 1

  int k() const { return static_cast<int>(types.size()); }
  std::vector<double> mu() const;
  void validate() const;  // throws DomainError

  bool operator==(const ReservoirSpec&) const = default;
};

Gaps derived_gaps(const ReservoirSpec& spec);

// A queried arm. Policies never touch this object; the engine exposes only
// arm ids and realized rewards to them, so the hidden type stays private to
// the Reservoir accessors below.
class ArmState {
 public:
  int arm_id() const { return arm_id_; }
  long pulls() const { return pulls_; }
  double reward_sum() const { return reward_sum_; }
  const std::vector<double>& reward_log() const { return log_; }

 private:
  friend class Reservoir;
  int arm_id_ = -1;
  int hidden_type_ = -1;  // index into spec.types; engine-visible only
  bool logging_ = false;
  long pulls_ = 0;
  double reward_sum_ = 0.0;
  std::vector<double> log_;
};

class Reservoir {
 public:
  explicit Reservoir(ReservoirSpec spec, bool log_rewards = false);

  // Samples a fresh arm whose type is i.i.d. from alpha, independent of all
  // history. Arm ids are consecutive integers starting at 0 per episode.
  ArmState query_arm(Rng& type_rng);

  // Draws one reward from the arm's family; appends/accumulates it.
  double pull_arm(ArmState& arm, Rng& reward_rng) const;

  // mu_1 - mu_type. Engine-only; never exposed to policies.
  double regret_increment(const ArmState& arm) const;

  int type_of(const ArmState& arm) const { return arm.hidden_type_; }
  const ReservoirSpec& spec() const { return spec_; }

 private:
  ReservoirSpec spec_;
  bool logging_;
  int next_id_ = 0;
};

}  // namespace cab
