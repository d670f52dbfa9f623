#pragma once
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "cab/errors.hpp"
#include "cab/rng.hpp"

namespace cab {

// Per-step decision: play an arm already queried this episode, or query (and
// play) a new one. Arm ids follow the episode-wide convention that the i-th
// QueryNew action creates arm id i; policies and engine both count from 0.
struct PolicyAction {
  enum class Kind { PlayExisting, QueryNew };
  Kind kind = Kind::QueryNew;
  int arm_id = -1;

  static PolicyAction play(int id) { return {Kind::PlayExisting, id}; }
  static PolicyAction query() { return {Kind::QueryNew, -1}; }
};

enum class PolicyKind {
  Alg1,           // fixed-schedule explore-then-commit
  Alg2,           // explore-then-commit with adaptive stopping times
  Alg3,           // nested UCB1, two types
  Alg4,           // nested UCB1, K types
  EtcInfinity,    // gap-aware fixed-schedule explore-then-commit
  FrontLoadedUcb, // queries ceil(c ln n / alpha1_hint) arms upfront, then UCB1
  Ucb1Fixed,      // UCB1 on a fixed-size queried set (no discards)
};

std::string to_string(PolicyKind k);
PolicyKind parse_policy_kind(const std::string& s);

// Horizon-calibrated policies are re-run per plotted horizon by the engine;
// anytime policies are run once and read off at every checkpoint.
bool is_horizon_dependent(PolicyKind k);

// Smallest horizon a policy is defined at (K for the ETC family, which must
// be able to query a full consideration set; 1 otherwise).
long policy_min_horizon(PolicyKind k, int k_types);

struct PolicyParams {
  PolicyKind kind = PolicyKind::Alg1;
  std::string name;                // CSV label; defaults to the kind string
  long burn_in = 0;                // alg2; 0 selects ceil(sqrt(ln n))
  double delta_lower_bound = 0.0;  // etc_infinity
  double alpha1_hint = 0.0;        // front_loaded_ucb
  double query_scale = 1.0;        // front_loaded_ucb, the constant c
  int set_size = 0;                // ucb1_fixed; 0 selects K
  bool record_dither = false;      // test instrumentation
  bool record_epochs = false;      // test instrumentation

  std::string label() const { return name.empty() ? to_string(kind) : name; }
  bool operator==(const PolicyParams&) const = default;
};

// A policy sees only its own past actions and realized rewards, never arm
// types. `feedback` is the reward of the action returned by the previous
// step() call (empty on the first call). Policies are total: they return a
// legal action for every feedback sequence in [0,1].
class Policy {
 public:
  virtual ~Policy() = default;

  virtual PolicyAction step(std::optional<double> feedback) = 0;

  // Consideration sets queried so far (1 for the fixed-set baselines).
  virtual long epochs_started() const = 0;

  // Set once an ETC-family policy commits; never set for anytime policies.
  virtual std::optional<int> committed_arm() const { return std::nullopt; }

  // Instrumentation; populated only when the matching record_* flag is set.
  virtual const std::vector<double>& dither_log() const;
  virtual const std::vector<long>& completed_epoch_lengths() const;
};

// Builds a policy. `horizon` is consumed only by horizon-dependent kinds.
std::unique_ptr<Policy> make_policy(const PolicyParams& params, int k_types,
                                    long horizon, Rng rng);

}  // namespace cab
