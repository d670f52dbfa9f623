#pragma once
#include <cstdint>
#include <optional>
#include <vector>

#include "cab/csv.hpp"
#include "cab/policy.hpp"
#include "cab/reservoir.hpp"

namespace cab {

struct CheckpointStat {
  long t = 0;
  double cumulative_regret = 0.0;
  long epochs_used = 0;
  long arms_queried = 0;
  std::optional<long> commit_time;
  std::optional<bool> committed_type_is_optimal;
};

struct EpisodeResult {
  std::vector<CheckpointStat> checkpoints;  // ascending t, last one is t = n

  const CheckpointStat& final_stat() const { return checkpoints.back(); }
};

// Default plotting grid: { ceil(n 10^{-j/4}) : j = 16..1 } plus n itself,
// deduplicated ascending (17 points for n = 10^5).
std::vector<long> default_checkpoints(long n);

// Runs one policy-vs-reservoir episode of exactly `horizon` pulls.
// Deterministic given (spec, params, horizon, seed): the seed is split into
// independent substreams for type sampling, rewards and policy dither.
// Checkpoints must be ascending, within [1, horizon], and contain horizon.
EpisodeResult run_episode(const ReservoirSpec& spec, const PolicyParams& params,
                          long horizon, std::uint64_t seed,
                          const std::vector<long>& checkpoints);

struct ExperimentResult {
  std::vector<RawRow> raw;               // canonical order, thread-independent
  std::vector<AggregateCurve> curves;    // one per policy, config order
};

// Fans replications out over a worker pool. Replication r of policy p uses
// episode_seed(master_seed, p, r); horizon-dependent policies are re-run per
// checkpoint horizon with a further checkpoint-index mix, anytime policies
// record every checkpoint in one pass. Output is byte-identical for any
// thread count.
ExperimentResult run_experiment(const ReservoirSpec& spec,
                                const std::vector<PolicyParams>& policies,
                                long horizon,
                                const std::vector<long>& checkpoints,
                                long replications, std::uint64_t master_seed,
                                int threads);

// Classical two-armed bandit baseline (fixed arms, no reservoir): UCB1 on two
// arms with the given means and family. Mirrors the countable-armed runs so
// its curve can be plotted against them.
struct TwoArmOracleResult {
  std::vector<RawRow> raw;
  AggregateCurve curve;
};
TwoArmOracleResult regret_oracle_fixed_two_arm(
    double mu1, double mu2, RewardFamily family, long horizon,
    const std::vector<long>& checkpoints, long replications,
    std::uint64_t master_seed, int threads, const std::string& label);

// Builds an aggregate curve from a deterministic reference function (used for
// lower-bound reference lines; replications = 0, zero-width band).
AggregateCurve reference_curve(const std::string& label,
                               const std::vector<std::pair<long, double>>& pts);

}  // namespace cab
