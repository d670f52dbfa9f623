#include "cab/engine.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <thread>

#include "cab/policies/nested_ucb.hpp"

namespace cab {

std::vector<long> default_checkpoints(long n) {
  if (n < 1) throw DomainError("horizon must be >= 1");
  std::vector<long> pts{n};
  for (int j = 1; j <= 16; ++j) {
    long v;
    if (j % 4 == 0) {
      long d = 1;
      for (int i = 0; i < j / 4; ++i) d *= 10;
      v = (n + d - 1) / d;  // exact ceil for decade steps
    } else {
      v = static_cast<long>(
          std::ceil(static_cast<double>(n) * std::pow(10.0, -j / 4.0)));
    }
    if (v >= 1) pts.push_back(v);
  }
  std::sort(pts.begin(), pts.end());
  pts.erase(std::unique(pts.begin(), pts.end()), pts.end());
  return pts;
}

namespace {

void check_checkpoints(const std::vector<long>& cps, long horizon) {
  if (cps.empty()) throw ConfigError("at least one checkpoint required");
  for (std::size_t i = 0; i < cps.size(); ++i) {
    if (cps[i] < 1 || cps[i] > horizon)
      throw ConfigError("checkpoints must lie in [1, horizon]");
    if (i > 0 && cps[i] <= cps[i - 1])
      throw ConfigError("checkpoints must be strictly ascending");
  }
  if (cps.back() != horizon)
    throw ConfigError("the last checkpoint must equal the horizon");
}

int resolve_threads(int threads) {
  if (threads > 0) return threads;
  const unsigned hw = std::thread::hardware_concurrency();
  return hw == 0 ? 1 : static_cast<int>(hw);
}

// Runs `tasks` callables indexed 0..count-1 on a pool; results are written by
// the callables into preallocated slots, so output never depends on timing.
template <typename Fn>
void parallel_for(long count, int threads, Fn&& fn) {
  const int workers = std::min<long>(resolve_threads(threads), count);
  if (workers <= 1) {
    for (long i = 0; i < count; ++i) fn(i);
    return;
  }
  std::atomic<long> next{0};
  std::vector<std::thread> pool;
  pool.reserve(static_cast<std::size_t>(workers));
  for (int w = 0; w < workers; ++w)
    pool.emplace_back([&] {
      for (;;) {
        const long i = next.fetch_add(1);
        if (i >= count) return;
        fn(i);
      }
    });
  for (auto& t : pool) t.join();
}

struct Accumulated {
  double mean = 0.0;
  double ci = 0.0;
};

Accumulated mean_ci(const std::vector<double>& xs) {
  const auto r = static_cast<double>(xs.size());
  double sum = 0.0;
  for (double x : xs) sum += x;
  const double mean = sum / r;
  if (xs.size() < 2) return {mean, 0.0};
  double ss = 0.0;
  for (double x : xs) ss += (x - mean) * (x - mean);
  const double sd = std::sqrt(ss / (r - 1.0));
  return {mean, 1.96 * sd / std::sqrt(r)};
}

}  // namespace

EpisodeResult run_episode(const ReservoirSpec& spec, const PolicyParams& params,
                          long horizon, std::uint64_t seed,
                          const std::vector<long>& checkpoints) {
  spec.validate();
  check_checkpoints(checkpoints, horizon);

  Reservoir reservoir(spec);
  Rng type_rng = substream_rng(seed, Substream::Types);
  Rng reward_rng = substream_rng(seed, Substream::Rewards);
  auto policy = make_policy(params, spec.k(), horizon,
                            substream_rng(seed, Substream::Policy));

  std::vector<ArmState> arms;
  EpisodeResult result;
  result.checkpoints.reserve(checkpoints.size());

  double cum_regret = 0.0;
  std::optional<long> commit_time;
  std::optional<bool> committed_optimal;
  std::optional<double> feedback;
  std::size_t next_cp = 0;

  for (long t = 1; t <= horizon; ++t) {
    const PolicyAction action = policy->step(feedback);
    ArmState* arm = nullptr;
    if (action.kind == PolicyAction::Kind::QueryNew) {
      arms.push_back(reservoir.query_arm(type_rng));
      arm = &arms.back();
    } else {
      if (action.arm_id < 0 || action.arm_id >= static_cast<int>(arms.size()))
        throw std::logic_error("policy played an arm it never queried");
      arm = &arms[static_cast<std::size_t>(action.arm_id)];
    }
    feedback = reservoir.pull_arm(*arm, reward_rng);
    cum_regret += reservoir.regret_increment(*arm);

    if (!commit_time) {
      if (const auto committed = policy->committed_arm()) {
        commit_time = t;
        committed_optimal =
            reservoir.type_of(arms[static_cast<std::size_t>(*committed)]) == 0;
      }
    }

    if (next_cp < checkpoints.size() && t == checkpoints[next_cp]) {
      CheckpointStat cs;
      cs.t = t;
      cs.cumulative_regret = cum_regret;
      cs.epochs_used = policy->epochs_started();
      cs.arms_queried = static_cast<long>(arms.size());
      cs.commit_time = commit_time;
      cs.committed_type_is_optimal = committed_optimal;
      result.checkpoints.push_back(cs);
      ++next_cp;
    }
  }
  return result;
}

ExperimentResult run_experiment(const ReservoirSpec& spec,
                                const std::vector<PolicyParams>& policies,
                                long horizon,
                                const std::vector<long>& checkpoints,
                                long replications, std::uint64_t master_seed,
                                int threads) {
  spec.validate();
  check_checkpoints(checkpoints, horizon);
  if (replications < 1) throw ConfigError("replications must be >= 1");
  if (policies.empty()) throw ConfigError("at least one policy required");

  const long n_cp = static_cast<long>(checkpoints.size());
  const long n_pol = static_cast<long>(policies.size());

  // One slot per (policy, replication, checkpoint).
  std::vector<CheckpointStat> slots(
      static_cast<std::size_t>(n_pol * replications * n_cp));
  const auto slot_at = [&](long p, long r, long c) -> CheckpointStat& {
    return slots[static_cast<std::size_t>((p * replications + r) * n_cp + c)];
  };

  // Horizon-dependent policies are re-run per checkpoint horizon and are not
  // defined below their minimum horizon; their curves start at the first
  // checkpoint they can be calibrated to.
  std::vector<long> first_cp(static_cast<std::size_t>(n_pol), 0);
  for (long p = 0; p < n_pol; ++p) {
    const long min_h =
        policy_min_horizon(policies[static_cast<std::size_t>(p)].kind, spec.k());
    long c = 0;
    while (c < n_cp && checkpoints[static_cast<std::size_t>(c)] < min_h) ++c;
    first_cp[static_cast<std::size_t>(p)] = c;
  }

  // Tasks are (policy, replication) pairs; horizon-dependent policies loop
  // over checkpoint horizons inside their task.
  parallel_for(n_pol * replications, threads, [&](long idx) {
    const long p = idx / replications;
    const long r = idx % replications;
    const PolicyParams& params = policies[static_cast<std::size_t>(p)];
    const std::uint64_t seed =
        episode_seed(master_seed, static_cast<std::uint64_t>(p),
                     static_cast<std::uint64_t>(r));
    if (is_horizon_dependent(params.kind)) {
      for (long c = first_cp[static_cast<std::size_t>(p)]; c < n_cp; ++c) {
        const long sub_horizon = checkpoints[static_cast<std::size_t>(c)];
        const std::uint64_t run_seed =
            mix_seed(seed, static_cast<std::uint64_t>(c) + 1);
        const std::vector<long> final_only{sub_horizon};
        const EpisodeResult er =
            run_episode(spec, params, sub_horizon, run_seed, final_only);
        slot_at(p, r, c) = er.final_stat();
      }
    } else {
      const EpisodeResult er =
          run_episode(spec, params, horizon, seed, checkpoints);
      for (long c = 0; c < n_cp; ++c)
        slot_at(p, r, c) = er.checkpoints[static_cast<std::size_t>(c)];
    }
  });

  ExperimentResult out;
  out.raw.reserve(slots.size());
  for (long p = 0; p < n_pol; ++p) {
    AggregateCurve curve;
    curve.policy = policies[static_cast<std::size_t>(p)].label();
    curve.single_replication = replications == 1;
    for (long c = first_cp[static_cast<std::size_t>(p)]; c < n_cp; ++c) {
      std::vector<double> regrets;
      regrets.reserve(static_cast<std::size_t>(replications));
      for (long r = 0; r < replications; ++r) {
        const CheckpointStat& cs = slot_at(p, r, c);
        RawRow row;
        row.policy = curve.policy;
        row.checkpoint = cs.t;
        row.replication = r;
        row.pseudo_regret = cs.cumulative_regret;
        row.epochs_used = cs.epochs_used;
        row.arms_queried = cs.arms_queried;
        row.commit_time = cs.commit_time;
        row.committed_optimal = cs.committed_type_is_optimal;
        out.raw.push_back(row);
        regrets.push_back(cs.cumulative_regret);
      }
      const Accumulated acc = mean_ci(regrets);
      curve.points.push_back(
          {checkpoints[static_cast<std::size_t>(c)], acc.mean, acc.ci,
           replications});
    }
    out.curves.push_back(std::move(curve));
  }
  return out;
}

TwoArmOracleResult regret_oracle_fixed_two_arm(
    double mu1, double mu2, RewardFamily family, long horizon,
    const std::vector<long>& checkpoints, long replications,
    std::uint64_t master_seed, int threads, const std::string& label) {
  if (!(mu1 >= 0.0 && mu1 <= 1.0 && mu2 >= 0.0 && mu2 <= 1.0))
    throw DomainError("means must lie in [0, 1]");
  if (mu2 > mu1) throw DomainError("means must satisfy mu1 >= mu2");
  if (horizon < 2) throw DomainError("two-armed play needs horizon >= 2");
  check_checkpoints(checkpoints, horizon);
  if (replications < 1) throw ConfigError("replications must be >= 1");

  const long n_cp = static_cast<long>(checkpoints.size());
  std::vector<double> regret_slots(
      static_cast<std::size_t>(replications * n_cp));

  parallel_for(replications, threads, [&](long r) {
    Rng rng = substream_rng(
        episode_seed(master_seed, 0, static_cast<std::uint64_t>(r)),
        Substream::Rewards);
    const double mus[2] = {mu1, mu2};
    const double gaps[2] = {0.0, mu1 - mu2};
    long counts[2] = {0, 0};
    double sums[2] = {0.0, 0.0};
    const auto draw = [&](int a) {
      switch (family) {
        case RewardFamily::Bernoulli: return rng.bernoulli(mus[a]) ? 1.0 : 0.0;
        case RewardFamily::PointMass: return mus[a];
        case RewardFamily::UniformAround: return mus[a];  // width 0 here
      }
      return mus[a];
    };
    double cum = 0.0;
    std::size_t next_cp = 0;
    for (long t = 1; t <= horizon; ++t) {
      int a;
      if (t <= 2) {
        a = static_cast<int>(t - 1);  // one forced initialization pull each
      } else {
        const double i0 = ucb1_index(sums[0] / static_cast<double>(counts[0]),
                                     counts[0], t - 1);
        const double i1 = ucb1_index(sums[1] / static_cast<double>(counts[1]),
                                     counts[1], t - 1);
        a = i1 > i0 ? 1 : 0;
      }
      sums[a] += draw(a);
      counts[a] += 1;
      cum += gaps[a];
      if (next_cp < checkpoints.size() &&
          t == checkpoints[next_cp]) {
        regret_slots[static_cast<std::size_t>(r * n_cp +
                                              static_cast<long>(next_cp))] = cum;
        ++next_cp;
      }
    }
  });

  TwoArmOracleResult out;
  out.curve.policy = label;
  out.curve.single_replication = replications == 1;
  for (long c = 0; c < n_cp; ++c) {
    std::vector<double> xs;
    xs.reserve(static_cast<std::size_t>(replications));
    for (long r = 0; r < replications; ++r) {
      const double v = regret_slots[static_cast<std::size_t>(r * n_cp + c)];
      RawRow row;
      row.policy = label;
      row.checkpoint = checkpoints[static_cast<std::size_t>(c)];
      row.replication = r;
      row.pseudo_regret = v;
      row.epochs_used = 1;
      row.arms_queried = 2;
      out.raw.push_back(row);
      xs.push_back(v);
    }
    const Accumulated acc = mean_ci(xs);
    out.curve.points.push_back(
        {checkpoints[static_cast<std::size_t>(c)], acc.mean, acc.ci,
         replications});
  }
  return out;
}

AggregateCurve reference_curve(const std::string& label,
                               const std::vector<std::pair<long, double>>& pts) {
  AggregateCurve c;
  c.policy = label;
  for (const auto& [t, v] : pts) c.points.push_back({t, v, 0.0, 0});
  return c;
}

}  // namespace cab
