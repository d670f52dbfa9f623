#include "cab/figures.hpp"

#include "cab/bounds.hpp"

namespace cab {

namespace {

ReservoirSpec bernoulli_reservoir(std::vector<double> mu, std::vector<double> alpha) {
  ReservoirSpec spec;
  spec.alpha = std::move(alpha);
  for (double m : mu) spec.types.push_back({m, RewardFamily::Bernoulli, 0.0});
  spec.validate();
  return spec;
}

PolicyParams policy(PolicyKind kind) {
  PolicyParams p;
  p.kind = kind;
  return p;
}

}  // namespace

FigureSpec figure_spec(const std::string& tag) {
  FigureSpec fig;
  fig.tag = tag;
  ExperimentConfig& cfg = fig.config;
  cfg.replications = 100;
  cfg.master_seed = kDefaultMasterSeed;

  if (tag == "fig3") {
    cfg.reservoir = bernoulli_reservoir({0.6, 0.4}, {0.5, 0.5});
    cfg.horizon = 100000;
    cfg.policies = {policy(PolicyKind::Alg3)};
    fig.with_two_arm_baseline = true;
    fig.with_reference_curve = true;
    return fig;
  }
  if (tag == "fig4" || tag == "fig5") {
    cfg.reservoir = tag == "fig4" ? bernoulli_reservoir({0.6, 0.4}, {0.5, 0.5})
                                  : bernoulli_reservoir({0.9, 0.5}, {0.5, 0.5});
    cfg.horizon = 100000;
    PolicyParams etc = policy(PolicyKind::EtcInfinity);
    etc.delta_lower_bound = derived_gaps(cfg.reservoir).delta_min / 2.0;
    PolicyParams fl = policy(PolicyKind::FrontLoadedUcb);
    fl.alpha1_hint = 0.5;
    cfg.policies = {policy(PolicyKind::Alg1), policy(PolicyKind::Alg2),
                    policy(PolicyKind::Alg3), etc, fl};
    return fig;
  }
  if (tag == "fig6") {
    cfg.reservoir =
        bernoulli_reservoir({0.9, 0.5, 0.1}, {1.0 / 3, 1.0 / 3, 1.0 / 3});
    cfg.horizon = 10000;
    PolicyParams etc = policy(PolicyKind::EtcInfinity);
    etc.delta_lower_bound = derived_gaps(cfg.reservoir).delta_min / 2.0;
    PolicyParams fl = policy(PolicyKind::FrontLoadedUcb);
    fl.alpha1_hint = 1.0 / 3;
    cfg.policies = {policy(PolicyKind::Alg1), policy(PolicyKind::Alg2),
                    policy(PolicyKind::Alg4), etc, fl};
    return fig;
  }
  throw ConfigError("unknown figure tag '" + tag +
                    "' (expected fig3|fig4|fig5|fig6)");
}

FigureOutput run_figure(const FigureSpec& fig, long replications, int threads) {
  ExperimentConfig cfg = fig.config;
  cfg.replications = replications;
  cfg.validate();
  const auto checkpoints = cfg.effective_checkpoints();

  FigureOutput out;
  if (fig.with_two_arm_baseline) {
    const auto& types = cfg.reservoir.types;
    const TwoArmOracleResult two = regret_oracle_fixed_two_arm(
        types[0].mu, types[1].mu, types[0].family, cfg.horizon, checkpoints,
        cfg.replications, mix_seed(cfg.master_seed, 0x2a2b), threads,
        "ucb1_2mab");
    out.raw = two.raw;
    out.curves.push_back(two.curve);
  }

  const ExperimentResult res =
      run_experiment(cfg.reservoir, cfg.policies, cfg.horizon, checkpoints,
                     cfg.replications, cfg.master_seed, threads);
  out.raw.insert(out.raw.end(), res.raw.begin(), res.raw.end());
  out.curves.insert(out.curves.end(), res.curves.begin(), res.curves.end());

  if (fig.with_reference_curve) {
    const double delta_underbar = derived_gaps(cfg.reservoir).delta_underbar;
    out.curves.push_back(reference_curve(
        "ref_lower_bound",
        info_lower_bound_curve(checkpoints, delta_underbar, 0.0)));
  }
  return out;
}

}  // namespace cab
