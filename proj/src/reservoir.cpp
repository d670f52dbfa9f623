#include "cab/reservoir.hpp"

#include <cmath>

namespace cab {

std::string to_string(RewardFamily f) {
  switch (f) {
    case RewardFamily::Bernoulli: return "bernoulli";
    case RewardFamily::UniformAround: return "uniform";
    case RewardFamily::PointMass: return "pointmass";
  }
  return "?";
}

RewardFamily parse_reward_family(const std::string& s) {
  if (s == "bernoulli") return RewardFamily::Bernoulli;
  if (s == "uniform") return RewardFamily::UniformAround;
  if (s == "pointmass") return RewardFamily::PointMass;
  throw ConfigError("unknown reward family: '" + s +
                    "' (expected bernoulli|uniform|pointmass)");
}

std::vector<double> ReservoirSpec::mu() const {
  std::vector<double> out;
  out.reserve(types.size());
  for (const auto& t : types) out.push_back(t.mu);
  return out;
}

void ReservoirSpec::validate() const {
  if (types.size() < 2) throw DomainError("reservoir needs at least 2 arm-types");
  if (alpha.size() != types.size())
    throw DomainError("alpha length must equal the number of arm-types");
  double sum = 0.0;
  for (double a : alpha) {
    if (!(a > 0.0)) throw DomainError("every alpha entry must be > 0");
    sum += a;
  }
  if (std::abs(sum - 1.0) > 1e-12)
    throw DomainError("alpha must sum to 1 within 1e-12");
  for (std::size_t i = 0; i < types.size(); ++i) {
    const TypeSpec& t = types[i];
    if (!(t.mu >= 0.0 && t.mu <= 1.0))
      throw DomainError("mean rewards must lie in [0,1]");
    if (i > 0 && !(types[i - 1].mu > t.mu))
      throw DomainError("mean rewards must be strictly decreasing");
    if (t.family == RewardFamily::UniformAround) {
      if (t.half_width < 0.0) throw DomainError("half_width must be >= 0");
      if (t.mu - t.half_width < 0.0 || t.mu + t.half_width > 1.0)
        throw DomainError("uniform reward support must stay inside [0,1]");
    }
  }
}

Gaps derived_gaps(const ReservoirSpec& spec) {
  spec.validate();
  Gaps g;
  g.delta_bar = spec.types.front().mu - spec.types.back().mu;
  g.delta_underbar = spec.types[0].mu - spec.types[1].mu;
  g.delta_min = g.delta_underbar;
  for (std::size_t i = 1; i + 1 < spec.types.size(); ++i)
    g.delta_min = std::min(g.delta_min, spec.types[i].mu - spec.types[i + 1].mu);
  return g;
}

Reservoir::Reservoir(ReservoirSpec spec, bool log_rewards)
    : spec_(std::move(spec)), logging_(log_rewards) {
  spec_.validate();
}

ArmState Reservoir::query_arm(Rng& type_rng) {
  const double u = type_rng.uniform01();
  double cum = 0.0;
  int type = spec_.k() - 1;  // guard against rounding in the cumulative walk
  for (int i = 0; i < spec_.k(); ++i) {
    cum += spec_.alpha[static_cast<std::size_t>(i)];
    if (u < cum) {
      type = i;
      break;
    }
  }
  ArmState arm;
  arm.arm_id_ = next_id_++;
  arm.hidden_type_ = type;
  arm.logging_ = logging_;
  return arm;
}

double Reservoir::pull_arm(ArmState& arm, Rng& reward_rng) const {
  const TypeSpec& t = spec_.types[static_cast<std::size_t>(arm.hidden_type_)];
  double r = 0.0;
  switch (t.family) {
    case RewardFamily::Bernoulli:
      r = reward_rng.bernoulli(t.mu) ? 1.0 : 0.0;
      break;
    case RewardFamily::UniformAround:
      r = t.mu + (2.0 * reward_rng.uniform01() - 1.0) * t.half_width;
      break;
    case RewardFamily::PointMass:
      r = t.mu;
      break;
  }
  arm.pulls_ += 1;
  arm.reward_sum_ += r;
  if (arm.logging_) arm.log_.push_back(r);
  return r;
}

double Reservoir::regret_increment(const ArmState& arm) const {
  return spec_.types.front().mu -
         spec_.types[static_cast<std::size_t>(arm.hidden_type_)].mu;
}

}  // namespace cab
