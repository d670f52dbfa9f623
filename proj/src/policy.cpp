#include "cab/policy.hpp"
#include <algorithm>

#include "cab/policies/etc_family.hpp"
#include "cab/policies/fixed_set_ucb.hpp"
#include "cab/policies/nested_ucb.hpp"

#include <cmath>

namespace cab {

std::string to_string(PolicyKind k) {
  switch (k) {
    case PolicyKind::Alg1: return "alg1";
    case PolicyKind::Alg2: return "alg2";
    case PolicyKind::Alg3: return "alg3";
    case PolicyKind::Alg4: return "alg4";
    case PolicyKind::EtcInfinity: return "etc_infinity";
    case PolicyKind::FrontLoadedUcb: return "front_loaded_ucb";
    case PolicyKind::Ucb1Fixed: return "ucb1_fixed";
  }
  return "?";
}

PolicyKind parse_policy_kind(const std::string& s) {
  if (s == "alg1") return PolicyKind::Alg1;
  if (s == "alg2") return PolicyKind::Alg2;
  if (s == "alg3") return PolicyKind::Alg3;
  if (s == "alg4") return PolicyKind::Alg4;
  if (s == "etc_infinity") return PolicyKind::EtcInfinity;
  if (s == "front_loaded_ucb") return PolicyKind::FrontLoadedUcb;
  if (s == "ucb1_fixed") return PolicyKind::Ucb1Fixed;
  throw ConfigError("unknown policy kind: '" + s + "'");
}

bool is_horizon_dependent(PolicyKind k) {
  switch (k) {
    case PolicyKind::Alg1:
    case PolicyKind::Alg2:
    case PolicyKind::EtcInfinity:
    case PolicyKind::FrontLoadedUcb:
      return true;
    case PolicyKind::Alg3:
    case PolicyKind::Alg4:
    case PolicyKind::Ucb1Fixed:
      return false;
  }
  return false;
}

long policy_min_horizon(PolicyKind k, int k_types) {
  switch (k) {
    case PolicyKind::Alg1:
    case PolicyKind::Alg2:
    case PolicyKind::EtcInfinity:
      return k_types;
    default:
      return 1;
  }
}

const std::vector<double>& Policy::dither_log() const {
  static const std::vector<double> empty;
  return empty;
}

const std::vector<long>& Policy::completed_epoch_lengths() const {
  static const std::vector<long> empty;
  return empty;
}

std::unique_ptr<Policy> make_policy(const PolicyParams& params, int k_types,
                                    long horizon, Rng rng) {
  if (k_types < 2) throw ConfigError("policies need K >= 2 arm-types");
  switch (params.kind) {
    case PolicyKind::Alg1: {
      if (horizon < k_types)
        throw ConfigError("alg1 requires horizon >= K");
      return std::make_unique<FixedScheduleEtcPolicy>(PolicyKind::Alg1, k_types,
                                                      horizon, 0.0);
    }
    case PolicyKind::EtcInfinity: {
      if (horizon < k_types)
        throw ConfigError("etc_infinity requires horizon >= K");
      if (!(params.delta_lower_bound > 0.0) || params.delta_lower_bound > 1.0)
        throw ConfigError("etc_infinity needs delta_lower_bound in (0, 1]");
      return std::make_unique<FixedScheduleEtcPolicy>(
          PolicyKind::EtcInfinity, k_types, horizon, params.delta_lower_bound);
    }
    case PolicyKind::Alg2: {
      if (horizon < k_types)
        throw ConfigError("alg2 requires horizon >= K");
      // The default burn-in is clamped into the feasible range; an explicit
      // out-of-range value is a configuration error.
      const long s_n = params.burn_in > 0
                           ? params.burn_in
                           : std::min(default_burn_in(horizon), horizon / k_types);
      if (s_n < 1 || s_n > horizon / k_types)
        throw ConfigError("alg2 burn-in must satisfy 1 <= s_n <= n/K");
      return std::make_unique<Alg2Policy>(k_types, horizon, s_n, rng,
                                          params.record_dither,
                                          params.record_epochs);
    }
    case PolicyKind::Alg3: {
      if (k_types != 2)
        throw ConfigError("alg3 is the two-type policy; use alg4 for K > 2");
      return std::make_unique<NestedUcbPolicy>(2, rng, params.record_dither,
                                               params.record_epochs);
    }
    case PolicyKind::Alg4:
      return std::make_unique<NestedUcbPolicy>(k_types, rng, params.record_dither,
                                               params.record_epochs);
    case PolicyKind::FrontLoadedUcb: {
      if (horizon < 1) throw ConfigError("front_loaded_ucb requires horizon >= 1");
      const long q = front_loaded_query_count(
          params.alpha1_hint, params.query_scale,
          std::log(static_cast<double>(horizon)), horizon);
      return std::make_unique<FixedSetUcbPolicy>(q);
    }
    case PolicyKind::Ucb1Fixed: {
      const long q = params.set_size > 0 ? params.set_size : k_types;
      return std::make_unique<FixedSetUcbPolicy>(q);
    }
  }
  throw ConfigError("unhandled policy kind");
}

}  // namespace cab
