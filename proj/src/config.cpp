#include "cab/config.hpp"

#include <algorithm>
#include <set>

#include "cab/csv.hpp"
#include "cab/engine.hpp"
#include "json.hpp"

namespace cab {

namespace {

using nlohmann::json;

void check_keys(const json& obj, const char* where,
                std::initializer_list<const char*> allowed) {
  for (const auto& [key, value] : obj.items()) {
    (void)value;
    if (std::find_if(allowed.begin(), allowed.end(), [&](const char* a) {
          return key == a;
        }) == allowed.end())
      throw ConfigError(std::string(where) + ": unknown key '" + key + "'");
  }
}

const json& require(const json& obj, const char* where, const char* key) {
  const auto it = obj.find(key);
  if (it == obj.end())
    throw ConfigError(std::string(where) + ": missing key '" + key + "'");
  return *it;
}

double as_number(const json& v, const char* where) {
  if (!v.is_number()) throw ConfigError(std::string(where) + ": expected a number");
  return v.get<double>();
}

std::vector<double> as_number_list(const json& v, const char* where) {
  if (!v.is_array()) throw ConfigError(std::string(where) + ": expected an array");
  std::vector<double> out;
  for (const auto& e : v) out.push_back(as_number(e, where));
  return out;
}

ReservoirSpec parse_reservoir(const json& j) {
  if (!j.is_object()) throw ConfigError("reservoir: expected an object");
  check_keys(j, "reservoir", {"k", "alpha", "mu", "family", "half_width"});
  const auto alpha = as_number_list(require(j, "reservoir", "alpha"), "reservoir.alpha");
  const auto mu = as_number_list(require(j, "reservoir", "mu"), "reservoir.mu");
  if (alpha.size() != mu.size())
    throw ConfigError("reservoir: alpha and mu must have equal length");
  if (j.contains("k")) {
    const auto k = static_cast<std::size_t>(as_number(j["k"], "reservoir.k"));
    if (k != mu.size())
      throw ConfigError("reservoir: k does not match the mu/alpha length");
  }

  std::vector<RewardFamily> families(mu.size(), RewardFamily::Bernoulli);
  if (j.contains("family")) {
    const json& f = j["family"];
    if (f.is_string()) {
      std::fill(families.begin(), families.end(),
                parse_reward_family(f.get<std::string>()));
    } else if (f.is_array()) {
      if (f.size() != mu.size())
        throw ConfigError("reservoir.family: array length must equal mu length");
      for (std::size_t i = 0; i < mu.size(); ++i) {
        if (!f[i].is_string())
          throw ConfigError("reservoir.family: expected strings");
        families[i] = parse_reward_family(f[i].get<std::string>());
      }
    } else {
      throw ConfigError("reservoir.family: expected a string or an array");
    }
  }

  std::vector<double> widths(mu.size(), 0.0);
  if (j.contains("half_width")) {
    const json& w = j["half_width"];
    if (w.is_number()) {
      std::fill(widths.begin(), widths.end(), w.get<double>());
    } else if (w.is_array()) {
      if (w.size() != mu.size())
        throw ConfigError("reservoir.half_width: array length must equal mu length");
      for (std::size_t i = 0; i < mu.size(); ++i)
        widths[i] = as_number(w[i], "reservoir.half_width");
    } else {
      throw ConfigError("reservoir.half_width: expected a number or an array");
    }
  }

  ReservoirSpec spec;
  spec.alpha = alpha;
  spec.types.resize(mu.size());
  for (std::size_t i = 0; i < mu.size(); ++i)
    spec.types[i] = {mu[i], families[i],
                     families[i] == RewardFamily::UniformAround ? widths[i] : 0.0};
  try {
    spec.validate();
  } catch (const DomainError& e) {
    throw ConfigError(std::string("reservoir: ") + e.what());
  }
  return spec;
}

PolicyParams parse_policy(const json& j, std::size_t index) {
  const std::string where = "policies[" + std::to_string(index) + "]";
  if (!j.is_object()) throw ConfigError(where + ": expected an object");
  check_keys(j, where.c_str(),
             {"kind", "name", "burn_in", "delta_lower_bound", "alpha1_hint",
              "query_scale", "set_size"});
  const json& kind = require(j, where.c_str(), "kind");
  if (!kind.is_string()) throw ConfigError(where + ".kind: expected a string");
  PolicyParams p;
  p.kind = parse_policy_kind(kind.get<std::string>());
  if (j.contains("name")) {
    if (!j["name"].is_string())
      throw ConfigError(where + ".name: expected a string");
    p.name = j["name"].get<std::string>();
  }
  if (j.contains("burn_in"))
    p.burn_in = static_cast<long>(as_number(j["burn_in"], (where + ".burn_in").c_str()));
  if (j.contains("delta_lower_bound"))
    p.delta_lower_bound =
        as_number(j["delta_lower_bound"], (where + ".delta_lower_bound").c_str());
  if (j.contains("alpha1_hint"))
    p.alpha1_hint = as_number(j["alpha1_hint"], (where + ".alpha1_hint").c_str());
  if (j.contains("query_scale"))
    p.query_scale = as_number(j["query_scale"], (where + ".query_scale").c_str());
  if (j.contains("set_size"))
    p.set_size =
        static_cast<int>(as_number(j["set_size"], (where + ".set_size").c_str()));
  return p;
}

}  // namespace

std::vector<long> ExperimentConfig::effective_checkpoints() const {
  return checkpoints.empty() ? default_checkpoints(horizon) : checkpoints;
}

void ExperimentConfig::validate() const {
  reservoir.validate();
  if (horizon < 1) throw ConfigError("horizon must be >= 1");
  if (replications < 1) throw ConfigError("replications must be >= 1");
  if (policies.empty()) throw ConfigError("at least one policy required");
  std::set<std::string> names;
  for (const auto& p : policies)
    if (!names.insert(p.label()).second)
      throw ConfigError("duplicate policy label '" + p.label() +
                        "'; set distinct names");
  const auto cps = effective_checkpoints();
  for (std::size_t i = 0; i < cps.size(); ++i) {
    if (cps[i] < 1 || cps[i] > horizon)
      throw ConfigError("checkpoints must lie in [1, horizon]");
    if (i > 0 && cps[i] <= cps[i - 1])
      throw ConfigError("checkpoints must be strictly ascending");
  }
  if (cps.back() != horizon)
    throw ConfigError("the last checkpoint must equal the horizon");
}

ExperimentConfig parse_experiment_config(const std::string& json_text) {
  json j;
  try {
    j = json::parse(json_text);
  } catch (const json::parse_error& e) {
    // Line-anchor the message from the byte offset.
    long line = 1;
    for (std::size_t i = 0; i < e.byte && i < json_text.size(); ++i)
      if (json_text[i] == '\n') ++line;
    throw ConfigError("config: parse error at line " + std::to_string(line) +
                      ": " + e.what());
  }
  if (!j.is_object()) throw ConfigError("config: expected a JSON object");
  check_keys(j, "config",
             {"schema", "reservoir", "horizon", "replications", "master_seed",
              "checkpoints", "policies", "out_dir"});
  const json& schema = require(j, "config", "schema");
  if (!schema.is_string() || schema.get<std::string>() != kConfigSchema)
    throw ConfigError(std::string("config: schema must be '") + kConfigSchema +
                      "'");

  ExperimentConfig cfg;
  cfg.reservoir = parse_reservoir(require(j, "config", "reservoir"));
  cfg.horizon = static_cast<long>(as_number(require(j, "config", "horizon"),
                                            "config.horizon"));
  cfg.replications = static_cast<long>(
      as_number(require(j, "config", "replications"), "config.replications"));
  if (j.contains("master_seed")) {
    const json& s = j["master_seed"];
    if (!s.is_number_unsigned())
      throw ConfigError("config.master_seed: expected an unsigned integer");
    cfg.master_seed = s.get<std::uint64_t>();
  }
  if (j.contains("checkpoints"))
    for (double v : as_number_list(j["checkpoints"], "config.checkpoints"))
      cfg.checkpoints.push_back(static_cast<long>(v));
  const json& pols = require(j, "config", "policies");
  if (!pols.is_array()) throw ConfigError("config.policies: expected an array");
  for (std::size_t i = 0; i < pols.size(); ++i)
    cfg.policies.push_back(parse_policy(pols[i], i));
  if (j.contains("out_dir")) {
    if (!j["out_dir"].is_string())
      throw ConfigError("config.out_dir: expected a string");
    cfg.out_dir = j["out_dir"].get<std::string>();
  }
  cfg.validate();
  return cfg;
}

ExperimentConfig load_experiment_config(const std::string& path) {
  return parse_experiment_config(read_text_file(path));
}

std::string serialize_experiment_config(const ExperimentConfig& config) {
  json j;
  j["schema"] = kConfigSchema;
  json res;
  res["alpha"] = config.reservoir.alpha;
  res["mu"] = config.reservoir.mu();
  json fams = json::array();
  json widths = json::array();
  bool any_uniform = false;
  for (const auto& t : config.reservoir.types) {
    fams.push_back(to_string(t.family));
    widths.push_back(t.half_width);
    any_uniform |= t.family == RewardFamily::UniformAround;
  }
  res["family"] = fams;
  if (any_uniform) res["half_width"] = widths;
  j["reservoir"] = res;
  j["horizon"] = config.horizon;
  j["replications"] = config.replications;
  j["master_seed"] = config.master_seed;
  if (!config.checkpoints.empty()) j["checkpoints"] = config.checkpoints;
  json pols = json::array();
  for (const auto& p : config.policies) {
    json pj;
    pj["kind"] = to_string(p.kind);
    if (!p.name.empty()) pj["name"] = p.name;
    if (p.burn_in > 0) pj["burn_in"] = p.burn_in;
    if (p.delta_lower_bound > 0.0) pj["delta_lower_bound"] = p.delta_lower_bound;
    if (p.alpha1_hint > 0.0) pj["alpha1_hint"] = p.alpha1_hint;
    if (p.query_scale != 1.0) pj["query_scale"] = p.query_scale;
    if (p.set_size > 0) pj["set_size"] = p.set_size;
    pols.push_back(pj);
  }
  j["policies"] = pols;
  if (!config.out_dir.empty()) j["out_dir"] = config.out_dir;
  return j.dump(2) + "\n";
}

}  // namespace cab
