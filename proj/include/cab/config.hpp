#pragma once
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "cab/policy.hpp"
#include "cab/reservoir.hpp"

namespace cab {

inline constexpr const char* kConfigSchema = "cab-experiment/1";
inline constexpr std::uint64_t kDefaultMasterSeed = 0x0CAB5EEDull;

// A complete experiment description, serialized as a single JSON document
// with a versioned `schema` field. Unknown keys are rejected.
struct ExperimentConfig {
  ReservoirSpec reservoir;
  long horizon = 0;
  long replications = 1;
  std::uint64_t master_seed = kDefaultMasterSeed;
  std::vector<long> checkpoints;  // empty selects default_checkpoints(horizon)
  std::vector<PolicyParams> policies;
  std::string out_dir;  // optional; CLI --out overrides

  std::vector<long> effective_checkpoints() const;
  void validate() const;

  bool operator==(const ExperimentConfig&) const = default;
};

ExperimentConfig parse_experiment_config(const std::string& json_text);
ExperimentConfig load_experiment_config(const std::string& path);
std::string serialize_experiment_config(const ExperimentConfig& config);

}  // namespace cab
