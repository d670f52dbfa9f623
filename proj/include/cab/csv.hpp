#pragma once
#include <optional>
#include <string>
#include <vector>

namespace cab {

// Shortest round-trip decimal representation (std::to_chars).
std::string format_double(double v);

struct RawRow {
  std::string policy;
  long checkpoint = 0;
  long replication = 0;
  double pseudo_regret = 0.0;
  long epochs_used = 0;
  long arms_queried = 0;
  std::optional<long> commit_time;
  std::optional<bool> committed_optimal;
};

struct AggregatePoint {
  long t = 0;
  double mean = 0.0;
  double ci_halfwidth = 0.0;
  long replications = 0;
};

struct AggregateCurve {
  std::string policy;
  std::vector<AggregatePoint> points;
  bool single_replication = false;
};

inline constexpr const char* kRawHeader =
    "policy,checkpoint,replication,pseudo_regret,epochs_used,arms_queried,"
    "commit_time,committed_optimal";
inline constexpr const char* kAggregateHeader =
    "policy,checkpoint,mean_regret,ci_halfwidth,replications";

std::string raw_csv_to_string(const std::vector<RawRow>& rows);
std::string aggregate_csv_to_string(const std::vector<AggregateCurve>& curves);

void write_text_file(const std::string& path, const std::string& content);
std::string read_text_file(const std::string& path);

// Strict parse of the aggregate schema; throws ConfigError on any mismatch
// (wrong header, bad field count, non-numeric cells) and on a data-less file.
std::vector<AggregateCurve> parse_aggregate_csv(const std::string& content);

}  // namespace cab
