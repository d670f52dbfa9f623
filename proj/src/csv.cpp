#include "cab/csv.hpp"

#include <charconv>
#include <cstdio>
#include <fstream>
#include <sstream>

#include "cab/errors.hpp"

namespace cab {

std::string format_double(double v) {
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof(buf), v);
  return std::string(buf, res.ptr);
}

namespace {

std::string opt_long(const std::optional<long>& v) {
  return v ? std::to_string(*v) : std::string();
}

std::string opt_bool(const std::optional<bool>& v) {
  return v ? std::string(*v ? "1" : "0") : std::string();
}

std::vector<std::string> split_line(const std::string& line) {
  std::vector<std::string> out;
  std::string cur;
  for (char ch : line) {
    if (ch == ',') {
      out.push_back(cur);
      cur.clear();
    } else {
      cur.push_back(ch);
    }
  }
  out.push_back(cur);
  return out;
}

double parse_num(const std::string& s, const char* what) {
  double v = 0.0;
  const auto res = std::from_chars(s.data(), s.data() + s.size(), v);
  if (res.ec != std::errc() || res.ptr != s.data() + s.size())
    throw ConfigError(std::string("aggregate csv: bad ") + what + " value '" + s +
                      "'");
  return v;
}

}  // namespace

std::string raw_csv_to_string(const std::vector<RawRow>& rows) {
  std::ostringstream os;
  os << kRawHeader << "\n";
  for (const auto& r : rows) {
    os << r.policy << "," << r.checkpoint << "," << r.replication << ","
       << format_double(r.pseudo_regret) << "," << r.epochs_used << ","
       << r.arms_queried << "," << opt_long(r.commit_time) << ","
       << opt_bool(r.committed_optimal) << "\n";
  }
  return os.str();
}

std::string aggregate_csv_to_string(const std::vector<AggregateCurve>& curves) {
  std::ostringstream os;
  os << kAggregateHeader << "\n";
  for (const auto& c : curves)
    for (const auto& p : c.points)
      os << c.policy << "," << p.t << "," << format_double(p.mean) << ","
         << format_double(p.ci_halfwidth) << "," << p.replications << "\n";
  return os.str();
}

void write_text_file(const std::string& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IoError("cannot open for writing: " + path);
  out << content;
  if (!out) throw IoError("write failed: " + path);
}

std::string read_text_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open for reading: " + path);
  std::ostringstream os;
  os << in.rdbuf();
  return os.str();
}

std::vector<AggregateCurve> parse_aggregate_csv(const std::string& content) {
  std::istringstream is(content);
  std::string line;
  if (!std::getline(is, line))
    throw ConfigError("aggregate csv: empty file");
  if (!line.empty() && line.back() == '\r') line.pop_back();
  if (line != kAggregateHeader)
    throw ConfigError("aggregate csv: header mismatch, expected '" +
                      std::string(kAggregateHeader) + "'");
  std::vector<AggregateCurve> curves;
  long lineno = 1;
  while (std::getline(is, line)) {
    ++lineno;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    const auto f = split_line(line);
    if (f.size() != 5)
      throw ConfigError("aggregate csv: line " + std::to_string(lineno) +
                        ": expected 5 fields, got " + std::to_string(f.size()));
    AggregatePoint p;
    p.t = static_cast<long>(parse_num(f[1], "checkpoint"));
    p.mean = parse_num(f[2], "mean_regret");
    p.ci_halfwidth = parse_num(f[3], "ci_halfwidth");
    p.replications = static_cast<long>(parse_num(f[4], "replications"));
    if (curves.empty() || curves.back().policy != f[0]) {
      AggregateCurve c;
      c.policy = f[0];
      curves.push_back(c);
    }
    curves.back().points.push_back(p);
  }
  if (curves.empty())
    throw ConfigError("aggregate csv: no data rows");
  return curves;
}

}  // namespace cab
