#pragma once
#include <string>
#include <vector>

#include "cab/csv.hpp"

namespace cab {

// Self-contained 800x600 SVG: one polyline per policy, a shaded confidence
// band where ci_halfwidth > 0, log-spaced x ticks. References no external
// resources. Throws ConfigError if there is nothing to plot.
std::string render_regret_svg(const std::vector<AggregateCurve>& curves,
                              const std::string& title = "");

}  // namespace cab
