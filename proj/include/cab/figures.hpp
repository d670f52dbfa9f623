#pragma once
#include <string>

#include "cab/config.hpp"
#include "cab/engine.hpp"

namespace cab {

// Built-in benchmark configurations:
//   fig3  two-armed UCB1 baseline vs the two-type nested-UCB policy, plus a
//         logarithmic lower-bound reference curve (n = 1e5)
//   fig4  two equiprobable Bernoulli(0.6)/(0.4) types, n = 1e5, five policies
//   fig5  two equiprobable Bernoulli(0.9)/(0.5) types, n = 1e5, five policies
//   fig6  three uniform Bernoulli(0.9)/(0.5)/(0.1) types, n = 1e4
struct FigureSpec {
  std::string tag;
  ExperimentConfig config;
  bool with_two_arm_baseline = false;  // fig3
  bool with_reference_curve = false;   // fig3
};

FigureSpec figure_spec(const std::string& tag);  // ConfigError on unknown tag

struct FigureOutput {
  std::vector<RawRow> raw;
  std::vector<AggregateCurve> curves;
};

// Runs a figure's experiment (optionally with the fig3 extras) and returns
// raw rows plus aggregate curves, deterministically for any thread count.
FigureOutput run_figure(const FigureSpec& fig, long replications, int threads);

}  // namespace cab
