// Acceptance suite: one pass/fail line per criterion, nonzero exit if any
// criterion fails. Heavier simulation criteria share the figure runs.
#include <chrono>
#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "cab/bounds.hpp"
#include "cab/csv.hpp"
#include "cab/engine.hpp"
#include "cab/figures.hpp"
#include "cab/policies/nested_ucb.hpp"

using namespace cab;
namespace fs = std::filesystem;

namespace {

int g_failures = 0;

void report(int id, const std::string& what, bool pass, const std::string& detail) {
  std::cout << (pass ? "[PASS]" : "[FAIL]") << " criterion " << id << ": " << what
            << " — " << detail << "\n"
            << std::flush;
  if (!pass) ++g_failures;
}

double elapsed_s(const std::chrono::steady_clock::time_point& t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0)
      .count();
}

std::string fmt(double v) {
  std::ostringstream os;
  os.precision(6);
  os << v;
  return os.str();
}

const AggregateCurve& curve_of(const std::vector<AggregateCurve>& curves,
                               const std::string& name) {
  for (const auto& c : curves)
    if (c.policy == name) return c;
  throw std::runtime_error("curve not found: " + name);
}

// -------------------------------------------------------------------------
// Brute-force oracles for criterion 2, independent of the library closed
// forms: direct tail summation with an integral remainder, long double
// throughout.

long double oracle_tail_m8(long p) {
  long double s = 0.0L;
  const long cap = 2000000;
  for (long m = p + cap; m >= p; --m) {
    const long double md = static_cast<long double>(m);
    s += 1.0L / (md * md * md * md * md * md * md * md);
  }
  return s + std::pow(static_cast<long double>(p + cap), -7.0L) / 7.0L;
}

long oracle_lambda(int k) {
  const long double target = 1.0L / (2.0L * k * k);
  long p = 1;
  while (oracle_tail_m8(p) > target) ++p;
  return p;
}

long oracle_t0(double delta, int k) {
  const long double a = 64.0L / (static_cast<long double>(delta) * delta);
  const long double la = std::log(a);
  return std::max(static_cast<long>(std::ceil(a * la * la)), oracle_lambda(k));
}

struct LinearFit {
  double a, b, r2;
  double at(double x) const { return a + b * x; }
};

LinearFit fit(const std::vector<double>& xs, const std::vector<double>& ys) {
  const double n = static_cast<double>(xs.size());
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    sx += xs[i];
    sy += ys[i];
    sxx += xs[i] * xs[i];
    sxy += xs[i] * ys[i];
  }
  const double b = (n * sxy - sx * sy) / (n * sxx - sx * sx);
  const double a = (sy - b * sx) / n;
  double ss_res = 0, ss_tot = 0;
  const double ybar = sy / n;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    const double e = ys[i] - (a + b * xs[i]);
    ss_res += e * e;
    ss_tot += (ys[i] - ybar) * (ys[i] - ybar);
  }
  return {a, b, 1.0 - ss_res / ss_tot};
}

int run_cli(const std::string& args) {
  const std::string cmd = std::string(CAB_CLI_PATH) + " " + args + " > /dev/null 2>&1";
  const int status = std::system(cmd.c_str());
  return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
}

// -------------------------------------------------------------------------

void criterion_1_coupon() {
  const auto t0 = std::chrono::steady_clock::now();
  bool pass = true;
  std::ostringstream detail;

  // CLI-level check for uniform alpha, K in {2, 3, 5}.
  const fs::path dir = fs::temp_directory_path() / "cab_acceptance";
  fs::create_directories(dir);
  const struct {
    const char* alpha;
    double expect;
  } cases[] = {{"0.5,0.5", 3.0},
               {"0.3333333333333333,0.3333333333333333,0.3333333333333334", 5.5},
               {"0.2,0.2,0.2,0.2,0.2", 137.0 / 12.0}};
  for (const auto& c : cases) {
    const std::string csv = (dir / "coupon.csv").string();
    const int rc = run_cli(std::string("bounds --coupon --alpha ") + c.alpha +
                           " --csv " + csv);
    if (rc != 0) {
      pass = false;
      detail << "cli exit " << rc << "; ";
      continue;
    }
    const std::string text = read_text_file(csv);
    const auto at = text.find("coupon_expected_queries,");
    const double v = std::stod(text.substr(at + 24, 24));
    detail << "E[N]=" << fmt(v) << " vs " << fmt(c.expect) << "; ";
    if (std::abs(v - c.expect) > 1e-6) pass = false;
  }

  // Monte Carlo cross-check for alpha = (0.6, 0.3, 0.1).
  const CouponResult quad = coupon_collector({0.6, 0.3, 0.1});
  Rng rng(7771);
  const long reps = 100000;
  double sum = 0.0, sum2 = 0.0;
  for (long r = 0; r < reps; ++r) {
    int seen = 0;
    long draws = 0;
    while (seen != 7) {
      const double u = rng.uniform01();
      ++draws;
      seen |= 1 << (u < 0.6 ? 0 : (u < 0.9 ? 1 : 2));
    }
    sum += static_cast<double>(draws);
    sum2 += static_cast<double>(draws) * static_cast<double>(draws);
  }
  const double mean = sum / static_cast<double>(reps);
  const double var = (sum2 - sum * mean) / static_cast<double>(reps - 1);
  const double se = std::sqrt(var / static_cast<double>(reps));
  detail << "MC " << fmt(mean) << " vs quad " << fmt(quad.expected_n) << " (3se "
         << fmt(3 * se) << "); ";
  if (std::abs(mean - quad.expected_n) > 3.0 * se) pass = false;

  const double secs = elapsed_s(t0);
  detail << "runtime " << fmt(secs) << "s";
  if (secs >= 10.0) pass = false;
  report(1, "coupon-collector quadrature vs closed form and Monte Carlo", pass,
         detail.str());
}

void criterion_2_constants() {
  const auto t0 = std::chrono::steady_clock::now();
  bool pass = true;
  std::ostringstream detail;
  const bool l2 = lambda_k(2) == 2 && oracle_lambda(2) == 2;
  const bool l12 = lambda_k(12) == 3 && oracle_lambda(12) == 3;
  const bool t1 = t_zero(1.0, 2) == 1107 && oracle_t0(1.0, 2) == 1107;
  const bool t05 = t_zero(0.5, 2) == 7872 && oracle_t0(0.5, 2) == 7872;
  pass = l2 && l12 && t1 && t05;
  detail << "Lambda_2=" << lambda_k(2) << " Lambda_12=" << lambda_k(12)
         << " T0(1,2)=" << t_zero(1.0, 2) << " T0(0.5,2)=" << t_zero(0.5, 2)
         << "; runtime " << fmt(elapsed_s(t0)) << "s";
  if (elapsed_s(t0) >= 1.0) pass = false;
  report(2, "bound constants match independent brute-force oracles", pass,
         detail.str());
}

struct SharedRuns {
  FigureOutput fig4;
  FigureOutput fig6;
  AggregateCurve two_arm;
};

void criterion_3_fig4_ordering(const SharedRuns& runs) {
  const auto& curves = runs.fig4.curves;
  const auto last = [&](const char* name) {
    return curve_of(curves, name).points.back();
  };
  const auto alg1 = last("alg1");
  const auto alg2 = last("alg2");
  const auto alg3 = last("alg3");
  const auto etc = last("etc_infinity");
  const auto fl = last("front_loaded_ucb");

  const bool order_a = alg3.mean < fl.mean;
  const bool order_b = fl.mean < std::min(alg2.mean, etc.mean);
  const bool order_c = std::max(alg2.mean, etc.mean) < alg1.mean;
  const bool ci_sep = alg3.mean + alg3.ci_halfwidth < alg1.mean - alg1.ci_halfwidth;
  const double ratio = std::max(alg2.mean, etc.mean) /
                       std::max(std::min(alg2.mean, etc.mean), 1e-12);
  const bool within2 = ratio <= 2.0;
  std::ostringstream detail;
  detail << "means@1e5: alg3=" << fmt(alg3.mean) << " fl=" << fmt(fl.mean)
         << " alg2=" << fmt(alg2.mean) << " etc=" << fmt(etc.mean)
         << " alg1=" << fmt(alg1.mean) << "; alg3<fl:" << order_a
         << " fl<min(alg2,etc):" << order_b << " max(alg2,etc)<alg1:" << order_c
         << " alg3-vs-alg1 CI-separated:" << ci_sep
         << " alg2/etc ratio=" << fmt(ratio);
  report(3, "benchmark ordering on the two-type instance",
         order_a && order_b && order_c && ci_sep && within2, detail.str());
}

void criterion_4_fig3_inflation(const SharedRuns& runs) {
  const auto alg3 = curve_of(runs.fig4.curves, "alg3").points.back();
  const auto mab = runs.two_arm.points.back();
  const bool above = alg3.mean - alg3.ci_halfwidth > mab.mean + mab.ci_halfwidth;
  std::ostringstream detail;
  detail << "alg3=" << fmt(alg3.mean) << "±" << fmt(alg3.ci_halfwidth)
         << " vs ucb1_2mab=" << fmt(mab.mean) << "±" << fmt(mab.ci_halfwidth);
  report(4, "two-type regret is inflated over the fixed two-armed baseline",
         above, detail.str());
}

void criterion_5_fig6_alg4(const SharedRuns& runs) {
  const auto& curves = runs.fig6.curves;
  const double alg4 = curve_of(curves, "alg4").points.back().mean;
  bool lowest = true;
  std::ostringstream detail;
  detail << "means@1e4: alg4=" << fmt(alg4);
  for (const char* other : {"alg1", "alg2", "etc_infinity"}) {
    const double v = curve_of(curves, other).points.back().mean;
    detail << " " << other << "=" << fmt(v);
    lowest = lowest && alg4 < v;
  }
  report(5, "three-type instance: nested UCB has the lowest mean regret", lowest,
         detail.str());
}

void criterion_6_log_growth(const SharedRuns& runs) {
  bool pass = true;
  std::ostringstream detail;
  for (const char* name : {"alg2", "alg3"}) {
    const auto& pts = curve_of(runs.fig4.curves, name).points;
    std::vector<double> ln_n, n_lin, y;
    for (const auto& p : pts) {
      if (p.t < 1000) continue;
      ln_n.push_back(std::log(static_cast<double>(p.t)));
      n_lin.push_back(static_cast<double>(p.t));
      y.push_back(p.mean);
    }
    const LinearFit log_fit = fit(ln_n, y);
    const LinearFit lin_fit = fit(n_lin, y);
    const double res_log = std::abs(y.back() - log_fit.at(ln_n.back()));
    const double res_lin = std::abs(y.back() - lin_fit.at(n_lin.back()));
    const bool r2_ok = log_fit.r2 >= 0.9;
    const bool sublinear = res_lin > res_log;
    detail << name << ": R2(ln n)=" << fmt(log_fit.r2) << " res(log)="
           << fmt(res_log) << " res(linear)=" << fmt(res_lin) << "; ";
    pass = pass && r2_ok && sublinear;
  }
  report(6, "regret grows logarithmically over n in [1e3, 1e5]", pass,
         detail.str());
}

void criterion_7_commit_correctness() {
  ReservoirSpec spec;
  spec.alpha = {0.5, 0.5};
  spec.types = {{0.6, RewardFamily::Bernoulli, 0.0},
                {0.4, RewardFamily::Bernoulli, 0.0}};
  PolicyParams alg2;
  alg2.kind = PolicyKind::Alg2;
  const ExperimentResult res =
      run_experiment(spec, {alg2}, 10000, {10000}, 200, 0xACCE55, 0);
  long commits = 0, inferior = 0;
  for (const auto& row : res.raw) {
    if (row.commit_time) {
      ++commits;
      if (row.committed_optimal && !*row.committed_optimal) ++inferior;
    }
  }
  std::ostringstream detail;
  detail << "200 replications at n=1e4: " << commits << " commits, " << inferior
         << " to an inferior type";
  report(7, "no commits to inferior-typed arms", inferior == 0, detail.str());
}

void criterion_8_fast_rejection() {
  // Both queried arms are forced to the same Bernoulli(0.5) type.
  ReservoirSpec spec;
  spec.alpha = {1e-12, 1.0 - 1e-12};
  spec.types = {{0.9, RewardFamily::Bernoulli, 0.0},
                {0.5, RewardFamily::Bernoulli, 0.0}};
  Reservoir res(spec);
  Rng type_rng(101), reward_rng(202);
  NestedUcbPolicy policy(2, Rng(303), false, true);
  std::vector<ArmState> arms;
  std::optional<double> fb;
  const long want_epochs = 10000;
  long steps = 0;
  while (static_cast<long>(policy.completed_epoch_lengths().size()) < want_epochs &&
         steps < 5000000) {
    const PolicyAction a = policy.step(fb);
    if (a.kind == PolicyAction::Kind::QueryNew) {
      arms.push_back(res.query_arm(type_rng));
      fb = res.pull_arm(arms.back(), reward_rng);
    } else {
      fb = res.pull_arm(arms[static_cast<std::size_t>(a.arm_id)], reward_rng);
    }
    ++steps;
  }
  auto lengths = policy.completed_epoch_lengths();
  lengths.resize(static_cast<std::size_t>(
      std::min<long>(want_epochs, static_cast<long>(lengths.size()))));
  const bool enough = static_cast<long>(lengths.size()) == want_epochs;
  double mean = 0.0;
  std::vector<long> sorted(lengths.begin(), lengths.end());
  std::sort(sorted.begin(), sorted.end());
  for (long v : sorted) mean += static_cast<double>(v);
  mean /= std::max<double>(1.0, static_cast<double>(sorted.size()));
  const long p99 =
      sorted.empty() ? 0 : sorted[static_cast<std::size_t>(
                                0.99 * static_cast<double>(sorted.size() - 1))];
  std::ostringstream detail;
  detail << lengths.size() << " epochs, mean length " << fmt(mean) << ", p99 "
         << p99;
  report(8, "homogeneous consideration sets are rejected fast",
         enough && std::isfinite(mean) && p99 < 10000, detail.str());
}

void criterion_9_minimizer() {
  const double d = 0.1;
  const MinimizerResult m = front_load_penalty_minimizer(1000, 0.5, d);
  const double lb = (std::log(1000.0) + std::log(std::log(2.0)) - std::log(2.0)) /
                    std::log(2.0);
  const bool grad_ok = std::abs(m.fprime_at_x_star) <= 1e-10 * d;
  const bool convex = m.fsecond_at_x_star > 0.0;
  const bool above_lb = m.x_star > lb;
  std::ostringstream detail;
  detail << "x*=" << fmt(m.x_star) << " |f'|=" << m.fprime_at_x_star
         << " f''=" << fmt(m.fsecond_at_x_star) << " lower bound " << fmt(lb);
  report(9, "front-load penalty minimizer via bisection",
         grad_ok && convex && above_lb, detail.str());
}

void criterion_10_cli_determinism() {
  const fs::path dir = fs::temp_directory_path() / "cab_acceptance_repro";
  fs::remove_all(dir);
  fs::create_directories(dir);
  const std::string a = (dir / "a").string();
  const std::string b = (dir / "b").string();
  const int rc1 =
      run_cli("repro --figure fig4 --reps 10 --threads 1 --out " + a);
  const int rc2 =
      run_cli("repro --figure fig4 --reps 10 --threads 7 --out " + b);
  bool pass = rc1 == 0 && rc2 == 0;
  std::string detail = "exit codes " + std::to_string(rc1) + "/" + std::to_string(rc2);
  if (pass) {
    const std::string fa = read_text_file(a + "/fig4/aggregate.csv");
    const std::string fb = read_text_file(b + "/fig4/aggregate.csv");
    pass = fa == fb;
    detail += pass ? ", aggregate.csv byte-identical across thread counts"
                   : ", aggregate.csv differs";
  }
  report(10, "CLI reproduction is deterministic across thread counts", pass,
         detail);
}

}  // namespace

int main() {
  const auto t0 = std::chrono::steady_clock::now();
  criterion_1_coupon();
  criterion_2_constants();

  SharedRuns runs;
  {
    std::cout << "running two-type benchmark (100 replications)..." << std::endl;
    runs.fig4 = run_figure(figure_spec("fig4"), 100, 0);
    std::cout << "running three-type benchmark (100 replications)..." << std::endl;
    runs.fig6 = run_figure(figure_spec("fig6"), 100, 0);
    std::cout << "running fixed two-armed baseline (100 replications)..."
              << std::endl;
    runs.two_arm = regret_oracle_fixed_two_arm(
                       0.6, 0.4, RewardFamily::Bernoulli, 100000,
                       default_checkpoints(100000), 100, 0x2a2b, 0, "ucb1_2mab")
                       .curve;
  }
  criterion_3_fig4_ordering(runs);
  criterion_4_fig3_inflation(runs);
  criterion_5_fig6_alg4(runs);
  criterion_6_log_growth(runs);
  criterion_7_commit_correctness();
  criterion_8_fast_rejection();
  criterion_9_minimizer();
  criterion_10_cli_determinism();

  std::cout << (g_failures == 0 ? "all criteria passed"
                                : std::to_string(g_failures) + " criteria failed")
            << " (total runtime " << fmt(elapsed_s(t0)) << "s)\n";
  return g_failures == 0 ? 0 : 1;
}
