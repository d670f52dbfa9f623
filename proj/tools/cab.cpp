#include <cstdlib>
#include <filesystem>
#include <iostream>
#include <optional>
#include <string>

#include "CLI11.hpp"
#include "cab/bounds.hpp"
#include "cab/config.hpp"
#include "cab/engine.hpp"
#include "cab/figures.hpp"
#include "cab/svg.hpp"

namespace fs = std::filesystem;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitUsage = 2;
constexpr int kExitIo = 3;

std::optional<std::uint64_t> seed_from_env() {
  const char* v = std::getenv("CAB_SEED");
  if (!v || !*v) return std::nullopt;
  try {
    return std::stoull(v);
  } catch (const std::exception&) {
    throw cab::ConfigError("CAB_SEED must be an unsigned integer");
  }
}

void ensure_dir(const std::string& dir) {
  std::error_code ec;
  fs::create_directories(dir, ec);
  if (ec) throw cab::IoError("cannot create directory " + dir + ": " + ec.message());
}

std::vector<double> parse_list(const std::string& s, const char* what) {
  std::vector<double> out;
  std::string cur;
  const auto flush = [&] {
    if (cur.empty()) throw cab::ConfigError(std::string(what) + ": empty entry");
    try {
      out.push_back(std::stod(cur));
    } catch (const std::exception&) {
      throw cab::ConfigError(std::string(what) + ": bad number '" + cur + "'");
    }
    cur.clear();
  };
  for (char c : s) {
    if (c == ',')
      flush();
    else
      cur.push_back(c);
  }
  flush();
  return out;
}

int cmd_simulate(const std::string& config_path, const std::string& out_override,
                 int threads) {
  if (!fs::exists(config_path))
    throw cab::ConfigError("config file not found: " + config_path);
  cab::ExperimentConfig cfg = cab::load_experiment_config(config_path);
  if (const auto env = seed_from_env()) cfg.master_seed = *env;
  const std::string out_dir = !out_override.empty() ? out_override
                              : !cfg.out_dir.empty() ? cfg.out_dir
                                                     : std::string(".");
  ensure_dir(out_dir);
  const auto checkpoints = cfg.effective_checkpoints();
  const cab::ExperimentResult res =
      cab::run_experiment(cfg.reservoir, cfg.policies, cfg.horizon, checkpoints,
                          cfg.replications, cfg.master_seed, threads);
  cab::write_text_file(out_dir + "/raw.csv", cab::raw_csv_to_string(res.raw));
  cab::write_text_file(out_dir + "/aggregate.csv",
                       cab::aggregate_csv_to_string(res.curves));
  std::cout << "wrote " << out_dir << "/raw.csv and " << out_dir
            << "/aggregate.csv (" << res.curves.size() << " policies, "
            << checkpoints.size() << " checkpoints, " << cfg.replications
            << " replications)\n";
  return kExitOk;
}

int cmd_repro(const std::string& figure, const std::string& out_dir, long reps,
              int threads) {
  cab::FigureSpec fig = cab::figure_spec(figure);
  if (reps < 10) throw cab::ConfigError("--reps must be >= 10");
  if (const auto env = seed_from_env()) fig.config.master_seed = *env;
  const std::string dir =
      out_dir.empty() ? fig.tag : out_dir + "/" + fig.tag;
  ensure_dir(dir);
  {
    cab::ExperimentConfig cfg = fig.config;
    cfg.replications = reps;
    cab::write_text_file(dir + "/config.json",
                         cab::serialize_experiment_config(cfg));
  }
  const cab::FigureOutput out = cab::run_figure(fig, reps, threads);
  cab::write_text_file(dir + "/raw.csv", cab::raw_csv_to_string(out.raw));
  cab::write_text_file(dir + "/aggregate.csv",
                       cab::aggregate_csv_to_string(out.curves));
  cab::write_text_file(dir + "/" + fig.tag + ".svg",
                       cab::render_regret_svg(out.curves, fig.tag));
  std::cout << "wrote " << dir << "/{config.json,raw.csv,aggregate.csv,"
            << fig.tag << ".svg}\n";
  return kExitOk;
}

int cmd_plot(const std::string& in_path, const std::string& out_path) {
  const auto curves = cab::parse_aggregate_csv(cab::read_text_file(in_path));
  cab::write_text_file(out_path,
                       cab::render_regret_svg(curves, fs::path(in_path).stem()));
  std::cout << "wrote " << out_path << "\n";
  return kExitOk;
}

struct BoundsArgs {
  int lambda_k = 0;
  bool t0 = false, beta = false, c_alpha = false, coupon = false;
  bool front_load_lb = false, alg1_bound = false, alg2_bound = false,
       alg3_bound = false, info_curve = false, gamma_mc = false;
  double delta = 0.0;
  int k = 0;
  std::string alpha_list, mu_list;
  long n = 0, s_n = 0;
  double c_abs = 1.0;
  bool c_abs_set = false;
  double alpha1 = 0.0, delta_lb = 0.0, epsilon = 0.0;
  long mc_reps = 100000, mc_cap = 100000;
  std::string csv_out;
};

cab::ReservoirSpec spec_from_lists(const BoundsArgs& a) {
  if (a.alpha_list.empty() || a.mu_list.empty())
    throw cab::ConfigError("--alpha and --mu are required for this bound");
  cab::ReservoirSpec spec;
  spec.alpha = parse_list(a.alpha_list, "--alpha");
  for (double m : parse_list(a.mu_list, "--mu"))
    spec.types.push_back({m, cab::RewardFamily::PointMass, 0.0});
  spec.validate();
  return spec;
}

int cmd_bounds(const BoundsArgs& a) {
  std::vector<cab::BoundReport> reports;
  if (a.lambda_k > 0) reports.push_back(cab::report_lambda_k(a.lambda_k));
  if (a.t0) {
    if (a.delta <= 0.0 || a.k < 2)
      throw cab::ConfigError("--t0 needs --delta in (0,1] and --k >= 2");
    reports.push_back(cab::report_t_zero(a.delta, a.k));
  }
  if (a.beta) {
    if (a.delta <= 0.0 || a.k < 2)
      throw cab::ConfigError("--beta needs --delta in (0,1] and --k >= 2");
    reports.push_back(cab::report_beta(a.delta, a.k));
  }
  if (a.c_alpha) {
    if (a.alpha_list.empty()) throw cab::ConfigError("--c-alpha-tilde needs --alpha");
    reports.push_back(
        cab::report_c_alpha_tilde(parse_list(a.alpha_list, "--alpha")));
  }
  if (a.coupon) {
    if (a.alpha_list.empty()) throw cab::ConfigError("--coupon needs --alpha");
    const auto alpha = parse_list(a.alpha_list, "--alpha");
    const auto mu =
        a.mu_list.empty() ? std::vector<double>{} : parse_list(a.mu_list, "--mu");
    for (auto& r : cab::report_coupon(alpha, mu)) reports.push_back(r);
  }
  if (a.front_load_lb) {
    if (a.alpha1 <= 0.0 || a.delta_lb <= 0.0 || a.n < 2)
      throw cab::ConfigError("--front-load-lb needs --alpha1, --delta-lb and --n");
    reports.push_back(cab::report_front_load_lb_constant(a.alpha1, a.delta_lb));
    reports.push_back(cab::report_front_load_minimizer(a.n, a.alpha1, a.delta_lb));
  }
  if (a.alg1_bound) {
    if (a.n < 2) throw cab::ConfigError("--alg1-bound needs --n");
    reports.push_back(cab::report_alg1_bound(a.n, spec_from_lists(a)));
  }
  if (a.alg2_bound) {
    if (a.n < 2) throw cab::ConfigError("--alg2-bound needs --n");
    const cab::ReservoirSpec spec = spec_from_lists(a);
    const long s_n = a.s_n > 0 ? a.s_n : 1;
    reports.push_back(
        cab::report_alg2_bound(a.n, s_n, spec, a.c_abs, !a.c_abs_set));
  }
  if (a.alg3_bound) {
    if (a.n < 2) throw cab::ConfigError("--alg3-bound needs --n");
    reports.push_back(
        cab::report_alg3_bound(a.n, spec_from_lists(a), a.c_abs, !a.c_abs_set));
  }
  if (a.info_curve) {
    if (a.delta_lb <= 0.0 || a.n < 2)
      throw cab::ConfigError("--info-curve needs --delta-lb and --n");
    const auto curve = cab::info_lower_bound_curve(cab::default_checkpoints(a.n),
                                                   a.delta_lb, a.epsilon);
    for (const auto& [t, v] : curve) {
      cab::BoundReport r;
      r.name = "info_lb_at_" + std::to_string(t);
      r.inputs["n"] = static_cast<double>(t);
      r.inputs["delta_underbar"] = a.delta_lb;
      r.inputs["epsilon"] = a.epsilon;
      r.value = v;
      reports.push_back(r);
    }
  }
  if (a.gamma_mc) {
    if (a.delta <= 0.0 || a.k < 2 || a.s_n < 1)
      throw cab::ConfigError("--gamma-mc needs --delta, --k and --s-n");
    const auto g = cab::gamma_mc_estimate(a.delta, a.k, a.s_n, a.mc_cap,
                                          a.mc_reps, cab::kDefaultMasterSeed);
    cab::BoundReport r;
    r.name = "gamma_mc_estimate";
    r.inputs["delta"] = a.delta;
    r.inputs["k"] = a.k;
    r.inputs["s_n"] = static_cast<double>(a.s_n);
    r.inputs["m_cap"] = static_cast<double>(g.m_cap);
    r.value = g.estimate;
    r.error_estimate = g.std_error;
    r.notes = "finite-horizon Monte Carlo estimate, not a bound";
    reports.push_back(r);
  }
  if (reports.empty())
    throw cab::ConfigError("bounds: no quantity requested (see --help)");
  std::cout << cab::format_reports_text(reports);
  if (!a.csv_out.empty())
    cab::write_text_file(a.csv_out, cab::format_reports_csv(reports));
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"countable-armed bandit simulation and bounds toolkit"};
  app.require_subcommand(1);

  auto* sim = app.add_subcommand("simulate", "run an experiment config");
  std::string sim_config, sim_out;
  int sim_threads = 0;
  sim->add_option("--config", sim_config, "experiment config (json)")->required();
  sim->add_option("--out", sim_out, "output directory");
  sim->add_option("--threads", sim_threads, "worker threads (0 = hardware)");

  auto* rep = app.add_subcommand("repro", "run a built-in benchmark figure");
  std::string rep_fig, rep_out;
  long rep_reps = 100;
  int rep_threads = 0;
  rep->add_option("--figure", rep_fig, "fig3|fig4|fig5|fig6")->required();
  rep->add_option("--out", rep_out, "output directory");
  rep->add_option("--reps", rep_reps, "replications (>= 10, default 100)");
  rep->add_option("--threads", rep_threads, "worker threads (0 = hardware)");

  auto* bnd = app.add_subcommand("bounds", "evaluate closed-form constants");
  BoundsArgs ba;
  bnd->add_option("--lambda-k", ba.lambda_k, "tail-sum index Lambda_K for K");
  bnd->add_flag("--t0", ba.t0, "T0(delta, K)");
  bnd->add_flag("--beta", ba.beta, "ln beta_{delta,K}");
  bnd->add_flag("--c-alpha-tilde", ba.c_alpha, "series constant C~_alpha");
  bnd->add_flag("--coupon", ba.coupon, "coupon-collector E[N] and regret bound");
  bnd->add_flag("--front-load-lb", ba.front_load_lb, "front-loaded lower bound + minimizer");
  bnd->add_flag("--alg1-bound", ba.alg1_bound, "fixed-schedule ETC regret bound");
  bnd->add_flag("--alg2-bound", ba.alg2_bound, "adaptive ETC regret bound (log)");
  bnd->add_flag("--alg3-bound", ba.alg3_bound, "nested UCB regret bound (log)");
  bnd->add_flag("--info-curve", ba.info_curve, "logarithmic reference curve");
  bnd->add_flag("--gamma-mc", ba.gamma_mc, "Monte Carlo survival estimate");
  bnd->add_option("--delta", ba.delta, "minimal reward gap in (0,1]");
  bnd->add_option("--k", ba.k, "number of arm-types");
  bnd->add_option("--alpha", ba.alpha_list, "comma-separated type probabilities");
  bnd->add_option("--mu", ba.mu_list, "comma-separated mean rewards");
  bnd->add_option("--n", ba.n, "horizon");
  bnd->add_option("--s-n", ba.s_n, "burn-in");
  bnd->add_option("--c-abs", ba.c_abs, "absolute constant")
      ->each([&ba](const std::string&) { ba.c_abs_set = true; });
  bnd->add_option("--alpha1", ba.alpha1, "optimal-type probability");
  bnd->add_option("--delta-lb", ba.delta_lb, "gap lower bound");
  bnd->add_option("--epsilon", ba.epsilon, "curve slack in [0,1)");
  bnd->add_option("--mc-reps", ba.mc_reps, "Monte Carlo replications");
  bnd->add_option("--mc-cap", ba.mc_cap, "Monte Carlo truncation");
  bnd->add_option("--csv", ba.csv_out, "also write reports as csv");

  auto* plt = app.add_subcommand("plot", "render an aggregate csv as svg");
  std::string plot_in, plot_out;
  plt->add_option("--in", plot_in, "aggregate.csv path")->required();
  plt->add_option("--out", plot_out, "output svg path")->required();

  try {
    app.parse(argc, argv);
    if (sim->parsed()) return cmd_simulate(sim_config, sim_out, sim_threads);
    if (rep->parsed()) return cmd_repro(rep_fig, rep_out, rep_reps, rep_threads);
    if (bnd->parsed()) return cmd_bounds(ba);
    if (plt->parsed()) return cmd_plot(plot_in, plot_out);
    return kExitUsage;
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitUsage;
  } catch (const cab::IoError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitIo;
  } catch (const cab::ConfigError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const cab::DomainError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitIo;
  }
}
