#pragma once
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "cab/reservoir.hpp"

namespace cab {

// One evaluated closed-form quantity. Values that underflow the double range
// (tail probabilities and the bounds built on them) are reported in the log
// domain and flagged.
struct BoundReport {
  std::string name;
  std::map<std::string, double> inputs;
  double value = 0.0;
  bool log_domain = false;
  double error_estimate = 0.0;
  std::string notes;
};

// Smallest p with sum_{m>=p} 1/m^8 <= 1/(2K^2).
long lambda_k(int k_types);

// max(ceil((64/delta^2) ln^2(64/delta^2)), Lambda_K); natural log.
long t_zero(double delta, int k_types);

// ln beta_{delta,K} = ln Phi_bar(f(T0)) - ln 2 with f(x) = x + 4 sqrt(x ln x).
// Log-domain: beta itself underflows for all but trivial inputs.
double beta_delta_k_log(double delta, int k_types);

// 512 e^2 sum_{k>=1} k e^{2 sqrt(k)} rho^{k-1} with rho = 1 - 3 K! prod(alpha)/4.
// Truncates when the geometric tail bound divided by the partial sum drops
// below rel_tol; the tail bound is written to *tail_bound_out if given.
double c_alpha_tilde(const std::vector<double>& alpha, double rel_tol = 1e-9,
                     double* tail_bound_out = nullptr);

// Instance-dependent regret upper bounds. alg1 is finite-domain (its constant
// is fully explicit); the other two carry an unspecified absolute constant
// c_abs and a 1/beta factor, so they are evaluated in the log domain.
double alg1_upper_bound(long n, const ReservoirSpec& spec);
double alg2_upper_bound_log(long n, long s_n, const ReservoirSpec& spec,
                            double c_abs = 1.0);
double alg3_upper_bound_log(long n, const ReservoirSpec& spec, double c_abs = 1.0);

// (1 - alpha1)^2 delta_underbar / alpha1, the per-log(n) asymptotic constant.
double uniform_lower_bound_constant(double alpha1, double delta_underbar);

struct MinimizerResult {
  double x_star;
  double f_at_x_star;
  double fprime_at_x_star;
  double fsecond_at_x_star;
};

// Exact finite-n minimizer of f(x) = (1-a)Dx + (1-a)^x D (n-x) over (0, n),
// found by bisection on f'; |f'(x*)| <= 1e-10 * delta_underbar.
MinimizerResult front_load_penalty_minimizer(long n, double alpha1,
                                             double delta_underbar);
double front_load_penalty(double x, long n, double alpha1, double delta_underbar);

struct CouponResult {
  double expected_n;        // integral_0^inf (1 - prod_j (1 - e^{-alpha_j y})) dy
  double quadrature_error;  // abs error estimate incl. the truncated tail
  std::optional<double> lower_bound;  // sum_{i>=2} alpha_i (mu1 - mu_i) K ln K
};

CouponResult coupon_collector(const std::vector<double>& alpha,
                              const std::vector<double>& mu = {});

// Reference curve (1 - eps) ln n / (2 delta_underbar) on a horizon grid.
std::vector<std::pair<long, double>> info_lower_bound_curve(
    const std::vector<long>& n_grid, double delta_underbar, double epsilon);

// Monte Carlo estimate of the heterogeneous-set survival probability
// gamma(s_n) for a two-point reward gap of delta: the fraction of simulated
// dithered difference walks that stay above the discard envelope for all
// m in [s_n, m_cap]. Finite-horizon truncation makes this an estimate of an
// upper bound on gamma, not a bound itself.
struct GammaEstimate {
  double estimate;
  double std_error;
  long replications;
  long m_cap;
};
GammaEstimate gamma_mc_estimate(double delta, int k_types, long s_n, long m_cap,
                                long replications, std::uint64_t seed);

// Report-producing wrappers used by the CLI.
BoundReport report_lambda_k(int k_types);
BoundReport report_t_zero(double delta, int k_types);
BoundReport report_beta(double delta, int k_types);
BoundReport report_c_alpha_tilde(const std::vector<double>& alpha, double rel_tol = 1e-9);
BoundReport report_alg1_bound(long n, const ReservoirSpec& spec);
BoundReport report_alg2_bound(long n, long s_n, const ReservoirSpec& spec, double c_abs,
                              bool c_abs_defaulted);
BoundReport report_alg3_bound(long n, const ReservoirSpec& spec, double c_abs,
                              bool c_abs_defaulted);
BoundReport report_front_load_lb_constant(double alpha1, double delta_underbar);
BoundReport report_front_load_minimizer(long n, double alpha1, double delta_underbar);
std::vector<BoundReport> report_coupon(const std::vector<double>& alpha,
                                       const std::vector<double>& mu);

std::string format_reports_text(const std::vector<BoundReport>& reports);
std::string format_reports_csv(const std::vector<BoundReport>& reports);

}  // namespace cab
