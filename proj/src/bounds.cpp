#include "cab/bounds.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "cab/csv.hpp"
#include "cab/special.hpp"

namespace cab {

namespace {

void check_delta(double delta) {
  if (!(delta > 0.0) || delta > 1.0)
    throw DomainError("delta must lie in (0, 1]");
}

void check_k(int k_types) {
  if (k_types < 2) throw DomainError("k must be >= 2");
}

// K! * prod(alpha_i), evaluated as prod(i * alpha_i) to avoid overflow.
double all_distinct_probability(const std::vector<double>& alpha) {
  double p = 1.0;
  for (std::size_t i = 0; i < alpha.size(); ++i)
    p *= alpha[i] * static_cast<double>(i + 1);
  return p;
}

}  // namespace

long lambda_k(int k_types) {
  check_k(k_types);
  const double target = 1.0 / (2.0 * static_cast<double>(k_types) *
                               static_cast<double>(k_types));
  long p = 1;
  while (zeta8_tail(p) > target) ++p;
  return p;
}

long t_zero(double delta, int k_types) {
  check_delta(delta);
  check_k(k_types);
  const double a = 64.0 / (delta * delta);
  const double la = std::log(a);
  const long lead = static_cast<long>(std::ceil(a * la * la));
  return std::max(lead, lambda_k(k_types));
}

double beta_delta_k_log(double delta, int k_types) {
  const double t0 = static_cast<double>(t_zero(delta, k_types));
  const double f = t0 + 4.0 * std::sqrt(t0 * std::log(t0));
  return log_std_normal_sf(f) - 0.6931471805599453094;
}

double c_alpha_tilde(const std::vector<double>& alpha, double rel_tol,
                     double* tail_bound_out) {
  if (alpha.size() < 2) throw DomainError("alpha needs at least 2 entries");
  for (double a : alpha)
    if (!(a > 0.0))
      throw DomainError("c_alpha_tilde diverges when some alpha_i is 0");
  const double p_distinct = all_distinct_probability(alpha);
  const double rho = 1.0 - 0.75 * p_distinct;
  const double scale = 512.0 * std::exp(2.0);

  long double partial = 0.0L;
  double tail = 0.0;
  double log_rho_pow = 0.0;  // ln(rho^{k-1})
  const double log_rho = std::log(rho);
  for (long k = 1;; ++k) {
    const double kd = static_cast<double>(k);
    const double term = std::exp(std::log(kd) + 2.0 * std::sqrt(kd) + log_rho_pow);
    partial += term;
    log_rho_pow += log_rho;
    // Ratios term_{k+1}/term_k decrease in k; once below 1 the remainder is
    // geometrically bounded.
    const double q = rho * std::exp(2.0 / (std::sqrt(kd + 1.0) + std::sqrt(kd))) *
                     (kd + 1.0) / kd;
    if (q < 1.0) {
      tail = term * q / (1.0 - q);
      if (tail / static_cast<double>(partial) < rel_tol) break;
    }
    if (k > 100000000L)
      throw DomainError("c_alpha_tilde series failed to converge");
  }
  if (tail_bound_out) *tail_bound_out = scale * tail;
  return scale * static_cast<double>(partial);
}

double alg1_upper_bound(long n, const ReservoirSpec& spec) {
  if (n < 2) throw DomainError("horizon must be >= 2");
  const Gaps g = derived_gaps(spec);
  const double c = c_alpha_tilde(spec.alpha);
  const double delta = g.delta_min;
  const double l4d = std::log(4.0 / delta);
  return c * g.delta_bar * std::log(static_cast<double>(n)) / (delta * delta) *
             l4d * l4d +
         2.0 * static_cast<double>(spec.k()) * g.delta_bar;
}

double alg2_upper_bound_log(long n, long s_n, const ReservoirSpec& spec,
                            double c_abs) {
  if (n < spec.k()) throw DomainError("horizon must be >= K");
  if (s_n < 1 || s_n > n / spec.k())
    throw DomainError("burn-in must satisfy 1 <= s_n <= n/K");
  if (!(c_abs > 0.0)) throw DomainError("c_abs must be > 0");
  const Gaps g = derived_gaps(spec);
  const double kd = static_cast<double>(spec.k());
  const double bracket =
      std::log(static_cast<double>(n)) / (g.delta_min * g.delta_min) +
      static_cast<double>(s_n) / all_distinct_probability(spec.alpha);
  // gamma(s_n) has no closed form; gamma(s_n) >= gamma(1) = beta_{delta,K}
  // keeps this a valid upper bound.
  return std::log(c_abs * kd * kd * kd * g.delta_bar * bracket) -
         beta_delta_k_log(g.delta_min, spec.k());
}

double alg3_upper_bound_log(long n, const ReservoirSpec& spec, double c_abs) {
  if (spec.k() != 2)
    throw DomainError("the nested-UCB two-type bound requires K = 2");
  if (n < 2) throw DomainError("horizon must be >= 2");
  if (!(c_abs > 0.0)) throw DomainError("c_abs must be > 0");
  const Gaps g = derived_gaps(spec);
  const double bracket = std::log(static_cast<double>(n)) / g.delta_underbar +
                         g.delta_underbar / spec.alpha[0];
  return std::log(c_abs * bracket) - beta_delta_k_log(g.delta_underbar, 2);
}

double uniform_lower_bound_constant(double alpha1, double delta_underbar) {
  if (!(alpha1 > 0.0 && alpha1 < 1.0))
    throw DomainError("alpha1 must lie in (0, 1)");
  if (!(delta_underbar > 0.0)) throw DomainError("delta_underbar must be > 0");
  return (1.0 - alpha1) * (1.0 - alpha1) * delta_underbar / alpha1;
}

double front_load_penalty(double x, long n, double alpha1, double delta_underbar) {
  const double q = 1.0 - alpha1;
  return q * delta_underbar * x +
         std::pow(q, x) * delta_underbar * (static_cast<double>(n) - x);
}

namespace {

double penalty_derivative(double x, long n, double alpha1, double delta_underbar) {
  const double q = 1.0 - alpha1;
  const double lq = std::log(q);
  return q * delta_underbar +
         std::pow(q, x) * delta_underbar * ((static_cast<double>(n) - x) * lq - 1.0);
}

double penalty_second_derivative(double x, long n, double alpha1,
                                 double delta_underbar) {
  const double q = 1.0 - alpha1;
  const double lq = std::log(q);
  return -std::pow(q, x) * delta_underbar *
         (2.0 - (static_cast<double>(n) - x) * lq) * lq;
}

}  // namespace

MinimizerResult front_load_penalty_minimizer(long n, double alpha1,
                                             double delta_underbar) {
  if (!(alpha1 > 0.0 && alpha1 < 1.0))
    throw DomainError("alpha1 must lie in (0, 1)");
  if (n < 2) throw DomainError("horizon must be >= 2");
  if (!(delta_underbar > 0.0)) throw DomainError("delta_underbar must be > 0");
  const double tol = 1e-10 * delta_underbar;
  double lo = 0.0, hi = static_cast<double>(n);
  // f is strictly convex with f'(0) < 0 < f'(n).
  double mid = 0.5 * (lo + hi);
  double d = penalty_derivative(mid, n, alpha1, delta_underbar);
  for (int it = 0; it < 300 && std::abs(d) > tol; ++it) {
    if (d < 0.0)
      lo = mid;
    else
      hi = mid;
    mid = 0.5 * (lo + hi);
    d = penalty_derivative(mid, n, alpha1, delta_underbar);
  }
  return {mid, front_load_penalty(mid, n, alpha1, delta_underbar), d,
          penalty_second_derivative(mid, n, alpha1, delta_underbar)};
}

CouponResult coupon_collector(const std::vector<double>& alpha,
                              const std::vector<double>& mu) {
  if (alpha.size() < 2) throw DomainError("alpha needs at least 2 entries");
  double sum = 0.0;
  double alpha_min = 1.0;
  for (double a : alpha) {
    if (!(a > 0.0)) throw DomainError("every alpha entry must be > 0");
    sum += a;
    alpha_min = std::min(alpha_min, a);
  }
  if (std::abs(sum - 1.0) > 1e-12)
    throw DomainError("alpha must sum to 1 within 1e-12");

  const double k = static_cast<double>(alpha.size());
  // Cutoff where the union-bound integrand envelope drops below 1e-12; the
  // truncated tail is then analytically below sum_j e^{-a_j Y}/a_j.
  const double y_max = std::log(k * 1e12) / alpha_min;
  const auto integrand = [&alpha](double y) {
    double prod = 1.0;
    for (double a : alpha) prod *= 1.0 - std::exp(-a * y);
    return 1.0 - prod;
  };
  double quad_err = 0.0;
  const double integral =
      adaptive_gauss_kronrod(integrand, 0.0, y_max, 1e-9, &quad_err);
  double tail_bound = 0.0;
  for (double a : alpha) tail_bound += std::exp(-a * y_max) / a;

  CouponResult res;
  res.expected_n = integral;
  res.quadrature_error = quad_err + tail_bound;
  if (!mu.empty()) {
    if (mu.size() != alpha.size())
      throw DomainError("mu length must equal alpha length");
    double lb = 0.0;
    for (std::size_t i = 1; i < mu.size(); ++i) {
      if (!(mu[i - 1] > mu[i]))
        throw DomainError("mean rewards must be strictly decreasing");
      lb += alpha[i] * (mu[0] - mu[i]);
    }
    res.lower_bound = lb * k * std::log(k);
  }
  return res;
}

std::vector<std::pair<long, double>> info_lower_bound_curve(
    const std::vector<long>& n_grid, double delta_underbar, double epsilon) {
  if (!(delta_underbar > 0.0)) throw DomainError("delta_underbar must be > 0");
  if (epsilon < 0.0 || epsilon >= 1.0)
    throw DomainError("epsilon must lie in [0, 1)");
  std::vector<std::pair<long, double>> out;
  out.reserve(n_grid.size());
  for (long n : n_grid)
    out.emplace_back(n, (1.0 - epsilon) * std::log(static_cast<double>(n)) /
                            (2.0 * delta_underbar));
  return out;
}

GammaEstimate gamma_mc_estimate(double delta, int k_types, long s_n, long m_cap,
                                long replications, std::uint64_t seed) {
  check_delta(delta);
  check_k(k_types);
  if (s_n < 1 || m_cap < s_n || replications < 1)
    throw DomainError("need 1 <= s_n <= m_cap and replications >= 1");
  const double spread = delta * static_cast<double>(k_types - 1);
  if (spread > 1.0)
    throw DomainError("delta * (K-1) must be <= 1 for [0,1]-valued means");
  // All-distinct consideration set: K Bernoulli arms with means spaced delta
  // apart, centred so the support constraint holds.
  std::vector<double> means(static_cast<std::size_t>(k_types));
  for (int i = 0; i < k_types; ++i)
    means[static_cast<std::size_t>(i)] =
        0.5 + 0.5 * spread - delta * static_cast<double>(i);

  const int pairs = k_types * (k_types - 1) / 2;
  Rng rng(seed);
  long survived = 0;
  std::vector<double> z(static_cast<std::size_t>(pairs));
  std::vector<double> walk(static_cast<std::size_t>(pairs));
  for (long rep = 0; rep < replications; ++rep) {
    for (auto& v : z) v = rng.normal();
    std::fill(walk.begin(), walk.end(), 0.0);
    bool alive = true;
    for (long m = 1; m <= m_cap && alive; ++m) {
      int pi = 0;
      // One aligned sample of every arm, accumulated into each pair's walk.
      std::vector<double> x(static_cast<std::size_t>(k_types));
      for (int a = 0; a < k_types; ++a)
        x[static_cast<std::size_t>(a)] =
            rng.bernoulli(means[static_cast<std::size_t>(a)]) ? 1.0 : 0.0;
      for (int a = 0; a < k_types; ++a)
        for (int b = a + 1; b < k_types; ++b, ++pi)
          walk[static_cast<std::size_t>(pi)] +=
              x[static_cast<std::size_t>(a)] - x[static_cast<std::size_t>(b)];
      if (m < s_n) continue;
      const double threshold =
          4.0 * std::sqrt(static_cast<double>(m) * std::log(static_cast<double>(m)));
      for (int p = 0; p < pairs && alive; ++p)
        if (std::abs(z[static_cast<std::size_t>(p)] +
                     walk[static_cast<std::size_t>(p)]) < threshold)
          alive = false;
    }
    if (alive) ++survived;
  }
  const double p_hat =
      static_cast<double>(survived) / static_cast<double>(replications);
  // At zero observed successes the binomial SE degenerates; report the 1/n
  // resolution floor instead.
  const double se =
      std::max(std::sqrt(p_hat * (1.0 - p_hat) / static_cast<double>(replications)),
               1.0 / static_cast<double>(replications));
  return {p_hat, se, replications, m_cap};
}

// ---------------------------------------------------------------------------
// Report wrappers

BoundReport report_lambda_k(int k_types) {
  BoundReport r;
  r.name = "lambda_k";
  r.inputs["k"] = k_types;
  r.value = static_cast<double>(lambda_k(k_types));
  return r;
}

BoundReport report_t_zero(double delta, int k_types) {
  BoundReport r;
  r.name = "t_zero";
  r.inputs["delta"] = delta;
  r.inputs["k"] = k_types;
  r.value = static_cast<double>(t_zero(delta, k_types));
  return r;
}

BoundReport report_beta(double delta, int k_types) {
  BoundReport r;
  r.name = "ln_beta_delta_k";
  r.inputs["delta"] = delta;
  r.inputs["k"] = k_types;
  r.value = beta_delta_k_log(delta, k_types);
  r.log_domain = true;
  r.error_estimate = 1e-6 * std::abs(r.value);
  return r;
}

BoundReport report_c_alpha_tilde(const std::vector<double>& alpha, double rel_tol) {
  BoundReport r;
  r.name = "c_alpha_tilde";
  for (std::size_t i = 0; i < alpha.size(); ++i)
    r.inputs["alpha" + std::to_string(i + 1)] = alpha[i];
  double tail = 0.0;
  r.value = c_alpha_tilde(alpha, rel_tol, &tail);
  r.error_estimate = tail;
  return r;
}

BoundReport report_alg1_bound(long n, const ReservoirSpec& spec) {
  const Gaps g = derived_gaps(spec);
  BoundReport r;
  r.name = "alg1_regret_upper_bound";
  r.inputs["n"] = static_cast<double>(n);
  r.inputs["k"] = spec.k();
  r.inputs["delta"] = g.delta_min;
  r.inputs["delta_bar"] = g.delta_bar;
  r.value = alg1_upper_bound(n, spec);
  // propagate the series truncation error through the leading term
  double tail = 0.0;
  const double c = c_alpha_tilde(spec.alpha, 1e-9, &tail);
  r.error_estimate = (r.value - 2.0 * spec.k() * g.delta_bar) * tail / c;
  return r;
}

BoundReport report_alg2_bound(long n, long s_n, const ReservoirSpec& spec,
                              double c_abs, bool c_abs_defaulted) {
  BoundReport r;
  r.name = "ln_alg2_regret_upper_bound";
  r.inputs["n"] = static_cast<double>(n);
  r.inputs["s_n"] = static_cast<double>(s_n);
  r.inputs["k"] = spec.k();
  r.inputs["delta"] = derived_gaps(spec).delta_min;
  r.inputs["c_abs"] = c_abs;
  r.value = alg2_upper_bound_log(n, s_n, spec, c_abs);
  r.error_estimate = 1e-6 * std::abs(r.value);  // dominated by the ln beta term
  r.log_domain = true;
  r.notes = "gamma(s_n) replaced by its lower bound beta_{delta,K}";
  if (c_abs_defaulted) r.notes += "; modulo unspecified absolute constant (c_abs=1)";
  return r;
}

BoundReport report_alg3_bound(long n, const ReservoirSpec& spec, double c_abs,
                              bool c_abs_defaulted) {
  BoundReport r;
  r.name = "ln_alg3_regret_upper_bound";
  r.inputs["n"] = static_cast<double>(n);
  r.inputs["delta_underbar"] = derived_gaps(spec).delta_underbar;
  r.inputs["alpha1"] = spec.alpha[0];
  r.inputs["c_abs"] = c_abs;
  r.value = alg3_upper_bound_log(n, spec, c_abs);
  r.error_estimate = 1e-6 * std::abs(r.value);  // dominated by the ln beta term
  r.log_domain = true;
  if (c_abs_defaulted) r.notes = "modulo unspecified absolute constant (c_abs=1)";
  return r;
}

BoundReport report_front_load_lb_constant(double alpha1, double delta_underbar) {
  BoundReport r;
  r.name = "front_load_lb_constant_per_log_n";
  r.inputs["alpha1"] = alpha1;
  r.inputs["delta_underbar"] = delta_underbar;
  r.value = uniform_lower_bound_constant(alpha1, delta_underbar);
  return r;
}

BoundReport report_front_load_minimizer(long n, double alpha1, double delta_underbar) {
  const MinimizerResult m = front_load_penalty_minimizer(n, alpha1, delta_underbar);
  BoundReport r;
  r.name = "front_load_penalty_minimum";
  r.inputs["n"] = static_cast<double>(n);
  r.inputs["alpha1"] = alpha1;
  r.inputs["delta_underbar"] = delta_underbar;
  r.inputs["x_star"] = m.x_star;
  r.value = m.f_at_x_star;
  r.error_estimate = std::abs(m.fprime_at_x_star);
  return r;
}

std::vector<BoundReport> report_coupon(const std::vector<double>& alpha,
                                       const std::vector<double>& mu) {
  const CouponResult c = coupon_collector(alpha, mu);
  std::vector<BoundReport> out;
  BoundReport e;
  e.name = "coupon_expected_queries";
  for (std::size_t i = 0; i < alpha.size(); ++i)
    e.inputs["alpha" + std::to_string(i + 1)] = alpha[i];
  e.value = c.expected_n;
  e.error_estimate = c.quadrature_error;
  out.push_back(e);
  if (c.lower_bound) {
    BoundReport l;
    l.name = "coupon_lifetime_regret_lower_bound";
    l.inputs = e.inputs;
    l.value = *c.lower_bound;
    out.push_back(l);
  }
  return out;
}

std::string format_reports_text(const std::vector<BoundReport>& reports) {
  std::size_t name_w = 4;
  for (const auto& r : reports) name_w = std::max(name_w, r.name.size());
  std::ostringstream os;
  for (const auto& r : reports) {
    os << r.name << std::string(name_w - r.name.size() + 2, ' ')
       << format_double(r.value);
    if (r.log_domain) os << "  (log domain)";
    if (r.error_estimate > 0.0) os << "  +/- " << format_double(r.error_estimate);
    if (!r.notes.empty()) os << "  [" << r.notes << "]";
    os << "\n";
  }
  return os.str();
}

std::string format_reports_csv(const std::vector<BoundReport>& reports) {
  std::ostringstream os;
  os << "name,value,log_domain,error_estimate,inputs,notes\n";
  for (const auto& r : reports) {
    os << r.name << "," << format_double(r.value) << ","
       << (r.log_domain ? 1 : 0) << "," << format_double(r.error_estimate) << ",";
    bool first = true;
    for (const auto& [k, v] : r.inputs) {
      if (!first) os << ";";
      os << k << "=" << format_double(v);
      first = false;
    }
    os << "," << r.notes << "\n";
  }
  return os.str();
}

}  // namespace cab
