#pragma once
#include <functional>

namespace cab {

// zeta(8) = pi^8 / 9450, exact closed form.
double zeta8();

// sum_{m >= p} m^-8 for p >= 1, computed as zeta(8) minus the partial sum;
// absolute error well below 1e-15 for the p values that arise here.
double zeta8_tail(long p);

// ln of the standard normal right tail Phi_bar(x).
//
// x <= 8 uses erfc directly; x > 8 uses the Mills-ratio asymptotic
//   ln Phi_bar(x) = -x^2/2 - ln(x sqrt(2 pi)) + ln(1 - x^-2 + 3x^-4 - ...),
// truncated after the x^-8 term. The two branches agree to better than 1e-6
// relative in the log at the crossover.
double log_std_normal_sf(double x);

// Branch internals, exposed so the crossover agreement can be checked.
double log_std_normal_sf_erfc(double x);
double log_std_normal_sf_asymptotic(double x);

// Adaptive Gauss(7)-Kronrod(15) quadrature on [a, b]. Subdivides until the
// accumulated |K15 - G7| error estimate is below abs_tol. Returns the
// integral; the achieved error estimate is written to *err_estimate.
double adaptive_gauss_kronrod(const std::function<double(double)>& f, double a,
                              double b, double abs_tol, double* err_estimate);

}  // namespace cab
