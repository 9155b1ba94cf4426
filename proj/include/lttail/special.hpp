#ifndef LTTAIL_SPECIAL_HPP
#define LTTAIL_SPECIAL_HPP

#include <functional>

namespace lttail {

double log_sum_exp(double a, double b);

// Regularized incomplete gamma functions. Series/continued-fraction split
// at x = a+1, evaluated in log space; relative accuracy ~1e-13 for
// a <= 1e4, x <= 1e6.
double gamma_p(double a, double x);              // P(a,x)
double gamma_q(double a, double x);              // Q(a,x) = 1 - P(a,x)
double log_gamma_q(double a, double x);          // log Q(a,x), safe far in the tail
double log_upper_incomplete_gamma(double a, double x);  // log Gamma(a,x), unregularized

// Principal branch of the Lambert W function (Halley iteration),
// |w e^w - v| <= 1e-12 max(1,|v|) on v >= -1/e.
double lambert_w0(double v);

double normal_cdf_c(double x);  // 1 - Phi(x)

// B0(l) = l e^{l^2/2} (1 - Phi(l)); Mills-series branch for l > 8.
double mills_b0(double ell);

// log of integral of exp(log_f) over [a,b] by adaptive Simpson with
// per-interval scaling. log_f may return -inf.
double log_adaptive_simpson(const std::function<double(double)>& log_f,
                            double a, double b, double rel_tol,
                            int max_depth = 48);

// Bisection for a root of a monotone f with f(lo), f(hi) of opposite sign.
double find_root_monotone(const std::function<double(double)>& f, double lo,
                          double hi, double rel_tol);

// Golden-section maximum of a unimodal f on [lo,hi]; returns the maximum
// value, argmax through *arg if non-null.
double golden_max(const std::function<double(double)>& f, double lo, double hi,
                  double tol, double* arg = nullptr);

}  // namespace lttail

#endif
