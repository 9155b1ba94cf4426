#ifndef LTTAIL_BOUNDS_HPP
#define LTTAIL_BOUNDS_HPP

#include <vector>

#include "lttail/distributions.hpp"

namespace lttail {

struct GammaBoundResult {
  double log_lower;
  double log_upper;
  double gamma0;  // sum of the gamma_i shape parameters
  int n;
};

// Incomplete-gamma sandwich on P(X_1 + ... + X_n > x) for independent
// GammaWeibull(k, beta, gamma_i) summands with a common rate k; valid for
// every x > 0, not just asymptotically. Requires beta >= 1.
GammaBoundResult sum_tail_bounds(const std::vector<double>& gammas, double k,
                                 double beta, double x);

// log of the elementary lower bound on the unregularized Gamma(a, x).
double simple_lower_bound_gamma(double a, double x);

struct BoundQuality {
  double log_ratio;          // log(upper bound) - log(n-fold asymptote) at x
  double polynomial_degree;  // beta (n-1)/2 in the gamma = beta case, else NaN
};

BoundQuality upper_bound_quality(const GammaWeibullModel& m, int n, double x);

}  // namespace lttail

#endif
