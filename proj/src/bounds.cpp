#include "lttail/bounds.hpp"

#include <cmath>
#include <limits>

#include "lttail/common.hpp"
#include "lttail/convolve.hpp"
#include "lttail/special.hpp"

namespace lttail {

GammaBoundResult sum_tail_bounds(const std::vector<double>& gammas, double k,
                                 double beta, double x) {
  if (gammas.empty()) throw Error(ErrorCode::domain, "sum_tail_bounds: no summands");
  if (!(k > 0.0) || !(x > 0.0))
    throw Error(ErrorCode::domain, "sum_tail_bounds: k and x must be > 0");
  if (!(beta >= 1.0))
    throw Error(ErrorCode::unsupported,
                "sum_tail_bounds: the p-norm inequality direction requires beta >= 1");
  double gamma0 = 0.0;
  for (double g : gammas) {
    if (!(g > 0.0)) throw Error(ErrorCode::domain, "sum_tail_bounds: gamma_i must be > 0");
    gamma0 += g;
  }
  const int n = static_cast<int>(gammas.size());
  const double a = gamma0 / beta;
  const double xb = k * std::pow(x, beta);
  GammaBoundResult r{};
  r.gamma0 = gamma0;
  r.n = n;
  r.log_lower = log_gamma_q(a, xb);
  r.log_upper = log_gamma_q(a, xb / std::pow(static_cast<double>(n), beta - 1.0));
  return r;
}

double simple_lower_bound_gamma(double a, double x) {
  if (!(a > 0.0) || !(x > 0.0))
    throw Error(ErrorCode::domain, "simple_lower_bound_gamma: a, x must be > 0");
  double v = (a - 1.0) * std::log(x) - x;
  if (a < 1.0) v += std::log(x / (x + 1.0 - a));
  return v;
}

BoundQuality upper_bound_quality(const GammaWeibullModel& m, int n, double x) {
  if (n < 1) throw Error(ErrorCode::domain, "upper_bound_quality: n must be >= 1");
  BoundQuality q{};
  if (n == 1) {
    q.log_ratio = 0.0;
    q.polynomial_degree = 0.0;
    return q;
  }
  const std::vector<double> gammas(static_cast<std::size_t>(n), m.gamma_shape);
  const GammaBoundResult b = sum_tail_bounds(gammas, m.k, m.beta, x);
  const TailAsymptote asym = nfold_asymptote(m.as_weibull_like(), n);
  q.log_ratio = b.log_upper - asym.log_eval(x);
  q.polynomial_degree = (m.gamma_shape == m.beta)
                            ? m.beta * (n - 1) / 2.0
                            : std::numeric_limits<double>::quiet_NaN();
  return q;
}

}  // namespace lttail
