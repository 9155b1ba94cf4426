#include "lttail/oracle.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <vector>

#include "lttail/common.hpp"
#include "lttail/special.hpp"

namespace lttail {

namespace {

constexpr double kNegInf = -std::numeric_limits<double>::infinity();

int depth_for(const QuadratureSpec& spec) {
  int d = 6;
  while ((1 << d) < spec.max_subdivisions && d < 30) ++d;
  return d;
}

// saddle split of [0, x] between two exact models: hazard1(q) = hazard2(x - q)
double saddle_split(const Model& m1, const Model& m2, double x) {
  auto g = [&](double q) { return hazard_rate(m1, q) - hazard_rate(m2, x - q); };
  const double lo = 1e-9 * x, hi = x * (1.0 - 1e-9);
  if (g(lo) < 0.0 && g(hi) > 0.0) return find_root_monotone(g, lo, hi, 1e-10);
  return 0.5 * x;
}

// Monotone-cubic (Fritsch-Carlson) interpolant of a log-density tabulated on
// a uniform grid; -inf outside the finite part of the table.
class LogDensityTable {
 public:
  LogDensityTable(double x0, double h, std::vector<double> v)
      : x0_(x0), h_(h), v_(std::move(v)) {
    first_ = 0;
    while (first_ < v_.size() && !std::isfinite(v_[first_])) ++first_;
    const std::size_t n = v_.size();
    slopes_.assign(n, 0.0);
    if (n - first_ < 2) return;
    std::vector<double> d(n - 1, 0.0);
    for (std::size_t i = first_; i + 1 < n; ++i) d[i] = (v_[i + 1] - v_[i]) / h_;
    slopes_[first_] = d[first_];
    slopes_[n - 1] = d[n - 2];
    for (std::size_t i = first_ + 1; i + 1 < n; ++i) {
      if (d[i - 1] * d[i] <= 0.0)
        slopes_[i] = 0.0;
      else
        slopes_[i] = 2.0 * d[i - 1] * d[i] / (d[i - 1] + d[i]);  // harmonic mean
    }
  }

  double operator()(double x) const {
    const std::size_t n = v_.size();
    if (n - first_ < 2) return kNegInf;
    const double xf = x0_ + first_ * h_;
    const double xl = x0_ + (n - 1) * h_;
    if (x < xf || x > xl) return kNegInf;
    std::size_t i = std::min(
        n - 2, first_ + static_cast<std::size_t>(std::max(0.0, (x - xf) / h_)));
    const double t = (x - (x0_ + i * h_)) / h_;
    const double y0 = v_[i], y1 = v_[i + 1];
    const double m0 = slopes_[i] * h_, m1 = slopes_[i + 1] * h_;
    const double t2 = t * t, t3 = t2 * t;
    return (2 * t3 - 3 * t2 + 1) * y0 + (t3 - 2 * t2 + t) * m0 +
           (-2 * t3 + 3 * t2) * y1 + (t3 - t2) * m1;
  }

  double x_last() const { return x0_ + (v_.size() - 1) * h_; }

 private:
  double x0_, h_;
  std::vector<double> v_;
  std::vector<double> slopes_;
  std::size_t first_;
};

}  // namespace

void QuadratureSpec::validate() const {
  if (!(rel_tol > 0.0 && rel_tol <= 1e-3))
    throw Error(ErrorCode::invalid_argument, "QuadratureSpec: rel_tol must be in (0, 1e-3]");
  if (max_subdivisions < 64)
    throw Error(ErrorCode::invalid_argument, "QuadratureSpec: max_subdivisions must be >= 64");
}

double conv_tail_pair(const Model& m1, const Model& m2, double x,
                      const QuadratureSpec& spec) {
  spec.validate();
  if (!has_exact_law(m1) || !has_exact_law(m2))
    throw Error(ErrorCode::unsupported, "conv_tail_pair requires exact densities");
  if (!(x > 0.0)) return 0.0;  // nonnegative summands
  const int depth = depth_for(spec);
  auto integrand = [&](double z) {
    const double lf = log_density(m1, z);
    if (lf == kNegInf) return kNegInf;
    return lf + log_tail(m2, x - z);
  };
  const double zs = saddle_split(m1, m2, x);
  const double lo = 1e-12 * x;
  const double left = log_adaptive_simpson(integrand, lo, zs, spec.rel_tol, depth);
  const double right =
      log_adaptive_simpson(integrand, zs, x * (1.0 - 1e-14), spec.rel_tol, depth);
  const double interior = log_sum_exp(left, right);
  const double boundary = log_tail(m1, x);
  const double result = log_sum_exp(interior, boundary);
  return std::min(result, 0.0);
}

double nfold_tail_small(const Model& m, int n, double x, const QuadratureSpec& spec) {
  spec.validate();
  if (n < 2 || n > 4)
    throw Error(ErrorCode::domain, "nfold_tail_small supports n in {2,3,4}");
  if (!has_exact_law(m))
    throw Error(ErrorCode::unsupported, "nfold_tail_small requires an exact density");
  if (n == 2) return conv_tail_pair(m, m, x, spec);
  if (!(x > 0.0)) return 0.0;

  const int depth = depth_for(spec);
  const double ref = std::max(x, 1.0);
  const double span = x + 40.0 * inverse_hazard(m, ref);
  const std::size_t grid_n = 4096;
  const double h = span / (grid_n - 1);
  const double point_tol = std::min(spec.rel_tol, 1e-8);

  // density of S_2 on the grid
  std::vector<double> tab(grid_n, kNegInf);
  for (std::size_t i = 1; i < grid_n; ++i) {
    const double s = i * h;
    auto g = [&](double z) {
      const double a = log_density(m, z);
      if (a == kNegInf) return kNegInf;
      const double b = log_density(m, s - z);
      return b == kNegInf ? kNegInf : a + b;
    };
    // identical summands: the exponent is symmetric about s/2
    const double l = log_adaptive_simpson(g, 1e-12 * s, 0.5 * s, point_tol, depth);
    tab[i] = l == kNegInf ? kNegInf : l + std::log(2.0);
  }
  LogDensityTable f2(0.0, h, std::move(tab));

  auto tail_against = [&](const LogDensityTable& fk, int terms_in_table) {
    // P(S_n > x) = integral of f^{*(n-1)}(y) tail(x - y) dy
    auto g = [&](double y) {
      const double a = fk(y);
      return a == kNegInf ? kNegInf : a + log_tail(m, x - y);
    };
    const double ystar = std::min(fk.x_last(), x * terms_in_table / (terms_in_table + 1.0));
    const double yhi = fk.x_last();
    double acc = log_adaptive_simpson(g, h, ystar, spec.rel_tol, depth);
    acc = log_sum_exp(acc,
                      log_adaptive_simpson(g, ystar, std::min(x, yhi), spec.rel_tol, depth));
    if (yhi > x)
      acc = log_sum_exp(acc, log_adaptive_simpson(g, std::min(x, yhi), yhi,
                                                  spec.rel_tol, depth));
    return std::min(acc, 0.0);
  };

  if (n == 3) return tail_against(f2, 2);

  // density of S_3 = X + S_2 on the grid
  std::vector<double> tab3(grid_n, kNegInf);
  for (std::size_t i = 1; i < grid_n; ++i) {
    const double s = i * h;
    auto g = [&](double z) {
      const double a = log_density(m, z);
      if (a == kNegInf) return kNegInf;
      const double b = f2(s - z);
      return b == kNegInf ? kNegInf : a + b;
    };
    const double zs = s / 3.0;
    const double l = log_sum_exp(
        log_adaptive_simpson(g, 1e-12 * s, zs, point_tol, depth),
        log_adaptive_simpson(g, zs, s * (1.0 - 1e-12), point_tol, depth));
    tab3[i] = l;
  }
  LogDensityTable f3(0.0, h, std::move(tab3));
  return tail_against(f3, 3);
}

}  // namespace lttail
