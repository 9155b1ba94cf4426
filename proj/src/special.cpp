#include "lttail/special.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "lttail/common.hpp"

namespace lttail {

namespace {
constexpr double kNegInf = -std::numeric_limits<double>::infinity();
constexpr int kMaxGammaTerms = 10000;
constexpr double kGammaTol = 1e-15;

// Lower regularized P(a,x) by power series, valid for x < a+1.
double gamma_p_series(double a, double x) {
  double ap = a;
  double sum = 1.0 / a;
  double del = sum;
  for (int i = 0; i < kMaxGammaTerms; ++i) {
    ap += 1.0;
    del *= x / ap;
    sum += del;
    if (std::abs(del) < std::abs(sum) * kGammaTol) {
      return sum * std::exp(-x + a * std::log(x) - std::lgamma(a));
    }
  }
  throw Error(ErrorCode::accuracy, "gamma_p series did not converge");
}

// log of the continued-fraction factor h with Q(a,x) = e^{-x+a ln x - lgamma(a)} h,
// valid for x >= a+1 (modified Lentz).
double gamma_q_cf_log(double a, double x) {
  const double fpmin = std::numeric_limits<double>::min() /
                       std::numeric_limits<double>::epsilon();
  double b = x + 1.0 - a;
  double c = 1.0 / fpmin;
  double d = 1.0 / b;
  double h = d;
  for (int i = 1; i <= kMaxGammaTerms; ++i) {
    const double an = -static_cast<double>(i) * (i - a);
    b += 2.0;
    d = an * d + b;
    if (std::abs(d) < fpmin) d = fpmin;
    c = b + an / c;
    if (std::abs(c) < fpmin) c = fpmin;
    d = 1.0 / d;
    const double del = d * c;
    h *= del;
    if (std::abs(del - 1.0) <= kGammaTol) return std::log(h);
  }
  throw Error(ErrorCode::accuracy, "gamma_q continued fraction did not converge");
}

void check_gamma_args(double a, double x) {
  if (!(a > 0.0)) throw Error(ErrorCode::domain, "incomplete gamma: a must be > 0");
  if (!(x >= 0.0) || !std::isfinite(x))
    throw Error(ErrorCode::domain, "incomplete gamma: x must be finite and >= 0");
}
}  // namespace

double log_sum_exp(double a, double b) {
  if (a == kNegInf) return b;
  if (b == kNegInf) return a;
  const double m = std::max(a, b);
  return m + std::log1p(std::exp(std::min(a, b) - m));
}

double gamma_p(double a, double x) {
  check_gamma_args(a, x);
  if (x == 0.0) return 0.0;
  if (x < a + 1.0) return gamma_p_series(a, x);
  return -std::expm1(log_gamma_q(a, x));
}

double gamma_q(double a, double x) {
  check_gamma_args(a, x);
  if (x == 0.0) return 1.0;
  if (x < a + 1.0) return 1.0 - gamma_p_series(a, x);
  return std::exp(log_gamma_q(a, x));
}

double log_gamma_q(double a, double x) {
  check_gamma_args(a, x);
  if (x == 0.0) return 0.0;
  if (x < a + 1.0) return std::log1p(-gamma_p_series(a, x));
  return -x + a * std::log(x) - std::lgamma(a) + gamma_q_cf_log(a, x);
}

double log_upper_incomplete_gamma(double a, double x) {
  return log_gamma_q(a, x) + std::lgamma(a);
}

double lambert_w0(double v) {
  const double branch_point = -1.0 / std::exp(1.0);
  if (!std::isfinite(v)) throw Error(ErrorCode::domain, "lambert_w0: non-finite argument");
  if (v < branch_point - 1e-14)
    throw Error(ErrorCode::domain, "lambert_w0: argument below -1/e");
  if (v <= branch_point) return -1.0;
  if (v == 0.0) return 0.0;

  double w;
  if (v < -0.25) {
    // series about the branch point
    const double p = std::sqrt(2.0 * (std::exp(1.0) * v + 1.0));
    w = -1.0 + p - p * p / 3.0 + 11.0 / 72.0 * p * p * p;
  } else if (v < 3.0) {
    w = v * (1.0 - v + 1.5 * v * v) / (1.0 + 0.5 * v);
    if (w <= -1.0) w = -0.5;
  } else {
    const double lv = std::log(v);
    w = lv - std::log(lv);
  }

  for (int i = 0; i < 64; ++i) {
    const double ew = std::exp(w);
    const double f = w * ew - v;
    const double denom = ew * (w + 1.0) - (w + 2.0) * f / (2.0 * w + 2.0);
    const double dw = f / denom;
    w -= dw;
    if (std::abs(dw) <= 1e-15 * std::max(1.0, std::abs(w))) break;
  }
  return w;
}

double normal_cdf_c(double x) { return 0.5 * std::erfc(x / std::sqrt(2.0)); }

double mills_b0(double ell) {
  if (ell > 8.0) {
    const double i2 = 1.0 / (ell * ell);
    return (1.0 - i2 + 3.0 * i2 * i2) / std::sqrt(2.0 * M_PI);
  }
  return ell * std::exp(0.5 * ell * ell) * normal_cdf_c(ell);
}

namespace {

double simpson_log(double fa, double fm, double fb, double h) {
  const double off = std::max(fa, std::max(fm, fb));
  if (off == kNegInf) return kNegInf;
  const double s =
      h / 6.0 * (std::exp(fa - off) + 4.0 * std::exp(fm - off) + std::exp(fb - off));
  return s > 0.0 ? off + std::log(s) : kNegInf;
}

double adapt_log(const std::function<double(double)>& f, double a, double m,
                 double b, double fa, double fm, double fb, double log_whole,
                 double rel_tol, int depth) {
  const double m1 = 0.5 * (a + m);
  const double m2 = 0.5 * (m + b);
  const double f1 = f(m1);
  const double f2 = f(m2);
  const double log_l = simpson_log(fa, f1, fm, m - a);
  const double log_r = simpson_log(fm, f2, fb, b - m);
  const double log_two = log_sum_exp(log_l, log_r);
  if (log_two == kNegInf && log_whole == kNegInf) return kNegInf;
  if (depth <= 0) return log_two;
  // |S2 - S| <= 15 tol |S2| acceptance, evaluated on ratios
  const double hi = std::max(log_two, log_whole);
  const double diff =
      std::abs(std::exp(log_two - hi) - std::exp(log_whole - hi));
  if (diff <= 15.0 * rel_tol * std::exp(log_two - hi)) return log_two;
  const double left = adapt_log(f, a, m1, m, fa, f1, fm, log_l, rel_tol, depth - 1);
  const double right = adapt_log(f, m, m2, b, fm, f2, fb, log_r, rel_tol, depth - 1);
  return log_sum_exp(left, right);
}

}  // namespace

double log_adaptive_simpson(const std::function<double(double)>& log_f,
                            double a, double b, double rel_tol, int max_depth) {
  if (!(b > a)) return kNegInf;
  const double m = 0.5 * (a + b);
  const double fa = log_f(a);
  const double fm = log_f(m);
  const double fb = log_f(b);
  const double whole = simpson_log(fa, fm, fb, b - a);
  return adapt_log(log_f, a, m, b, fa, fm, fb, whole, rel_tol, max_depth);
}

double find_root_monotone(const std::function<double(double)>& f, double lo,
                          double hi, double rel_tol) {
  double flo = f(lo);
  double fhi = f(hi);
  if (flo == 0.0) return lo;
  if (fhi == 0.0) return hi;
  if ((flo > 0.0) == (fhi > 0.0))
    throw Error(ErrorCode::no_solution, "find_root_monotone: endpoints do not bracket a root");
  for (int i = 0; i < 200; ++i) {
    const double mid = 0.5 * (lo + hi);
    const double fm = f(mid);
    if (fm == 0.0) return mid;
    if ((fm > 0.0) == (fhi > 0.0)) {
      hi = mid;
      fhi = fm;
    } else {
      lo = mid;
      flo = fm;
    }
    if (hi - lo <= rel_tol * std::max(std::abs(lo), std::abs(hi))) break;
  }
  // secant polish
  double x = 0.5 * (lo + hi);
  if (fhi != flo) {
    const double s = hi - fhi * (hi - lo) / (fhi - flo);
    if (s > lo && s < hi) x = s;
  }
  return x;
}

double golden_max(const std::function<double(double)>& f, double lo, double hi,
                  double tol, double* arg) {
  const double gr = 0.5 * (std::sqrt(5.0) - 1.0);
  double a = lo, b = hi;
  double c = b - gr * (b - a);
  double d = a + gr * (b - a);
  double fc = f(c), fd = f(d);
  for (int i = 0; i < 200 && (b - a) > tol * std::max(1.0, std::abs(a) + std::abs(b)); ++i) {
    if (fc > fd) {
      b = d;
      d = c;
      fd = fc;
      c = b - gr * (b - a);
      fc = f(c);
    } else {
      a = c;
      c = d;
      fc = fd;
      d = a + gr * (b - a);
      fd = f(d);
    }
  }
  const double xm = 0.5 * (a + b);
  if (arg) *arg = xm;
  return f(xm);
}

}  // namespace lttail
