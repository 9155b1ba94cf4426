#include "lttail/convolve.hpp"

#include <cmath>
#include <limits>

#include "lttail/common.hpp"
#include "lttail/special.hpp"

namespace lttail {

namespace {

struct DensityParams {  // density ~ e^{log_d} x^{alpha+beta-1} e^{-c x^beta}
  double alpha;
  double c;
  double log_d;
};

// The sigma^2 formula degenerates as beta -> 1+; the limit is untested and
// the constants under/overflow through c^{1/(beta-1)}.
constexpr double kMinBeta = 1.01;

PairAsymConstants pair_constants_impl(const DensityParams& p1, const DensityParams& p2,
                                      double beta) {
  if (!(beta >= kMinBeta))
    throw Error(ErrorCode::unsupported, "pair asymptotics require beta >= 1.01");
  PairAsymConstants r{};
  const double inv = 1.0 / (beta - 1.0);
  const double c1p = std::pow(p1.c, inv);
  const double c2p = std::pow(p2.c, inv);
  r.eta = c1p + c2p;
  r.theta1 = c2p / r.eta;
  r.theta2 = c1p / r.eta;
  r.kappa = std::pow(r.eta, beta - 1.0) / (beta * p1.c * p2.c);
  r.c = p1.c * p2.c / std::pow(r.eta, beta - 1.0);
  const double inv_s1 = beta * (beta - 1.0) * p1.c * std::pow(r.theta1, beta - 2.0) *
                        r.kappa * r.kappa;
  const double inv_s2 = beta * (beta - 1.0) * p2.c * std::pow(r.theta2, beta - 2.0) *
                        r.kappa * r.kappa;
  r.sigma1_sq = 1.0 / inv_s1;
  r.sigma2_sq = 1.0 / inv_s2;
  r.sigma_sq = 1.0 / (inv_s1 + inv_s2);
  r.log_k = p1.log_d + p2.log_d + p1.alpha * std::log(r.theta1) +
            p2.alpha * std::log(r.theta2) + std::log(r.kappa) +
            (1.0 - beta) * std::log(r.eta) +
            0.5 * std::log(2.0 * M_PI * r.sigma_sq) - std::log(beta);
  r.gamma_exp = p1.alpha + p2.alpha + beta / 2.0;
  return r;
}

DensityParams to_params(const WeibullLikeModel& m) {
  return {m.alpha, m.c, std::log(m.d)};
}

void check_same_beta(const WeibullLikeModel& m1, const WeibullLikeModel& m2) {
  if (m1.beta != m2.beta)
    throw Error(ErrorCode::unsupported,
                "pair asymptotics require a common beta for both summands");
}

// root of lambda1(q) - lambda2(x - q) on [lo, x - lo2]
double solve_split(const BkrModel& m1, const BkrModel& m2, double x) {
  const double lo = std::max(m1.support_low, 1e-12 * x);
  const double hi = x - std::max(m2.support_low, 1e-12 * x);
  if (!(hi > lo))
    throw Error(ErrorCode::no_solution, "bkr_split: x too small for the supports");
  auto g = [&](double q) { return m1.lambda(q) - m2.lambda(x - q); };
  if (!(g(lo) < 0.0) || !(g(hi) > 0.0))
    throw Error(ErrorCode::no_solution,
                "bkr_split: lambda ranges do not overlap at this level set");
  return find_root_monotone(g, lo, hi, 1e-12);
}

}  // namespace

double PairAsymConstants::k() const { return std::exp(log_k); }

double TailAsymptote::log_eval(double x) const {
  return log_k + p * std::log(x) - c * std::pow(x, beta);
}
double TailAsymptote::k() const { return std::exp(log_k); }

PairAsymConstants pair_constants(const WeibullLikeModel& m1, const WeibullLikeModel& m2) {
  check_same_beta(m1, m2);
  return pair_constants_impl(to_params(m1), to_params(m2), m1.beta);
}

TailAsymptote pair_tail_asymptote(const WeibullLikeModel& m1, const WeibullLikeModel& m2) {
  const PairAsymConstants pc = pair_constants(m1, m2);
  return {pc.log_k, pc.gamma_exp, pc.c, m1.beta};
}

TailAsymptote pair_density_asymptote(const WeibullLikeModel& m1,
                                     const WeibullLikeModel& m2) {
  const TailAsymptote t = pair_tail_asymptote(m1, m2);
  return {t.log_k + std::log(t.beta * t.c), t.p + t.beta - 1.0, t.c, t.beta};
}

TailAsymptote nfold_asymptote(const WeibullLikeModel& m, int n) {
  if (n < 1) throw Error(ErrorCode::domain, "nfold_asymptote: n must be >= 1");
  const double beta = m.beta, alpha = m.alpha, c = m.c;
  const double nn = static_cast<double>(n);
  const double log_k = nn * std::log(m.d) - std::log(beta * c) +
                       0.5 * (nn - 1.0) * (std::log(2.0 * M_PI) -
                                           std::log(beta * (beta - 1.0) * c)) +
                       0.5 * (beta - nn * (2.0 * alpha + beta) - 1.0) * std::log(nn);
  return {log_k, nn * alpha + (nn - 1.0) * beta / 2.0, c / std::pow(nn, beta - 1.0), beta};
}

TailAsymptote nfold_by_recursion(const WeibullLikeModel& m, int n) {
  if (n < 2) throw Error(ErrorCode::domain, "nfold_by_recursion: n must be >= 2");
  const DensityParams base = to_params(m);
  DensityParams cur = base;  // density of F^{*m}, left-associated
  PairAsymConstants pc{};
  for (int i = 2; i <= n; ++i) {
    pc = pair_constants_impl(base, cur, m.beta);
    cur.alpha = pc.gamma_exp;
    cur.c = pc.c;
    cur.log_d = std::log(m.beta * pc.c) + pc.log_k;
  }
  return {pc.log_k, pc.gamma_exp, pc.c, m.beta};
}

SplitSolution bkr_split(const BkrModel& m1, const BkrModel& m2, double x) {
  const double q1 = solve_split(m1, m2, x);
  const double q2 = x - q1;
  SplitSolution s{q1, q2, m1.lambda(q1), m1.psi(q1) + m2.psi(q2),
                  std::numeric_limits<double>::quiet_NaN()};
  return s;
}

BkrConvolveResult bkr_convolve_at(const BkrModel& m1, const BkrModel& m2, double x) {
  const SplitSolution s = bkr_split(m1, m2, x);
  // lambda'(x) of the convolution via centered difference of
  // lambda(x) = lambda1(q1(x)); no closed form is available.
  const double h = x * 1e-5;
  const double lam_plus = m1.lambda(solve_split(m1, m2, x + h));
  const double lam_minus = m1.lambda(solve_split(m1, m2, x - h));
  const double lam_prime = (lam_plus - lam_minus) / (2.0 * h);
  const double gamma_x = std::sqrt(2.0 * M_PI * lam_prime /
                                   (m1.lambda_prime(s.q1) * m2.lambda_prime(s.q2))) *
                         m1.gamma_flat(s.q1) * m2.gamma_flat(s.q2);
  BkrConvolveResult r{};
  r.psi_x = s.psi_sum;
  r.gamma_x = gamma_x;
  r.lambda_x = s.lambda_at_split;
  r.log_tail = std::log(gamma_x) - s.psi_sum - std::log(s.lambda_at_split);
  return r;
}

double exp_class_tail(const std::vector<ExpClassTerm>& terms, double k, double x) {
  if (terms.empty()) throw Error(ErrorCode::domain, "exp_class_tail: empty summand list");
  if (!(k > 0.0)) throw Error(ErrorCode::domain, "exp_class_tail: k must be > 0");
  double gamma0 = 0.0;
  double log_val = (static_cast<double>(terms.size()) - 1.0) * std::log(k);
  for (const auto& t : terms) {
    if (!(t.gamma_i > 0.0))
      throw Error(ErrorCode::domain, "exp_class_tail: gamma_i must be > 0");
    gamma0 += t.gamma_i;
    log_val += std::lgamma(t.gamma_i) + std::log(t.ell(x));
  }
  return log_val - std::lgamma(gamma0) + (gamma0 - 1.0) * std::log(x) - k * x;
}

double beta_norm_log_bound(const std::vector<ExpClassTerm>& terms, double k,
                           double beta, double x) {
  if (!(beta > 1.0))
    throw Error(ErrorCode::domain, "beta_norm_log_bound: beta must be > 1");
  const double n = static_cast<double>(terms.size());
  const double u = std::pow(x, beta) / std::pow(n, beta - 1.0);
  std::vector<ExpClassTerm> transformed;
  transformed.reserve(terms.size());
  for (const auto& t : terms) {
    auto ell = t.ell;
    transformed.push_back({[ell, beta](double v) { return ell(std::pow(v, 1.0 / beta)); },
                           (t.gamma_i - 1.0) / beta + 1.0});
  }
  return exp_class_tail(transformed, k, u);
}

}  // namespace lttail
