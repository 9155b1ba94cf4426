#include "lttail/compound.hpp"

#include <cmath>

#include "lttail/common.hpp"
#include "lttail/special.hpp"

namespace lttail {

namespace {

bool is_standard_weibull(const Model& m, double* beta_out) {
  const auto* w = std::get_if<WeibullLikeModel>(&m);
  if (!w || !w->exact() || w->c != 1.0) return false;
  if (beta_out) *beta_out = w->beta;
  return true;
}

// log F~[t] for the standard Weibull(beta) severity
double log_mgf_tilde(double beta, double t) {
  const double e = beta / (beta - 1.0);
  return 0.5 * (std::log(2.0 * M_PI / (beta - 1.0)) + std::log(beta) / (1.0 - beta)) +
         0.5 * e * std::log(t) + (beta - 1.0) * std::pow(t / beta, e);
}

}  // namespace

CompoundModel::CompoundModel(double mu_, Model severity_)
    : mu(mu_), severity(std::move(severity_)) {
  if (!(mu > 0.0)) throw Error(ErrorCode::invalid_argument, "CompoundModel: mu must be > 0");
}

SaddlepointSolution saddlepoint_scale(double mu, double beta, double x) {
  if (!(mu > 0.0) || !(beta > 1.0) || !(x > 0.0))
    throw Error(ErrorCode::domain, "saddlepoint_scale: need mu > 0, beta > 1, x > 0");
  SaddlepointSolution s{};
  s.c1 = mu * std::sqrt(2.0 * M_PI * beta / (beta - 1.0));
  const double p = 2.0 * beta / (beta + 2.0);
  const double q = 2.0 * beta * (beta - 1.0) / (beta + 2.0);
  const double w = lambert_w0(q * std::pow(x / s.c1, p));
  const double u = w / q;  // = y^beta
  s.y = std::pow(u, 1.0 / beta);
  s.theta = beta * std::pow(s.y, beta - 1.0);
  const double lhs = std::log(mu) + std::log(s.y) + log_mgf_tilde(beta, s.theta);
  s.residual = std::abs(std::exp(lhs) - x) / x;
  return s;
}

EsscherResult esscher_tail(const CompoundModel& cm, double x, double mgf_tol) {
  const Model& sv = cm.severity;
  const double mu = cm.mu;
  auto log_d1 = [&](double theta) { return mgf_numeric(sv, theta, mgf_tol).log_d1; };

  // mu F^'[theta] is strictly increasing; expand the bracket upward
  const double target = std::log(x) - std::log(mu);
  double theta_lo = 1e-6, theta_hi = 1e-6;
  if (log_d1(theta_lo) >= target)
    throw Error(ErrorCode::no_solution,
                "esscher_tail: x is at or below mu E X; no positive saddlepoint");
  const double beta = exponent_beta(sv);
  const double theta_cap = (beta == 1.0) ? exponent_rate(sv) * (1.0 - 1e-9) : 1e6;
  do {
    theta_hi = std::min(2.0 * theta_hi, theta_cap);
    if (theta_hi >= theta_cap && log_d1(theta_hi) < target)
      throw Error(ErrorCode::no_solution, "esscher_tail: x beyond the feasible range");
  } while (log_d1(theta_hi) < target);
  const double theta = find_root_monotone(
      [&](double t) { return log_d1(t) - target; }, theta_lo, theta_hi, 1e-12);

  const MgfResult mg = mgf_numeric(sv, theta, mgf_tol);
  if (mg.log_mgf > 700.0)
    throw Error(ErrorCode::accuracy, "esscher_tail: m.g.f. overflows the compound exponent");
  const double a = mu * (std::exp(mg.log_mgf) - 1.0);  // log F^_{S_N}[theta]
  const double log_sigma_c2 = std::log(mu) + mg.log_d2;
  const double ell = theta * std::exp(0.5 * log_sigma_c2);

  EsscherResult r{};
  r.theta = theta;
  r.ell = ell;
  r.log_tail = a + std::log1p(-std::exp(-mu - a)) - theta * x - std::log(theta) -
               0.5 * log_sigma_c2 + std::log(mills_b0(ell));
  return r;
}

double log_asym_tail(const CompoundModel& cm, double x) {
  double beta = 0.0;
  if (!is_standard_weibull(cm.severity, &beta))
    throw Error(ErrorCode::unsupported,
                "log_asym_tail requires a standard Weibull severity (c = 1)");
  const SaddlepointSolution s = saddlepoint_scale(cm.mu, beta, x);
  // at the saddle mu F~[theta] = x/y, so the compound exponent is x/y - mu
  // and sigma_c^2 = mu theta-derivative of F^' ~ x y
  const double lam = s.theta;
  const double ell = lam * std::sqrt(x * s.y);
  const double ratio = x / s.y;
  return -cm.mu + ratio + std::log1p(-std::exp(-ratio)) - lam * x - std::log(lam) -
         0.5 * std::log(x * s.y) + std::log(mills_b0(ell));
}

}  // namespace lttail
