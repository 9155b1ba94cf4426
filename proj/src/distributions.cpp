#include "lttail/distributions.hpp"

#include <cmath>
#include <limits>
#include <vector>

#include "lttail/common.hpp"
#include "lttail/special.hpp"

namespace lttail {

namespace {
constexpr double kNegInf = -std::numeric_limits<double>::infinity();

void require_finite(double x, const char* who) {
  if (!std::isfinite(x)) throw Error(ErrorCode::domain, std::string(who) + ": non-finite x");
}
}  // namespace

WeibullLikeModel::WeibullLikeModel(double alpha_, double beta_, double c_, double d_)
    : alpha(alpha_), beta(beta_), c(c_), d(d_) {
  if (!(beta > 1.0) || !(c > 0.0) || !(d > 0.0) || !std::isfinite(alpha))
    throw Error(ErrorCode::invalid_argument,
                "WeibullLikeModel requires beta > 1, c > 0, d > 0");
}

bool WeibullLikeModel::exact() const {
  return alpha == 0.0 && std::abs(d - beta * c) <= 1e-12 * beta * c;
}

double WeibullLikeModel::log_tail(double x) const {
  require_finite(x, "tail");
  if (x <= 0.0) return 0.0;  // nonnegative-support convention
  const double v = std::log(tail_coeff()) + alpha * std::log(x) - c * std::pow(x, beta);
  return std::min(v, 0.0);
}

double WeibullLikeModel::log_density(double x) const {
  require_finite(x, "density");
  if (x <= 0.0) return kNegInf;
  return std::log(d) + (alpha + beta - 1.0) * std::log(x) - c * std::pow(x, beta);
}

double WeibullLikeModel::hazard_rate(double x) const {
  require_finite(x, "hazard_rate");
  if (!(x > 0.0)) throw Error(ErrorCode::domain, "hazard_rate: x must be > 0");
  return beta * c * std::pow(x, beta - 1.0);
}

double WeibullLikeModel::sample(SplitMix64& rng) const {
  if (!exact())
    throw Error(ErrorCode::unsupported,
                "WeibullLikeModel sampling requires alpha = 0, d = beta*c "
                "(only asymptotics available otherwise)");
  return std::pow(-std::log(rng.next_double()) / c, 1.0 / beta);
}

GammaWeibullModel::GammaWeibullModel(double k_, double beta_, double gamma_shape_)
    : k(k_), beta(beta_), gamma_shape(gamma_shape_) {
  if (!(k > 0.0) || !(beta >= 1.0) || !(gamma_shape > 0.0))
    throw Error(ErrorCode::invalid_argument,
                "GammaWeibullModel requires k > 0, beta >= 1, gamma > 0");
}

double GammaWeibullModel::log_tail(double x) const {
  require_finite(x, "tail");
  if (x <= 0.0) return 0.0;  // nonnegative-support convention
  return log_gamma_q(gamma_shape / beta, k * std::pow(x, beta));
}

double GammaWeibullModel::log_density(double x) const {
  require_finite(x, "density");
  if (x <= 0.0) return kNegInf;  // 0 by convention below the support
  const double a = gamma_shape / beta;
  return std::log(beta) + a * std::log(k) + (gamma_shape - 1.0) * std::log(x) -
         k * std::pow(x, beta) - std::lgamma(a);
}

double GammaWeibullModel::hazard_rate(double x) const {
  require_finite(x, "hazard_rate");
  if (!(x > 0.0)) throw Error(ErrorCode::domain, "hazard_rate: x must be > 0");
  return std::exp(log_density(x) - log_tail(x));
}

double GammaWeibullModel::sample(SplitMix64& rng) const {
  return std::pow(rng.next_gamma(gamma_shape / beta) / k, 1.0 / beta);
}

WeibullLikeModel GammaWeibullModel::as_weibull_like() const {
  const double a = gamma_shape / beta;
  const double d = beta * std::pow(k, a) / std::tgamma(a);
  return WeibullLikeModel(gamma_shape - beta, beta, k, d);
}

double log_tail(const Model& m, double x) {
  return std::visit([x](const auto& mm) { return mm.log_tail(x); }, m);
}
double tail(const Model& m, double x) { return std::exp(log_tail(m, x)); }
double log_density(const Model& m, double x) {
  return std::visit([x](const auto& mm) { return mm.log_density(x); }, m);
}
double density(const Model& m, double x) { return std::exp(log_density(m, x)); }
double hazard_rate(const Model& m, double x) {
  return std::visit([x](const auto& mm) { return mm.hazard_rate(x); }, m);
}
double inverse_hazard(const Model& m, double x) { return 1.0 / hazard_rate(m, x); }
double sample(const Model& m, SplitMix64& rng) {
  return std::visit([&rng](const auto& mm) { return mm.sample(rng); }, m);
}
bool has_exact_law(const Model& m) {
  if (std::holds_alternative<GammaWeibullModel>(m)) return true;
  return std::get<WeibullLikeModel>(m).exact();
}

double exponent_rate(const Model& m) {
  if (const auto* w = std::get_if<WeibullLikeModel>(&m)) return w->c;
  return std::get<GammaWeibullModel>(m).k;
}
double exponent_beta(const Model& m) {
  if (const auto* w = std::get_if<WeibullLikeModel>(&m)) return w->beta;
  return std::get<GammaWeibullModel>(m).beta;
}
double model_lambda(const Model& m, double y) {
  return exponent_beta(m) * exponent_rate(m) * std::pow(y, exponent_beta(m) - 1.0);
}
double model_lambda_prime(const Model& m, double y) {
  const double b = exponent_beta(m);
  return b * (b - 1.0) * exponent_rate(m) * std::pow(y, b - 2.0);
}
double model_lambda_inv(const Model& m, double theta) {
  const double b = exponent_beta(m);
  if (!(theta > 0.0)) throw Error(ErrorCode::domain, "lambda inverse: theta must be > 0");
  return std::pow(theta / (b * exponent_rate(m)), 1.0 / (b - 1.0));
}

BkrModel::BkrModel(std::function<double(double)> psi_,
                   std::function<double(double)> lambda_,
                   std::function<double(double)> lambda_prime_,
                   std::function<double(double)> gamma_flat_, double support_low_)
    : psi(std::move(psi_)),
      lambda(std::move(lambda_)),
      lambda_prime(std::move(lambda_prime_)),
      gamma_flat(std::move(gamma_flat_)),
      support_low(support_low_) {
  if (!psi || !lambda || !lambda_prime || !gamma_flat)
    throw Error(ErrorCode::invalid_argument, "BkrModel: all function handles required");
  // opaque handles: validate monotone lambda on a 64-point log-spaced grid
  const double lo = std::max(support_low, 1e-3);
  const double hi = lo * 1e8;
  const double step = std::pow(hi / lo, 1.0 / 63.0);
  double prev = lambda(lo);
  double x = lo;
  for (int i = 1; i < 64; ++i) {
    x *= step;
    const double cur = lambda(x);
    if (!(cur > prev))
      throw Error(ErrorCode::invalid_argument,
                  "BkrModel: lambda must be strictly increasing");
    if (!(lambda_prime(x) > 0.0))
      throw Error(ErrorCode::invalid_argument, "BkrModel: lambda_prime must be > 0");
    prev = cur;
  }
}

BkrModel to_bkr(const WeibullLikeModel& m) {
  const double a = m.alpha, b = m.beta, c = m.c, d = m.d;
  return BkrModel([c, b](double x) { return c * std::pow(x, b); },
                  [c, b](double x) { return b * c * std::pow(x, b - 1.0); },
                  [c, b](double x) { return b * (b - 1.0) * c * std::pow(x, b - 2.0); },
                  [a, b, d](double x) { return d * std::pow(x, a + b - 1.0); }, 0.0);
}

}  // namespace lttail
