#ifndef LTTAIL_DISTRIBUTIONS_HPP
#define LTTAIL_DISTRIBUTIONS_HPP

#include <functional>
#include <variant>

#include "lttail/rng.hpp"

namespace lttail {

// Density ~ d x^{alpha+beta-1} e^{-c x^beta}, beta > 1. Tail and density
// are asymptotic forms; they are exact only in the vanilla Weibull case
// alpha = 0, d = beta c, which is the only case with a sampler.
struct WeibullLikeModel {
  double alpha;
  double beta;
  double c;
  double d;

  WeibullLikeModel(double alpha, double beta, double c, double d);

  // tail prefactor: tail ~ k_tail x^alpha e^{-c x^beta}
  double tail_coeff() const { return d / (beta * c); }
  bool exact() const;

  double log_tail(double x) const;
  double log_density(double x) const;
  double hazard_rate(double x) const;  // leading order beta c x^{beta-1}
  double sample(SplitMix64& rng) const;
};

// Density beta k^{gamma/beta} x^{gamma-1} e^{-k x^beta} / Gamma(gamma/beta);
// tail is exactly Q(gamma/beta, k x^beta). Equals (Y/k)^{1/beta} with Y a
// unit-rate Gamma(gamma/beta) variate.
struct GammaWeibullModel {
  double k;
  double beta;
  double gamma_shape;

  GammaWeibullModel(double k, double beta, double gamma_shape);

  double log_tail(double x) const;
  double log_density(double x) const;
  double hazard_rate(double x) const;
  double sample(SplitMix64& rng) const;

  // the Weibull-like parameters matching this density
  WeibullLikeModel as_weibull_like() const;
};

using Model = std::variant<WeibullLikeModel, GammaWeibullModel>;

double log_tail(const Model& m, double x);
double tail(const Model& m, double x);
double log_density(const Model& m, double x);
double density(const Model& m, double x);
double hazard_rate(const Model& m, double x);
double inverse_hazard(const Model& m, double x);
double sample(const Model& m, SplitMix64& rng);
bool has_exact_law(const Model& m);

// Exponent-form parameters (psi(x) = c x^beta view) used by tilting and
// the saddlepoint machinery: lambda = psi', lambda' = psi''.
double exponent_rate(const Model& m);   // c (or k)
double exponent_beta(const Model& m);   // beta
double model_lambda(const Model& m, double y);
double model_lambda_prime(const Model& m, double y);
double model_lambda_inv(const Model& m, double theta);

// Function-valued model for the general light-tailed class: density
// gamma_flat(x) e^{-psi(x)} with convex psi, lambda = psi' increasing and
// unbounded. Flatness of gamma_flat is the caller's responsibility.
struct BkrModel {
  std::function<double(double)> psi;
  std::function<double(double)> lambda;
  std::function<double(double)> lambda_prime;
  std::function<double(double)> gamma_flat;
  double support_low;

  BkrModel(std::function<double(double)> psi,
           std::function<double(double)> lambda,
           std::function<double(double)> lambda_prime,
           std::function<double(double)> gamma_flat, double support_low);
};

BkrModel to_bkr(const WeibullLikeModel& m);

}  // namespace lttail

#endif
