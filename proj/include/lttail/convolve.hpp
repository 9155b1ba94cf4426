#ifndef LTTAIL_CONVOLVE_HPP
#define LTTAIL_CONVOLVE_HPP

#include <functional>
#include <utility>
#include <vector>

#include "lttail/distributions.hpp"

namespace lttail {

// Constants of the two-term convolution asymptote for a same-beta
// Weibull-like pair.
struct PairAsymConstants {
  double eta;
  double theta1;
  double theta2;
  double kappa;
  double c;
  double sigma1_sq;
  double sigma2_sq;
  double sigma_sq;
  double log_k;
  double gamma_exp;  // alpha1 + alpha2 + beta/2

  double k() const;
};

// Tail of the form k x^p e^{-c x^beta}; k kept in log space so n-fold
// constants stay representable.
struct TailAsymptote {
  double log_k;
  double p;
  double c;
  double beta;

  double log_eval(double x) const;
  double k() const;
};

struct SplitSolution {
  double q1;
  double q2;
  double lambda_at_split;
  double psi_sum;
  double gamma_out;  // gamma(x) of the convolution; NaN until evaluated
};

struct BkrConvolveResult {
  double psi_x;
  double gamma_x;
  double lambda_x;
  double log_tail;
};

PairAsymConstants pair_constants(const WeibullLikeModel& m1, const WeibullLikeModel& m2);
TailAsymptote pair_tail_asymptote(const WeibullLikeModel& m1, const WeibullLikeModel& m2);
TailAsymptote pair_density_asymptote(const WeibullLikeModel& m1, const WeibullLikeModel& m2);

TailAsymptote nfold_asymptote(const WeibullLikeModel& m, int n);
// Iterated pairing F (*) F^{*(n-1)}; exists to validate the closed form.
TailAsymptote nfold_by_recursion(const WeibullLikeModel& m, int n);

SplitSolution bkr_split(const BkrModel& m1, const BkrModel& m2, double x);
BkrConvolveResult bkr_convolve_at(const BkrModel& m1, const BkrModel& m2, double x);

// beta = 1 exponential class: summand tails ell_i(x) x^{gamma_i - 1} e^{-k x}.
// Returns the log of the convolution-tail asymptote. The constant carries
// the product of Gamma(gamma_i) factors; this is the Gamma-oracle-consistent
// normalization (it reproduces the exact Gamma(gamma_0, k) tail and reduces
// to the summand's own tail at n = 1).
struct ExpClassTerm {
  std::function<double(double)> ell;  // positive slowly varying
  double gamma_i;                     // > 0
};

double exp_class_tail(const std::vector<ExpClassTerm>& terms, double k, double x);

// Log upper bound on P(S_n > x) for beta > 1 via the beta-norm reduction of
// the summands to the beta = 1 class; ~ -k n (x/n)^beta as x grows.
double beta_norm_log_bound(const std::vector<ExpClassTerm>& terms, double k,
                           double beta, double x);

}  // namespace lttail

#endif
