#ifndef LTTAIL_COMPOUND_HPP
#define LTTAIL_COMPOUND_HPP

#include "lttail/distributions.hpp"
#include "lttail/tilting.hpp"

namespace lttail {

// S_N = X_1 + ... + X_N with N ~ Poisson(mu) independent of the summands.
struct CompoundModel {
  double mu;
  Model severity;

  CompoundModel(double mu, Model severity);
};

struct SaddlepointSolution {
  double y;         // tilted-mean scale solving mu y F~[lambda(y)] = x
  double theta;     // lambda(y)
  double c1;        // mu sqrt(2 pi beta / (beta - 1))
  double residual;  // |mu y F~[lambda(y)] - x| / x
};

// Closed-form Lambert-W solution of mu y F~[lambda(y)] = x for a standard
// Weibull(beta) severity.
SaddlepointSolution saddlepoint_scale(double mu, double beta, double x);

struct EsscherResult {
  double log_tail;
  double theta;  // root of mu F^'[theta] = x
  double ell;    // theta sigma_c(theta)
};

// Esscher saddlepoint approximation with the numeric m.g.f.; requires an
// exact severity density and x > mu E X.
EsscherResult esscher_tail(const CompoundModel& cm, double x, double mgf_tol = 1e-10);

// Log-asymptotic compound tail for a standard Weibull severity. Only the
// log scale is meaningful; the constant is not sharp.
double log_asym_tail(const CompoundModel& cm, double x);

}  // namespace lttail

#endif
