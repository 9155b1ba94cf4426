#ifndef LTTAIL_TILTING_HPP
#define LTTAIL_TILTING_HPP

#include <cstdint>

#include "lttail/distributions.hpp"

namespace lttail {

// Saddlepoint-form m.g.f. asymptote log F~[theta] evaluated at
// y = lambda^{-1}(theta); diagnostics only -- importance-sampling weights
// always use mgf_numeric.
double mgf_asym(const Model& m, double theta);

// log E[X^k e^{theta X}] ~ k log y + log F~[theta].
double tilted_moment_asym(const Model& m, double theta, int k);

struct MgfResult {
  double log_mgf;  // log E e^{theta X}
  double log_d1;   // log E[X e^{theta X}]
  double log_d2;   // log E[X^2 e^{theta X}]
};

// Adaptive log-space quadrature of the defining integrals; requires an
// exact density. Relative error <= tol.
MgfResult mgf_numeric(const Model& m, double theta, double tol = 1e-10);

// Acceptance-rejection sampler for the tilted density
// f_theta(y) = e^{theta y} f(y) / F^[theta], with a moment-matched
// Gamma(a, b) proposal. The envelope constant is certified numerically at
// construction and re-checked on every proposal; a violation is a hard error.
struct TiltedSampler {
  Model model;
  double theta;
  double proposal_a;
  double proposal_b;
  double envelope_log_m;
  std::int64_t accept_count = 0;
  std::int64_t propose_count = 0;

  double acceptance_rate() const {
    return propose_count > 0 ? static_cast<double>(accept_count) / propose_count : 0.0;
  }
};

TiltedSampler make_tilted_sampler(const Model& m, double x, int n);
double sample_tilted(TiltedSampler& s, SplitMix64& rng);

// Local search over the proposal (mean, sd); returns the input unchanged if
// the optimizer fails to improve the envelope.
TiltedSampler tune_proposal(const TiltedSampler& s);

}  // namespace lttail

#endif
