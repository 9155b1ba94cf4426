#ifndef LTTAIL_ORACLE_HPP
#define LTTAIL_ORACLE_HPP

#include "lttail/distributions.hpp"

namespace lttail {

struct QuadratureSpec {
  double rel_tol = 1e-8;
  double abs_log_floor = -745.0;  // ignore contributions below e^{floor}
  int max_subdivisions = 4096;

  void validate() const;
};

// Ground-truth log P(X_1 + X_2 > x) by adaptive quadrature of the exact
// convolution identity, split at the saddle point so each half is monotone.
double conv_tail_pair(const Model& m1, const Model& m2, double x,
                      const QuadratureSpec& spec = {});

// log P(S_n > x) for n in {2,3,4}: iterated pairing through a tabulated
// intermediate log-density with monotone-cubic interpolation.
double nfold_tail_small(const Model& m, int n, double x,
                        const QuadratureSpec& spec = {});

}  // namespace lttail

#endif
