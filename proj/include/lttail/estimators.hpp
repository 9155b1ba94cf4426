#ifndef LTTAIL_ESTIMATORS_HPP
#define LTTAIL_ESTIMATORS_HPP

#include <cstdint>
#include <string>
#include <vector>

#include "lttail/distributions.hpp"

namespace lttail {

struct RunConfig {
  std::int64_t n_samples = 100000;
  std::uint64_t seed = 1;
  int n_chunks = 1;

  void validate() const;
};

struct EstimateResult {
  double estimate = 0.0;
  double std_error = 0.0;
  double rel_error = 0.0;
  std::int64_t n_samples = 0;
  double second_moment = 0.0;
  double ci95_low = 0.0;
  double ci95_high = 0.0;
  // analytic bound on E Z^2 (importance sampling only, else NaN)
  double second_moment_bound = 0.0;
};

// Z = 1{S_n > x}
EstimateResult crude_mc(const Model& m, int n, double x, const RunConfig& cfg);

// Exponentially tilted importance sampling at theta = lambda(x/n); the
// likelihood weight uses the numeric m.g.f.
EstimateResult is_tilted(const Model& m, int n, double x, const RunConfig& cfg);

// Conditional Monte Carlo, Z = tail(x - S_{n-1}); n >= 2, exact tail required.
EstimateResult cond_mc(const Model& m, int n, double x, const RunConfig& cfg);

// Max-conditioned estimator, Z = n tail(max(M_{n-1}, x - S_{n-1})).
EstimateResult ak_estimator(const Model& m, int n, double x, const RunConfig& cfg);

struct EfficiencyRow {
  std::string method;
  double x;
  double estimate;
  double rel_error;
  double r2_proxy;       // second_moment / estimate^2
  double log_efficiency; // log(second_moment) / (2 log estimate)
};

std::vector<EfficiencyRow> efficiency_report(const Model& m, int n,
                                             const std::vector<double>& x_grid,
                                             const RunConfig& cfg);

}  // namespace lttail

#endif
