#include "lttail.h"

#include <cmath>
#include <new>
#include <string>

#include "lttail/bounds.hpp"
#include "lttail/common.hpp"
#include "lttail/compound.hpp"
#include "lttail/convolve.hpp"
#include "lttail/distributions.hpp"
#include "lttail/estimators.hpp"
#include "lttail/oracle.hpp"
#include "lttail/special.hpp"

struct lt_model {
  lttail::Model m;
};

namespace {

thread_local std::string g_last_error;

lt_status to_status(const lttail::Error& e) {
  switch (e.code()) {
    case lttail::ErrorCode::invalid_argument:
      return LT_EINVAL;
    case lttail::ErrorCode::domain:
      return LT_EDOMAIN;
    case lttail::ErrorCode::accuracy:
      return LT_EACCURACY;
    case lttail::ErrorCode::unsupported:
      return LT_EUNSUPPORTED;
    case lttail::ErrorCode::no_solution:
      return LT_ENOSOLUTION;
  }
  return LT_EINVAL;
}

template <typename Fn>
lt_status guarded(Fn&& fn) {
  try {
    fn();
    return LT_OK;
  } catch (const lttail::Error& e) {
    g_last_error = e.what();
    return to_status(e);
  } catch (const std::bad_alloc&) {
    g_last_error = "out of memory";
    return LT_EINVAL;
  } catch (const std::exception& e) {
    g_last_error = e.what();
    return LT_EINVAL;
  }
}

lt_status require(bool ok, const char* msg) {
  if (ok) return LT_OK;
  g_last_error = msg;
  return LT_EINVAL;
}

lttail::WeibullLikeModel density_form(const lttail::Model& m) {
  if (const auto* w = std::get_if<lttail::WeibullLikeModel>(&m)) return *w;
  return std::get<lttail::GammaWeibullModel>(m).as_weibull_like();
}

}  // namespace

extern "C" {

const char* lt_last_error_message(void) { return g_last_error.c_str(); }

lt_status lt_model_weibull_like(double alpha, double beta, double c, double d,
                                lt_model** out) {
  if (lt_status s = require(out != nullptr, "out must not be null")) return s;
  return guarded([&] {
    *out = new lt_model{lttail::Model{lttail::WeibullLikeModel(alpha, beta, c, d)}};
  });
}

lt_status lt_model_gamma_weibull(double k, double beta, double gamma_shape,
                                 lt_model** out) {
  if (lt_status s = require(out != nullptr, "out must not be null")) return s;
  return guarded([&] {
    *out = new lt_model{lttail::Model{lttail::GammaWeibullModel(k, beta, gamma_shape)}};
  });
}

void lt_model_free(lt_model* m) { delete m; }

lt_status lt_log_tail(const lt_model* m, double x, double* out) {
  if (lt_status s = require(m && out, "null argument")) return s;
  return guarded([&] { *out = lttail::log_tail(m->m, x); });
}

lt_status lt_log_density(const lt_model* m, double x, double* out) {
  if (lt_status s = require(m && out, "null argument")) return s;
  return guarded([&] { *out = lttail::log_density(m->m, x); });
}

lt_status lt_hazard_rate(const lt_model* m, double x, double* out) {
  if (lt_status s = require(m && out, "null argument")) return s;
  return guarded([&] { *out = lttail::hazard_rate(m->m, x); });
}

lt_status lt_has_exact_law(const lt_model* m, int* out) {
  if (lt_status s = require(m && out, "null argument")) return s;
  return guarded([&] { *out = lttail::has_exact_law(m->m) ? 1 : 0; });
}

lt_status lt_nfold_asymptote(const lt_model* m, int n, lt_asymptote* out) {
  if (lt_status s = require(m && out, "null argument")) return s;
  return guarded([&] {
    const lttail::TailAsymptote a = lttail::nfold_asymptote(density_form(m->m), n);
    *out = {a.log_k, a.p, a.c, a.beta};
  });
}

lt_status lt_pair_asymptote(const lt_model* m1, const lt_model* m2,
                            lt_asymptote* out) {
  if (lt_status s = require(m1 && m2 && out, "null argument")) return s;
  return guarded([&] {
    const lttail::TailAsymptote a =
        lttail::pair_tail_asymptote(density_form(m1->m), density_form(m2->m));
    *out = {a.log_k, a.p, a.c, a.beta};
  });
}

double lt_asymptote_log_eval(const lt_asymptote* a, double x) {
  if (!a || !(x > 0.0)) return -HUGE_VAL;
  const lttail::TailAsymptote t{a->log_k, a->p, a->c, a->beta};
  return t.log_eval(x);
}

lt_status lt_bkr_split_power(double p1, double p2, double x, lt_split* out) {
  if (lt_status s = require(out != nullptr, "out must not be null")) return s;
  return guarded([&] {
    if (!(p1 > 1.0) || !(p2 > 1.0))
      throw lttail::Error(lttail::ErrorCode::domain,
                          "bkr_split_power: exponents must be > 1");
    auto power_model = [](double p) {
      return lttail::BkrModel(
          [p](double z) { return std::pow(z, p); },
          [p](double z) { return p * std::pow(z, p - 1.0); },
          [p](double z) { return p * (p - 1.0) * std::pow(z, p - 2.0); },
          [](double) { return 1.0; }, 0.0);
    };
    const lttail::SplitSolution sol =
        lttail::bkr_split(power_model(p1), power_model(p2), x);
    *out = {sol.q1, sol.q2, sol.lambda_at_split, sol.psi_sum};
  });
}

lt_status lt_bkr_split_models(const lt_model* m1, const lt_model* m2, double x,
                              lt_split* out) {
  if (lt_status s = require(m1 && m2 && out, "null argument")) return s;
  return guarded([&] {
    const lttail::SplitSolution sol = lttail::bkr_split(
        lttail::to_bkr(density_form(m1->m)), lttail::to_bkr(density_form(m2->m)), x);
    *out = {sol.q1, sol.q2, sol.lambda_at_split, sol.psi_sum};
  });
}

lt_status lt_sum_tail_bounds(const double* gammas, int n, double k, double beta,
                             double x, double* log_lower, double* log_upper) {
  if (lt_status s = require(gammas && n > 0 && log_lower && log_upper, "null argument"))
    return s;
  return guarded([&] {
    const lttail::GammaBoundResult b = lttail::sum_tail_bounds(
        std::vector<double>(gammas, gammas + n), k, beta, x);
    *log_lower = b.log_lower;
    *log_upper = b.log_upper;
  });
}

lt_status lt_estimate(const lt_model* m, int n, double x, lt_est_method method,
                      int64_t n_samples, uint64_t seed, int n_chunks,
                      lt_estimate_result* out) {
  if (lt_status s = require(m && out, "null argument")) return s;
  return guarded([&] {
    lttail::RunConfig cfg;
    cfg.n_samples = n_samples;
    cfg.seed = seed;
    cfg.n_chunks = n_chunks;
    lttail::EstimateResult r;
    switch (method) {
      case LT_EST_CRUDE:
        r = lttail::crude_mc(m->m, n, x, cfg);
        break;
      case LT_EST_IS:
        r = lttail::is_tilted(m->m, n, x, cfg);
        break;
      case LT_EST_COND:
        r = lttail::cond_mc(m->m, n, x, cfg);
        break;
      case LT_EST_AK:
        r = lttail::ak_estimator(m->m, n, x, cfg);
        break;
      default:
        throw lttail::Error(lttail::ErrorCode::invalid_argument,
                            "lt_estimate: unknown method");
    }
    *out = {r.estimate, r.std_error,  r.rel_error, r.second_moment,
            r.ci95_low, r.ci95_high, r.n_samples};
  });
}

lt_status lt_compound_esscher(const lt_model* severity, double mu, double x,
                              double* log_tail, double* theta, double* ell) {
  if (lt_status s = require(severity && log_tail, "null argument")) return s;
  return guarded([&] {
    const lttail::EsscherResult r =
        lttail::esscher_tail(lttail::CompoundModel(mu, severity->m), x);
    *log_tail = r.log_tail;
    if (theta) *theta = r.theta;
    if (ell) *ell = r.ell;
  });
}

lt_status lt_compound_log_asym(const lt_model* severity, double mu, double x,
                               double* out) {
  if (lt_status s = require(severity && out, "null argument")) return s;
  return guarded([&] {
    *out = lttail::log_asym_tail(lttail::CompoundModel(mu, severity->m), x);
  });
}

lt_status lt_saddlepoint_scale(double mu, double beta, double x, double* y,
                               double* theta, double* residual) {
  if (lt_status s = require(y != nullptr, "y must not be null")) return s;
  return guarded([&] {
    const lttail::SaddlepointSolution sol = lttail::saddlepoint_scale(mu, beta, x);
    *y = sol.y;
    if (theta) *theta = sol.theta;
    if (residual) *residual = sol.residual;
  });
}

double lt_lambert_w0(double x) { return lttail::lambert_w0(x); }

lt_status lt_gamma_q(double a, double x, double* out) {
  if (lt_status s = require(out != nullptr, "out must not be null")) return s;
  return guarded([&] { *out = lttail::gamma_q(a, x); });
}

lt_status lt_oracle_conv_tail(const lt_model* m1, const lt_model* m2, double x,
                              double rel_tol, double* log_tail) {
  if (lt_status s = require(m1 && m2 && log_tail, "null argument")) return s;
  return guarded([&] {
    lttail::QuadratureSpec spec;
    if (rel_tol > 0.0) spec.rel_tol = rel_tol;
    *log_tail = lttail::conv_tail_pair(m1->m, m2->m, x, spec);
  });
}

lt_status lt_oracle_nfold_tail(const lt_model* m, int n, double x,
                               double rel_tol, double* log_tail) {
  if (lt_status s = require(m && log_tail, "null argument")) return s;
  return guarded([&] {
    lttail::QuadratureSpec spec;
    if (rel_tol > 0.0) spec.rel_tol = rel_tol;
    *log_tail = lttail::nfold_tail_small(m->m, n, x, spec);
  });
}

}  // extern "C"
