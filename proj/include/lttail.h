/* C interface to the light-tailed sum-tail library.
 *
 * All functions that can fail return an lt_status; on failure the output
 * parameters are untouched and lt_last_error_message() describes the error
 * (thread-local). Handles must be released with lt_model_free.
 */
#ifndef LTTAIL_H
#define LTTAIL_H

#include <stdint.h>

#ifdef __cplusplus
extern "C" {
#endif

typedef struct lt_model lt_model;

typedef enum {
  LT_OK = 0,
  LT_EINVAL = 1,       /* bad construction parameters */
  LT_EDOMAIN = 2,      /* input outside the operation's domain */
  LT_EACCURACY = 3,    /* numerical tolerance not met */
  LT_EUNSUPPORTED = 4, /* operation not defined for this model */
  LT_ENOSOLUTION = 5   /* bracketing or solver failure */
} lt_status;

const char* lt_last_error_message(void);

/* -- models ------------------------------------------------------------- */

/* density ~ d x^{alpha+beta-1} e^{-c x^beta}, beta > 1 */
lt_status lt_model_weibull_like(double alpha, double beta, double c, double d,
                                lt_model** out);
/* density beta k^{g/beta} x^{g-1} e^{-k x^beta} / Gamma(g/beta), beta >= 1 */
lt_status lt_model_gamma_weibull(double k, double beta, double gamma_shape,
                                 lt_model** out);
void lt_model_free(lt_model* m);

lt_status lt_log_tail(const lt_model* m, double x, double* out);
lt_status lt_log_density(const lt_model* m, double x, double* out);
lt_status lt_hazard_rate(const lt_model* m, double x, double* out);
/* 1 when the tail/density formulas are exact laws (samplable), else 0 */
lt_status lt_has_exact_law(const lt_model* m, int* out);

/* -- convolution asymptotics -------------------------------------------- */

/* tail ~ exp(log_k) x^p e^{-c x^beta} */
typedef struct {
  double log_k;
  double p;
  double c;
  double beta;
} lt_asymptote;

lt_status lt_nfold_asymptote(const lt_model* m, int n, lt_asymptote* out);
lt_status lt_pair_asymptote(const lt_model* m1, const lt_model* m2,
                            lt_asymptote* out);
double lt_asymptote_log_eval(const lt_asymptote* a, double x);

typedef struct {
  double q1;
  double q2;
  double lambda_at_split;
  double psi_sum;
} lt_split;

/* split of x for exponents psi_i(z) = z^{p_i}, p_i > 1 */
lt_status lt_bkr_split_power(double p1, double p2, double x, lt_split* out);
lt_status lt_bkr_split_models(const lt_model* m1, const lt_model* m2, double x,
                              lt_split* out);

/* -- incomplete-gamma bounds -------------------------------------------- */

/* log bounds on P(sum of GammaWeibull(k, beta, gammas[i]) > x) */
lt_status lt_sum_tail_bounds(const double* gammas, int n, double k, double beta,
                             double x, double* log_lower, double* log_upper);

/* -- Monte Carlo estimators --------------------------------------------- */

typedef enum {
  LT_EST_CRUDE = 0,
  LT_EST_IS = 1,
  LT_EST_COND = 2,
  LT_EST_AK = 3
} lt_est_method;

typedef struct {
  double estimate;
  double std_error;
  double rel_error;
  double second_moment;
  double ci95_low;
  double ci95_high;
  int64_t n_samples;
} lt_estimate_result;

lt_status lt_estimate(const lt_model* m, int n, double x, lt_est_method method,
                      int64_t n_samples, uint64_t seed, int n_chunks,
                      lt_estimate_result* out);

/* -- compound Poisson sums ---------------------------------------------- */

lt_status lt_compound_esscher(const lt_model* severity, double mu, double x,
                              double* log_tail, double* theta, double* ell);
lt_status lt_compound_log_asym(const lt_model* severity, double mu, double x,
                               double* out);
lt_status lt_saddlepoint_scale(double mu, double beta, double x, double* y,
                               double* theta, double* residual);

/* -- special functions and oracles -------------------------------------- */

double lt_lambert_w0(double x);
/* regularized upper incomplete gamma Q(a, x) */
lt_status lt_gamma_q(double a, double x, double* out);

lt_status lt_oracle_conv_tail(const lt_model* m1, const lt_model* m2, double x,
                              double rel_tol, double* log_tail);
lt_status lt_oracle_nfold_tail(const lt_model* m, int n, double x,
                               double rel_tol, double* log_tail);

#ifdef __cplusplus
}
#endif

#endif
