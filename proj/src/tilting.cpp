#include "lttail/tilting.hpp"

#include <cmath>
#include <limits>

#include "lttail/common.hpp"
#include "lttail/special.hpp"

namespace lttail {

namespace {

WeibullLikeModel density_form(const Model& m) {
  if (const auto* w = std::get_if<WeibullLikeModel>(&m)) return *w;
  return std::get<GammaWeibullModel>(m).as_weibull_like();
}

double log_gamma_proposal(double y, double a, double b) {
  return a * std::log(b) - std::lgamma(a) + (a - 1.0) * std::log(y) - b * y;
}

// log of the unnormalized tilted density over the log of the proposal
double log_ratio(const Model& m, double theta, double a, double b, double y) {
  return theta * y + log_density(m, y) - log_gamma_proposal(y, a, b);
}

// The log ratio is not globally bounded: when the proposal shape a exceeds
// the density's power of y the ratio diverges as y -> 0, with a dip between
// that divergence and the bulk maximum near the proposal mean. The envelope
// is certified over [dip, infinity); certification fails unless the proposal
// mass left of where the ratio re-crosses the envelope is below kLeakTol.
// A certified sampler can still trip the runtime ratio check, but only on a
// set of proposal mass below kLeakTol; that is a hard accuracy error.
constexpr double kLeakTol = 1e-6;

double envelope_log_max(const Model& m, double theta, double a, double b,
                        bool* certified) {
  auto r = [&](double y) { return log_ratio(m, theta, a, b, y); };
  const double mu = a / b;
  // walk left from the proposal mean: first climb over the bulk maximum if
  // the mean sits to its right, then descend to the dip
  double dip = mu, vprev = r(mu);
  for (int k = 0; k < 256; ++k) {
    const double y = dip * 0.97;
    const double v = r(y);
    if (v < vprev) break;
    dip = y;
    vprev = v;
  }
  for (int k = 0; k < 256; ++k) {
    const double y = dip * 0.97;
    const double v = r(y);
    if (v > vprev) break;
    dip = y;
    vprev = v;
  }
  double arg = 0.0;
  double hi = 4.0 * mu;
  double best = golden_max(r, dip, hi, 1e-10, &arg);
  if (hi - arg < 0.01 * (hi - dip)) {
    hi *= 8.0;
    best = golden_max(r, dip, hi, 1e-10, &arg);
  }
  const double log_m = best + std::log(1.01);
  // proposal mass in the left region where the ratio exceeds the envelope
  double y = dip;
  bool crossed = false;
  while (y > 1e-14 * mu) {
    y *= 0.8;
    if (r(y) > log_m) {
      crossed = true;
      break;
    }
  }
  *certified = !crossed || gamma_p(a, b * (y / 0.8)) < kLeakTol;
  return log_m;
}

}  // namespace

double mgf_asym(const Model& m, double theta) {
  if (!(theta > 0.0)) throw Error(ErrorCode::domain, "mgf_asym: theta must be > 0");
  const WeibullLikeModel w = density_form(m);
  const double y = model_lambda_inv(m, theta);
  const double lam_prime = w.beta * (w.beta - 1.0) * w.c * std::pow(y, w.beta - 2.0);
  const double log_gamma_y = std::log(w.d) + (w.alpha + w.beta - 1.0) * std::log(y);
  return 0.5 * (std::log(2.0 * M_PI) - std::log(lam_prime)) + log_gamma_y +
         (w.beta - 1.0) * w.c * std::pow(y, w.beta);
}

double tilted_moment_asym(const Model& m, double theta, int k) {
  if (k < 0) throw Error(ErrorCode::domain, "tilted_moment_asym: k must be >= 0");
  return k * std::log(model_lambda_inv(m, theta)) + mgf_asym(m, theta);
}

MgfResult mgf_numeric(const Model& m, double theta, double tol) {
  if (!has_exact_law(m))
    throw Error(ErrorCode::unsupported, "mgf_numeric requires an exact density");
  const double beta = exponent_beta(m);
  if (beta == 1.0 && theta >= exponent_rate(m))
    throw Error(ErrorCode::domain, "mgf_numeric: m.g.f. diverges for theta >= rate");

  auto integral = [&](int k) {
    auto g = [&](double z) {
      return theta * z + log_density(m, z) + (k > 0 ? k * std::log(z) : 0.0);
    };
    // bracket the peak by doubling
    double bhi = 1.0;
    while (bhi < 1e9 && g(2.0 * bhi) > g(bhi)) bhi *= 2.0;
    bhi *= 2.0;
    double zmax = 0.0;
    double gmax = golden_max(g, 1e-12, bhi, 1e-12, &zmax);
    // clip where the integrand has fallen 80 e-folds
    double hi = zmax, step = std::max(zmax, 1.0);
    while (g(hi) > gmax - 80.0) {
      hi += step;
      step *= 1.5;
    }
    double lo = zmax;
    while (lo > 1e-12 && g(lo) > gmax - 80.0) lo *= 0.5;
    const double left = log_adaptive_simpson(g, lo, zmax, tol);
    const double right = log_adaptive_simpson(g, zmax, hi, tol);
    return log_sum_exp(left, right);
  };

  MgfResult r{};
  r.log_mgf = integral(0);
  r.log_d1 = integral(1);
  r.log_d2 = integral(2);
  return r;
}

TiltedSampler make_tilted_sampler(const Model& m, double x, int n) {
  if (!has_exact_law(m))
    throw Error(ErrorCode::unsupported, "tilted sampler requires an exact density");
  if (!(x > 0.0) || n < 1)
    throw Error(ErrorCode::domain, "make_tilted_sampler: need x > 0, n >= 1");
  const double xn = x / n;
  const double theta = model_lambda(m, xn);
  const double lp = model_lambda_prime(m, xn);
  // Gamma proposal with the tilted mean and 3x the tilted variance; the
  // exactly moment-matched proposal has no usable envelope (the ratio
  // re-crosses its bulk maximum within a few proposal sd of the mean).
  TiltedSampler s{m, theta, xn * xn * lp / 3.0, xn * lp / 3.0, 0.0};
  bool certified = false;
  s.envelope_log_m =
      envelope_log_max(m, theta, s.proposal_a, s.proposal_b, &certified);
  if (!certified)
    throw Error(ErrorCode::no_solution,
                "tilted sampler: envelope certification failed");
  return s;
}

double sample_tilted(TiltedSampler& s, SplitMix64& rng) {
  for (;;) {
    const double y = rng.next_gamma(s.proposal_a) / s.proposal_b;
    ++s.propose_count;
    const double r = log_ratio(s.model, s.theta, s.proposal_a, s.proposal_b, y);
    if (r > s.envelope_log_m)
      throw Error(ErrorCode::accuracy,
                  "tilted sampler: observed ratio exceeds the certified envelope");
    if (std::log(rng.next_double()) <= r - s.envelope_log_m) {
      ++s.accept_count;
      return y;
    }
  }
}

TiltedSampler tune_proposal(const TiltedSampler& s) {
  const double mu0 = s.proposal_a / s.proposal_b;
  const double sd0 = std::sqrt(s.proposal_a) / s.proposal_b;
  auto envelope_of = [&](double mu, double sd) {
    const double a = mu * mu / (sd * sd);
    const double b = mu / (sd * sd);
    bool certified = false;
    const double log_m = envelope_log_max(s.model, s.theta, a, b, &certified);
    // uncertifiable candidates (typically under-dispersed) are unusable
    return certified ? log_m : std::numeric_limits<double>::infinity();
  };
  double mu = mu0, sd = sd0;
  double best = envelope_of(mu, sd);
  for (int round = 0; round < 3; ++round) {
    double arg = 0.0;
    golden_max([&](double v) { return -envelope_of(v, sd); }, 0.6 * mu, 1.4 * mu,
               1e-8, &arg);
    if (envelope_of(arg, sd) < best) {
      mu = arg;
      best = envelope_of(mu, sd);
    }
    golden_max([&](double v) { return -envelope_of(mu, v); }, 0.6 * sd, 1.4 * sd,
               1e-8, &arg);
    if (envelope_of(mu, arg) < best) {
      sd = arg;
      best = envelope_of(mu, sd);
    }
  }
  const double initial = envelope_of(mu0, sd0);
  if (!(best < initial - 1e-12)) return s;  // documented no-op on failure
  TiltedSampler t{s.model, s.theta, mu * mu / (sd * sd), mu / (sd * sd), 0.0};
  t.envelope_log_m = best;  // envelope_of already carries the 1% headroom
  return t;
}

}  // namespace lttail
