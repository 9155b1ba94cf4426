#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <algorithm>
#include <cmath>
#include <vector>

#include "doctest.h"
#include "lttail/common.hpp"
#include "lttail/distributions.hpp"
#include "lttail/special.hpp"
#include "lttail/tilting.hpp"

using namespace lttail;

namespace {
const Model kVanilla2{WeibullLikeModel(0.0, 2.0, 1.0, 2.0)};
}

TEST_CASE("numeric mgf closed forms") {
  // exponential(1): E e^{theta X} = 1/(1-theta)
  const Model expo{GammaWeibullModel(1.0, 1.0, 1.0)};
  CHECK(mgf_numeric(expo, 0.5).log_mgf == doctest::Approx(std::log(2.0)).epsilon(1e-8));
  CHECK(mgf_numeric(kVanilla2, 0.0).log_mgf == doctest::Approx(0.0).epsilon(1e-9));
  // E[X e^{theta X}] for exponential(1) at theta=0.5 is 1/(1-theta)^2 = 4
  CHECK(mgf_numeric(expo, 0.5).log_d1 == doctest::Approx(std::log(4.0)).epsilon(1e-8));
  CHECK_THROWS_AS(mgf_numeric(expo, 1.5), Error);  // divergent
  CHECK_THROWS_AS(mgf_numeric(Model{WeibullLikeModel(1.0, 2.0, 1.0, 2.0)}, 1.0), Error);
}

TEST_CASE("numeric mgf derivative consistency") {
  const double theta = 6.0, h = 1e-5;
  const MgfResult m = mgf_numeric(kVanilla2, theta, 1e-12);
  const double fd = (mgf_numeric(kVanilla2, theta + h, 1e-12).log_mgf -
                     mgf_numeric(kVanilla2, theta - h, 1e-12).log_mgf) /
                    (2.0 * h);
  CHECK(fd == doctest::Approx(std::exp(m.log_d1 - m.log_mgf)).epsilon(1e-6));
}

TEST_CASE("asymptotic mgf against the exact integral") {
  CHECK_THROWS_AS(mgf_asym(kVanilla2, -1.0), Error);
  // relative agreement on log scale improves with theta
  for (double theta : {10.0, 20.0}) {
    const double asym = mgf_asym(kVanilla2, theta);
    const double exact = mgf_numeric(kVanilla2, theta).log_mgf;
    CHECK(asym == doctest::Approx(exact).epsilon(theta >= 20.0 ? 0.02 : 0.05));
  }
  // monotone in theta
  double prev = mgf_asym(kVanilla2, 2.0);
  for (double theta = 3.0; theta < 12.0; theta += 1.0) {
    const double cur = mgf_asym(kVanilla2, theta);
    CHECK(cur > prev);
    prev = cur;
  }
  // ratio numeric/asym -> 1 along a theta grid for beta = 1.5
  const Model m15{WeibullLikeModel(0.0, 1.5, 1.0, 1.5)};
  std::vector<double> gap;
  for (double theta : {2.0, 4.0, 8.0})
    gap.push_back(std::abs(mgf_numeric(m15, theta).log_mgf - mgf_asym(m15, theta)));
  CHECK(gap[1] < gap[0]);
  CHECK(gap[2] < gap[1]);
}

TEST_CASE("tilted moment asymptotics") {
  CHECK(tilted_moment_asym(kVanilla2, 7.0, 0) == mgf_asym(kVanilla2, 7.0));
  // beta=2: lambda(y)=2y, so theta=20 tilts the mean to y=10
  CHECK(tilted_moment_asym(kVanilla2, 20.0, 1) - mgf_asym(kVanilla2, 20.0) ==
        doctest::Approx(std::log(10.0)).epsilon(1e-12));
  CHECK_THROWS_AS(tilted_moment_asym(kVanilla2, 20.0, -1), Error);
}

TEST_CASE("tilted sampler construction") {
  // x=12, n=2: theta = lambda(6) = 12; the proposal keeps the tilted mean 6
  // with 3x the tilted variance, so a = 36*2/3 = 24, b = 6*2/3 = 4
  const TiltedSampler s = make_tilted_sampler(kVanilla2, 12.0, 2);
  CHECK(s.theta == doctest::Approx(12.0));
  CHECK(s.proposal_a == doctest::Approx(24.0));
  CHECK(s.proposal_b == doctest::Approx(4.0));
  CHECK(s.proposal_a / s.proposal_b == doctest::Approx(6.0));
  CHECK_THROWS_AS(make_tilted_sampler(Model{WeibullLikeModel(1.0, 2.0, 1.0, 2.0)}, 12.0, 2),
                  Error);
}

TEST_CASE("tilted draws match the exact tilted mean and variance") {
  const double x = 12.0;
  const int n = 2;
  TiltedSampler s = make_tilted_sampler(kVanilla2, x, n);
  const MgfResult mg = mgf_numeric(kVanilla2, s.theta, 1e-12);
  const double mean_exact = std::exp(mg.log_d1 - mg.log_mgf);
  const double var_exact =
      std::exp(mg.log_d2 - mg.log_mgf) - mean_exact * mean_exact;
  SplitMix64 rng(5);
  const int draws = 100000;
  double sum = 0.0, sum2 = 0.0;
  for (int i = 0; i < draws; ++i) {
    const double v = sample_tilted(s, rng);
    sum += v;
    sum2 += v * v;
  }
  const double mean = sum / draws;
  const double var = sum2 / draws - mean * mean;
  CHECK(std::abs(mean - mean_exact) < 3.0 * std::sqrt(var_exact / draws));
  CHECK(var == doctest::Approx(var_exact).epsilon(0.05));
  // asymptotic variance 1/lambda'(x/n) = 1/2 at beta = 2
  CHECK(var == doctest::Approx(0.5).epsilon(0.05));
  CHECK(s.acceptance_rate() > 0.3);
}

namespace {

// draws from the tilted law by grid inversion of the normalized CDF
std::vector<double> inverse_cdf_draws(const Model& m, double theta, double center,
                                      double sd, int count, std::uint64_t seed) {
  const double lo = std::max(1e-9, center - 12.0 * sd);
  const double hi = center + 12.0 * sd;
  const int grid = 20001;
  std::vector<double> y(grid), cdf(grid, 0.0);
  std::vector<double> g(grid);
  double gmax = -1e300;
  for (int i = 0; i < grid; ++i) {
    y[i] = lo + (hi - lo) * i / (grid - 1);
    g[i] = theta * y[i] + log_density(m, y[i]);
    gmax = std::max(gmax, g[i]);
  }
  for (int i = 1; i < grid; ++i)
    cdf[i] = cdf[i - 1] + 0.5 * (std::exp(g[i] - gmax) + std::exp(g[i - 1] - gmax));
  for (double& v : cdf) v /= cdf[grid - 1];
  SplitMix64 rng(seed);
  std::vector<double> out(count);
  for (double& v : out) {
    const double u = rng.next_double();
    const auto it = std::lower_bound(cdf.begin(), cdf.end(), u);
    const int i = std::max<int>(1, static_cast<int>(it - cdf.begin()));
    const double t = (u - cdf[i - 1]) / std::max(1e-300, cdf[i] - cdf[i - 1]);
    v = y[i - 1] + t * (y[i] - y[i - 1]);
  }
  return out;
}

double two_sample_ks(std::vector<double> a, std::vector<double> b) {
  std::sort(a.begin(), a.end());
  std::sort(b.begin(), b.end());
  double d = 0.0;
  std::size_t i = 0, j = 0;
  while (i < a.size() && j < b.size()) {
    if (a[i] <= b[j])
      ++i;
    else
      ++j;
    d = std::max(d, std::abs(static_cast<double>(i) / a.size() -
                             static_cast<double>(j) / b.size()));
  }
  return d;
}

}  // namespace

TEST_CASE("acceptance-rejection output distribution (two-sample KS)") {
  struct Case {
    Model m;
    double x;
    int n;
  };
  const std::vector<Case> cases = {{kVanilla2, 12.0, 2},
                                   {Model{WeibullLikeModel(0.0, 1.5, 1.0, 1.5)}, 10.0, 1},
                                   {Model{GammaWeibullModel(1.0, 3.0, 3.0)}, 9.0, 3}};
  const int count = 10000;
  const double crit = 1.9495 * std::sqrt(2.0 / count);  // 0.1% level, equal sizes
  int idx = 0;
  for (const auto& cs : cases) {
    TiltedSampler s = make_tilted_sampler(cs.m, cs.x, cs.n);
    SplitMix64 rng(100 + idx);
    std::vector<double> a(count);
    for (double& v : a) v = sample_tilted(s, rng);
    const double center = cs.x / cs.n;
    const double sd = 1.0 / std::sqrt(model_lambda_prime(cs.m, center));
    const std::vector<double> b =
        inverse_cdf_draws(cs.m, s.theta, center, sd, count, 900 + idx);
    CHECK(two_sample_ks(a, b) < crit);
    ++idx;
  }
}

TEST_CASE("envelope never violated over many proposals") {
  TiltedSampler s = make_tilted_sampler(kVanilla2, 20.0, 2);
  SplitMix64 rng(77);
  while (s.propose_count < 1000000) (void)sample_tilted(s, rng);  // throws on violation
  CHECK(s.propose_count >= 1000000);
}

TEST_CASE("sampler determinism") {
  TiltedSampler s1 = make_tilted_sampler(kVanilla2, 12.0, 2);
  TiltedSampler s2 = make_tilted_sampler(kVanilla2, 12.0, 2);
  SplitMix64 r1(9), r2(9);
  for (int i = 0; i < 200; ++i) CHECK(sample_tilted(s1, r1) == sample_tilted(s2, r2));
}

TEST_CASE("acceptance rate rises with the tilt target") {
  for (double beta : {1.5, 2.0, 3.0}) {
    const Model m{WeibullLikeModel(0.0, beta, 1.0, beta)};
    double prev = 0.0;
    for (double x : {10.0, 20.0, 40.0, 80.0}) {
      TiltedSampler s = make_tilted_sampler(m, x, 2);
      SplitMix64 rng(31);
      while (s.accept_count < 10000) (void)sample_tilted(s, rng);
      // monotone up to MC noise; the rate plateaus at its Gaussian limit
      CHECK(s.acceptance_rate() >= prev - 0.01);
      prev = s.acceptance_rate();
    }
  }
}

TEST_CASE("proposal tuning") {
  const TiltedSampler s = make_tilted_sampler(kVanilla2, 10.0, 2);
  const TiltedSampler t = tune_proposal(s);
  CHECK(t.envelope_log_m <= s.envelope_log_m + 1e-12);
  // tuned sd stays on the scale of 1/sqrt(lambda'(x/n)) but above the
  // exactly matched value, which is not certifiable
  const double sd = std::sqrt(t.proposal_a) / t.proposal_b;
  CHECK(sd >= 1.0 / std::sqrt(2.0) * 0.9);
  CHECK(sd <= 3.0 / std::sqrt(2.0));
  // tuning an already-tuned sampler is (nearly) a fixed point
  const TiltedSampler t2 = tune_proposal(t);
  CHECK(t2.envelope_log_m <= t.envelope_log_m + 1e-9);
  // draws from the tuned sampler still follow the tilted law
  TiltedSampler tt = t;
  const MgfResult mg = mgf_numeric(kVanilla2, tt.theta, 1e-12);
  const double mean_exact = std::exp(mg.log_d1 - mg.log_mgf);
  SplitMix64 rng(123);
  double sum = 0.0;
  const int draws = 50000;
  for (int i = 0; i < draws; ++i) sum += sample_tilted(tt, rng);
  CHECK(sum / draws == doctest::Approx(mean_exact).epsilon(0.01));
}
