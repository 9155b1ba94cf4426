#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <cmath>

#include "doctest.h"
#include "lttail/common.hpp"
#include "lttail/convolve.hpp"
#include "lttail/oracle.hpp"
#include "lttail/special.hpp"

using namespace lttail;

namespace {
const Model kExpo{GammaWeibullModel(1.0, 1.0, 1.0)};
const Model kVanilla2{GammaWeibullModel(1.0, 2.0, 2.0)};  // vanilla Weibull beta=2
}  // namespace

TEST_CASE("quadrature spec validation") {
  QuadratureSpec s;
  CHECK_NOTHROW(s.validate());
  s.rel_tol = 1e-2;
  CHECK_THROWS_AS(s.validate(), Error);
  s.rel_tol = 1e-8;
  s.max_subdivisions = 32;
  CHECK_THROWS_AS(s.validate(), Error);
}

TEST_CASE("pair oracle closed forms") {
  // Erlang-2 tail (1+x)e^{-x}
  CHECK(conv_tail_pair(kExpo, kExpo, 10.0) ==
        doctest::Approx(std::log(11.0) - 10.0).epsilon(1e-8));
  // Gamma(2,1) + Gamma(3,1) = Gamma(5,1)
  const Model g2{GammaWeibullModel(1.0, 1.0, 2.0)};
  const Model g3{GammaWeibullModel(1.0, 1.0, 3.0)};
  CHECK(conv_tail_pair(g2, g3, 30.0) ==
        doctest::Approx(log_gamma_q(5.0, 30.0)).epsilon(1e-8));
}

TEST_CASE("pair oracle vs the theorem asymptote at beta=2") {
  const TailAsymptote a =
      pair_tail_asymptote(WeibullLikeModel(0.0, 2.0, 1.0, 2.0),
                          WeibullLikeModel(0.0, 2.0, 1.0, 2.0));
  const double lo = conv_tail_pair(kVanilla2, kVanilla2, 8.0);
  CHECK(std::isfinite(lo));
  const double ratio = std::exp(a.log_eval(8.0) - lo);
  CHECK(ratio > 0.9);
  CHECK(ratio < 1.1);
}

TEST_CASE("oracle self-consistency properties") {
  SUBCASE("symmetry") {
    const Model m1{GammaWeibullModel(1.0, 2.0, 2.0)};
    const Model m2{GammaWeibullModel(2.0, 2.0, 3.0)};
    const double ab = conv_tail_pair(m1, m2, 5.0);
    const double ba = conv_tail_pair(m2, m1, 5.0);
    CHECK(std::abs(ab - ba) < 2e-8 * std::abs(ab) + 1e-9);
  }
  SUBCASE("self-convergence under tolerance halving") {
    QuadratureSpec tight;
    tight.rel_tol = 5e-9;
    const double coarse = conv_tail_pair(kVanilla2, kVanilla2, 6.0);
    const double fine = conv_tail_pair(kVanilla2, kVanilla2, 6.0, tight);
    CHECK(std::abs(coarse - fine) < 1e-7);
  }
  SUBCASE("dominance over each single-term tail") {
    const Model m1{GammaWeibullModel(1.0, 2.0, 2.0)};
    const Model m2{GammaWeibullModel(2.0, 2.0, 5.0)};
    for (double x : {1.0, 3.0, 6.0}) {
      const double conv = conv_tail_pair(m1, m2, x);
      CHECK(conv >= log_tail(m1, x));
      CHECK(conv >= log_tail(m2, x));
    }
  }
}

TEST_CASE("n-fold oracle") {
  SUBCASE("n=2 equals the pair oracle") {
    CHECK(nfold_tail_small(kVanilla2, 2, 5.0) ==
          doctest::Approx(conv_tail_pair(kVanilla2, kVanilla2, 5.0)).epsilon(1e-8));
  }
  SUBCASE("Erlang-3 closed form") {
    const double x = 15.0;
    const double exact = std::log(1.0 + x + x * x / 2.0) - x;
    CHECK(nfold_tail_small(kExpo, 3, x) == doctest::Approx(exact).epsilon(1e-6));
  }
  SUBCASE("Erlang-4 closed form") {
    const double x = 12.0;
    const double exact = std::log(1.0 + x + x * x / 2.0 + x * x * x / 6.0) - x;
    CHECK(nfold_tail_small(kExpo, 4, x) == doctest::Approx(exact).epsilon(1e-5));
  }
  SUBCASE("n=3 beta=2 sits inside the asymptotic band") {
    const double lo = nfold_tail_small(kVanilla2, 3, 9.0);
    const TailAsymptote a = nfold_asymptote(WeibullLikeModel(0.0, 2.0, 1.0, 2.0), 3);
    const double ratio = std::exp(a.log_eval(9.0) - lo);
    CHECK(ratio > 0.8);
    CHECK(ratio < 1.2);
  }
  SUBCASE("domain checks") {
    CHECK_THROWS_AS(nfold_tail_small(kExpo, 5, 3.0), Error);
    CHECK_THROWS_AS(nfold_tail_small(kExpo, 1, 3.0), Error);
    CHECK_THROWS_AS(
        conv_tail_pair(Model{WeibullLikeModel(1.0, 2.0, 1.0, 2.0)}, kExpo, 3.0),
        Error);
  }
}

TEST_CASE("tiny and zero x") {
  CHECK(conv_tail_pair(kExpo, kExpo, 0.0) == 0.0);
  CHECK(conv_tail_pair(kExpo, kExpo, 1e-3) == doctest::Approx(0.0).epsilon(1e-5));
}
