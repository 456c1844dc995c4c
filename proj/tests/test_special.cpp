#include <catch2/catch_amalgamated.hpp>

#include <cmath>

#include "lqg/special.hpp"

using namespace lqg;

TEST_CASE("incomplete gamma against closed forms", "[special]") {
  // P(1, x) = 1 - e^{-x}
  for (double x : {0.1, 1.0, 3.5}) {
    REQUIRE(gamma_p(1.0, x) == Catch::Approx(1.0 - std::exp(-x)).margin(1e-12));
  }
  // P(1/2, x) = erf(sqrt(x))
  for (double x : {0.2, 1.0, 4.0}) {
    REQUIRE(gamma_p(0.5, x) == Catch::Approx(std::erf(std::sqrt(x))).margin(1e-12));
  }
  // P(2, x) = 1 - (1+x) e^{-x}
  REQUIRE(gamma_p(2.0, 2.0) ==
          Catch::Approx(1.0 - 3.0 * std::exp(-2.0)).margin(1e-12));
}

TEST_CASE("kolmogorov distribution: known values", "[special]") {
  // Q(0.8276...) ~= 0.5; the 1% point is 1.6276
  REQUIRE(kolmogorov_q(1.6276) == Catch::Approx(0.01).margin(2e-4));
  REQUIRE(kolmogorov_q(1.3581) == Catch::Approx(0.05).margin(5e-4));
  REQUIRE(ks_critical(0.01, 10000.0) == Catch::Approx(1.6276 / 100.0).margin(2e-4));
}

TEST_CASE("mean/se and compensated sums", "[special]") {
  std::vector<double> v = {1.0, 2.0, 3.0, 4.0};
  const auto r = mean_se(v);
  REQUIRE(r.mean == Catch::Approx(2.5));
  REQUIRE(r.se == Catch::Approx(std::sqrt(5.0 / 3.0 / 4.0)));
  // compensated summation keeps tiny terms
  std::vector<double> tiny(1000, 1e-18);
  tiny.push_back(1.0);
  REQUIRE(compensated_sum(tiny) == Catch::Approx(1.0 + 1e-15).epsilon(1e-14));
}

TEST_CASE("weighted mean and effective sample size", "[special]") {
  std::vector<double> f = {1.0, 2.0, 3.0};
  std::vector<double> w = {1.0, 1.0, 1.0};
  const auto r = weighted_mean(f, w);
  REQUIRE(r.mean == Catch::Approx(2.0));
  REQUIRE(r.n_eff == Catch::Approx(3.0));
  std::vector<double> w2 = {1.0, 0.0, 0.0};
  REQUIRE(weighted_mean(f, w2).n_eff == Catch::Approx(1.0));
}
