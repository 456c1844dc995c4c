#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <vector>

#include "lqg/rng.hpp"
#include "lqg/special.hpp"

using namespace lqg;

TEST_CASE("streams are reproducible and disjoint", "[rng]") {
  RngStream a(42, 7), b(42, 7), c(42, 8);
  bool all_equal = true, any_equal = false;
  for (int i = 0; i < 64; ++i) {
    const auto x = a.next_u64(), y = b.next_u64(), z = c.next_u64();
    all_equal = all_equal && (x == y);
    any_equal = any_equal || (x == z);
  }
  REQUIRE(all_equal);
  REQUIRE_FALSE(any_equal);
}

TEST_CASE("gaussian moments", "[rng]") {
  RngStream rng(1, 0);
  const int n = 200000;
  double s = 0, s2 = 0, s4 = 0;
  for (int i = 0; i < n; ++i) {
    const double x = rng.gaussian();
    s += x;
    s2 += x * x;
    s4 += x * x * x * x;
  }
  REQUIRE(std::fabs(s / n) < 0.01);
  REQUIRE(s2 / n == Catch::Approx(1.0).margin(0.01));
  REQUIRE(s4 / n == Catch::Approx(3.0).margin(0.08));
}

TEST_CASE("gamma sampler matches the Gamma CDF (KS)", "[rng]") {
  for (const double shape : {0.5, 2.0 / 3.0, 2.5}) {
    const double rate = 1.3;
    RngStream rng(9, 3);
    const int n = 20000;
    std::vector<double> xs(n);
    for (auto& x : xs) x = rng.gamma(shape, rate);
    std::sort(xs.begin(), xs.end());
    double d = 0.0;
    for (int i = 0; i < n; ++i) {
      const double f = gamma_cdf(xs[i], shape, rate);
      d = std::max(d, std::fabs(f - (i + 1.0) / n));
      d = std::max(d, std::fabs(f - static_cast<double>(i) / n));
    }
    REQUIRE(ks_p_value(d, n) > 0.01);
  }
}
