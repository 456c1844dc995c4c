#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <numbers>
#include <vector>

#include "lqg/grid.hpp"
#include "lqg/green.hpp"
#include "lqg/harmonics.hpp"
#include "lqg/rng.hpp"

using namespace lqg;

TEST_CASE("discrete orthonormality of the basis", "[harmonics]") {
  const QuadratureGrid grid(10);
  const SphereHarmonics sh(grid);
  const int L = 10;
  // synthesize unit coefficient vectors and take inner products on the grid
  auto inner = [&](const std::vector<double>& u, const std::vector<double>& v) {
    double s = 0.0;
    for (std::size_t k = 0; k < grid.size(); ++k)
      s += u[k] * v[k] * grid.weights()[k];
    return s;
  };
  std::vector<std::size_t> picks = {coeff_index(1, 0, false), coeff_index(1, 1, true),
                                    coeff_index(3, 2, false), coeff_index(7, 7, true),
                                    coeff_index(10, 4, false)};
  for (std::size_t a : picks) {
    std::vector<double> ca(coeff_count(L), 0.0);
    ca[a] = 1.0;
    const auto va = sh.synthesize(ca);
    for (std::size_t b : picks) {
      std::vector<double> cb(coeff_count(L), 0.0);
      cb[b] = 1.0;
      const auto vb = sh.synthesize(cb);
      REQUIRE(inner(va, vb) == Catch::Approx(a == b ? 1.0 : 0.0).margin(1e-12));
    }
  }
}

TEST_CASE("analysis inverts synthesis for band-limited data", "[harmonics]") {
  const QuadratureGrid grid(16);
  const SphereHarmonics sh(grid);
  RngStream rng(5, 0);
  std::vector<double> coeff(coeff_count(16));
  for (auto& c : coeff) c = rng.gaussian();
  const auto values = sh.synthesize(coeff);
  const auto back = sh.analyze(values);
  for (std::size_t k = 0; k < coeff.size(); ++k)
    REQUIRE(back[k] == Catch::Approx(coeff[k]).margin(1e-11));
}

TEST_CASE("addition theorem at matched degrees", "[harmonics]") {
  // sum_m Y_lm(x) Y_lm(y) = (2l+1)/(4 pi) P_l(cos T)
  const QuadratureGrid grid(12);
  const SphereHarmonics sh(grid);
  const int l = 9;
  std::vector<double> q1(13), q2(13);
  const double t1 = 0.37, p1 = 1.1, t2 = -0.52, p2 = 4.4;
  double acc = 0.0;
  for (int m = 0; m <= l; ++m) {
    legendre_q_column(12, m, t1, q1.data());
    legendre_q_column(12, m, t2, q2.data());
    const double qa = q1[l - m], qb = q2[l - m];
    if (m == 0) {
      acc += qa * qb;
    } else {
      acc += qa * qb * (std::cos(m * p1) * std::cos(m * p2) +
                        std::sin(m * p1) * std::sin(m * p2));
    }
  }
  const double ct = t1 * t2 + std::sqrt(1 - t1 * t1) * std::sqrt(1 - t2 * t2) *
                                  std::cos(p1 - p2);
  const double expected = (2.0 * l + 1.0) / (4.0 * std::numbers::pi) *
                          legendre_p(l, ct);
  REQUIRE(acc == Catch::Approx(expected).margin(1e-12));
}

TEST_CASE("off-grid evaluation matches grid synthesis at nodes", "[harmonics]") {
  const QuadratureGrid grid(14);
  const SphereHarmonics sh(grid);
  RngStream rng(6, 0);
  std::vector<double> coeff(coeff_count(14));
  for (auto& c : coeff) c = rng.gaussian();
  const auto values = sh.synthesize(coeff);
  for (std::size_t k = 13; k < grid.size(); k += 97) {
    const double v = sh.evaluate(coeff, grid.nodes()[k]);
    REQUIRE(v == Catch::Approx(values[k]).margin(1e-10));
  }
}

TEST_CASE("spectral Laplacian has the -l(l+1) eigenvalues", "[harmonics]") {
  const QuadratureGrid grid(8);
  const SphereHarmonics sh(grid);
  std::vector<double> coeff(coeff_count(8), 0.0);
  coeff[coeff_index(5, 3, false)] = 2.0;
  const auto lap = sh.laplacian_coeffs(coeff);
  REQUIRE(lap[coeff_index(5, 3, false)] == Catch::Approx(-30.0 * 2.0));
}

TEST_CASE("truncated variance equals the closed harmonic-number form", "[harmonics]") {
  // sigma_L^2 = (H_L + H_{L+1})/2 - 1/2
  for (int L : {1, 8, 64}) {
    double h1 = 0.0;
    for (int k = 1; k <= L; ++k) h1 += 1.0 / k;
    const double h2 = h1 + 1.0 / (L + 1);
    REQUIRE(sigma2_truncated(L) ==
            Catch::Approx(0.5 * (h1 + h2) - 0.5).epsilon(1e-13));
  }
}

TEST_CASE("truncated green series converges to the closed-form green function",
          "[harmonics]") {
  // Validates the spectral constant 2 pi / (l(l+1)): at separated points the
  // degree-truncated series approaches green_round as L grows.
  const Point x(0.0, 0.0), y(1.0, 0.0);
  const double ct = [&] {
    const auto a = x.sphere(), b = y.sphere();
    return a[0] * b[0] + a[1] * b[1] + a[2] * b[2];
  }();
  const double exact = green_round(x, y);
  double prev = 1e9;
  for (int L : {16, 64, 256, 1024}) {
    const double err = std::fabs(green_series_truncated(L, ct) - exact);
    REQUIRE(err < prev + 1e-12);
    prev = err;
  }
  REQUIRE(std::fabs(green_series_truncated(1024, ct) - exact) < 2e-3);
  REQUIRE(std::fabs(green_series_truncated(4096, ct) - exact) < 5e-4);
}
