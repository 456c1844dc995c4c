#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <complex>

#include "lqg/mobius.hpp"
#include "lqg/point.hpp"
#include "lqg/rng.hpp"

using namespace lqg;
using cplx = std::complex<double>;

namespace {

MobiusMap random_map(RngStream& rng) {
  auto g = [&] { return cplx(rng.gaussian(), rng.gaussian()); };
  for (;;) {
    const cplx a = g(), b = 0.5 * g(), c = 0.5 * g(), d = g();
    if (std::abs(a * d - b * c) > 0.2) return MobiusMap(a, b, c, d);
  }
}

Point random_point(RngStream& rng, double scale = 1.0) {
  return Point(scale * rng.gaussian(), scale * rng.gaussian());
}

}  // namespace

TEST_CASE("normalization enforces unit determinant", "[mobius]") {
  const MobiusMap m(cplx(3.0, 1.0), cplx(0.0, -2.0), cplx(1.0, 0.5), cplx(2.0, 0.0));
  const cplx det = m.a() * m.d() - m.b() * m.c();
  REQUIRE(std::abs(det - 1.0) < 1e-14);
  REQUIRE_THROWS_AS(MobiusMap(cplx(1.0), cplx(2.0), cplx(2.0), cplx(4.0)),
                    std::invalid_argument);
}

TEST_CASE("identity map fixes points, derivative one, factor zero", "[mobius]") {
  const MobiusMap id = MobiusMap::identity();
  const Point x(0.3, -1.2);
  REQUIRE(id.apply(x).re == Catch::Approx(x.re));
  REQUIRE(id.apply(x).im == Catch::Approx(x.im));
  REQUIRE(std::abs(id.derivative(x) - 1.0) < 1e-15);
  REQUIRE(std::fabs(id.conformal_factor(x)) < 1e-15);
}

TEST_CASE("composition and inverse keep the invariant", "[mobius]") {
  RngStream rng(11, 0);
  for (int k = 0; k < 20; ++k) {
    const MobiusMap m1 = random_map(rng), m2 = random_map(rng);
    const MobiusMap m = m1.compose(m2);
    REQUIRE(std::abs(m.a() * m.d() - m.b() * m.c() - 1.0) < 1e-12);
    const MobiusMap mi = m.inverse();
    const Point x = random_point(rng);
    const Point y = mi.apply(m.apply(x));
    REQUIRE(std::hypot(y.re - x.re, y.im - x.im) < 1e-10);
  }
}

TEST_CASE("cross ratios are preserved to 1e-12", "[mobius]") {
  RngStream rng(12, 0);
  for (int k = 0; k < 40; ++k) {
    const MobiusMap psi = random_map(rng);
    Point z[4];
    bool ok = true;
    for (auto& p : z) {
      p = random_point(rng);
      if (psi.is_pole(p)) ok = false;
    }
    if (!ok) continue;
    const cplx r1 = cross_ratio(z[0], z[1], z[2], z[3]);
    const cplx r2 = cross_ratio(psi.apply(z[0]), psi.apply(z[1]), psi.apply(z[2]),
                                psi.apply(z[3]));
    REQUIRE(std::abs(r1 - r2) < 1e-12 * std::max(1.0, std::abs(r1)));
  }
}

TEST_CASE("conformal factor definition ghat(psi x) |psi'|^2 = e^phi ghat(x)", "[mobius]") {
  RngStream rng(13, 0);
  for (int k = 0; k < 40; ++k) {
    const MobiusMap psi = random_map(rng);
    const Point x = random_point(rng);
    if (psi.is_pole(x)) continue;
    const Point y = psi.apply(x);
    if (y.at_infinity) continue;
    const double lhs = round_density(y) * std::norm(psi.derivative(x));
    const double rhs = std::exp(psi.conformal_factor(x)) * round_density(x);
    REQUIRE(lhs == Catch::Approx(rhs).epsilon(1e-12));
  }
}

TEST_CASE("rotations have identically zero conformal factor", "[mobius]") {
  RngStream rng(14, 0);
  for (int k = 0; k < 10; ++k) {
    cplx u(rng.gaussian(), rng.gaussian()), v(rng.gaussian(), rng.gaussian());
    const double n = std::sqrt(std::norm(u) + std::norm(v));
    const MobiusMap rot = MobiusMap::rotation(u / n, v / n);
    for (int j = 0; j < 10; ++j) {
      const Point x = random_point(rng, 2.0);
      REQUIRE(std::fabs(rot.conformal_factor(x)) < 1e-12);
    }
  }
}
