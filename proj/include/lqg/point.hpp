#pragma once

// Points of the Riemann sphere in the stereographic chart. The chart maps the
// north pole to z = 0 and the south pole to the point at infinity; the round
// density in this chart is ghat(z) = 4/(1+|z|^2)^2 with total area 4*pi.

#include <array>
#include <cmath>
#include <complex>
#include <stdexcept>

namespace lqg {

struct Point {
  double re = 0.0;
  double im = 0.0;
  bool at_infinity = false;

  Point() = default;
  Point(double x, double y) : re(x), im(y) {}
  explicit Point(std::complex<double> z) : re(z.real()), im(z.imag()) {}

  static Point infinity() {
    Point p;
    p.at_infinity = true;
    return p;
  }

  std::complex<double> z() const {
    if (at_infinity) throw std::domain_error("Point: planar coordinate of infinity");
    return {re, im};
  }

  double abs2() const {
    if (at_infinity) throw std::domain_error("Point: |z|^2 of infinity");
    return re * re + im * im;
  }

  // unit vector on the embedded sphere
  std::array<double, 3> sphere() const {
    if (at_infinity) return {0.0, 0.0, -1.0};
    const double r2 = abs2();
    const double s = 1.0 / (1.0 + r2);
    return {2.0 * re * s, 2.0 * im * s, (1.0 - r2) * s};
  }
};

// round-metric density 4/(1+|x|^2)^2
inline double round_density(const Point& x) {
  if (x.at_infinity) throw std::domain_error("round_density: point at infinity");
  const double t = 1.0 + x.abs2();
  return 4.0 / (t * t);
}

inline double log_round_density(const Point& x) {
  if (x.at_infinity) throw std::domain_error("log_round_density: point at infinity");
  return std::log(4.0) - 2.0 * std::log1p(x.abs2());
}

// chordal distance between the sphere images, in [0,2]
inline double chordal_distance(const Point& x, const Point& y) {
  const auto a = x.sphere();
  const auto b = y.sphere();
  const double dx = a[0] - b[0], dy = a[1] - b[1], dz = a[2] - b[2];
  return std::sqrt(dx * dx + dy * dy + dz * dz);
}

}  // namespace lqg
