#pragma once

// Mobius transforms psi(z) = (az+b)/(cz+d) of the Riemann sphere, normalized
// to ad - bc = 1 at construction. These carry all conformal-covariance
// checks: psi'(z) = (cz+d)^{-2} and the log-conformal factor
//   phi(z) = ln(ghat_psi / ghat)(z) = 2( ln(1+|z|^2) - ln(|az+b|^2+|cz+d|^2) )
// of the pulled-back round metric ghat_psi = |psi'|^2 ghat(psi).

#include <cmath>
#include <complex>
#include <stdexcept>

#include "lqg/point.hpp"

namespace lqg {

class MobiusMap {
 public:
  using cplx = std::complex<double>;

  MobiusMap() : a_(1.0), b_(0.0), c_(0.0), d_(1.0) {}

  MobiusMap(cplx a, cplx b, cplx c, cplx d) : a_(a), b_(b), c_(c), d_(d) {
    const cplx det = a_ * d_ - b_ * c_;
    if (std::abs(det) < 1e-12)
      throw std::invalid_argument("MobiusMap: determinant too small");
    const cplx s = std::sqrt(det);
    a_ /= s;
    b_ /= s;
    c_ /= s;
    d_ /= s;
  }

  static MobiusMap identity() { return MobiusMap(); }

  // rotation of the sphere (SU(2) element (u, v; -conj(v), conj(u)))
  static MobiusMap rotation(cplx u, cplx v) {
    return MobiusMap(u, v, -std::conj(v), std::conj(u));
  }

  cplx a() const { return a_; }
  cplx b() const { return b_; }
  cplx c() const { return c_; }
  cplx d() const { return d_; }

  MobiusMap inverse() const { return MobiusMap(d_, -b_, -c_, a_); }

  MobiusMap compose(const MobiusMap& o) const {  // this after o
    return MobiusMap(a_ * o.a_ + b_ * o.c_, a_ * o.b_ + b_ * o.d_,
                     c_ * o.a_ + d_ * o.c_, c_ * o.b_ + d_ * o.d_);
  }

  bool is_pole(const Point& x) const {
    if (x.at_infinity) return std::abs(a_) < 1e-14;
    return std::abs(c_ * x.z() + d_) < 1e-14;
  }

  Point apply(const Point& x) const {
    if (x.at_infinity) {
      if (std::abs(c_) < 1e-14) return Point::infinity();
      const cplx w = a_ / c_;
      return Point(w);
    }
    const cplx den = c_ * x.z() + d_;
    if (std::abs(den) < 1e-14) return Point::infinity();
    return Point((a_ * x.z() + b_) / den);
  }

  cplx derivative(const Point& x) const {
    if (x.at_infinity) throw std::domain_error("MobiusMap: derivative at infinity");
    const cplx den = c_ * x.z() + d_;
    if (std::abs(den) < 1e-14) throw std::domain_error("MobiusMap: derivative at pole");
    return 1.0 / (den * den);
  }

  // phi(x) = ln(ghat_psi(x)/ghat(x)); finite everywhere on the sphere,
  // including the chart's infinity.
  double conformal_factor(const Point& x) const {
    if (x.at_infinity)
      return 2.0 * (-std::log(std::norm(a_) + std::norm(c_)));
    const cplx num = a_ * x.z() + b_;
    const cplx den = c_ * x.z() + d_;
    return 2.0 * (std::log1p(x.abs2()) - std::log(std::norm(num) + std::norm(den)));
  }

 private:
  cplx a_, b_, c_, d_;
};

inline std::complex<double> cross_ratio(const Point& z1, const Point& z2,
                                        const Point& z3, const Point& z4) {
  return (z1.z() - z3.z()) * (z2.z() - z4.z()) /
         ((z2.z() - z3.z()) * (z1.z() - z4.z()));
}

}  // namespace lqg
