#pragma once

// Green functions of the metric Laplacian (convention  Delta_g G = -2 pi delta,
// lambda_g-mean zero) and the quadrature machinery for the log kernels that
// define them.
//
// Round metric, closed form:
//   G(z,z') = ln 1/|z-z'| - 1/4 (ln ghat(z) + ln ghat(z')) + ln 2 - 1/2,
// equivalently -ln sin(Theta/2) - 1/2 in the geodesic angle Theta. The
// additive constant is fixed by the vanishing lambda_ghat-mean; it is checked
// against the definition-level double quadrature in the tests.
//
// General conformal metric g:
//   G_g(x,y) = ln 1/|x-y| - m_g(ln 1/|x-.|) - m_g(ln 1/|y-.|) + theta_g,
// with theta_g the double lambda_g-average of ln 1/|z-z'|. The m_g terms are
// computed by grid quadrature with a singular-cell rule: cells near the
// singularity are subdivided in (t, phi) and the subcell containing it is
// integrated in local polar coordinates against a locally constant density.

#include <cmath>
#include <numbers>
#include <stdexcept>
#include <vector>

#include "lqg/grid.hpp"
#include "lqg/harmonics.hpp"
#include "lqg/metric.hpp"
#include "lqg/mobius.hpp"
#include "lqg/point.hpp"

namespace lqg {

inline constexpr double kGreenConstant = 0.19314718055994530942;  // ln 2 - 1/2

// spherical mean of -ln chord(x, .), independent of x: 1/2 - ln 2
inline constexpr double kLogChordMean = -0.19314718055994530942;

// stable chordal distance (planar route for nearby points)
inline double chord_stable(const Point& x, const std::array<double, 3>& vx,
                           const std::array<double, 3>& vy, const Point& y) {
  const double dot = vx[0] * vy[0] + vx[1] * vy[1] + vx[2] * vy[2];
  if (dot < 0.999) return std::sqrt(std::max(0.0, 2.0 - 2.0 * dot));
  const double dx = x.re - y.re, dy = x.im - y.im;
  return 2.0 * std::hypot(dx, dy) /
         std::sqrt((1.0 + x.abs2()) * (1.0 + y.abs2()));
}

inline double green_round(const Point& x, const Point& y) {
  if (x.at_infinity || y.at_infinity)
    throw std::domain_error("green_round: point at infinity");
  const double dx = x.re - y.re, dy = x.im - y.im;
  const double d = std::hypot(dx, dy);
  if (d == 0.0) throw std::domain_error("green_round: coincident points");
  return -std::log(d) - 0.25 * (log_round_density(x) + log_round_density(y)) +
         kGreenConstant;
}

// same value from sphere vectors: -ln(chord) + ln2 - 1/2
inline double green_round_chord(double chord) {
  if (chord <= 0.0) throw std::domain_error("green_round: coincident points");
  return -std::log(chord) + kGreenConstant;
}

namespace detail {

struct SubdividedCell {
  // integrate kernel(-ln chord) over cell (ring i, sector j) of the grid
  // against a constant density, with x possibly inside the cell
  static double chord_log_cell(const QuadratureGrid& grid, int i, int j,
                               const Point& x, const std::array<double, 3>& vx,
                               int subdiv) {
    const double t0 = grid.t_lower(i), t1 = grid.t_upper(i);
    const double pc = grid.longitudes()[j];
    const double dp = grid.dphi();
    const double dt = (t1 - t0) / subdiv;
    const double dphi = dp / subdiv;
    const double sub_area = dt * dphi;
    const double rho_sub = std::sqrt(sub_area / std::numbers::pi);
    double acc = 0.0;
    for (int a = 0; a < subdiv; ++a) {
      const double t = t0 + (a + 0.5) * dt;
      const double st = std::sqrt(std::max(0.0, 1.0 - t * t));
      for (int b = 0; b < subdiv; ++b) {
        const double phi = pc - 0.5 * dp + (b + 0.5) * dphi;
        const std::array<double, 3> v{st * std::cos(phi), st * std::sin(phi), t};
        const double dot = vx[0] * v[0] + vx[1] * v[1] + vx[2] * v[2];
        const double chord2 = std::max(0.0, 2.0 - 2.0 * dot);
        if (chord2 < rho_sub * rho_sub) {
          // polar rule for the log singularity on an equal-area disk
          acc += sub_area * (-std::log(rho_sub) + 0.5);
        } else {
          acc += sub_area * (-0.5 * std::log(chord2));
        }
      }
    }
    return acc;
  }
};

}  // namespace detail

// Integral of -ln(chord(x, .)) against the lambda_g cell weights.
//
// Uses global singularity subtraction: with the constant density e^{phi(x~)}
// (x~ the cell of x) split off, the pure kernel integrates in closed form
// over the sphere and only the vanishing-at-x remainder is quadratured; the
// remainder's near cells are subdivided with the polar rule at the singular
// subcell. Exact up to round-off for the round metric.
inline double chord_log_integral(const ConformalMetric& g, const Point& x,
                                 int refine_cells = 3, int subdiv = 8) {
  const QuadratureGrid& grid = g.grid();
  const auto vx = x.sphere();
  const auto& sv = grid.sphere_vectors();
  const auto& lam = g.weights();
  const double dens_x = lam[grid.cell_of(x)] / grid.weights()[grid.cell_of(x)];
  const double near_chord = refine_cells * grid.mesh() + grid.dphi();
  const double near2 = near_chord * near_chord;
  double far = 0.0, comp = 0.0;
  std::vector<std::size_t> near_cells;
  for (std::size_t k = 0; k < grid.size(); ++k) {
    const double dot = vx[0] * sv[k][0] + vx[1] * sv[k][1] + vx[2] * sv[k][2];
    const double chord2 = std::max(0.0, 2.0 - 2.0 * dot);
    if (chord2 < near2) {
      near_cells.push_back(k);
      continue;
    }
    const double v = (lam[k] - dens_x * grid.weights()[k]) * (-0.5) * std::log(chord2);
    const double t = far + v;
    comp += (std::fabs(far) >= std::fabs(v)) ? (far - t) + v : (v - t) + far;
    far = t;
  }
  double near = 0.0;
  for (std::size_t k : near_cells) {
    const int i = grid.lat_of(k), j = grid.lon_of(k);
    const double density = lam[k] / grid.weights()[k] - dens_x;
    if (density != 0.0)
      near += density *
              detail::SubdividedCell::chord_log_cell(grid, i, j, x, vx, subdiv);
  }
  return far + comp + near +
         dens_x * grid.total_weight() * kLogChordMean;
}

// m_g( ln(1+|.|^2) ) through the same machinery: ln(1+|z|^2) is, up to 2 ln 2,
// twice the chord log-kernel anchored at the south pole.
inline double log1p_abs2_mean(const ConformalMetric& g) {
  return 2.0 * chord_log_integral(g, Point::infinity()) / g.total() +
         2.0 * std::numbers::ln2;
}

// m_g( ln 1/|x - .| ): assembled from the chord kernel and the smooth parts
//   ln 1/|x-z| = -ln chord(x,z) + ln 2 - 1/2 ln(1+|x|^2) - 1/2 ln(1+|z|^2)
inline double log_kernel_mean(const ConformalMetric& g, const Point& x) {
  if (x.at_infinity) throw std::domain_error("log_kernel_mean: point at infinity");
  return chord_log_integral(g, x) / g.total() + std::numbers::ln2 -
         0.5 * std::log1p(x.abs2()) - 0.5 * log1p_abs2_mean(g);
}

// theta_g by direct double quadrature (reference path, O(N^2))
inline double theta_direct(const ConformalMetric& g) {
  const QuadratureGrid& grid = g.grid();
  const auto& lam = g.weights();
  double acc = 0.0;
  for (std::size_t k = 0; k < grid.size(); ++k)
    acc += lam[k] * chord_log_integral(g, grid.nodes()[k]);
  acc /= g.total() * g.total();
  return acc + std::numbers::ln2 - log1p_abs2_mean(g);
}

// theta_g via the spectral representation of the zero-mean Green function:
// the double lambda_g-average of G is sum_l 2pi/(l(l+1)) |hat(e^phi)_{lm}|^2
// normalized by lambda_g(R^2)^2. Cross-checked against theta_direct in tests.
inline double theta_spectral(const ConformalMetric& g, const SphereHarmonics& sh) {
  const QuadratureGrid& grid = g.grid();
  std::vector<double> density(grid.size());
  for (std::size_t k = 0; k < grid.size(); ++k)
    density[k] = g.weights()[k] / grid.weights()[k];
  const auto h = sh.analyze(density);
  const int L = sh.band_limit();
  double gmean2 = 0.0;
  for (int l = 1; l <= L; ++l) {
    double block = 0.0;
    for (std::size_t q = coeff_index(l, 0, false); q < coeff_count(l); ++q)
      block += h[q] * h[q];
    gmean2 += 2.0 * std::numbers::pi / (static_cast<double>(l) * (l + 1.0)) * block;
  }
  gmean2 /= g.total() * g.total();
  return gmean2 - log1p_abs2_mean(g) + 0.5;
}

inline double theta(const ConformalMetric& g, const SphereHarmonics& sh) {
  if (!g.cached_theta) g.cached_theta = theta_spectral(g, sh);
  return *g.cached_theta;
}

// G_g(x,y) from the definition, with quadrature m_g terms and cached theta_g
inline double green_general(const ConformalMetric& g, const SphereHarmonics& sh,
                            const Point& x, const Point& y) {
  if (x.at_infinity || y.at_infinity)
    throw std::domain_error("green_general: point at infinity");
  const double d = std::hypot(x.re - y.re, x.im - y.im);
  if (d == 0.0) throw std::domain_error("green_general: coincident points");
  return -std::log(d) - log_kernel_mean(g, x) - log_kernel_mean(g, y) +
         theta(g, sh);
}

// |LHS - RHS| of the Mobius rule G(psi z, psi z') = G(z,z') - (phi(z)+phi(z'))/4
inline double green_mobius_rule_residual(const MobiusMap& psi, const Point& x,
                                         const Point& y) {
  const double lhs = green_round(psi.apply(x), psi.apply(y));
  const double rhs = green_round(x, y) -
                     0.25 * (psi.conformal_factor(x) + psi.conformal_factor(y));
  return std::fabs(lhs - rhs);
}

// D_psi: double lambda_{ghat_psi}-average of G_ghat over (4 pi)^2
inline double d_psi_direct(const MobiusMap& psi, const QuadratureGrid& grid) {
  const ConformalMetric gpsi = ConformalMetric::from_mobius(grid, psi);
  const auto& lam = gpsi.weights();
  double acc = 0.0;
  for (std::size_t k = 0; k < grid.size(); ++k)
    acc += lam[k] * chord_log_integral(gpsi, grid.nodes()[k]);
  return acc / (gpsi.total() * gpsi.total()) + kGreenConstant;
}

inline double d_psi_spectral(const MobiusMap& psi, const QuadratureGrid& grid,
                             const SphereHarmonics& sh) {
  const ConformalMetric gpsi = ConformalMetric::from_mobius(grid, psi);
  std::vector<double> density(grid.size());
  for (std::size_t k = 0; k < grid.size(); ++k)
    density[k] = gpsi.weights()[k] / grid.weights()[k];
  const auto h = sh.analyze(density);
  double acc = 0.0;
  for (int l = 1; l <= sh.band_limit(); ++l) {
    double block = 0.0;
    for (std::size_t q = coeff_index(l, 0, false); q < coeff_count(l); ++q)
      block += h[q] * h[q];
    acc += 2.0 * std::numbers::pi / (static_cast<double>(l) * (l + 1.0)) * block;
  }
  return acc / (gpsi.total() * gpsi.total());
}

// quadrature LHS minus closed-form RHS of the log-potential identity
//   int ln|x-.| d lambda_{ghat_psi} = 2 pi ( ln(|ax+b|^2+|cx+d|^2) - ln(|a|^2+|c|^2) );
// the closed form is continuous at c = 0, so affine maps take the same branch.
inline double log_potential_residual(const MobiusMap& psi, const Point& x,
                                     const QuadratureGrid& grid) {
  const ConformalMetric gpsi = ConformalMetric::from_mobius(grid, psi);
  // int ln|x-z| = -chord part + smooth parts (note the sign versus ln 1/|x-z|)
  const double lhs = -chord_log_integral(gpsi, x) - gpsi.total() * std::numbers::ln2 +
                     0.5 * gpsi.total() * std::log1p(x.abs2()) +
                     0.5 * gpsi.total() * log1p_abs2_mean(gpsi);
  const auto z = x.z();
  const double num = std::norm(psi.a() * z + psi.b()) + std::norm(psi.c() * z + psi.d());
  const double den = std::norm(psi.a()) + std::norm(psi.c());
  const double rhs = 2.0 * std::numbers::pi * (std::log(num) - std::log(den));
  return lhs - rhs;
}

// Node values of R_g = e^{-phi} (R_ghat - Lap_ghat phi) via the spectral
// Laplacian; throws if phi is not band-limited on the grid.
inline std::vector<double> curvature(const ConformalMetric& g,
                                     const SphereHarmonics& sh,
                                     double band_limit_tol = 1e-8) {
  const auto& phi = g.phi();
  const auto coeff = sh.analyze(phi);
  const auto back = sh.synthesize(coeff);
  double num = 0.0, den = 1e-30;
  for (std::size_t k = 0; k < phi.size(); ++k) {
    num = std::max(num, std::fabs(back[k] - phi[k]));
    den = std::max(den, std::fabs(phi[k]));
  }
  if (num > band_limit_tol * std::max(1.0, den))
    throw std::domain_error("curvature: phi exceeds the grid band limit");
  const auto lap = sh.synthesize(sh.laplacian_coeffs(coeff));
  std::vector<double> r(phi.size());
  for (std::size_t k = 0; k < phi.size(); ++k)
    r[k] = std::exp(-phi[k]) * (2.0 - lap[k]);
  return r;
}

}  // namespace lqg
