#pragma once

// Quadrature grid on the sphere: Gauss-Legendre nodes in t = cos(theta) times
// a uniform longitude grid, pulled back to the plane by stereographic
// projection. With n_lat = L+1 and n_lon = 2L+1 the rule integrates products
// of two band-limited (degree <= L) functions exactly, and the weights sum to
// 4*pi to machine precision.
//
// Cells: the (t, phi) rectangles bounded by the cumulative Gauss-Legendre
// weights and the longitude midlines tile the sphere, and the sphere area of
// cell (i,j) is exactly its quadrature weight. Local sub-quadratures for
// singular kernels refine these rectangles.

#include <array>
#include <cmath>
#include <cstddef>
#include <numbers>
#include <stdexcept>
#include <vector>

#include "lqg/point.hpp"

namespace lqg {

// Gauss-Legendre nodes and weights on [-1,1] (Newton on the recurrence).
inline void gauss_legendre(int n, std::vector<double>& x, std::vector<double>& w) {
  if (n < 1) throw std::invalid_argument("gauss_legendre: n must be positive");
  x.assign(n, 0.0);
  w.assign(n, 0.0);
  const int m = (n + 1) / 2;
  for (int i = 0; i < m; ++i) {
    double z = std::cos(std::numbers::pi * (i + 0.75) / (n + 0.5));
    double pp = 0.0;
    for (int it = 0; it < 100; ++it) {
      double p0 = 1.0, p1 = 0.0;
      for (int j = 0; j < n; ++j) {
        const double p2 = p1;
        p1 = p0;
        p0 = ((2.0 * j + 1.0) * z * p1 - j * p2) / (j + 1.0);
      }
      pp = n * (z * p0 - p1) / (z * z - 1.0);
      const double z1 = z;
      z = z1 - p0 / pp;
      if (std::fabs(z - z1) < 1e-15) break;
    }
    x[i] = -z;
    x[n - 1 - i] = z;
    w[i] = 2.0 / ((1.0 - z * z) * pp * pp);
    w[n - 1 - i] = w[i];
  }
}

class QuadratureGrid {
 public:
  explicit QuadratureGrid(int band_limit)
      : L_(band_limit), n_lat_(band_limit + 1), n_lon_(2 * band_limit + 1) {
    if (band_limit < 1) throw std::invalid_argument("QuadratureGrid: band limit >= 1");
    std::vector<double> gx, gw;
    gauss_legendre(n_lat_, gx, gw);
    // latitudes ordered from the north pole (t descending)
    t_.resize(n_lat_);
    glw_.resize(n_lat_);
    for (int i = 0; i < n_lat_; ++i) {
      t_[i] = gx[n_lat_ - 1 - i];
      glw_[i] = gw[n_lat_ - 1 - i];
    }
    tb_.resize(n_lat_ + 1);
    tb_[0] = 1.0;
    for (int i = 0; i < n_lat_; ++i) tb_[i + 1] = tb_[i] - glw_[i];
    tb_[n_lat_] = -1.0;

    phi_.resize(n_lon_);
    const double dphi = 2.0 * std::numbers::pi / n_lon_;
    for (int j = 0; j < n_lon_; ++j) phi_[j] = j * dphi;

    nodes_.resize(size());
    weights_.resize(size());
    svec_.resize(size());
    for (int i = 0; i < n_lat_; ++i) {
      const double st = std::sqrt(1.0 - t_[i] * t_[i]);
      const double r = std::sqrt((1.0 - t_[i]) / (1.0 + t_[i]));  // tan(theta/2)
      const double wi = glw_[i] * dphi;
      for (int j = 0; j < n_lon_; ++j) {
        const std::size_t k = index(i, j);
        const double cp = std::cos(phi_[j]);
        const double sp = std::sin(phi_[j]);
        nodes_[k] = Point(r * cp, r * sp);
        weights_[k] = wi;
        svec_[k] = {st * cp, st * sp, t_[i]};
      }
    }
  }

  int band_limit() const { return L_; }
  int n_lat() const { return n_lat_; }
  int n_lon() const { return n_lon_; }
  std::size_t size() const { return static_cast<std::size_t>(n_lat_) * n_lon_; }
  std::size_t index(int i, int j) const { return static_cast<std::size_t>(i) * n_lon_ + j; }
  int lat_of(std::size_t k) const { return static_cast<int>(k / n_lon_); }
  int lon_of(std::size_t k) const { return static_cast<int>(k % n_lon_); }

  const std::vector<Point>& nodes() const { return nodes_; }
  const std::vector<double>& weights() const { return weights_; }
  const std::vector<std::array<double, 3>>& sphere_vectors() const { return svec_; }
  const std::vector<double>& latitudes_t() const { return t_; }
  const std::vector<double>& longitudes() const { return phi_; }
  double gl_weight(int i) const { return glw_[i]; }

  double total_weight() const {
    double s = 0.0, c = 0.0;
    for (double w : weights_) {
      const double t = s + w;
      c += (std::fabs(s) >= w) ? (s - t) + w : (w - t) + s;
      s = t;
    }
    return s + c;
  }

  // typical mesh size (geodesic) and cell geometry
  double mesh() const { return std::numbers::pi / n_lat_; }
  double dphi() const { return 2.0 * std::numbers::pi / n_lon_; }

  // cell (i,j) covers t in [tb_[i+1], tb_[i]], phi in phi_j +- dphi/2
  double t_upper(int i) const { return tb_[i]; }
  double t_lower(int i) const { return tb_[i + 1]; }

  // equal-area geodesic radius of cell k's area
  double cell_radius(std::size_t k) const {
    return std::sqrt(weights_[k] / std::numbers::pi);
  }

  // latitude ring containing t (binary search on the cell boundaries)
  int ring_of_t(double t) const {
    int lo = 0, hi = n_lat_ - 1;
    while (lo < hi) {
      const int mid = (lo + hi) / 2;
      if (t >= tb_[mid + 1])
        hi = mid;
      else
        lo = mid + 1;
    }
    return lo;
  }

  int sector_of_phi(double phi) const {
    const double dp = dphi();
    double p = std::fmod(phi + 0.5 * dp, 2.0 * std::numbers::pi);
    if (p < 0.0) p += 2.0 * std::numbers::pi;
    int j = static_cast<int>(p / dp);
    if (j >= n_lon_) j = 0;
    return j;
  }

  std::size_t cell_of(const Point& x) const {
    const auto v = x.sphere();
    const double phi = std::atan2(v[1], v[0]);
    return index(ring_of_t(v[2]), sector_of_phi(phi));
  }

 private:
  int L_, n_lat_, n_lon_;
  std::vector<double> t_, glw_, tb_, phi_;
  std::vector<Point> nodes_;
  std::vector<double> weights_;
  std::vector<std::array<double, 3>> svec_;
};

// Regions are finite unions of planar disks or their complements, resolved to
// cell membership by node-in-region tests.
struct Disk {
  Point center;
  double radius = 0.0;
  bool complement = false;

  bool contains(const Point& x) const {
    if (x.at_infinity) return complement;
    const double dx = x.re - center.re, dy = x.im - center.im;
    const bool inside = dx * dx + dy * dy < radius * radius;
    return complement ? !inside : inside;
  }
};

struct Region {
  std::vector<Disk> disks;  // union; empty means the whole sphere
  bool contains(const Point& x) const {
    if (disks.empty()) return true;
    for (const auto& d : disks)
      if (d.contains(x)) return true;
    return false;
  }
  static Region everything() { return Region{}; }
  static Region disk(Point c, double r) { return Region{{Disk{c, r, false}}}; }
  static Region disk_complement(Point c, double r) { return Region{{Disk{c, r, true}}}; }
};

}  // namespace lqg
