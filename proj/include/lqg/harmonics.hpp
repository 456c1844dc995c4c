#pragma once

// Real spherical harmonics on the quadrature grid.
//
// Basis: Y_{l0} = Q_{l0}(t), Y^c_{lm} = Q_{lm}(t) cos(m phi),
// Y^s_{lm} = Q_{lm}(t) sin(m phi), orthonormal on the sphere. Q_{lm} are the
// normalized associated Legendre functions evaluated with the standard stable
// recurrences (seed values below ~1e-300 flush to zero; at the band limits
// used here those entries are genuinely negligible).
//
// The degree-truncated covariance of the free field is
//   g_L(cos T) = sum_{l=1..L} (2l+1) / (2 l (l+1)) P_l(cos T),
// whose L -> infinity limit is the zero-mean Green function of the round
// sphere; the per-mode variance 2*pi/(l(l+1)) is validated against the
// closed-form Green function in the tests rather than assumed.

#include <cmath>
#include <cstddef>
#include <numbers>
#include <stdexcept>
#include <vector>

#include "lqg/grid.hpp"

namespace lqg {

inline double legendre_p(int l, double x) {
  if (l == 0) return 1.0;
  double pm1 = 1.0, p = x;
  for (int k = 2; k <= l; ++k) {
    const double pn = ((2.0 * k - 1.0) * x * p - (k - 1.0) * pm1) / k;
    pm1 = p;
    p = pn;
  }
  return p;
}

// sum_{l=1..L} (2l+1)/(2 l(l+1)) P_l(x)
inline double green_series_truncated(int L, double x) {
  double pm1 = 1.0, p = x, acc = 0.0;
  for (int l = 1; l <= L; ++l) {
    acc += (2.0 * l + 1.0) / (2.0 * l * (l + 1.0)) * p;
    const double pn = ((2.0 * l + 1.0) * x * p - l * pm1) / (l + 1.0);
    pm1 = p;
    p = pn;
  }
  return acc;
}

// truncated variance sum_{l=1..L} (2l+1)/(2 l(l+1)), independent of position
inline double sigma2_truncated(int L) {
  double s = 0.0;
  for (int l = 1; l <= L; ++l) s += (2.0 * l + 1.0) / (2.0 * l * (l + 1.0));
  return s;
}

// per-mode field amplitude sqrt(2 pi / (l(l+1)))
inline double mode_amplitude(int l) {
  return std::sqrt(2.0 * std::numbers::pi / (static_cast<double>(l) * (l + 1.0)));
}

// coefficient layout: degree l occupies [l^2, (l+1)^2) as [m0, c1, s1, c2, s2, ...]
inline std::size_t coeff_count(int L) {
  return static_cast<std::size_t>(L + 1) * (L + 1);
}
inline std::size_t coeff_index(int l, int m, bool sin_part) {
  return static_cast<std::size_t>(l) * l + (m == 0 ? 0 : 2 * m - (sin_part ? 0 : 1));
}

// Normalized associated Legendre column: fills q[l-m] = Q_{lm}(t) for l = m..L.
inline void legendre_q_column(int L, int m, double t, double* q) {
  const double s = std::sqrt(std::max(0.0, 1.0 - t * t));
  double qmm = std::sqrt(1.0 / (4.0 * std::numbers::pi));  // Q_00
  for (int k = 1; k <= m; ++k) {
    qmm *= std::sqrt((2.0 * k + 1.0) / (2.0 * k)) * s;
    if (k == 1) qmm *= std::numbers::sqrt2;  // cos/sin pair normalization
  }
  q[0] = qmm;
  if (m == L) return;
  double qlm1 = qmm;
  double ql = t * std::sqrt(2.0 * m + 3.0) * qmm;
  q[1] = ql;
  for (int l = m + 2; l <= L; ++l) {
    const double al = std::sqrt((4.0 * l * l - 1.0) / (static_cast<double>(l) * l - static_cast<double>(m) * m));
    const double alm1 =
        std::sqrt((4.0 * (l - 1.0) * (l - 1.0) - 1.0) /
                  ((l - 1.0) * (l - 1.0) - static_cast<double>(m) * m));
    const double qn = al * (t * ql - qlm1 / alm1);
    qlm1 = ql;
    ql = qn;
    q[l - m] = ql;
  }
}

class SphereHarmonics {
 public:
  explicit SphereHarmonics(const QuadratureGrid& grid)
      : grid_(&grid), L_(grid.band_limit()) {
    const int nlat = grid.n_lat();
    const int nlon = grid.n_lon();
    // Q_{lm}(t_i): m-major, then latitude, then contiguous l-runs
    moff_.resize(L_ + 2);
    moff_[0] = 0;
    for (int m = 0; m <= L_; ++m)
      moff_[m + 1] = moff_[m] + static_cast<std::size_t>(nlat) * (L_ + 1 - m);
    plm_.resize(moff_[L_ + 1]);
    for (int m = 0; m <= L_; ++m)
      for (int i = 0; i < nlat; ++i)
        legendre_q_column(L_, m, grid.latitudes_t()[i], &plm_[qoff(m, i)]);
    // trig tables
    cosm_.resize(static_cast<std::size_t>(L_ + 1) * nlon);
    sinm_.resize(cosm_.size());
    for (int m = 0; m <= L_; ++m)
      for (int j = 0; j < nlon; ++j) {
        cosm_[static_cast<std::size_t>(m) * nlon + j] = std::cos(m * grid.longitudes()[j]);
        sinm_[static_cast<std::size_t>(m) * nlon + j] = std::sin(m * grid.longitudes()[j]);
      }
  }

  const QuadratureGrid& grid() const { return *grid_; }
  int band_limit() const { return L_; }

  // node values from coefficients (degree 0 included if present)
  std::vector<double> synthesize(const std::vector<double>& coeff) const {
    check_coeff(coeff);
    const int nlat = grid_->n_lat(), nlon = grid_->n_lon();
    std::vector<double> values(grid_->size(), 0.0);
    std::vector<double> am(L_ + 1), bm(L_ + 1);
    for (int i = 0; i < nlat; ++i) {
      for (int m = 0; m <= L_; ++m) {
        const double* q = &plm_[qoff(m, i)];
        double ac = 0.0, as = 0.0;
        if (m == 0) {
          for (int l = 0; l <= L_; ++l) ac += q[l] * coeff[coeff_index(l, 0, false)];
        } else {
          for (int l = m; l <= L_; ++l) {
            ac += q[l - m] * coeff[coeff_index(l, m, false)];
            as += q[l - m] * coeff[coeff_index(l, m, true)];
          }
        }
        am[m] = ac;
        bm[m] = as;
      }
      double* row = &values[grid_->index(i, 0)];
      for (int m = 0; m <= L_; ++m) {
        if (am[m] == 0.0 && bm[m] == 0.0) continue;
        const double* cm = &cosm_[static_cast<std::size_t>(m) * nlon];
        const double* sm = &sinm_[static_cast<std::size_t>(m) * nlon];
        const double a = am[m], b = bm[m];
        for (int j = 0; j < nlon; ++j) row[j] += a * cm[j] + b * sm[j];
      }
    }
    return values;
  }

  // coefficients from node values (exact for band-limited inputs)
  std::vector<double> analyze(const std::vector<double>& values) const {
    if (values.size() != grid_->size())
      throw std::invalid_argument("analyze: value count mismatch");
    const int nlat = grid_->n_lat(), nlon = grid_->n_lon();
    const double dphi = grid_->dphi();
    std::vector<double> coeff(coeff_count(L_), 0.0);
    std::vector<double> cm_acc(L_ + 1), sm_acc(L_ + 1);
    for (int i = 0; i < nlat; ++i) {
      const double* row = &values[grid_->index(i, 0)];
      for (int m = 0; m <= L_; ++m) {
        const double* cm = &cosm_[static_cast<std::size_t>(m) * nlon];
        const double* sm = &sinm_[static_cast<std::size_t>(m) * nlon];
        double ac = 0.0, as = 0.0;
        for (int j = 0; j < nlon; ++j) {
          ac += row[j] * cm[j];
          as += row[j] * sm[j];
        }
        cm_acc[m] = ac * dphi;
        sm_acc[m] = as * dphi;
      }
      const double wi = grid_->gl_weight(i);
      for (int m = 0; m <= L_; ++m) {
        const double* q = &plm_[qoff(m, i)];
        if (m == 0) {
          for (int l = 0; l <= L_; ++l)
            coeff[coeff_index(l, 0, false)] += wi * q[l] * cm_acc[0];
        } else {
          for (int l = m; l <= L_; ++l) {
            coeff[coeff_index(l, m, false)] += wi * q[l - m] * cm_acc[m];
            coeff[coeff_index(l, m, true)] += wi * q[l - m] * sm_acc[m];
          }
        }
      }
    }
    return coeff;
  }

  // evaluation at an arbitrary sphere point, O(L^2)
  double evaluate(const std::vector<double>& coeff, double t, double phi) const {
    check_coeff(coeff);
    std::vector<double> q(L_ + 1);
    double value = 0.0;
    for (int m = 0; m <= L_; ++m) {
      legendre_q_column(L_, m, t, q.data());
      double ac = 0.0, as = 0.0;
      if (m == 0) {
        for (int l = 0; l <= L_; ++l) ac += q[l] * coeff[coeff_index(l, 0, false)];
        value += ac;
        continue;
      }
      for (int l = m; l <= L_; ++l) {
        ac += q[l - m] * coeff[coeff_index(l, m, false)];
        as += q[l - m] * coeff[coeff_index(l, m, true)];
      }
      value += ac * std::cos(m * phi) + as * std::sin(m * phi);
    }
    return value;
  }

  double evaluate(const std::vector<double>& coeff, const Point& x) const {
    const auto v = x.sphere();
    return evaluate(coeff, v[2], std::atan2(v[1], v[0]));
  }

  // multiply degree-l coefficients by -l(l+1) (Laplace-Beltrami of ghat)
  std::vector<double> laplacian_coeffs(const std::vector<double>& coeff) const {
    check_coeff(coeff);
    std::vector<double> out(coeff.size());
    for (int l = 0; l <= L_; ++l) {
      const double f = -static_cast<double>(l) * (l + 1.0);
      for (std::size_t k = static_cast<std::size_t>(l) * l;
           k < static_cast<std::size_t>(l + 1) * (l + 1); ++k)
        out[k] = f * coeff[k];
    }
    return out;
  }

 private:
  std::size_t qoff(int m, int lat) const {
    return moff_[m] + static_cast<std::size_t>(lat) * (L_ + 1 - m);
  }
  void check_coeff(const std::vector<double>& coeff) const {
    if (coeff.size() != coeff_count(L_))
      throw std::invalid_argument("SphereHarmonics: coefficient count mismatch");
  }

  const QuadratureGrid* grid_;
  int L_;
  std::vector<std::size_t> moff_;
  std::vector<double> plm_, cosm_, sinm_;
};

}  // namespace lqg
