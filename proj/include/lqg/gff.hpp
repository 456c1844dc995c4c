#pragma once

// Gaussian free field samplers.
//
// Spectral route: independent N(0,1) weights on every degree >= 1 harmonic,
// scaled by sqrt(2 pi / (l(l+1))), so the synthesized covariance is the
// degree-truncated Green series and the per-node variance is the
// deterministic sigma2_truncated(L) at every point. The degree-0 mode is
// identically zero (vanishing lambda_ghat mean).
//
// Exact route: dense Gram factorization of the Green covariance on a point
// set, with the diagonal taken from the band-limited truncation so that the
// matrix represents the field mollified at the cutoff scale.

#include <Eigen/Cholesky>
#include <Eigen/Dense>

#include <cmath>
#include <cstdint>
#include <cstdio>
#include <cstring>
#include <numbers>
#include <stdexcept>
#include <string>
#include <vector>

#include "lqg/green.hpp"
#include "lqg/grid.hpp"
#include "lqg/harmonics.hpp"
#include "lqg/metric.hpp"
#include "lqg/rng.hpp"

namespace lqg {

struct SpectralFieldSample {
  int band_limit = 0;
  std::vector<double> coeffs;       // (L+1)^2 layout, degree-0 entry zero
  std::vector<double> node_values;  // synthesized on the owning grid
  double sigma2 = 0.0;              // truncated point variance (x-independent)
  std::uint64_t seed = 0;
  std::uint64_t stream = 0;
};

inline std::vector<double> draw_spectral_coeffs(int L, RngStream& rng) {
  std::vector<double> coeffs(coeff_count(L), 0.0);
  for (int l = 1; l <= L; ++l) {
    const double amp = mode_amplitude(l);
    coeffs[coeff_index(l, 0, false)] = amp * rng.gaussian();
    for (int m = 1; m <= l; ++m) {
      coeffs[coeff_index(l, m, false)] = amp * rng.gaussian();
      coeffs[coeff_index(l, m, true)] = amp * rng.gaussian();
    }
  }
  return coeffs;
}

inline SpectralFieldSample sample_spectral(const SphereHarmonics& sh,
                                           std::uint64_t seed, std::uint64_t stream) {
  RngStream rng(seed, stream);
  SpectralFieldSample s;
  s.band_limit = sh.band_limit();
  s.seed = seed;
  s.stream = stream;
  s.coeffs = draw_spectral_coeffs(s.band_limit, rng);
  s.node_values = sh.synthesize(s.coeffs);
  s.sigma2 = sigma2_truncated(s.band_limit);
  return s;
}

// coefficients only (node synthesis skipped), for point evaluations
inline SpectralFieldSample sample_spectral_coeffs_only(int L, std::uint64_t seed,
                                                       std::uint64_t stream) {
  RngStream rng(seed, stream);
  SpectralFieldSample s;
  s.band_limit = L;
  s.seed = seed;
  s.stream = stream;
  s.coeffs = draw_spectral_coeffs(L, rng);
  s.sigma2 = sigma2_truncated(L);
  return s;
}

// Rule for changing metrics: X - m_{g'}(X) has the law of the g'-centered
// field. Idempotent for fixed g'.
inline std::vector<double> recenter(const std::vector<double>& values,
                                    const ConformalMetric& gprime) {
  const double m = gprime.mean(values);
  std::vector<double> out(values);
  for (auto& v : out) v -= m;
  return out;
}

// circle average of a sampled field over the planar circle x + eps e^{i theta}
inline double circle_average(const SphereHarmonics& sh,
                             const std::vector<double>& coeffs, const Point& x,
                             double eps, int ntheta) {
  if (!(eps > 0.0)) throw std::invalid_argument("circle_average: eps must be positive");
  if (ntheta < std::max(16, 4 * sh.band_limit()))
    throw std::invalid_argument("circle_average: too few angular nodes for the band limit");
  double acc = 0.0;
  for (int k = 0; k < ntheta; ++k) {
    const double a = 2.0 * std::numbers::pi * k / ntheta;
    acc += sh.evaluate(coeffs, Point(x.re + eps * std::cos(a), x.im + eps * std::sin(a)));
  }
  return acc / ntheta;
}

// Deterministic double-circle quadrature of a covariance around x at radius
// eps. The kernels are of the form -ln|u-v| + s(u) + s(v) + const, and the
// double circle average of the log part is exactly -ln(eps), so only the
// smooth part is quadratured.

// round metric: G = -ln|u-v| - 1/4 ln ghat(u) - 1/4 ln ghat(v) + const
inline double circle_variance_round(const Point& x, double eps, int ntheta = 64) {
  double s = 0.0;
  for (int k = 0; k < ntheta; ++k) {
    const double a = 2.0 * std::numbers::pi * k / ntheta;
    s += log_round_density(Point(x.re + eps * std::cos(a), x.im + eps * std::sin(a)));
  }
  return -std::log(eps) - 0.5 * (s / ntheta) + kGreenConstant;
}

// general metric: G_g = -ln|u-v| - m_g(ln 1/|u-.|) - m_g(ln 1/|v-.|) + theta_g
inline double circle_variance(const ConformalMetric& g, const SphereHarmonics& sh,
                              const Point& x, double eps, int ntheta = 64) {
  double s = 0.0;
  for (int k = 0; k < ntheta; ++k) {
    const double a = 2.0 * std::numbers::pi * k / ntheta;
    s += log_kernel_mean(g, Point(x.re + eps * std::cos(a), x.im + eps * std::sin(a)));
  }
  return -std::log(eps) - 2.0 * (s / ntheta) + theta(g, sh);
}

// variance of the band-limited circle average at the origin (planar radius
// eps is the colatitude ring tan(theta/2) = eps; m != 0 modes cancel exactly)
inline double circle_variance_truncated_origin(int L, double eps) {
  const double t = (1.0 - eps * eps) / (1.0 + eps * eps);
  double pm1 = 1.0, p = t, acc = 0.0;
  for (int l = 1; l <= L; ++l) {
    acc += (2.0 * l + 1.0) / (2.0 * l * (l + 1.0)) * p * p;
    const double pn = ((2.0 * l + 1.0) * t * p - l * pm1) / (l + 1.0);
    pm1 = p;
    p = pn;
  }
  return acc;
}

struct PointSetSample {
  std::vector<Point> points;
  std::vector<double> values;
  std::uint64_t seed = 0;
  std::uint64_t stream = 0;
};

// Exact Gram sampler on a fixed point set. Off-diagonal entries are the
// quadrature Green function of the metric; the diagonal is the truncated
// variance of the recentered band-limited field,
//   sigma_L^2 - 2 m_g(G_L(x,.)) + m_g m_g(G_L),
// evaluated spectrally through the analysis coefficients of e^phi.
class GramSampler {
 public:
  GramSampler(std::vector<Point> points, const ConformalMetric& g,
              const SphereHarmonics& sh, double jitter = 1e-10)
      : points_(std::move(points)) {
    const std::size_t n = points_.size();
    if (n == 0) throw std::invalid_argument("GramSampler: empty point set");
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = i + 1; j < n; ++j)
        if (points_[i].re == points_[j].re && points_[i].im == points_[j].im)
          throw std::invalid_argument("GramSampler: points must be distinct");

    const int L = sh.band_limit();
    // analysis coefficients of the conformal density e^phi
    std::vector<double> density(g.grid().size());
    for (std::size_t k = 0; k < density.size(); ++k)
      density[k] = g.weights()[k] / g.grid().weights()[k];
    const auto h = sh.analyze(density);

    double gmean2 = 0.0;
    for (int l = 1; l <= L; ++l) {
      double block = 0.0;
      for (std::size_t q = coeff_index(l, 0, false); q < coeff_count(l); ++q)
        block += h[q] * h[q];
      gmean2 += 2.0 * std::numbers::pi / (static_cast<double>(l) * (l + 1.0)) * block;
    }
    gmean2 /= g.total() * g.total();

    // m_g(G_L(x_i, .)) per point
    std::vector<double> mg(n);
    std::vector<double> q(L + 1);
    for (std::size_t i = 0; i < n; ++i) {
      const auto v = points_[i].sphere();
      const double t = v[2];
      const double phi = std::atan2(v[1], v[0]);
      double acc = 0.0;
      for (int m = 0; m <= L; ++m) {
        legendre_q_column(L, m, t, q.data());
        const double cm = std::cos(m * phi), sm = std::sin(m * phi);
        for (int l = std::max(1, m); l <= L; ++l) {
          const double w = 2.0 * std::numbers::pi / (static_cast<double>(l) * (l + 1.0));
          if (m == 0) {
            acc += w * q[l] * h[coeff_index(l, 0, false)];
          } else {
            acc += w * q[l - m] *
                   (cm * h[coeff_index(l, m, false)] + sm * h[coeff_index(l, m, true)]);
          }
        }
      }
      mg[i] = acc / g.total();
    }

    const double s2 = sigma2_truncated(L);
    std::vector<double> lkm(n);
    for (std::size_t i = 0; i < n; ++i) lkm[i] = log_kernel_mean(g, points_[i]);
    const double th = theta(g, sh);

    Eigen::MatrixXd cov(n, n);
    for (std::size_t i = 0; i < n; ++i) {
      cov(i, i) = s2 - 2.0 * mg[i] + gmean2 + jitter;
      for (std::size_t j = i + 1; j < n; ++j) {
        const double d = std::hypot(points_[i].re - points_[j].re,
                                    points_[i].im - points_[j].im);
        const double val = -std::log(d) - lkm[i] - lkm[j] + th;
        cov(i, j) = val;
        cov(j, i) = val;
      }
    }
    cov_ = cov;
    Eigen::LLT<Eigen::MatrixXd> llt(cov);
    if (llt.info() != Eigen::Success)
      throw std::runtime_error(
          "GramSampler: covariance not positive definite after jitter "
          "(points too close for the band limit?)");
    chol_ = llt.matrixL();
  }

  const Eigen::MatrixXd& covariance() const { return cov_; }
  const std::vector<Point>& points() const { return points_; }

  PointSetSample draw(std::uint64_t seed, std::uint64_t stream) const {
    RngStream rng(seed, stream);
    const std::size_t n = points_.size();
    Eigen::VectorXd xi(n);
    for (std::size_t i = 0; i < n; ++i) xi(i) = rng.gaussian();
    Eigen::VectorXd x = chol_ * xi;
    PointSetSample s;
    s.points = points_;
    s.values.assign(x.data(), x.data() + n);
    s.seed = seed;
    s.stream = stream;
    return s;
  }

 private:
  std::vector<Point> points_;
  Eigen::MatrixXd cov_;
  Eigen::MatrixXd chol_;
};

// ---- binary coefficient dumps (little-endian) ----
// header: u32 band_limit, u64 seed, u32 count; then count doubles

namespace detail {
inline void put_u32(std::FILE* f, std::uint32_t v) {
  unsigned char b[4];
  for (int i = 0; i < 4; ++i) b[i] = (v >> (8 * i)) & 0xff;
  std::fwrite(b, 1, 4, f);
}
inline void put_u64(std::FILE* f, std::uint64_t v) {
  unsigned char b[8];
  for (int i = 0; i < 8; ++i) b[i] = (v >> (8 * i)) & 0xff;
  std::fwrite(b, 1, 8, f);
}
inline std::uint32_t get_u32(std::FILE* f) {
  unsigned char b[4];
  if (std::fread(b, 1, 4, f) != 4) throw std::runtime_error("field dump: truncated");
  std::uint32_t v = 0;
  for (int i = 0; i < 4; ++i) v |= static_cast<std::uint32_t>(b[i]) << (8 * i);
  return v;
}
inline std::uint64_t get_u64(std::FILE* f) {
  unsigned char b[8];
  if (std::fread(b, 1, 8, f) != 8) throw std::runtime_error("field dump: truncated");
  std::uint64_t v = 0;
  for (int i = 0; i < 8; ++i) v |= static_cast<std::uint64_t>(b[i]) << (8 * i);
  return v;
}
}  // namespace detail

inline void write_field_dump(const std::string& path, const SpectralFieldSample& s) {
  std::FILE* f = std::fopen(path.c_str(), "wb");
  if (!f) throw std::runtime_error("write_field_dump: cannot open " + path);
  detail::put_u32(f, static_cast<std::uint32_t>(s.band_limit));
  detail::put_u64(f, s.seed);
  detail::put_u32(f, static_cast<std::uint32_t>(s.coeffs.size()));
  for (double c : s.coeffs) {
    std::uint64_t bits;
    static_assert(sizeof(bits) == sizeof(c));
    std::memcpy(&bits, &c, 8);
    detail::put_u64(f, bits);
  }
  std::fclose(f);
}

inline SpectralFieldSample read_field_dump(const std::string& path) {
  std::FILE* f = std::fopen(path.c_str(), "rb");
  if (!f) throw std::runtime_error("read_field_dump: cannot open " + path);
  SpectralFieldSample s;
  s.band_limit = static_cast<int>(detail::get_u32(f));
  s.seed = detail::get_u64(f);
  const std::uint32_t count = detail::get_u32(f);
  if (count != coeff_count(s.band_limit)) {
    std::fclose(f);
    throw std::runtime_error("read_field_dump: inconsistent header");
  }
  s.coeffs.resize(count);
  for (auto& c : s.coeffs) {
    const std::uint64_t bits = detail::get_u64(f);
    std::memcpy(&c, &bits, 8);
  }
  std::fclose(f);
  s.sigma2 = sigma2_truncated(s.band_limit);
  return s;
}

}  // namespace lqg
