#pragma once

// Special functions needed by the estimators: regularized incomplete gamma
// (for Gamma CDFs), the Kolmogorov distribution (for KS tests) and a couple
// of small statistical helpers.

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <limits>
#include <stdexcept>
#include <vector>

namespace lqg {

// Regularized lower incomplete gamma P(a,x); series for x < a+1, continued
// fraction otherwise (Lentz).
inline double gamma_p(double a, double x) {
  if (a <= 0.0 || x < 0.0) throw std::invalid_argument("gamma_p: bad arguments");
  if (x == 0.0) return 0.0;
  const double lg = std::lgamma(a);
  if (x < a + 1.0) {
    double ap = a;
    double sum = 1.0 / a;
    double del = sum;
    for (int n = 0; n < 500; ++n) {
      ap += 1.0;
      del *= x / ap;
      sum += del;
      if (std::fabs(del) < std::fabs(sum) * 1e-16)
        return sum * std::exp(-x + a * std::log(x) - lg);
    }
    throw std::runtime_error("gamma_p: series did not converge");
  }
  const double tiny = 1e-300;
  double b = x + 1.0 - a;
  double c = 1.0 / tiny;
  double d = 1.0 / b;
  double h = d;
  for (int i = 1; i < 500; ++i) {
    const double an = -static_cast<double>(i) * (static_cast<double>(i) - a);
    b += 2.0;
    d = an * d + b;
    if (std::fabs(d) < tiny) d = tiny;
    c = b + an / c;
    if (std::fabs(c) < tiny) c = tiny;
    d = 1.0 / d;
    const double delta = d * c;
    h *= delta;
    if (std::fabs(delta - 1.0) < 1e-16) break;
  }
  const double q = std::exp(-x + a * std::log(x) - lg) * h;
  return 1.0 - q;
}

// CDF of Gamma(shape, rate): P(shape, rate*x).
inline double gamma_cdf(double x, double shape, double rate) {
  if (x <= 0.0) return 0.0;
  return gamma_p(shape, rate * x);
}

// Kolmogorov survival function Q(lambda) = 2 sum_{k>=1} (-1)^{k-1} e^{-2k^2 lambda^2}.
inline double kolmogorov_q(double lambda) {
  if (lambda < 1e-8) return 1.0;
  double sum = 0.0;
  double sign = 1.0;
  for (int k = 1; k <= 100; ++k) {
    const double term = std::exp(-2.0 * k * k * lambda * lambda);
    sum += sign * term;
    if (term < 1e-16) break;
    sign = -sign;
  }
  return std::clamp(2.0 * sum, 0.0, 1.0);
}

// p-value of a one-sample KS statistic d at effective sample size n, with the
// usual finite-n correction.
inline double ks_p_value(double d, double n_eff) {
  const double rn = std::sqrt(n_eff);
  return kolmogorov_q((rn + 0.12 + 0.11 / rn) * d);
}

// critical KS statistic at significance alpha (one-sample, asymptotic)
inline double ks_critical(double alpha, double n_eff) {
  double lo = 1e-4, hi = 4.0;
  for (int it = 0; it < 200; ++it) {
    const double mid = 0.5 * (lo + hi);
    if (kolmogorov_q(mid) > alpha)
      lo = mid;
    else
      hi = mid;
  }
  return 0.5 * (lo + hi) / std::sqrt(n_eff);
}

struct MeanSe {
  double mean = 0.0;
  double se = 0.0;
  std::size_t n = 0;
};

// Neumaier-compensated sum.
inline double compensated_sum(const std::vector<double>& v) {
  double sum = 0.0, comp = 0.0;
  for (double x : v) {
    const double t = sum + x;
    if (std::fabs(sum) >= std::fabs(x))
      comp += (sum - t) + x;
    else
      comp += (x - t) + sum;
    sum = t;
  }
  return sum + comp;
}

inline MeanSe mean_se(const std::vector<double>& v) {
  MeanSe r;
  r.n = v.size();
  if (v.empty()) return r;
  r.mean = compensated_sum(v) / static_cast<double>(v.size());
  if (v.size() < 2) return r;
  double ss = 0.0;
  for (double x : v) ss += (x - r.mean) * (x - r.mean);
  r.se = std::sqrt(ss / (static_cast<double>(v.size()) - 1.0) /
                   static_cast<double>(v.size()));
  return r;
}

// Self-normalized importance-sampling mean of f with weights w, with a
// delta-method standard error and the effective sample size (sum w)^2/sum w^2.
struct WeightedMean {
  double mean = 0.0;
  double se = 0.0;
  double n_eff = 0.0;
};

inline WeightedMean weighted_mean(const std::vector<double>& f,
                                  const std::vector<double>& w) {
  if (f.size() != w.size() || f.empty())
    throw std::invalid_argument("weighted_mean: size mismatch");
  double sw = 0.0, sw2 = 0.0, swf = 0.0;
  for (std::size_t i = 0; i < f.size(); ++i) {
    sw += w[i];
    sw2 += w[i] * w[i];
    swf += w[i] * f[i];
  }
  WeightedMean r;
  r.mean = swf / sw;
  r.n_eff = sw * sw / sw2;
  double s = 0.0;
  for (std::size_t i = 0; i < f.size(); ++i) {
    const double d = w[i] * (f[i] - r.mean);
    s += d * d;
  }
  r.se = std::sqrt(s) / sw;
  return r;
}

}  // namespace lqg
