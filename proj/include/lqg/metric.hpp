#pragma once

// A metric g = e^phi * ghat conformally equivalent to the round metric,
// carried by its log-conformal factor at the grid nodes. phi == 0 encodes the
// round metric itself. Immutable after construction; theta_g is cached
// lazily by the green-function layer.

#include <cmath>
#include <functional>
#include <optional>
#include <stdexcept>
#include <vector>

#include "lqg/grid.hpp"
#include "lqg/mobius.hpp"

namespace lqg {

class ConformalMetric {
 public:
  explicit ConformalMetric(const QuadratureGrid& grid)
      : ConformalMetric(grid, std::vector<double>(grid.size(), 0.0)) {}

  ConformalMetric(const QuadratureGrid& grid, std::vector<double> phi)
      : grid_(&grid), phi_(std::move(phi)) {
    if (phi_.size() != grid.size())
      throw std::invalid_argument("ConformalMetric: phi size mismatch");
    lam_.resize(phi_.size());
    double s = 0.0;
    for (std::size_t k = 0; k < phi_.size(); ++k) {
      lam_[k] = std::exp(phi_[k]) * grid.weights()[k];
      if (!(lam_[k] > 0.0))
        throw std::invalid_argument("ConformalMetric: nonpositive cell weight");
      s += lam_[k];
    }
    total_ = s;
  }

  static ConformalMetric round(const QuadratureGrid& grid) {
    return ConformalMetric(grid);
  }

  // pulled-back round metric ghat_psi = |psi'|^2 ghat(psi)
  static ConformalMetric from_mobius(const QuadratureGrid& grid, const MobiusMap& psi) {
    std::vector<double> phi(grid.size());
    for (std::size_t k = 0; k < grid.size(); ++k)
      phi[k] = psi.conformal_factor(grid.nodes()[k]);
    return ConformalMetric(grid, phi);
  }

  static ConformalMetric from_function(const QuadratureGrid& grid,
                                       const std::function<double(const Point&)>& f) {
    std::vector<double> phi(grid.size());
    for (std::size_t k = 0; k < grid.size(); ++k) phi[k] = f(grid.nodes()[k]);
    return ConformalMetric(grid, phi);
  }

  const QuadratureGrid& grid() const { return *grid_; }
  const std::vector<double>& phi() const { return phi_; }
  const std::vector<double>& weights() const { return lam_; }  // lambda_g cell weights
  double total() const { return total_; }
  bool is_round() const {
    for (double p : phi_)
      if (p != 0.0) return false;
    return true;
  }

  // mean value m_g(h) of a node-sampled function
  double mean(const std::vector<double>& h) const {
    if (h.size() != lam_.size())
      throw std::invalid_argument("ConformalMetric::mean: size mismatch");
    double s = 0.0, c = 0.0;
    for (std::size_t k = 0; k < h.size(); ++k) {
      const double x = h[k] * lam_[k];
      const double t = s + x;
      c += (std::fabs(s) >= std::fabs(x)) ? (s - t) + x : (x - t) + s;
      s = t;
    }
    return (s + c) / total_;
  }

  mutable std::optional<double> cached_theta;

 private:
  const QuadratureGrid* grid_;
  std::vector<double> phi_;
  std::vector<double> lam_;
  double total_ = 0.0;
};

}  // namespace lqg
