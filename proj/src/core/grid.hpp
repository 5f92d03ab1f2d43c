#pragma once

#include <memory>

#include <Eigen/Core>

#include "core/hermite.hpp"

namespace siopo {

// Tensor quadrature grid over the transverse plane, built on Gauss-Hermite
// nodes scaled by `width`.  Axis weights carry the node scale and the
// exp(+t^2) envelope compensation, so plain weighted sums of sampled fields
// approximate the free integral:
//
//   integral f dx dy  ~=  sum_ij wx[i] wy[j] f(x[i], y[j])
//
// exact for f = polynomial * exp(-(x^2+y^2)/width^2) up to degree 2n-1 per
// axis.  `width` should match the narrowest Gaussian envelope present in the
// integrand.
class TransverseGrid {
 public:
  TransverseGrid(double width, int nodes_per_axis);

  double width() const { return width_; }
  int nodes_per_axis() const { return static_cast<int>(x_.size()); }
  const Eigen::VectorXd& axis_nodes() const { return x_; }
  const Eigen::VectorXd& axis_weights() const { return w_; }

  // Quadrature of a sampled scalar, values in row-major (ix, iy) layout.
  std::complex<double> integrate(const Eigen::VectorXcd& values) const;

  bool compatible_with(const TransverseGrid& other) const {
    return width_ == other.width_ && x_.size() == other.x_.size();
  }

 private:
  double width_;
  Eigen::VectorXd x_;  // both axes share nodes
  Eigen::VectorXd w_;
};

using GridPtr = std::shared_ptr<const TransverseGrid>;

// Grid sized for integrands whose envelope is the product of Gaussians with
// the given 1/e field widths (one entry per participating field factor).
GridPtr make_grid_for_widths(const std::vector<double>& field_widths,
                             int nodes_per_axis);

}  // namespace siopo
