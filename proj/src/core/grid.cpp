#include "core/grid.hpp"

#include <cmath>
#include <complex>

#include "core/error.hpp"

namespace siopo {

TransverseGrid::TransverseGrid(double width, int nodes_per_axis)
    : width_(width) {
  if (!(width > 0.0)) fail_validation("TransverseGrid: width must be > 0");
  if (nodes_per_axis < 1) fail_validation("TransverseGrid: need >= 1 node");
  const GaussHermiteRule rule = gauss_hermite(nodes_per_axis);
  x_ = width * rule.nodes;
  w_ = width * rule.comp_weights;
}

std::complex<double> TransverseGrid::integrate(
    const Eigen::VectorXcd& values) const {
  const Eigen::Index n = x_.size();
  if (values.size() != n * n)
    fail_validation("TransverseGrid::integrate: sample count mismatch");
  std::complex<double> acc = 0.0;
  for (Eigen::Index i = 0; i < n; ++i) {
    std::complex<double> row = 0.0;
    for (Eigen::Index j = 0; j < n; ++j) row += w_[j] * values[i * n + j];
    acc += w_[i] * row;
  }
  return acc;
}

GridPtr make_grid_for_widths(const std::vector<double>& field_widths,
                             int nodes_per_axis) {
  double inv_sq = 0.0;
  for (double w : field_widths) {
    if (!(w > 0.0)) fail_validation("grid: field width must be > 0");
    inv_sq += 1.0 / (w * w);
  }
  if (inv_sq <= 0.0) fail_validation("grid: need at least one field width");
  return std::make_shared<TransverseGrid>(1.0 / std::sqrt(inv_sq),
                                          nodes_per_axis);
}

}  // namespace siopo
