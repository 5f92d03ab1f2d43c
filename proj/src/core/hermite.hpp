#pragma once

#include <vector>

#include <Eigen/Core>

namespace siopo {

// Orthonormal Hermite functions h_m(t) = H_m(t) exp(-t^2/2) / sqrt(2^m m! sqrt(pi)),
// physicists' convention, evaluated by the normalized three-term recurrence.
// Stable to order of a few hundred.  Satisfy  integral h_m h_q dt = delta_mq.
void hermite_functions(int max_order, double t, double* out);

// Column i holds h_0..h_max_order at nodes[i].
Eigen::MatrixXd hermite_functions(int max_order, const Eigen::VectorXd& nodes);

// Gauss-Hermite rule.  `weights` are the classical weights (sum = sqrt(pi)).
// `comp_weights` are weights * exp(node^2), computed without forming either
// factor: edge-node weights underflow past n ~ 120 while the compensated
// product stays O(1), so it is evaluated directly as 1 / (n * h_{n-1}(t)^2).
struct GaussHermiteRule {
  Eigen::VectorXd nodes;         // ascending
  Eigen::VectorXd weights;
  Eigen::VectorXd comp_weights;
};

GaussHermiteRule gauss_hermite(int n);

}  // namespace siopo
