#include "core/hermite.hpp"

#include <cmath>

#include <Eigen/Dense>

#include "core/error.hpp"

namespace siopo {

void hermite_functions(int max_order, double t, double* out) {
  const double h0 = std::pow(M_PI, -0.25) * std::exp(-0.5 * t * t);
  out[0] = h0;
  if (max_order >= 1) out[1] = std::sqrt(2.0) * t * h0;
  for (int m = 2; m <= max_order; ++m)
    out[m] = std::sqrt(2.0 / m) * t * out[m - 1] -
             std::sqrt((m - 1.0) / m) * out[m - 2];
}

Eigen::MatrixXd hermite_functions(int max_order, const Eigen::VectorXd& nodes) {
  Eigen::MatrixXd h(max_order + 1, nodes.size());
  for (Eigen::Index i = 0; i < nodes.size(); ++i)
    hermite_functions(max_order, nodes[i], h.col(i).data());
  return h;
}

GaussHermiteRule gauss_hermite(int n) {
  if (n < 1) fail_validation("gauss_hermite: node count must be >= 1");
  GaussHermiteRule rule;
  rule.nodes.resize(n);
  rule.weights.resize(n);
  rule.comp_weights.resize(n);

  // Golub-Welsch: nodes are the eigenvalues of the symmetric tridiagonal
  // Jacobi matrix with off-diagonals sqrt(k/2).  Globally convergent at any
  // order, unlike chained Newton seeds.
  Eigen::MatrixXd jacobi = Eigen::MatrixXd::Zero(n, n);
  for (int k = 1; k < n; ++k) {
    const double b = std::sqrt(0.5 * k);
    jacobi(k - 1, k) = b;
    jacobi(k, k - 1) = b;
  }
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(jacobi);
  rule.nodes = es.eigenvalues();  // ascending

  // polish with Newton on the enveloped recurrence (the envelope cancels in
  // the step ratio), then enforce exact symmetry
  std::vector<double> h(n + 1);
  for (int i = 0; i < n; ++i) {
    double z = rule.nodes[i];
    for (int it = 0; it < 8; ++it) {
      hermite_functions(n, z, h.data());
      const double deriv = std::sqrt(2.0 * n) * h[n - 1];
      const double step = h[n] / deriv;
      z -= step;
      if (std::abs(step) <= 1e-15 * std::max(1.0, std::abs(z))) break;
    }
    rule.nodes[i] = z;
  }
  for (int i = 0; i < n / 2; ++i) {
    const double t = 0.5 * (rule.nodes[n - 1 - i] - rule.nodes[i]);
    rule.nodes[n - 1 - i] = t;
    rule.nodes[i] = -t;
  }
  if (n % 2 == 1) rule.nodes[n / 2] = 0.0;

  for (int i = 0; i < n; ++i) {
    const double t = rule.nodes[i];
    hermite_functions(n, t, h.data());
    rule.comp_weights[i] = 1.0 / (n * h[n - 1] * h[n - 1]);
    rule.weights[i] = rule.comp_weights[i] * std::exp(-t * t);
  }
  return rule;
}

}  // namespace siopo
