#include <doctest.h>

#include <cmath>

#include "core/grid.hpp"
#include "core/hermite.hpp"

using namespace siopo;

TEST_CASE("gauss-hermite weights sum to sqrt(pi)") {
  for (int n : {3, 8, 21, 58, 90}) {
    const GaussHermiteRule rule = gauss_hermite(n);
    CHECK(rule.weights.sum() == doctest::Approx(std::sqrt(M_PI)).epsilon(1e-13));
  }
}

TEST_CASE("gauss-hermite integrates gaussian moments exactly") {
  const GaussHermiteRule rule = gauss_hermite(12);
  // integral t^{2k} exp(-t^2) dt = gamma(k + 1/2)
  double expected = std::sqrt(M_PI);  // k = 0
  for (int k = 0; k <= 5; ++k) {
    double acc = 0.0;
    for (int i = 0; i < 12; ++i)
      acc += rule.weights[i] * std::pow(rule.nodes[i], 2 * k);
    CHECK(acc == doctest::Approx(expected).epsilon(1e-12));
    expected *= (k + 0.5);
  }
}

TEST_CASE("compensated weights stay finite and positive at high order") {
  const GaussHermiteRule rule = gauss_hermite(200);
  for (int i = 0; i < 200; ++i) {
    CHECK(std::isfinite(rule.comp_weights[i]));
    CHECK(rule.comp_weights[i] > 0.0);
  }
  // and they still integrate an enveloped polynomial: h_0^2 has unit norm
  double acc = 0.0;
  for (int i = 0; i < 200; ++i) {
    double h[1];
    hermite_functions(0, rule.nodes[i], h);
    acc += rule.comp_weights[i] * h[0] * h[0];
  }
  CHECK(acc == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("hermite functions are orthonormal under the rule") {
  const int order = 12;
  const GaussHermiteRule rule = gauss_hermite(2 * order + 4);
  const Eigen::MatrixXd h = hermite_functions(order, rule.nodes);
  for (int a = 0; a <= order; ++a)
    for (int b = a; b <= order; ++b) {
      double acc = 0.0;
      for (Eigen::Index i = 0; i < rule.nodes.size(); ++i)
        acc += rule.comp_weights[i] * h(a, i) * h(b, i);
      CHECK(acc == doctest::Approx(a == b ? 1.0 : 0.0).epsilon(1e-12));
    }
}

TEST_CASE("transverse grid integrates a unit gaussian to one") {
  const double w = 90e-6;
  // |u00|^2 has envelope exp(-2 r^2 / w^2): width w / sqrt(2)
  GridPtr grid = make_grid_for_widths({w, w}, 40);
  const Eigen::VectorXd& xs = grid->axis_nodes();
  Eigen::VectorXcd values(xs.size() * xs.size());
  const double peak = 2.0 / (M_PI * w * w);
  for (Eigen::Index i = 0; i < xs.size(); ++i)
    for (Eigen::Index j = 0; j < xs.size(); ++j)
      values[i * xs.size() + j] =
          peak * std::exp(-2.0 * (xs[i] * xs[i] + xs[j] * xs[j]) / (w * w));
  CHECK(grid->integrate(values).real() == doctest::Approx(1.0).epsilon(1e-10));
}

TEST_CASE("grid rejects ill-formed input") {
  CHECK_THROWS(TransverseGrid(-1.0, 10));
  CHECK_THROWS(TransverseGrid(1.0, 0));
  const TransverseGrid g(1.0, 4);
  Eigen::VectorXcd wrong(5);
  CHECK_THROWS(g.integrate(wrong));
}
