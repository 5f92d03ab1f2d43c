#include <doctest.h>

#include <cmath>
#include <random>

#include <Eigen/Dense>

#include "core/takagi.hpp"

using namespace siopo;
using Complex = std::complex<double>;

TEST_CASE("diagonal positive matrix") {
  Eigen::MatrixXcd k = Eigen::MatrixXcd::Zero(2, 2);
  k(0, 0) = 2.0;
  k(1, 1) = 1.0;
  const TakagiFactorization f = takagi_factorize(k);
  CHECK(f.gains[0] == doctest::Approx(2.0));
  CHECK(f.gains[1] == doctest::Approx(1.0));
  CHECK(f.phases[0] == doctest::Approx(0.0));
  CHECK(f.phases[1] == doctest::Approx(0.0));
  CHECK(std::abs(f.vectors(0, 0)) == doctest::Approx(1.0));
  CHECK(std::abs(f.vectors(1, 1)) == doctest::Approx(1.0));
}

TEST_CASE("sign maps to the mode phase") {
  Eigen::MatrixXcd k = Eigen::MatrixXcd::Zero(2, 2);
  k(0, 0) = 1.0;
  k(1, 1) = -1.0;
  const TakagiFactorization f = takagi_factorize(k);
  CHECK(f.gains[0] == doctest::Approx(1.0));
  CHECK(f.gains[1] == doctest::Approx(1.0));
  CHECK(f.phases[0] == doctest::Approx(0.0));
  CHECK(std::abs(f.phases[1]) == doctest::Approx(M_PI));
  CHECK(takagi_reconstruction_error(k, f) < 1e-14);
}

TEST_CASE("random complex symmetric matrices reconstruct") {
  std::mt19937_64 rng(11);
  std::normal_distribution<double> gauss(0.0, 1.0);
  for (int trial = 0; trial < 25; ++trial) {
    const int n = 2 + static_cast<int>(rng() % 15);
    Eigen::MatrixXcd k(n, n);
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) k(i, j) = Complex(gauss(rng), gauss(rng));
    k = ((k + k.transpose()) / 2.0).eval();
    const TakagiFactorization f = takagi_factorize(k);
    CHECK(takagi_reconstruction_error(k, f) < 1e-10);
    // unitary and descending
    const double ortho =
        (f.vectors.adjoint() * f.vectors - Eigen::MatrixXcd::Identity(n, n))
            .cwiseAbs()
            .maxCoeff();
    CHECK(ortho < 1e-10);
    for (int i = 1; i < n; ++i) CHECK(f.gains[i] <= f.gains[i - 1] + 1e-12);
  }
}

TEST_CASE("real symmetric input stays real with phases in {0, pi}") {
  std::mt19937_64 rng(13);
  std::normal_distribution<double> gauss(0.0, 1.0);
  Eigen::MatrixXcd k(6, 6);
  for (int i = 0; i < 6; ++i)
    for (int j = 0; j < 6; ++j) k(i, j) = gauss(rng);
  k = ((k + k.transpose()) / 2.0).eval();
  const TakagiFactorization f = takagi_factorize(k);
  CHECK(f.vectors.imag().cwiseAbs().maxCoeff() < 1e-13);
  for (int i = 0; i < 6; ++i) {
    const bool zero = std::abs(f.phases[i]) < 1e-12;
    const bool pi = std::abs(std::abs(f.phases[i]) - M_PI) < 1e-12;
    CHECK((zero || pi));
  }
  CHECK(takagi_reconstruction_error(k, f) < 1e-12);
}

TEST_CASE("degenerate gains from a unitary symmetric block") {
  // K = exp(i phi) * I has every gain equal; any unitary with U U^T = K works
  Eigen::MatrixXcd k = std::polar(1.0, 0.7) * Eigen::MatrixXcd::Identity(4, 4);
  const TakagiFactorization f = takagi_factorize(k);
  for (int i = 0; i < 4; ++i) CHECK(f.gains[i] == doctest::Approx(1.0));
  CHECK(takagi_reconstruction_error(k, f) < 1e-12);
}

TEST_CASE("complex symmetric with clustered singular values") {
  std::mt19937_64 rng(17);
  std::normal_distribution<double> gauss(0.0, 1.0);
  // build K = U D U^T with a repeated gain to force a degenerate group
  Eigen::MatrixXcd a(5, 5);
  for (int i = 0; i < 5; ++i)
    for (int j = 0; j < 5; ++j) a(i, j) = Complex(gauss(rng), gauss(rng));
  const Eigen::HouseholderQR<Eigen::MatrixXcd> qr(a);
  Eigen::MatrixXcd u = qr.householderQ();
  Eigen::VectorXcd d(5);
  d << 3.0, 2.0, 2.0, 2.0, 0.5;
  const Eigen::MatrixXcd k = u * d.asDiagonal() * u.transpose();
  const TakagiFactorization f = takagi_factorize(k);
  CHECK(takagi_reconstruction_error(k, f) < 1e-10);
  CHECK(f.gains[0] == doctest::Approx(3.0).epsilon(1e-10));
  CHECK(f.gains[1] == doctest::Approx(2.0).epsilon(1e-10));
  CHECK(f.gains[3] == doctest::Approx(2.0).epsilon(1e-10));
  CHECK(f.gains[4] == doctest::Approx(0.5).epsilon(1e-10));
}

TEST_CASE("asymmetric input is rejected") {
  Eigen::MatrixXcd k(2, 2);
  k << 1.0, 0.5, -0.5, 1.0;
  CHECK_THROWS(takagi_factorize(k));
}

TEST_CASE("zero matrix factorizes cleanly") {
  const Eigen::MatrixXcd k = Eigen::MatrixXcd::Zero(3, 3);
  const TakagiFactorization f = takagi_factorize(k);
  for (int i = 0; i < 3; ++i) CHECK(f.gains[i] == 0.0);
  CHECK(takagi_reconstruction_error(k, f) < 1e-15);
}
