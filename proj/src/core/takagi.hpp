#pragma once

#include <Eigen/Core>

namespace siopo {

// Autonne-Takagi factorization of a complex symmetric matrix:
//
//   K = U diag(gain_k exp(i phase_k)) U^T
//
// with U unitary, gains >= 0 sorted descending, and U columns in canonical
// phase (largest-magnitude entry real positive; the leftover column phase is
// folded into phase_k).  A numerically real symmetric input reduces to the
// real orthogonal eigendecomposition with phases in {0, pi} carrying the
// eigenvalue signs.
struct TakagiFactorization {
  Eigen::MatrixXcd vectors;  // unitary, one column per mode
  Eigen::VectorXd gains;     // descending, >= 0
  Eigen::VectorXd phases;    // in (-pi, pi]
};

// `symmetry_tol` is relative to the largest entry; asymmetry beyond it is an
// error, below it the input is symmetrized before factorizing.
TakagiFactorization takagi_factorize(const Eigen::MatrixXcd& matrix,
                                     double symmetry_tol = 1e-10);

double takagi_reconstruction_error(const Eigen::MatrixXcd& matrix,
                                   const TakagiFactorization& f);

}  // namespace siopo
