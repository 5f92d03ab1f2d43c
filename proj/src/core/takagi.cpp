#include "core/takagi.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <numeric>
#include <vector>

#include <Eigen/Dense>
#include <Eigen/SVD>

#include "core/error.hpp"

namespace siopo {

namespace {

using Eigen::MatrixXcd;
using Eigen::MatrixXd;
using Eigen::VectorXd;

// Joint diagonalization of commuting real symmetric R, I with R^2 + I^2 = 1
// (the real and imaginary parts of a unitary symmetric matrix).  Eigenvectors
// of R are refined inside each eigenvalue cluster by diagonalizing the
// projection of I there.
MatrixXd jointly_diagonalize(const MatrixXd& r, const MatrixXd& i) {
  Eigen::SelfAdjointEigenSolver<MatrixXd> es(r);
  MatrixXd basis = es.eigenvectors();
  const VectorXd vals = es.eigenvalues();
  const Eigen::Index n = r.rows();
  Eigen::Index start = 0;
  while (start < n) {
    Eigen::Index stop = start + 1;
    while (stop < n && std::abs(vals[stop] - vals[start]) < 1e-7) ++stop;
    if (stop - start > 1) {
      const MatrixXd sub = basis.middleCols(start, stop - start);
      Eigen::SelfAdjointEigenSolver<MatrixXd> es2(
          MatrixXd(sub.transpose() * i * sub));
      basis.middleCols(start, stop - start) = sub * es2.eigenvectors();
    }
    start = stop;
  }
  return basis;
}

// Takagi factor Q of a unitary symmetric matrix: C = Q Q^T.
MatrixXcd unitary_symmetric_sqrt(const MatrixXcd& c) {
  const MatrixXd r = 0.5 * (c.real() + c.real().transpose());
  const MatrixXd i = 0.5 * (c.imag() + c.imag().transpose());
  const MatrixXd o = jointly_diagonalize(r, i);
  const Eigen::Index n = c.rows();
  Eigen::VectorXcd half_phase(n);
  for (Eigen::Index j = 0; j < n; ++j) {
    const double re = o.col(j).dot(r * o.col(j));
    const double im = o.col(j).dot(i * o.col(j));
    half_phase[j] = std::polar(1.0, 0.5 * std::atan2(im, re));
  }
  return o * half_phase.asDiagonal();
}

}  // namespace

TakagiFactorization takagi_factorize(const Eigen::MatrixXcd& matrix,
                                     double symmetry_tol) {
  const Eigen::Index n = matrix.rows();
  if (n == 0 || matrix.cols() != n)
    fail_validation("takagi: matrix must be square and non-empty");
  const double scale = matrix.cwiseAbs().maxCoeff();
  const double asym = (matrix - matrix.transpose()).cwiseAbs().maxCoeff();
  if (scale > 0.0 && asym > symmetry_tol * scale)
    fail_validation("takagi: input is not symmetric within tolerance");
  const MatrixXcd k = 0.5 * (matrix + matrix.transpose());

  TakagiFactorization f;
  f.vectors.resize(n, n);
  f.gains.resize(n);
  f.phases.setZero(n);

  const bool numerically_real =
      scale == 0.0 || k.imag().cwiseAbs().maxCoeff() <= 1e-13 * scale;

  if (numerically_real) {
    Eigen::SelfAdjointEigenSolver<MatrixXd> es(k.real());
    const VectorXd vals = es.eigenvalues();
    std::vector<Eigen::Index> order(n);
    std::iota(order.begin(), order.end(), Eigen::Index{0});
    std::stable_sort(order.begin(), order.end(),
                     [&](Eigen::Index a, Eigen::Index b) {
                       const double ma = std::abs(vals[a]);
                       const double mb = std::abs(vals[b]);
                       if (ma != mb) return ma > mb;
                       return vals[a] > vals[b];  // ties: positive first
                     });
    for (Eigen::Index j = 0; j < n; ++j) {
      const Eigen::Index s = order[j];
      f.vectors.col(j) = es.eigenvectors().col(s).cast<std::complex<double>>();
      f.gains[j] = std::abs(vals[s]);
      f.phases[j] = vals[s] < 0.0 ? M_PI : 0.0;
    }
  } else {
    Eigen::BDCSVD<MatrixXcd> svd(k, Eigen::ComputeFullU | Eigen::ComputeFullV);
    const MatrixXcd& a = svd.matrixU();
    const VectorXd sigma = svd.singularValues();
    // S = A^H K conj(A) is complex symmetric and block diagonal over groups
    // of equal singular values; each block is sigma times a unitary
    // symmetric matrix.
    const MatrixXcd s = a.adjoint() * k * a.conjugate();
    MatrixXcd q = MatrixXcd::Identity(n, n);
    const double group_tol = 1e-10 * (sigma.size() ? sigma[0] : 0.0);
    Eigen::Index start = 0;
    while (start < n) {
      Eigen::Index stop = start + 1;
      while (stop < n && sigma[start] - sigma[stop] <= group_tol) ++stop;
      const Eigen::Index g = stop - start;
      if (sigma[start] > 1e-14 * std::max(1.0, sigma[0])) {
        const MatrixXcd block =
            s.block(start, start, g, g) / sigma[start];
        q.block(start, start, g, g) = unitary_symmetric_sqrt(block);
      }
      start = stop;
    }
    f.vectors = a * q;
    f.gains = sigma;
  }

  // canonical column phases: rotate the largest entry real positive and fold
  // the rotation into the mode phase
  for (Eigen::Index j = 0; j < n; ++j) {
    Eigen::Index anchor = 0;
    double best = -1.0;
    for (Eigen::Index i = 0; i < n; ++i) {
      const double mag = std::abs(f.vectors(i, j));
      if (mag > best + 1e-12) {
        best = mag;
        anchor = i;
      }
    }
    const double phi = std::arg(f.vectors(anchor, j));
    f.vectors.col(j) *= std::polar(1.0, -phi);
    f.phases[j] = std::remainder(f.phases[j] + 2.0 * phi, 2.0 * M_PI);
    if (f.phases[j] <= -M_PI) f.phases[j] += 2.0 * M_PI;
  }
  return f;
}

double takagi_reconstruction_error(const Eigen::MatrixXcd& matrix,
                                   const TakagiFactorization& f) {
  Eigen::VectorXcd diag(f.gains.size());
  for (Eigen::Index j = 0; j < f.gains.size(); ++j)
    diag[j] = f.gains[j] * std::polar(1.0, f.phases[j]);
  const Eigen::MatrixXcd rebuilt =
      f.vectors * diag.asDiagonal() * f.vectors.transpose();
  const double denom = std::max(matrix.norm(), 1e-300);
  return (rebuilt - matrix).norm() / denom;
}

}  // namespace siopo
