#pragma once

#include <complex>
#include <vector>

#include <Eigen/Core>

#include "core/grid.hpp"

namespace siopo {

using Complex = std::complex<double>;

// Gaussian beam geometry along the propagation axis z.
struct BeamGeometry {
  double waist_radius = 0.0;    // 1/e field radius at the waist (m)
  double wavelength = 0.0;      // in-medium wavelength (m)
  double waist_position = 0.0;  // z of the waist (m)

  double rayleigh_range() const;
  double width_at(double z) const;       // w(z)
  double gouy_at(double z) const;        // arctan((z-z0)/zR), fundamental
  double curvature_at(double z) const;   // 1/R(z), zero at the waist
  double wavenumber() const;             // 2*pi / wavelength

  void validate() const;
};

struct ModeIndex {
  int m = 0;  // x order
  int n = 0;  // y order
  int total() const { return m + n; }
  bool operator==(const ModeIndex&) const = default;
};

// Accumulated Gouy phase of HG_mn: (m+n+1) * arctan((z-z0)/zR).
double gouy_phase(ModeIndex idx, const BeamGeometry& beam, double z);

// Unit-normalized HG_mn envelope at (x, y, z): transverse Hermite-Gauss
// amplitude, wavefront-curvature term exp(-i k r^2 / (2 R(z))) and Gouy term
// exp(+i (m+n+1) arctan(.)).  The plane carrier exp(i k z) is omitted; it is
// reintroduced only where longitudinal phase mismatch matters.
Complex hg_field(ModeIndex idx, const BeamGeometry& beam, double x, double y,
                 double z);

// Orthonormal 1-D envelope amplitudes u_m(x) at the waist width w for
// m = 0..max_order, evaluated at the given positions (row m, column i).
// hg_field factorizes as amp_m(x) amp_n(y) times the z-phases.
Eigen::MatrixXd hg_amplitudes_1d(int max_order, double width,
                                 const Eigen::VectorXd& x);

// Transverse field sampled on a quadrature grid, row-major (ix, iy).
struct SampledField {
  GridPtr grid;
  Eigen::VectorXcd values;
};

SampledField sample_mode(ModeIndex idx, const BeamGeometry& beam, double z,
                         GridPtr grid);

// <A|B> = integral conj(A) B d^2r by grid quadrature.  Both fields must be
// sampled on compatible grids.
Complex overlap(const SampledField& a, const SampledField& b);

double field_norm_squared(const SampledField& f);

// Basis enumeration for the square truncation m,n <= n_max, ordered by total
// order, then by descending x order (HG10 ahead of HG01).
std::vector<ModeIndex> basis_indices(int n_max);

}  // namespace siopo
