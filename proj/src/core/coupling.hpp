#pragma once

#include <optional>
#include <vector>

#include <Eigen/Core>

#include "core/modes.hpp"
#include "core/takagi.hpp"

namespace siopo {

struct CrystalParams {
  double length = 0.0;          // l_c (m)
  double signal_index = 0.0;    // refractive index at the signal wavelength
  double phase_mismatch = 0.0;  // residual longitudinal mismatch after
                                // quasi-phase-matching (1/m)
  double gain_scale = 1.0;      // parametric rate per unit pump amplitude,
                                // s^-1 per sqrt(W)

  void validate() const;
};

struct PumpProfile {
  double waist = 0.0;           // w_p (m)
  double wavelength = 0.0;      // vacuum wavelength (m)
  double power = 0.0;           // W
  double waist_position = 0.0;  // along z, 0 = crystal center (m)

  // Optional transverse amplitude at the waist plane in place of the default
  // Gaussian; expanded in the pump HG basis up to image_truncation and
  // propagated paraxially through the crystal.
  std::optional<SampledField> image;
  int image_truncation = 10;

  void validate() const;
};

// Square-truncated signal HG basis referenced to the crystal-center waist.
struct HgBasis {
  double waist = 0.0;
  int n_max = 0;
  std::vector<ModeIndex> indices;  // ordering of matrix rows/columns

  static HgBasis make(double waist, int n_max);
  Eigen::Index dim() const { return static_cast<Eigen::Index>(indices.size()); }
  Eigen::Index position_of(ModeIndex idx) const;
};

// Parametric interaction matrix over signal HG index pairs.  Complex
// symmetric; entries scale as sqrt(pump power).
struct CouplingMatrix {
  Eigen::MatrixXcd k;
  HgBasis basis;
  double pump_power = 0.0;
};

struct CouplingOptions {
  int z_nodes = 33;          // Gauss-Legendre nodes across the crystal
  int transverse_nodes = 0;  // 0 = auto: 2*(n_max+1) + 16 (+ pump order)
  bool convergence_check = true;  // rebuild with doubled nodes, compare 1e-6
};

// Transverse coherence scale of the crystal: sqrt(lambda l_c / (pi n)).
double coherence_length(double signal_wavelength, double crystal_length,
                        double signal_index);

// K_pq = g sqrt(P) int dz exp(i dk z) intint d2r alpha(r,z) u_p(r,z) u_q(r,z).
// alpha is the unit-normalized pump envelope counter-rotating against the
// signal pair (curvature and Gouy phases cancel for matched Rayleigh ranges);
// u are the signal HG envelopes.  Beams propagate with the in-crystal
// wavelength; the pump uses the signal index (only the signal index is
// specified, and the transverse effect of pump dispersion is negligible).
CouplingMatrix build_coupling_matrix(const CrystalParams& crystal,
                                     const PumpProfile& pump,
                                     double signal_wavelength,
                                     const HgBasis& basis,
                                     const CouplingOptions& opts = {});

// Squeezed eigenmode basis.  Gains descending; coefficient vectors
// orthonormal; matrix reconstructs as U diag(gain e^{i phase}) U^T.
// Degenerate gain groups are rotated so each mode aligns with a single HG
// function where possible, then ordered by the dominant index (ascending
// total order, descending x order).
struct ModeDecomposition {
  Eigen::VectorXd gains;    // s^-1
  Eigen::VectorXd phases;   // rad
  Eigen::MatrixXcd vectors; // columns over basis.indices
  HgBasis basis;
  std::vector<ModeIndex> dominant;
  double reconstruction_error = 0.0;

  Eigen::Index dim() const { return gains.size(); }
  // restriction to the single mode k (used for single-mode comparisons)
  ModeDecomposition restricted_to(Eigen::Index k) const;
};

ModeDecomposition takagi_decompose(const CouplingMatrix& coupling);

// Number of eigenmodes with gain >= cutoff * gain_0.
int mode_count(const ModeDecomposition& dec, double cutoff);

// Cooperativity-style companion estimate (pump waist / coherence length)^2.
double cooperativity_estimate(double pump_waist, double coherence_len);

// Best squared overlap of eigenmode k against a single HG function,
// maximized over the index and over waist rescaling.  The candidate HG is
// projected onto the truncated basis and renormalized there.
double eigenmode_hg_overlap(const ModeDecomposition& dec, Eigen::Index k);
// Same, also reporting the optimal index and waist.
double eigenmode_hg_overlap(const ModeDecomposition& dec, Eigen::Index k,
                            ModeIndex* best_index, double* best_waist);

// Signal basis waist maximizing the fundamental-Gaussian parametric gain
// (golden-section to 0.1 um, seeded at sqrt(l_coh * w_p)).
double optimal_basis_waist(const CrystalParams& crystal,
                           const PumpProfile& pump, double signal_wavelength,
                           const CouplingOptions& opts = {});

struct ConvergenceCheck {
  bool converged = false;
  double max_relative_change = 0.0;  // over gains k <= 10
};

// Gains at n_max vs n_max + 5 (k <= 10), flagged non-converged above 1e-6.
ConvergenceCheck check_truncation_convergence(const CrystalParams& crystal,
                                              const PumpProfile& pump,
                                              double signal_wavelength,
                                              double basis_waist, int n_max,
                                              const CouplingOptions& opts = {});

}  // namespace siopo
