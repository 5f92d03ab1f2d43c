#pragma once

#include "core/coupling.hpp"

namespace siopo {

// Below-threshold dynamics shared by all eigenmodes: equal cavity decay,
// pump strength as a fraction of the dominant-mode threshold.
struct OpoDynamics {
  double cavity_decay = 0.0;  // gamma, field half width (s^-1); gamma = pi * bandwidth_fwhm
  double pump_ratio = 0.0;    // r in [0, 1]; r = 1 is the threshold limit

  void validate() const;
};

inline double decay_from_bandwidth(double bandwidth_fwhm_hz) {
  return M_PI * bandwidth_fwhm_hz;
}

struct EfficiencyChain {
  double escape = 1.0;
  double propagation = 1.0;
  double detector_quantum = 1.0;
  double homodyne_visibility = 1.0;  // enters squared

  double total() const {
    return escape * propagation * detector_quantum * homodyne_visibility *
           homodyne_visibility;
  }
  void validate() const;
};

// Gain-ratio figure of merit (Lambda_0 - Lambda_k) / (Lambda_0 + Lambda_k):
// the amplitude-ratio minimum noise at threshold.  Kept separate from the
// measured-variance model below; the two are related by a square at zero
// frequency and unit efficiency.
double min_variance_from_gains(const ModeDecomposition& dec, Eigen::Index k);

struct QuadratureVariances {
  double v_minus = 1.0;  // squeezed quadrature, shot = 1
  double v_plus = 1.0;   // anti-squeezed quadrature
  bool divergent = false;  // v_plus beyond 1e6 (threshold limit)
};

// Stationary output spectrum of the damped parametric mode:
//   V_-/+ (Omega) = 1 -/+ eta 4 sigma / ((1 +/- sigma)^2 + (Omega/gamma)^2)
// with sigma = r Lambda_k / Lambda_0.  The squeezed quadrature lies at angle
// phase_k / 2 from the reference quadrature.
QuadratureVariances variance_spectrum(const ModeDecomposition& dec,
                                      const OpoDynamics& dyn,
                                      const EfficiencyChain& eff,
                                      Eigen::Index k, double omega);

// Same, on a bare mode ladder (sigma supplied directly).
QuadratureVariances variance_spectrum_sigma(double sigma, double omega_over_gamma,
                                            double efficiency);

double to_decibels(double variance);  // 10 log10(V); V <= 0 is an error

struct Calibration {
  double pump_ratio = 0.0;
  double efficiency = 0.0;
};

enum class CalibrationPin { efficiency, pump_ratio };

// Solve for the free parameter (the one not pinned) so that mode
// `target_mode` shows `target_db` at analysis frequency omega.  Bisection,
// matched to 1e-6 in variance.  Unreachable targets report the eta = 1,
// r = 1 bound in the error message.
Calibration calibrate_to_measurement(const ModeDecomposition& dec,
                                     double cavity_decay, Eigen::Index target_mode,
                                     double target_db, double omega,
                                     CalibrationPin pinned, double pinned_value);

}  // namespace siopo
