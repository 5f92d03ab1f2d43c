#include "core/squeezing.hpp"

#include <cmath>
#include <limits>
#include <sstream>

#include "core/error.hpp"

namespace siopo {

void OpoDynamics::validate() const {
  if (!(cavity_decay > 0.0)) fail_validation("dynamics: cavity_decay must be > 0");
  if (pump_ratio < 0.0 || pump_ratio > 1.0)
    fail_validation("dynamics: pump_ratio must be in [0, 1]");
}

void EfficiencyChain::validate() const {
  for (double v : {escape, propagation, detector_quantum, homodyne_visibility})
    if (!(v > 0.0) || v > 1.0)
      fail_validation("efficiency: each factor must be in (0, 1]");
}

double min_variance_from_gains(const ModeDecomposition& dec, Eigen::Index k) {
  if (k < 0 || k >= dec.dim())
    fail_validation("min_variance_from_gains: mode index out of range");
  const double g0 = dec.gains[0];
  if (!(g0 > 0.0))
    fail_validation("min_variance_from_gains: leading gain is zero (no pumping)");
  return (g0 - dec.gains[k]) / (g0 + dec.gains[k]);
}

QuadratureVariances variance_spectrum_sigma(double sigma,
                                            double omega_over_gamma,
                                            double efficiency) {
  if (sigma < 0.0 || sigma > 1.0)
    fail_validation("variance_spectrum: sigma outside [0, 1] (above threshold)");
  if (!(efficiency > 0.0) || efficiency > 1.0)
    fail_validation("variance_spectrum: efficiency must be in (0, 1]");
  const double s2 = omega_over_gamma * omega_over_gamma;
  QuadratureVariances v;
  v.v_minus = 1.0 - efficiency * 4.0 * sigma /
                        ((1.0 + sigma) * (1.0 + sigma) + s2);
  const double denom_plus = (1.0 - sigma) * (1.0 - sigma) + s2;
  if (denom_plus > 0.0) {
    v.v_plus = 1.0 + efficiency * 4.0 * sigma / denom_plus;
    v.divergent = v.v_plus > 1e6;
  } else {
    v.v_plus = std::numeric_limits<double>::infinity();
    v.divergent = true;
  }
  return v;
}

QuadratureVariances variance_spectrum(const ModeDecomposition& dec,
                                      const OpoDynamics& dyn,
                                      const EfficiencyChain& eff,
                                      Eigen::Index k, double omega) {
  dyn.validate();
  eff.validate();
  if (k < 0 || k >= dec.dim())
    fail_validation("variance_spectrum: mode index out of range");
  if (!(dec.gains[0] > 0.0))
    fail_validation("variance_spectrum: leading gain is zero");
  const double sigma = dyn.pump_ratio * dec.gains[k] / dec.gains[0];
  return variance_spectrum_sigma(sigma, omega / dyn.cavity_decay, eff.total());
}

double to_decibels(double variance) {
  if (!(variance > 0.0)) fail_validation("to_decibels: variance must be > 0");
  return 10.0 * std::log10(variance);
}

Calibration calibrate_to_measurement(const ModeDecomposition& dec,
                                     double cavity_decay,
                                     Eigen::Index target_mode, double target_db,
                                     double omega, CalibrationPin pinned,
                                     double pinned_value) {
  if (!(cavity_decay > 0.0))
    fail_validation("calibrate: cavity_decay must be > 0");
  if (target_mode < 0 || target_mode >= dec.dim())
    fail_validation("calibrate: mode index out of range");
  if (!(dec.gains[0] > 0.0)) fail_validation("calibrate: zero leading gain");

  const double target_v = std::pow(10.0, target_db / 10.0);
  const double ratio = dec.gains[target_mode] / dec.gains[0];
  const double omega_ratio = omega / cavity_decay;
  const double s2 = omega_ratio * omega_ratio;

  const double bound =
      variance_spectrum_sigma(ratio, omega_ratio, 1.0).v_minus;
  if (target_v < bound) {
    std::ostringstream msg;
    msg << "calibrate: target " << target_db
        << " dB is below the unit-efficiency threshold bound "
        << 10.0 * std::log10(bound) << " dB at this frequency";
    fail_validation(msg.str());
  }
  if (target_v > 1.0)
    fail_validation("calibrate: target above shot noise is not reachable");

  Calibration cal;
  if (pinned == CalibrationPin::efficiency) {
    const double eta = pinned_value;
    if (!(eta > 0.0) || eta > 1.0)
      fail_validation("calibrate: pinned efficiency must be in (0, 1]");
    cal.efficiency = eta;
    if (target_v == 1.0) {
      cal.pump_ratio = 0.0;
      return cal;
    }
    const double at_r1 =
        variance_spectrum_sigma(ratio, omega_ratio, eta).v_minus;
    if (target_v < at_r1) {
      std::ostringstream msg;
      msg << "calibrate: target " << target_db
          << " dB unreachable at pinned efficiency " << eta << " (floor "
          << 10.0 * std::log10(at_r1) << " dB)";
      fail_validation(msg.str());
    }
    double lo = 0.0, hi = 1.0;  // v_minus decreases in r
    for (int it = 0; it < 200; ++it) {
      const double mid = 0.5 * (lo + hi);
      const double v =
          variance_spectrum_sigma(mid * ratio, omega_ratio, eta).v_minus;
      if (v > target_v)
        lo = mid;
      else
        hi = mid;
      if (std::abs(v - target_v) < 1e-6 && hi - lo < 1e-12) break;
    }
    cal.pump_ratio = 0.5 * (lo + hi);
  } else {
    const double r = pinned_value;
    if (r < 0.0 || r > 1.0)
      fail_validation("calibrate: pinned pump_ratio must be in [0, 1]");
    cal.pump_ratio = r;
    const double sigma = r * ratio;
    const double depth = 4.0 * sigma / ((1.0 + sigma) * (1.0 + sigma) + s2);
    if (depth <= 0.0)
      fail_validation("calibrate: zero pumping cannot reach a squeezed target");
    const double eta = (1.0 - target_v) / depth;
    if (eta <= 0.0 || eta > 1.0) {
      std::ostringstream msg;
      msg << "calibrate: required efficiency " << eta
          << " outside (0, 1] for target " << target_db << " dB";
      fail_validation(msg.str());
    }
    cal.efficiency = eta;
  }
  return cal;
}

}  // namespace siopo
