#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "core/squeezing.hpp"

namespace siopo {

// Local oscillator transverse shape: an HG index on a chosen waist (default:
// the decomposition basis waist) or an arbitrary sampled field.
struct LocalOscillator {
  std::optional<ModeIndex> mode;      // HG index路 on `waist`
  double waist = 0.0;                 // 0 = basis waist
  std::optional<SampledField> field;  // overrides `mode` when set

  void validate() const;
};

struct LoProjection {
  Eigen::VectorXcd coefficients;  // c_k = <eigenmode_k | LO>
  double residual = 0.0;          // 1 - sum |c_k|^2, vacuum-coupled fraction
};

LoProjection lo_projection(const LocalOscillator& lo,
                           const ModeDecomposition& dec);

// V(theta) = sum_k |c_k|^2 [V-_k cos^2(theta - phase_k/2)
//                           + V+_k sin^2(theta - phase_k/2)] + residual.
double variance_vs_phase(const LoProjection& proj, const ModeDecomposition& dec,
                         const OpoDynamics& dyn, const EfficiencyChain& eff,
                         double omega, double theta);

struct TraceConfig {
  int window_samples = 10000;   // demodulated samples per variance window
  int sweep_windows = 3600;     // windows in the swept segment
  int sweeps = 10;              // full 2*pi LO ramps over the swept segment
  double window_duration = 1e-3;  // seconds per window (presentation only)
  std::uint64_t seed = 1;

  void validate() const;
};

struct HomodyneTrace {
  std::vector<double> time;      // window-center times
  std::vector<double> phase;     // LO phase per window (calibration: 0)
  std::vector<double> variance;  // unbiased sample variance, shot = 1
  std::vector<bool> calibration; // pump-off segment marker
  std::uint64_t seed = 0;
  int window_samples = 0;
};

// Windowed variance trace: a pump-off calibration segment (first tenth of
// the trace) followed by the LO phase ramp.  Each window draws i.i.d.
// Gaussian demodulated samples at variance V(theta); per-window generators
// derive from the master seed, so windows are independent of evaluation
// order.  Byte-deterministic for a fixed seed.
HomodyneTrace simulate_trace(const LoProjection& proj,
                             const ModeDecomposition& dec,
                             const OpoDynamics& dyn, const EfficiencyChain& eff,
                             double omega, const TraceConfig& cfg);

struct PhaseBin {
  double phase_center = 0.0;
  double mean_variance = 0.0;   // normalized to the calibration mean
  double ci_halfwidth = 0.0;    // 95% interval on the mean
  int window_count = 0;
};

struct NoisePowerEstimate {
  std::vector<PhaseBin> bins;
  double calibration_mean = 0.0;
  double min_db = 0.0;  // most squeezed bin
  double max_db = 0.0;  // most anti-squeezed bin
};

NoisePowerEstimate estimate_noise_power(const HomodyneTrace& trace,
                                        int phase_bins = 36);

}  // namespace siopo
