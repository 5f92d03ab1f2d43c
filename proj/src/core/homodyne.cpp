#include "core/homodyne.hpp"

#include <cmath>
#include <limits>
#include <random>

#include "core/error.hpp"

namespace siopo {

namespace {

std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ull;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ull;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebull;
  return x ^ (x >> 31);
}

}  // namespace

void LocalOscillator::validate() const {
  if (!mode && !field)
    fail_validation("local oscillator: needs a mode index or a sampled field");
  if (field && (!field->grid || field->values.size() == 0))
    fail_validation("local oscillator: sampled field is empty");
  if (waist < 0.0) fail_validation("local oscillator: waist must be >= 0");
}

LoProjection lo_projection(const LocalOscillator& lo,
                           const ModeDecomposition& dec) {
  lo.validate();
  const Eigen::Index dim = dec.dim();

  // LO coefficients over the HG basis
  Eigen::VectorXcd hg_coeffs(dim);
  if (lo.field) {
    const SampledField& f = *lo.field;
    const double norm2 = field_norm_squared(f);
    if (!(norm2 > 0.0)) fail_validation("lo_projection: zero-norm LO field");
    const double inv = 1.0 / std::sqrt(norm2);
    const BeamGeometry basis_beam{dec.basis.waist, 1.0, 0.0};  // waist plane only
    for (Eigen::Index j = 0; j < dim; ++j) {
      const SampledField bj =
          sample_mode(dec.basis.indices[j], basis_beam, 0.0, f.grid);
      hg_coeffs[j] = overlap(bj, f) * inv;
    }
  } else {
    const double lo_waist = lo.waist > 0.0 ? lo.waist : dec.basis.waist;
    if (lo_waist == dec.basis.waist) {
      hg_coeffs.setZero();
      // same basis: exact Kronecker projection when inside the truncation
      for (Eigen::Index j = 0; j < dim; ++j)
        if (dec.basis.indices[j] == *lo.mode) hg_coeffs[j] = 1.0;
    } else {
      // mode-matched in index but not in waist: sample on a shared grid
      GridPtr grid = make_grid_for_widths({dec.basis.waist, lo_waist},
                                          2 * (dec.basis.n_max + 1) + 16 +
                                              lo.mode->total());
      const BeamGeometry lo_beam{lo_waist, 1.0, 0.0};
      const BeamGeometry basis_beam{dec.basis.waist, 1.0, 0.0};
      const SampledField lof = sample_mode(*lo.mode, lo_beam, 0.0, grid);
      for (Eigen::Index j = 0; j < dim; ++j) {
        const SampledField bj =
            sample_mode(dec.basis.indices[j], basis_beam, 0.0, grid);
        hg_coeffs[j] = overlap(bj, lof);
      }
    }
  }

  LoProjection proj;
  proj.coefficients = dec.vectors.adjoint() * hg_coeffs;
  double captured = 0.0;
  for (Eigen::Index k = 0; k < dim; ++k)
    captured += std::norm(proj.coefficients[k]);
  proj.residual = std::max(0.0, 1.0 - captured);
  return proj;
}

double variance_vs_phase(const LoProjection& proj, const ModeDecomposition& dec,
                         const OpoDynamics& dyn, const EfficiencyChain& eff,
                         double omega, double theta) {
  const Eigen::Index dim = dec.dim();
  if (proj.coefficients.size() != dim)
    fail_validation("variance_vs_phase: projection does not match decomposition");
  double captured = 0.0;
  for (Eigen::Index k = 0; k < dim; ++k)
    captured += std::norm(proj.coefficients[k]);
  if (captured > 1.0 + 1e-9)
    fail_validation("variance_vs_phase: projection exceeds unity");

  double v = proj.residual;
  for (Eigen::Index k = 0; k < dim; ++k) {
    const double weight = std::norm(proj.coefficients[k]);
    if (weight == 0.0) continue;
    const QuadratureVariances q = variance_spectrum(dec, dyn, eff, k, omega);
    const double rel = theta - 0.5 * dec.phases[k];
    const double c = std::cos(rel);
    const double s = std::sin(rel);
    v += weight * (q.v_minus * c * c + q.v_plus * s * s);
  }
  return v;
}

void TraceConfig::validate() const {
  if (window_samples < 100)
    fail_validation("trace: window_samples must be >= 100");
  if (sweeps < 1) fail_validation("trace: sweeps must be >= 1");
  if (sweep_windows < 2 * sweeps)
    fail_validation("trace: needs at least two windows per sweep");
  if (!(window_duration > 0.0))
    fail_validation("trace: window_duration must be > 0");
}

HomodyneTrace simulate_trace(const LoProjection& proj,
                             const ModeDecomposition& dec,
                             const OpoDynamics& dyn, const EfficiencyChain& eff,
                             double omega, const TraceConfig& cfg) {
  cfg.validate();
  // calibration segment = first tenth of the full trace
  const int calib_windows = (cfg.sweep_windows + 8) / 9;
  const int total = calib_windows + cfg.sweep_windows;

  HomodyneTrace trace;
  trace.seed = cfg.seed;
  trace.window_samples = cfg.window_samples;
  trace.time.resize(total);
  trace.phase.resize(total);
  trace.variance.resize(total);
  trace.calibration.resize(total);

  const int windows_per_sweep = cfg.sweep_windows / cfg.sweeps;
  for (int w = 0; w < total; ++w) {
    const bool calib = w < calib_windows;
    double theta = 0.0;
    double v = 1.0;
    if (!calib) {
      const int sw = (w - calib_windows) % windows_per_sweep;
      theta = 2.0 * M_PI * (sw + 0.5) / windows_per_sweep;
      v = variance_vs_phase(proj, dec, dyn, eff, omega, theta);
    }
    std::mt19937_64 rng(splitmix64(cfg.seed ^ (0x5851f42d4c957f2dull *
                                               static_cast<std::uint64_t>(w + 1))));
    std::normal_distribution<double> gauss(0.0, std::sqrt(v));
    double sum = 0.0, sum2 = 0.0;
    for (int s = 0; s < cfg.window_samples; ++s) {
      const double x = gauss(rng);
      sum += x;
      sum2 += x * x;
    }
    const double n = cfg.window_samples;
    trace.time[w] = (w + 0.5) * cfg.window_duration;
    trace.phase[w] = theta;
    trace.variance[w] = (sum2 - sum * sum / n) / (n - 1.0);
    trace.calibration[w] = calib;
  }
  return trace;
}

NoisePowerEstimate estimate_noise_power(const HomodyneTrace& trace,
                                        int phase_bins) {
  if (phase_bins < 1) fail_validation("estimate_noise_power: need >= 1 bin");
  double calib_sum = 0.0;
  int calib_count = 0;
  for (std::size_t w = 0; w < trace.variance.size(); ++w)
    if (trace.calibration[w]) {
      calib_sum += trace.variance[w];
      ++calib_count;
    }
  if (calib_count == 0)
    fail_validation("estimate_noise_power: trace has no calibration segment");
  const double calib_mean = calib_sum / calib_count;

  std::vector<double> sum(phase_bins, 0.0), sum2(phase_bins, 0.0);
  std::vector<int> count(phase_bins, 0);
  for (std::size_t w = 0; w < trace.variance.size(); ++w) {
    if (trace.calibration[w]) continue;
    const double frac = trace.phase[w] / (2.0 * M_PI);
    int b = static_cast<int>(frac * phase_bins) % phase_bins;
    if (b < 0) b += phase_bins;
    const double v = trace.variance[w] / calib_mean;
    sum[b] += v;
    sum2[b] += v * v;
    ++count[b];
  }

  NoisePowerEstimate est;
  est.calibration_mean = calib_mean;
  est.bins.reserve(phase_bins);
  double vmin = std::numeric_limits<double>::infinity();
  double vmax = -std::numeric_limits<double>::infinity();
  for (int b = 0; b < phase_bins; ++b) {
    PhaseBin bin;
    bin.phase_center = 2.0 * M_PI * (b + 0.5) / phase_bins;
    bin.window_count = count[b];
    if (count[b] > 0) {
      bin.mean_variance = sum[b] / count[b];
      if (count[b] > 1) {
        const double var =
            (sum2[b] - sum[b] * sum[b] / count[b]) / (count[b] - 1);
        bin.ci_halfwidth = 1.96 * std::sqrt(std::max(0.0, var) / count[b]);
      }
      vmin = std::min(vmin, bin.mean_variance);
      vmax = std::max(vmax, bin.mean_variance);
    }
    est.bins.push_back(bin);
  }
  est.min_db = 10.0 * std::log10(vmin);
  est.max_db = 10.0 * std::log10(vmax);
  return est;
}

}  // namespace siopo
