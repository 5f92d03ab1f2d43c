#include <doctest.h>

#include <cmath>

#include "core/homodyne.hpp"

using namespace siopo;

namespace {

ModeDecomposition two_mode_ladder(double g1, double theta1 = 0.0) {
  ModeDecomposition dec;
  dec.gains.resize(2);
  dec.gains << 1.0, g1;
  dec.phases.resize(2);
  dec.phases << 0.0, theta1;
  dec.vectors = Eigen::MatrixXcd::Identity(2, 2);
  dec.basis = HgBasis::make(90e-6, 1);
  // identity vectors: eigenmode k is the k-th basis function
  dec.dominant = {dec.basis.indices[0], dec.basis.indices[1]};
  return dec;
}

constexpr double kGamma = 1.4716e7;

LoProjection pure_mode(const ModeDecomposition& dec, Eigen::Index k) {
  LoProjection proj;
  proj.coefficients = Eigen::VectorXcd::Zero(dec.dim());
  proj.coefficients[k] = 1.0;
  proj.residual = 0.0;
  return proj;
}

}  // namespace

TEST_CASE("lo projection onto the identity decomposition") {
  const ModeDecomposition dec = two_mode_ladder(0.5);
  LocalOscillator lo;
  lo.mode = dec.basis.indices[0];
  const LoProjection proj = lo_projection(lo, dec);
  CHECK(std::abs(proj.coefficients[0]) == doctest::Approx(1.0));
  CHECK(std::abs(proj.coefficients[1]) == doctest::Approx(0.0));
  CHECK(proj.residual == doctest::Approx(0.0));
}

TEST_CASE("lo outside the truncation couples to vacuum only") {
  const ModeDecomposition dec = two_mode_ladder(0.5);
  LocalOscillator lo;
  lo.mode = ModeIndex{7, 7};  // far outside n_max = 1
  const LoProjection proj = lo_projection(lo, dec);
  CHECK(proj.residual == doctest::Approx(1.0));
}

TEST_CASE("lo with mismatched waist splits between modes and vacuum") {
  const ModeDecomposition dec = two_mode_ladder(0.5);
  LocalOscillator lo;
  lo.mode = ModeIndex{0, 0};
  lo.waist = 2.0 * dec.basis.waist;
  const LoProjection proj = lo_projection(lo, dec);
  // fundamental-fundamental overlap 0.8; the rest leaks past n_max = 1
  CHECK(std::abs(proj.coefficients[0]) == doctest::Approx(0.8).epsilon(1e-9));
  CHECK(proj.residual == doctest::Approx(1.0 - 0.64).epsilon(1e-6));
}

TEST_CASE("zero-norm sampled lo is rejected") {
  const ModeDecomposition dec = two_mode_ladder(0.5);
  LocalOscillator lo;
  SampledField f;
  f.grid = make_grid_for_widths({90e-6, 90e-6}, 16);
  f.values = Eigen::VectorXcd::Zero(16 * 16);
  lo.field = f;
  CHECK_THROWS(lo_projection(lo, dec));
}

TEST_CASE("variance vs phase: single squeezed mode") {
  const ModeDecomposition dec = two_mode_ladder(0.0);
  OpoDynamics dyn{kGamma, 0.8};
  EfficiencyChain eff;
  const LoProjection proj = pure_mode(dec, 0);
  const double omega = 0.7 * kGamma;
  const QuadratureVariances v = variance_spectrum(dec, dyn, eff, 0, omega);

  CHECK(variance_vs_phase(proj, dec, dyn, eff, omega, 0.0) ==
        doctest::Approx(v.v_minus).epsilon(1e-12));
  CHECK(variance_vs_phase(proj, dec, dyn, eff, omega, M_PI / 2) ==
        doctest::Approx(v.v_plus).epsilon(1e-12));

  // uniform average over the phase is the arithmetic mean of the extremes
  double acc = 0.0;
  const int n = 720;
  for (int i = 0; i < n; ++i)
    acc += variance_vs_phase(proj, dec, dyn, eff, omega, 2.0 * M_PI * i / n);
  CHECK(acc / n ==
        doctest::Approx(0.5 * (v.v_minus + v.v_plus)).epsilon(1e-10));
}

TEST_CASE("variance vs phase: squeezing angle shifts the minimum") {
  const double theta1 = 1.3;
  ModeDecomposition dec = two_mode_ladder(1.0, theta1);
  OpoDynamics dyn{kGamma, 0.5};
  EfficiencyChain eff;
  const LoProjection proj = pure_mode(dec, 1);
  const double omega = 0.0;
  const QuadratureVariances v = variance_spectrum(dec, dyn, eff, 1, omega);
  CHECK(variance_vs_phase(proj, dec, dyn, eff, omega, theta1 / 2) ==
        doctest::Approx(v.v_minus).epsilon(1e-12));
}

TEST_CASE("variance vs phase: half-captured squeezed mode mixing") {
  // |c_0|^2 = 0.5 at V_minus = 0.759, rest vacuum: V = 0.8795 (-0.56 dB)
  const ModeDecomposition dec = two_mode_ladder(0.0);
  LoProjection proj;
  proj.coefficients = Eigen::VectorXcd::Zero(2);
  proj.coefficients[0] = std::sqrt(0.5);
  proj.residual = 0.5;

  // choose sigma so that v_minus = 0.759 at Omega = 0, eta = 1:
  // (1-s)^2/(1+s)^2 = 0.759 -> s = (1-sqrt(0.759))/(1+sqrt(0.759))
  const double s = (1.0 - std::sqrt(0.759)) / (1.0 + std::sqrt(0.759));
  OpoDynamics dyn{kGamma, s};
  EfficiencyChain eff;
  const double v = variance_vs_phase(proj, dec, dyn, eff, 0.0, 0.0);
  CHECK(v == doctest::Approx(0.5 * 0.759 + 0.5).epsilon(1e-9));
  CHECK(10.0 * std::log10(v) == doctest::Approx(-0.5576).epsilon(1e-3));
}

TEST_CASE("variance is pi-periodic and bounded") {
  const ModeDecomposition dec = two_mode_ladder(0.7, 0.9);
  OpoDynamics dyn{kGamma, 0.9};
  EfficiencyChain eff;
  LoProjection proj;
  proj.coefficients = Eigen::VectorXcd::Zero(2);
  proj.coefficients[0] = std::sqrt(0.4);
  proj.coefficients[1] = std::sqrt(0.35);
  proj.residual = 0.25;
  const double omega = 0.4 * kGamma;

  double vmin = 1e9, vmax = -1e9;
  for (int i = 0; i < 64; ++i) {
    const double theta = 2.0 * M_PI * i / 64;
    const double v = variance_vs_phase(proj, dec, dyn, eff, omega, theta);
    const double v_shift =
        variance_vs_phase(proj, dec, dyn, eff, omega, theta + M_PI);
    CHECK(v == doctest::Approx(v_shift).epsilon(1e-12));
    vmin = std::min(vmin, v);
    vmax = std::max(vmax, v);
  }
  const QuadratureVariances q0 = variance_spectrum(dec, dyn, eff, 0, omega);
  const QuadratureVariances q1 = variance_spectrum(dec, dyn, eff, 1, omega);
  CHECK(vmin >= std::min(q0.v_minus, q1.v_minus) - 1e-12);
  CHECK(vmax <= std::max(q0.v_plus, q1.v_plus) + proj.residual + 1e-12);
}

TEST_CASE("full residual means shot noise at every phase") {
  const ModeDecomposition dec = two_mode_ladder(0.9);
  OpoDynamics dyn{kGamma, 0.9};
  EfficiencyChain eff;
  LoProjection proj;
  proj.coefficients = Eigen::VectorXcd::Zero(2);
  proj.residual = 1.0;
  for (double theta : {0.0, 0.7, 2.2})
    CHECK(variance_vs_phase(proj, dec, dyn, eff, 0.0, theta) ==
          doctest::Approx(1.0));
}

TEST_CASE("pump-off trace is shot noise within statistics") {
  const ModeDecomposition dec = two_mode_ladder(0.5);
  OpoDynamics dyn{kGamma, 0.0};
  EfficiencyChain eff;
  const LoProjection proj = pure_mode(dec, 0);
  TraceConfig cfg;
  cfg.window_samples = 2000;
  cfg.sweep_windows = 180;
  cfg.sweeps = 3;
  cfg.seed = 99;
  const HomodyneTrace trace =
      simulate_trace(proj, dec, dyn, eff, 0.0, cfg);
  // segment average within 3/sqrt(N); single windows at a looser 4.5 sigma
  double mean = 0.0;
  for (double v : trace.variance) {
    mean += v;
    CHECK(std::abs(v - 1.0) < 4.5 * std::sqrt(2.0 / 2000.0));
  }
  mean /= trace.variance.size();
  CHECK(std::abs(mean - 1.0) < 3.0 / std::sqrt(2000.0));
}

TEST_CASE("traces are deterministic in the seed") {
  const ModeDecomposition dec = two_mode_ladder(0.6);
  OpoDynamics dyn{kGamma, 0.7};
  EfficiencyChain eff;
  const LoProjection proj = pure_mode(dec, 0);
  TraceConfig cfg;
  cfg.window_samples = 500;
  cfg.sweep_windows = 90;
  cfg.sweeps = 3;
  cfg.seed = 1234;
  const HomodyneTrace a = simulate_trace(proj, dec, dyn, eff, 0.0, cfg);
  const HomodyneTrace b = simulate_trace(proj, dec, dyn, eff, 0.0, cfg);
  REQUIRE(a.variance.size() == b.variance.size());
  for (std::size_t i = 0; i < a.variance.size(); ++i)
    CHECK(a.variance[i] == b.variance[i]);

  cfg.seed = 1235;
  const HomodyneTrace c = simulate_trace(proj, dec, dyn, eff, 0.0, cfg);
  bool any_different = false;
  for (std::size_t i = 0; i < a.variance.size(); ++i)
    if (a.variance[i] != c.variance[i]) any_different = true;
  CHECK(any_different);
}

TEST_CASE("trace minima track the model at the chi-square tolerance") {
  const ModeDecomposition dec = two_mode_ladder(0.0);
  // sigma tuned for v_minus = 0.759 at Omega = 0, eta = 1
  const double s = (1.0 - std::sqrt(0.759)) / (1.0 + std::sqrt(0.759));
  OpoDynamics dyn{kGamma, s};
  EfficiencyChain eff;
  const LoProjection proj = pure_mode(dec, 0);
  TraceConfig cfg;
  cfg.window_samples = 10000;
  cfg.sweep_windows = 360;
  cfg.sweeps = 2;
  cfg.seed = 31;
  const HomodyneTrace trace = simulate_trace(proj, dec, dyn, eff, 0.0, cfg);
  double vmin = 1e9;
  for (std::size_t w = 0; w < trace.variance.size(); ++w)
    if (!trace.calibration[w]) vmin = std::min(vmin, trace.variance[w]);
  const double tol = 3.0 * 0.759 * std::sqrt(2.0 / cfg.window_samples);
  CHECK(std::abs(vmin - 0.759) < tol);
}

TEST_CASE("noise power estimate recovers the analytic curve") {
  const ModeDecomposition dec = two_mode_ladder(0.0);
  OpoDynamics dyn{kGamma, 0.6};
  EfficiencyChain eff;
  eff.escape = 0.8;
  const LoProjection proj = pure_mode(dec, 0);
  const double omega = 0.5 * kGamma;
  TraceConfig cfg;
  cfg.window_samples = 4000;
  cfg.sweep_windows = 720;
  cfg.sweeps = 4;
  cfg.seed = 77;
  const HomodyneTrace trace =
      simulate_trace(proj, dec, dyn, eff, omega, cfg);
  const int bins = 18;
  const NoisePowerEstimate est = estimate_noise_power(trace, bins);

  // reference: the analytic curve averaged over each bin's window phases
  const int per_sweep = cfg.sweep_windows / cfg.sweeps;
  std::vector<double> reference(bins, 0.0);
  std::vector<int> nref(bins, 0);
  for (int sw = 0; sw < per_sweep; ++sw) {
    const double theta = 2.0 * M_PI * (sw + 0.5) / per_sweep;
    const int b =
        static_cast<int>(theta / (2.0 * M_PI) * bins) % bins;
    reference[b] += variance_vs_phase(proj, dec, dyn, eff, omega, theta);
    ++nref[b];
  }
  for (int b = 0; b < bins; ++b) {
    REQUIRE(est.bins[b].window_count > 0);
    REQUIRE(nref[b] > 0);
    const double expected = reference[b] / nref[b];
    CHECK(std::abs(est.bins[b].mean_variance - expected) <
          std::max(3.0 * est.bins[b].ci_halfwidth, 0.02));
  }
  // extrema sit near the analytic extremes, bin discretization aside
  const QuadratureVariances v = variance_spectrum(dec, dyn, eff, 0, omega);
  CHECK(est.min_db == doctest::Approx(10.0 * std::log10(v.v_minus)).epsilon(0.5));
  CHECK(est.max_db == doctest::Approx(10.0 * std::log10(v.v_plus)).epsilon(0.1));
}

TEST_CASE("estimate requires a calibration segment") {
  HomodyneTrace trace;
  trace.time = {0.0, 1.0};
  trace.phase = {0.1, 0.2};
  trace.variance = {1.0, 1.0};
  trace.calibration = {false, false};
  CHECK_THROWS(estimate_noise_power(trace));
}

TEST_CASE("degenerate window layouts are rejected") {
  const ModeDecomposition dec = two_mode_ladder(0.5);
  OpoDynamics dyn{kGamma, 0.5};
  EfficiencyChain eff;
  const LoProjection proj = pure_mode(dec, 0);
  TraceConfig cfg;
  cfg.window_samples = 50;  // below the minimum
  CHECK_THROWS(simulate_trace(proj, dec, dyn, eff, 0.0, cfg));
}
