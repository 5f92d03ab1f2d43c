#include <doctest.h>

#include <cmath>
#include <complex>

#include "core/coupling.hpp"
#include "core/modes.hpp"

using namespace siopo;

namespace {

const double kSignalWavelength = 1064e-9;

CrystalParams reference_crystal() { return {10e-3, 1.8, 0.0, 1.0}; }

PumpProfile reference_pump() {
  PumpProfile p;
  p.waist = 120e-6;
  p.wavelength = 532e-9;
  p.power = 0.050;
  return p;
}

CouplingOptions fast_options() {
  CouplingOptions o;
  o.convergence_check = false;
  return o;
}

// independent oracle for single entries: uniform-grid transverse quadrature
// (trapezoid; exponentially convergent for the decaying smooth integrand)
// and Simpson in z, built directly on hg_field
Complex oracle_entry(const CrystalParams& crystal, const PumpProfile& pump,
                     const HgBasis& basis, ModeIndex p, ModeIndex q,
                     int nxy = 141, int nz = 101) {
  const double n_s = crystal.signal_index;
  const BeamGeometry sig{basis.waist, kSignalWavelength / n_s, 0.0};
  const BeamGeometry pmp{pump.waist, pump.wavelength / n_s,
                         pump.waist_position};
  const double half = 4.5 * std::max(basis.waist, pump.waist);
  const double hxy = 2.0 * half / (nxy - 1);
  const double hz = crystal.length / (nz - 1);

  Complex total = 0.0;
  for (int iz = 0; iz < nz; ++iz) {
    const double z = -0.5 * crystal.length + iz * hz;
    double wz = (iz == 0 || iz == nz - 1) ? 1.0 : (iz % 2 == 1 ? 4.0 : 2.0);
    wz *= hz / 3.0;
    Complex plane = 0.0;
    for (int ix = 0; ix < nxy; ++ix) {
      const double x = -half + ix * hxy;
      const double tx = (ix == 0 || ix == nxy - 1) ? 0.5 : 1.0;
      for (int iy = 0; iy < nxy; ++iy) {
        const double y = -half + iy * hxy;
        const double ty = (iy == 0 || iy == nxy - 1) ? 0.5 : 1.0;
        const Complex alpha = std::conj(hg_field({0, 0}, pmp, x, y, z));
        plane += tx * ty * alpha * hg_field(p, sig, x, y, z) *
                 hg_field(q, sig, x, y, z);
      }
    }
    total += wz * plane * hxy * hxy *
             std::polar(1.0, crystal.phase_mismatch * z);
  }
  return crystal.gain_scale * std::sqrt(pump.power) * total;
}

}  // namespace

TEST_CASE("coherence length formula") {
  CHECK(coherence_length(1064e-9, 10e-3, 1.8) ==
        doctest::Approx(43.37705e-6).epsilon(1e-5));
  CHECK(coherence_length(1064e-9, 2.5e-3, 1.8) ==
        doctest::Approx(21.68853e-6).epsilon(1e-5));
  // quadrupling the crystal doubles the scale
  CHECK(coherence_length(1064e-9, 40e-3, 1.8) ==
        doctest::Approx(2.0 * 43.37705e-6).epsilon(1e-9));
  CHECK_THROWS(coherence_length(-1.0, 10e-3, 1.8));
  CHECK_THROWS(coherence_length(1064e-9, 0.0, 1.8));
}

TEST_CASE("plane-wave pump and thin crystal give an identity-like matrix") {
  CrystalParams crystal = reference_crystal();
  PumpProfile pump = reference_pump();
  pump.waist = 50.0;  // effectively flat over the signal modes
  CouplingOptions opts = fast_options();
  opts.z_nodes = 1;
  const HgBasis basis = HgBasis::make(90e-6, 4);
  const CouplingMatrix cm = build_coupling_matrix(
      crystal, pump, kSignalWavelength, basis, opts);
  const double diag0 = std::abs(cm.k(0, 0));
  REQUIRE(diag0 > 0.0);
  for (Eigen::Index i = 0; i < basis.dim(); ++i) {
    CHECK(std::abs(cm.k(i, i)) == doctest::Approx(diag0).epsilon(1e-6));
    for (Eigen::Index j = 0; j < basis.dim(); ++j)
      if (i != j) CHECK(std::abs(cm.k(i, j)) < 1e-9 * diag0);
  }
}

TEST_CASE("entries match the independent grid oracle") {
  CrystalParams crystal = reference_crystal();
  PumpProfile pump = reference_pump();
  const HgBasis basis = HgBasis::make(72e-6, 2);
  const CouplingMatrix cm = build_coupling_matrix(
      crystal, pump, kSignalWavelength, basis, fast_options());

  const struct {
    ModeIndex p, q;
  } cases[] = {{{0, 0}, {0, 0}}, {{2, 0}, {0, 0}}, {{1, 1}, {1, 1}},
               {{2, 0}, {0, 2}}};
  for (const auto& c : cases) {
    const Complex expected = oracle_entry(crystal, pump, basis, c.p, c.q);
    const Complex got =
        cm.k(basis.position_of(c.p), basis.position_of(c.q));
    CHECK(std::abs(got - expected) < 1e-6 * std::abs(cm.k(0, 0)));
  }
}

TEST_CASE("oracle also pins a phase-mismatched complex entry") {
  CrystalParams crystal = reference_crystal();
  crystal.phase_mismatch = 250.0;  // about 2.5 rad across the crystal
  PumpProfile pump = reference_pump();
  const HgBasis basis = HgBasis::make(72e-6, 1);
  const CouplingMatrix cm = build_coupling_matrix(
      crystal, pump, kSignalWavelength, basis, fast_options());
  const Complex expected =
      oracle_entry(crystal, pump, basis, {0, 0}, {0, 0});
  const Complex got = cm.k(0, 0);
  CHECK(std::abs(got - expected) < 1e-6 * std::abs(got));
  CHECK(std::abs(std::arg(got)) > 1e-3);  // genuinely complex now
}

TEST_CASE("matrix is exactly symmetric and parity-selective") {
  const HgBasis basis = HgBasis::make(72e-6, 6);
  const CouplingMatrix cm =
      build_coupling_matrix(reference_crystal(), reference_pump(),
                            kSignalWavelength, basis, fast_options());
  const double scale = cm.k.cwiseAbs().maxCoeff();
  for (Eigen::Index i = 0; i < basis.dim(); ++i)
    for (Eigen::Index j = 0; j < basis.dim(); ++j) {
      CHECK(std::abs(cm.k(i, j) - cm.k(j, i)) <= 1e-12 * scale);
      const ModeIndex a = basis.indices[i];
      const ModeIndex b = basis.indices[j];
      if ((a.m + b.m) % 2 == 1 || (a.n + b.n) % 2 == 1)
        CHECK(std::abs(cm.k(i, j)) <= 1e-12 * scale);
    }
}

TEST_CASE("thin-crystal matrix factorizes as a tensor product") {
  CrystalParams crystal = reference_crystal();
  PumpProfile pump = reference_pump();
  CouplingOptions opts = fast_options();
  opts.z_nodes = 1;
  const int n_max = 6;
  const HgBasis basis = HgBasis::make(72e-6, n_max);
  const CouplingMatrix cm = build_coupling_matrix(
      crystal, pump, kSignalWavelength, basis, opts);

  // 1-D factor via an independent quadrature at the waist plane
  const int nodes = 400;
  const double half = 4.5 * std::max(basis.waist, pump.waist);
  Eigen::VectorXd xs(nodes);
  for (int i = 0; i < nodes; ++i)
    xs[i] = -half + 2.0 * half * i / (nodes - 1);
  const Eigen::MatrixXd sig = hg_amplitudes_1d(n_max, basis.waist, xs);
  const Eigen::MatrixXd pmp = hg_amplitudes_1d(0, pump.waist, xs);
  Eigen::MatrixXd f1 = Eigen::MatrixXd::Zero(n_max + 1, n_max + 1);
  const double h = 2.0 * half / (nodes - 1);
  for (int m = 0; m <= n_max; ++m)
    for (int q = 0; q <= n_max; ++q) {
      double acc = 0.0;
      for (int i = 0; i < nodes; ++i)
        acc += (i == 0 || i == nodes - 1 ? 0.5 : 1.0) * pmp(0, i) * sig(m, i) *
               sig(q, i);
      f1(m, q) = acc * h;
    }
  const double amp =
      crystal.gain_scale * std::sqrt(pump.power) * crystal.length;
  double worst = 0.0;
  for (Eigen::Index p = 0; p < basis.dim(); ++p)
    for (Eigen::Index q = 0; q < basis.dim(); ++q) {
      const ModeIndex a = basis.indices[p];
      const ModeIndex b = basis.indices[q];
      worst = std::max(worst, std::abs(cm.k(p, q) - amp * f1(a.m, b.m) *
                                                        f1(a.n, b.n)));
    }
  CHECK(worst / cm.k.cwiseAbs().maxCoeff() < 1e-9);
}

TEST_CASE("gains scale as the square root of pump power") {
  CrystalParams crystal = reference_crystal();
  PumpProfile pump = reference_pump();
  PumpProfile stronger = pump;
  stronger.power = 4.0 * pump.power;
  const HgBasis basis = HgBasis::make(72e-6, 5);
  const ModeDecomposition a = takagi_decompose(build_coupling_matrix(
      crystal, pump, kSignalWavelength, basis, fast_options()));
  const ModeDecomposition b = takagi_decompose(build_coupling_matrix(
      crystal, stronger, kSignalWavelength, basis, fast_options()));
  for (Eigen::Index k = 0; k < a.dim(); ++k)
    if (a.gains[k] > 1e-9 * a.gains[0])
      CHECK(b.gains[k] / a.gains[k] == doctest::Approx(2.0).epsilon(1e-10));
}

TEST_CASE("wide-pump threshold scaling") {
  CrystalParams crystal = reference_crystal();
  PumpProfile wide = reference_pump();
  wide.waist = 360e-6;
  PumpProfile wider = wide;
  wider.waist = 720e-6;
  const HgBasis basis = HgBasis::make(72e-6, 8);
  const ModeDecomposition a = takagi_decompose(build_coupling_matrix(
      crystal, wide, kSignalWavelength, basis, fast_options()));
  const ModeDecomposition b = takagi_decompose(build_coupling_matrix(
      crystal, wider, kSignalWavelength, basis, fast_options()));
  CHECK(2.0 * b.gains[0] / a.gains[0] == doctest::Approx(1.0).epsilon(0.05));
}

TEST_CASE("reference configuration ladder and mode count") {
  const HgBasis basis = HgBasis::make(72e-6, 10);
  const ModeDecomposition dec = takagi_decompose(
      build_coupling_matrix(reference_crystal(), reference_pump(),
                            kSignalWavelength, basis, fast_options()));

  CHECK(dec.gains[1] / dec.gains[0] == doctest::Approx(0.8439).epsilon(0.006));
  CHECK(dec.gains[2] / dec.gains[0] == doctest::Approx(0.8439).epsilon(0.006));
  CHECK(dec.gains[3] / dec.gains[0] == doctest::Approx(0.6903).epsilon(0.006));

  // degenerate pair aligned to single HG indices,10 ahead of 01
  CHECK(dec.dominant[0] == ModeIndex{0, 0});
  CHECK(dec.dominant[1] == ModeIndex{1, 0});
  CHECK(dec.dominant[2] == ModeIndex{0, 1});

  CHECK(mode_count(dec, 0.6) == 6);
  CHECK(mode_count(dec, 0.999999) == 1);

  CHECK(cooperativity_estimate(120e-6, coherence_length(1064e-9, 10e-3, 1.8)) ==
        doctest::Approx(7.653).epsilon(1e-3));
}

TEST_CASE("mode count edge cases") {
  ModeDecomposition dec;
  dec.gains = Eigen::VectorXd::Constant(5, 2.5);
  dec.phases = Eigen::VectorXd::Zero(5);
  dec.vectors = Eigen::MatrixXcd::Identity(5, 5);
  dec.basis = HgBasis::make(90e-6, 1);
  dec.dominant.assign(5, ModeIndex{0, 0});
  CHECK(mode_count(dec, 0.2) == 5);  // all equal: full dimension

  dec.gains << 1.0, 0.0, 0.0, 0.0, 0.0;
  CHECK(mode_count(dec, 0.2) == 1);  // single pumped mode

  CHECK_THROWS(mode_count(dec, 0.0));
  CHECK_THROWS(mode_count(dec, 1.0));
  ModeDecomposition empty;
  CHECK_THROWS(mode_count(empty, 0.5));
}

TEST_CASE("decomposition invariants for the reference configuration") {
  const HgBasis basis = HgBasis::make(72e-6, 8);
  const CouplingMatrix cm =
      build_coupling_matrix(reference_crystal(), reference_pump(),
                            kSignalWavelength, basis, fast_options());
  const ModeDecomposition dec = takagi_decompose(cm);
  CHECK(dec.reconstruction_error < 1e-10);
  for (Eigen::Index k = 1; k < dec.dim(); ++k)
    CHECK(dec.gains[k] <= dec.gains[k - 1] + 1e-12 * dec.gains[0]);
  const double ortho = (dec.vectors.adjoint() * dec.vectors -
                        Eigen::MatrixXcd::Identity(dec.dim(), dec.dim()))
                           .cwiseAbs()
                           .maxCoeff();
  CHECK(ortho < 1e-9);
}

TEST_CASE("eigenmode shapes are single HG functions after rescaling") {
  const HgBasis basis = HgBasis::make(72e-6, 10);
  const ModeDecomposition dec = takagi_decompose(
      build_coupling_matrix(reference_crystal(), reference_pump(),
                            kSignalWavelength, basis, fast_options()));
  for (int k = 0; k < 3; ++k) {
    ModeIndex best;
    double waist = 0.0;
    const double ov = eigenmode_hg_overlap(dec, k, &best, &waist);
    CHECK(ov >= 0.99);
    CHECK(best == dec.dominant[k]);
    CHECK(waist > 30e-6);
    CHECK(waist < 80e-6);
  }
}

TEST_CASE("overlap is invariant under a rescaled basis") {
  const ModeDecomposition a = takagi_decompose(
      build_coupling_matrix(reference_crystal(), reference_pump(),
                            kSignalWavelength, HgBasis::make(72e-6, 20),
                            fast_options()));
  const ModeDecomposition b = takagi_decompose(
      build_coupling_matrix(reference_crystal(), reference_pump(),
                            kSignalWavelength, HgBasis::make(3 * 72e-6, 20),
                            fast_options()));
  for (int k = 0; k < 3; ++k) {
    const double oa = eigenmode_hg_overlap(a, k);
    const double ob = eigenmode_hg_overlap(b, k);
    CHECK(oa >= 0.995);
    CHECK(ob >= 0.995);
    CHECK(std::abs(oa - ob) < 2e-3);
  }
}

TEST_CASE("thin-crystal eigenmodes are nearly gaussian after rescaling") {
  CouplingOptions opts = fast_options();
  opts.z_nodes = 1;
  const ModeDecomposition dec = takagi_decompose(
      build_coupling_matrix(reference_crystal(), reference_pump(),
                            kSignalWavelength, HgBasis::make(72e-6, 12), opts));
  // the truncated multiplication operator is only approximately
  // Hermite-Gaussian; the match is truncation-limited near 3e-3
  CHECK(eigenmode_hg_overlap(dec, 0) >= 0.99);
}

TEST_CASE("optimal basis waist for the reference configuration") {
  const double w = optimal_basis_waist(reference_crystal(), reference_pump(),
                                       kSignalWavelength);
  CHECK(w == doctest::Approx(50.5e-6).epsilon(0.03));
}

TEST_CASE("truncation convergence check") {
  const ConvergenceCheck ok = check_truncation_convergence(
      reference_crystal(), reference_pump(), kSignalWavelength, 72e-6, 15,
      fast_options());
  CHECK(ok.converged);
  CHECK(ok.max_relative_change < 1e-6);

  const ConvergenceCheck coarse = check_truncation_convergence(
      reference_crystal(), reference_pump(), kSignalWavelength, 72e-6, 2,
      fast_options());
  CHECK(!coarse.converged);
}

TEST_CASE("sampled gaussian pump image reproduces the analytic pump") {
  CrystalParams crystal = reference_crystal();
  PumpProfile pump = reference_pump();
  const HgBasis basis = HgBasis::make(72e-6, 5);
  const CouplingMatrix analytic = build_coupling_matrix(
      crystal, pump, kSignalWavelength, basis, fast_options());

  PumpProfile imaged = pump;
  imaged.image_truncation = 6;
  GridPtr grid = make_grid_for_widths({pump.waist, pump.waist}, 40);
  SampledField img;
  img.grid = grid;
  const Eigen::VectorXd& xs = grid->axis_nodes();
  img.values.resize(xs.size() * xs.size());
  for (Eigen::Index i = 0; i < xs.size(); ++i)
    for (Eigen::Index j = 0; j < xs.size(); ++j)
      img.values[i * xs.size() + j] = std::exp(
          -(xs[i] * xs[i] + xs[j] * xs[j]) / (pump.waist * pump.waist));
  imaged.image = img;

  const CouplingMatrix sampled = build_coupling_matrix(
      crystal, imaged, kSignalWavelength, basis, fast_options());
  const double rel = (sampled.k - analytic.k).cwiseAbs().maxCoeff() /
                     analytic.k.cwiseAbs().maxCoeff();
  CHECK(rel < 1e-8);
}

TEST_CASE("displaced pump image breaks parity selection") {
  CrystalParams crystal = reference_crystal();
  PumpProfile imaged = reference_pump();
  imaged.image_truncation = 8;
  GridPtr grid = make_grid_for_widths({imaged.waist, imaged.waist}, 44);
  SampledField img;
  img.grid = grid;
  const Eigen::VectorXd& xs = grid->axis_nodes();
  img.values.resize(xs.size() * xs.size());
  const double shift = 30e-6;
  for (Eigen::Index i = 0; i < xs.size(); ++i)
    for (Eigen::Index j = 0; j < xs.size(); ++j) {
      const double dx = xs[i] - shift;
      img.values[i * xs.size() + j] =
          std::exp(-(dx * dx + xs[j] * xs[j]) /
                   (imaged.waist * imaged.waist));
    }
  imaged.image = img;

  const HgBasis basis = HgBasis::make(72e-6, 4);
  const CouplingMatrix cm = build_coupling_matrix(
      crystal, imaged, kSignalWavelength, basis, fast_options());
  const Eigen::Index p00 = basis.position_of({0, 0});
  const Eigen::Index p10 = basis.position_of({1, 0});
  const Eigen::Index p01 = basis.position_of({0, 1});
  const double scale = cm.k.cwiseAbs().maxCoeff();
  CHECK(std::abs(cm.k(p00, p10)) > 1e-3 * scale);   // odd in x now allowed
  CHECK(std::abs(cm.k(p00, p01)) < 1e-10 * scale);  // y parity intact
}

TEST_CASE("precondition violations are rejected") {
  CrystalParams crystal = reference_crystal();
  PumpProfile pump = reference_pump();
  pump.waist_position = 8e-3;  // outside the 10 mm crystal
  CHECK_THROWS(build_coupling_matrix(crystal, pump, kSignalWavelength,
                                     HgBasis::make(72e-6, 2), fast_options()));

  CouplingMatrix asym;
  asym.basis = HgBasis::make(72e-6, 1);
  asym.k = Eigen::MatrixXcd::Zero(4, 4);
  asym.k(0, 1) = 1.0;  // not symmetric
  CHECK_THROWS(takagi_decompose(asym));
}
