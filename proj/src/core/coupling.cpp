#include "core/coupling.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <functional>
#include <numeric>
#include <sstream>

#include <Eigen/Dense>

#include "core/error.hpp"
#include "core/hermite.hpp"

namespace siopo {

namespace {

using Eigen::MatrixXcd;
using Eigen::MatrixXd;
using Eigen::VectorXcd;
using Eigen::VectorXd;

struct GaussLegendreRule {
  VectorXd nodes;
  VectorXd weights;
};

GaussLegendreRule gauss_legendre(int n, double a, double b) {
  GaussLegendreRule rule;
  rule.nodes.resize(n);
  rule.weights.resize(n);
  const int half = (n + 1) / 2;
  for (int i = 0; i < half; ++i) {
    double z = std::cos(M_PI * (i + 0.75) / (n + 0.5));
    double pp = 0.0;
    for (int it = 0; it < 100; ++it) {
      double p0 = 1.0, p1 = 0.0;
      for (int j = 0; j < n; ++j) {
        const double p2 = p1;
        p1 = p0;
        p0 = ((2.0 * j + 1.0) * z * p1 - j * p2) / (j + 1.0);
      }
      pp = n * (z * p0 - p1) / (z * z - 1.0);
      const double step = p0 / pp;
      z -= step;
      if (std::abs(step) < 1e-15) break;
    }
    const double xm = 0.5 * (b + a);
    const double xl = 0.5 * (b - a);
    rule.nodes[i] = xm - xl * z;
    rule.nodes[n - 1 - i] = xm + xl * z;
    rule.weights[i] = rule.weights[n - 1 - i] =
        2.0 * xl / ((1.0 - z * z) * pp * pp);
  }
  return rule;
}

double golden_max(const std::function<double(double)>& f, double lo, double hi,
                  double tol) {
  const double inv_phi = (std::sqrt(5.0) - 1.0) / 2.0;
  double a = lo, b = hi;
  double c = b - inv_phi * (b - a);
  double d = a + inv_phi * (b - a);
  double fc = f(c), fd = f(d);
  while (b - a > tol) {
    if (fc > fd) {
      b = d;
      d = c;
      fd = fc;
      c = b - inv_phi * (b - a);
      fc = f(c);
    } else {
      a = c;
      c = d;
      fc = fd;
      d = a + inv_phi * (b - a);
      fd = f(d);
    }
  }
  return 0.5 * (a + b);
}

// 1-D cross matrices at a single z: F^a_mq = int g_a(x,z) u_m(x,z) u_q(x,z) dx
// for pump orders a = 0..n_pump, with the pump envelope counter-rotating
// (conjugate Gouy and curvature) against the signal pair.  The Gouy factors
// exp(i[(m+q+1) zs - (a+1/2) zp]) are separated out analytically.
std::vector<MatrixXcd> cross_matrices(const BeamGeometry& pump_beam,
                                      const BeamGeometry& sig_beam, double z,
                                      int n_max, int n_pump, int nodes) {
  const double wp = pump_beam.width_at(z);
  const double ws = sig_beam.width_at(z);
  const double scale = 1.0 / std::sqrt(1.0 / (wp * wp) + 2.0 / (ws * ws));

  const GaussHermiteRule rule = gauss_hermite(nodes);
  const VectorXd x = scale * rule.nodes;
  const VectorXd w = scale * rule.comp_weights;

  const MatrixXd sig_amp = hg_amplitudes_1d(n_max, ws, x);
  const MatrixXd pump_amp = hg_amplitudes_1d(n_pump, wp, x);

  // transverse curvature mismatch: pump conjugated, two signal factors
  const double phi = 0.5 * pump_beam.wavenumber() * pump_beam.curvature_at(z) -
                     sig_beam.wavenumber() * sig_beam.curvature_at(z);
  VectorXcd base(x.size());
  for (Eigen::Index i = 0; i < x.size(); ++i)
    base[i] = w[i] * std::polar(1.0, phi * x[i] * x[i]);

  const double zs = sig_beam.gouy_at(z);
  const double zp = pump_beam.gouy_at(z);

  std::vector<MatrixXcd> out;
  out.reserve(n_pump + 1);
  for (int a = 0; a <= n_pump; ++a) {
    MatrixXcd f(n_max + 1, n_max + 1);
    VectorXcd ga = base.cwiseProduct(pump_amp.row(a).transpose().cast<Complex>());
    for (int m = 0; m <= n_max; ++m)
      for (int q = m; q <= n_max; ++q) {
        Complex acc = 0.0;
        for (Eigen::Index i = 0; i < x.size(); ++i)
          acc += ga[i] * sig_amp(m, i) * sig_amp(q, i);
        acc *= std::polar(1.0, (m + q + 1) * zs - (a + 0.5) * zp);
        f(m, q) = acc;
        f(q, m) = acc;
      }
    out.push_back(std::move(f));
  }
  return out;
}

// pump decomposed over its own HG basis; a plain Gaussian is {c_00 = 1}
struct PumpExpansion {
  int n_pump = 0;
  MatrixXcd coeffs;  // (a, b), conjugated ready for the counter-rotating kernel
};

PumpExpansion expand_pump(const PumpProfile& pump) {
  PumpExpansion ex;
  if (!pump.image) {
    ex.n_pump = 0;
    ex.coeffs = MatrixXcd::Ones(1, 1);
    return ex;
  }
  const SampledField& img = *pump.image;
  if (!img.grid) fail_validation("pump image: missing grid");
  const double norm2 = img.grid->integrate(
      img.values.conjugate().cwiseProduct(img.values)).real();
  if (!(norm2 > 0.0)) fail_validation("pump image: zero norm");
  const int np = pump.image_truncation;
  ex.n_pump = np;
  ex.coeffs.resize(np + 1, np + 1);
  const Eigen::VectorXd& xs = img.grid->axis_nodes();
  const MatrixXd amps = hg_amplitudes_1d(np, pump.waist, xs);
  const Eigen::Index n = xs.size();
  for (int a = 0; a <= np; ++a)
    for (int b = 0; b <= np; ++b) {
      Complex acc = 0.0;
      for (Eigen::Index i = 0; i < n; ++i) {
        Complex row = 0.0;
        for (Eigen::Index j = 0; j < n; ++j)
          row += img.grid->axis_weights()[j] * amps(b, j) *
                 img.values[i * n + j];
        acc += img.grid->axis_weights()[i] * amps(a, i) * row;
      }
      ex.coeffs(a, b) = std::conj(acc / std::sqrt(norm2));
    }
  return ex;
}

MatrixXcd assemble(const CrystalParams& crystal, const PumpProfile& pump,
                   double signal_wavelength, const HgBasis& basis,
                   int z_nodes, int transverse_nodes) {
  const double n_s = crystal.signal_index;
  const BeamGeometry sig_beam{basis.waist, signal_wavelength / n_s, 0.0};
  const BeamGeometry pump_beam{pump.waist, pump.wavelength / n_s,
                               pump.waist_position};

  const PumpExpansion ex = expand_pump(pump);
  const int n_max = basis.n_max;
  const int nodes = transverse_nodes > 0
                        ? transverse_nodes
                        : 2 * (n_max + 1) + 16 + ex.n_pump;

  const GaussLegendreRule zr =
      gauss_legendre(z_nodes, -0.5 * crystal.length, 0.5 * crystal.length);

  const Eigen::Index dim = basis.dim();
  MatrixXcd k = MatrixXcd::Zero(dim, dim);
  const double amplitude = crystal.gain_scale * std::sqrt(pump.power);

  for (int iz = 0; iz < z_nodes; ++iz) {
    const double z = zr.nodes[iz];
    const std::vector<MatrixXcd> f =
        cross_matrices(pump_beam, sig_beam, z, n_max, ex.n_pump, nodes);
    const Complex zfac =
        zr.weights[iz] * std::polar(1.0, crystal.phase_mismatch * z);
    for (int a = 0; a <= ex.n_pump; ++a)
      for (int b = 0; b <= ex.n_pump; ++b) {
        const Complex c = zfac * ex.coeffs(a, b);
        if (std::abs(c) == 0.0) continue;
        const MatrixXcd& fx = f[a];
        const MatrixXcd& fy = f[b];
        for (Eigen::Index p = 0; p < dim; ++p) {
          const ModeIndex mp = basis.indices[p];
          for (Eigen::Index q = p; q < dim; ++q) {
            const ModeIndex mq = basis.indices[q];
            k(p, q) += c * fx(mp.m, mq.m) * fy(mp.n, mq.n);
          }
        }
      }
  }
  for (Eigen::Index p = 0; p < dim; ++p)
    for (Eigen::Index q = p; q < dim; ++q) k(q, p) = k(p, q);
  return amplitude * k;
}

}  // namespace

void CrystalParams::validate() const {
  if (!(length > 0.0)) fail_validation("crystal: length must be > 0");
  if (!(signal_index > 1.0)) fail_validation("crystal: signal_index must be > 1");
  if (!(gain_scale > 0.0)) fail_validation("crystal: gain_scale must be > 0");
}

void PumpProfile::validate() const {
  if (!(waist > 0.0)) fail_validation("pump: waist must be > 0");
  if (!(wavelength > 0.0)) fail_validation("pump: wavelength must be > 0");
  if (power < 0.0) fail_validation("pump: power must be >= 0");
  if (image && image_truncation < 0)
    fail_validation("pump: image_truncation must be >= 0");
}

HgBasis HgBasis::make(double waist, int n_max) {
  if (!(waist > 0.0)) fail_validation("basis: waist must be > 0");
  if (n_max < 0) fail_validation("basis: n_max must be >= 0");
  HgBasis b;
  b.waist = waist;
  b.n_max = n_max;
  b.indices = basis_indices(n_max);
  return b;
}

Eigen::Index HgBasis::position_of(ModeIndex idx) const {
  for (Eigen::Index i = 0; i < dim(); ++i)
    if (indices[i] == idx) return i;
  fail_validation("basis: index outside truncation");
}

double coherence_length(double signal_wavelength, double crystal_length,
                        double signal_index) {
  if (!(signal_wavelength > 0.0) || !(crystal_length > 0.0) ||
      !(signal_index > 0.0))
    fail_validation("coherence_length: inputs must be positive");
  return std::sqrt(signal_wavelength * crystal_length /
                   (M_PI * signal_index));
}

CouplingMatrix build_coupling_matrix(const CrystalParams& crystal,
                                     const PumpProfile& pump,
                                     double signal_wavelength,
                                     const HgBasis& basis,
                                     const CouplingOptions& opts) {
  crystal.validate();
  pump.validate();
  if (!(signal_wavelength > 0.0))
    fail_validation("build_coupling_matrix: signal wavelength must be > 0");
  if (std::abs(pump.waist_position) > 0.5 * crystal.length)
    fail_validation("build_coupling_matrix: pump waist outside the crystal");

  CouplingMatrix cm;
  cm.basis = basis;
  cm.pump_power = pump.power;
  cm.k = assemble(crystal, pump, signal_wavelength, basis, opts.z_nodes,
                  opts.transverse_nodes);

  if (opts.convergence_check) {
    const int nodes = opts.transverse_nodes > 0
                          ? opts.transverse_nodes
                          : 2 * (basis.n_max + 1) + 16;
    const MatrixXcd refined = assemble(crystal, pump, signal_wavelength, basis,
                                       2 * opts.z_nodes, 2 * nodes);
    const double scale = std::max(cm.k.cwiseAbs().maxCoeff(), 1e-300);
    const double change = (refined - cm.k).cwiseAbs().maxCoeff() / scale;
    if (change > 1e-6) {
      std::ostringstream msg;
      msg << "coupling matrix quadrature not converged: doubling nodes moved "
             "entries by "
          << change << " (relative); raise node counts or lower truncation";
      fail_numeric(msg.str());
    }
  }
  return cm;
}

namespace {

// cross-basis column: <u_a^{(basis)}|u_target^{(w)}> over a = 0..n_max, 1-D
VectorXd cross_basis_column(int n_max, double basis_waist, double w,
                            int target_order) {
  const int nodes = n_max + target_order + 18;
  const GaussHermiteRule rule = gauss_hermite(nodes);
  const double scale =
      1.0 / std::sqrt(1.0 / (basis_waist * basis_waist) + 1.0 / (w * w));
  const VectorXd x = scale * rule.nodes;
  const MatrixXd ha = hg_amplitudes_1d(n_max, basis_waist, x);
  const MatrixXd ht = hg_amplitudes_1d(target_order, w, x);
  VectorXd col(n_max + 1);
  for (int a = 0; a <= n_max; ++a) {
    double acc = 0.0;
    for (Eigen::Index i = 0; i < x.size(); ++i)
      acc += scale * rule.comp_weights[i] * ha(a, i) * ht(target_order, i);
    col[a] = acc;
  }
  return col;
}

// squared overlap of column vector v with HG(target) of waist w, the target
// projected and renormalized inside the truncated basis
double projected_overlap(const ModeDecomposition& dec, Eigen::Index k,
                         ModeIndex target, double w) {
  const int n_max = dec.basis.n_max;
  const VectorXd cx = cross_basis_column(n_max, dec.basis.waist, w, target.m);
  const VectorXd cy = cross_basis_column(n_max, dec.basis.waist, w, target.n);
  Complex dot = 0.0;
  double norm2 = 0.0;
  for (Eigen::Index p = 0; p < dec.dim(); ++p) {
    const ModeIndex mp = dec.basis.indices[p];
    const double cp = cx[mp.m] * cy[mp.n];
    dot += cp * std::conj(dec.vectors(p, k));
    norm2 += cp * cp;
  }
  if (norm2 <= 0.0) return 0.0;
  return std::norm(dot) / norm2;
}

struct Group {
  Eigen::Index start = 0;
  Eigen::Index size = 0;
};

std::vector<Group> gain_groups(const VectorXd& gains, const VectorXd& phases) {
  std::vector<Group> groups;
  const double tol = 1e-8 * (gains.size() ? gains[0] : 0.0);
  Eigen::Index start = 0;
  while (start < gains.size()) {
    Eigen::Index stop = start + 1;
    while (stop < gains.size() && gains[start] - gains[stop] <= tol &&
           std::abs(std::remainder(phases[start] - phases[stop],
                                   2.0 * M_PI)) < 1e-6)
      ++stop;
    groups.push_back({start, stop - start});
    start = stop;
  }
  return groups;
}

// Rotate a degenerate group so each column is dominated by a distinct HG
// coefficient.  Restricted to real orthogonal mixing, which preserves the
// factorization for a common gain and phase.
void align_group(MatrixXcd& vectors, Eigen::Index start, Eigen::Index size) {
  const Eigen::Index dim = vectors.rows();
  std::vector<std::pair<double, Eigen::Index>> weight(dim);
  for (Eigen::Index j = 0; j < dim; ++j) {
    double wsum = 0.0;
    for (Eigen::Index k = 0; k < size; ++k)
      wsum += std::norm(vectors(j, start + k));
    weight[j] = {wsum, j};
  }
  std::stable_sort(weight.begin(), weight.end(), [](const auto& a, const auto& b) {
    return a.first > b.first;
  });
  MatrixXcd sub(size, size);
  for (Eigen::Index r = 0; r < size; ++r)
    for (Eigen::Index k = 0; k < size; ++k)
      sub(r, k) = vectors(weight[r].second, start + k);
  if (sub.imag().cwiseAbs().maxCoeff() > 1e-10 * sub.cwiseAbs().maxCoeff())
    return;  // genuinely complex group, leave as factorized
  const MatrixXd s = sub.real();
  Eigen::JacobiSVD<MatrixXd> svd(s, Eigen::ComputeFullU | Eigen::ComputeFullV);
  const MatrixXd rot =
      (svd.matrixU() * svd.matrixV().transpose()).transpose();
  vectors.middleCols(start, size) =
      (vectors.middleCols(start, size) * rot.cast<Complex>()).eval();
}

}  // namespace

ModeDecomposition takagi_decompose(const CouplingMatrix& coupling) {
  TakagiFactorization raw = takagi_factorize(coupling.k);

  for (const Group& g : gain_groups(raw.gains, raw.phases))
    if (g.size > 1) align_group(raw.vectors, g.start, g.size);

  const Eigen::Index dim = raw.gains.size();

  // dominant coefficient per mode
  std::vector<ModeIndex> dominant(dim);
  for (Eigen::Index k = 0; k < dim; ++k) {
    Eigen::Index best = 0;
    double mag = -1.0;
    for (Eigen::Index j = 0; j < dim; ++j) {
      const double a = std::norm(raw.vectors(j, k));
      if (a > mag + 1e-15) {
        mag = a;
        best = j;
      }
    }
    dominant[k] = coupling.basis.indices[best];
  }

  // deterministic order inside degenerate groups
  std::vector<Eigen::Index> order(dim);
  std::iota(order.begin(), order.end(), Eigen::Index{0});
  for (const Group& g : gain_groups(raw.gains, raw.phases))
    std::stable_sort(order.begin() + g.start,
                     order.begin() + g.start + g.size,
                     [&](Eigen::Index a, Eigen::Index b) {
                       const ModeIndex& da = dominant[a];
                       const ModeIndex& db = dominant[b];
                       if (da.total() != db.total())
                         return da.total() < db.total();
                       return da.m > db.m;
                     });

  ModeDecomposition dec;
  dec.basis = coupling.basis;
  dec.gains.resize(dim);
  dec.phases.resize(dim);
  dec.vectors.resize(dim, dim);
  dec.dominant.resize(dim);
  for (Eigen::Index k = 0; k < dim; ++k) {
    const Eigen::Index s = order[k];
    dec.gains[k] = raw.gains[s];
    dec.phases[k] = raw.phases[s];
    dec.vectors.col(k) = raw.vectors.col(s);
    dec.dominant[k] = dominant[s];
  }

  // canonical phases again (group alignment may have rotated anchors)
  for (Eigen::Index k = 0; k < dim; ++k) {
    Eigen::Index anchor = 0;
    double mag = -1.0;
    for (Eigen::Index j = 0; j < dim; ++j) {
      const double a = std::abs(dec.vectors(j, k));
      if (a > mag + 1e-12) {
        mag = a;
        anchor = j;
      }
    }
    const double phi = std::arg(dec.vectors(anchor, k));
    dec.vectors.col(k) *= std::polar(1.0, -phi);
    dec.phases[k] = std::remainder(dec.phases[k] + 2.0 * phi, 2.0 * M_PI);
    if (dec.phases[k] <= -M_PI) dec.phases[k] += 2.0 * M_PI;
  }

  TakagiFactorization final_f{dec.vectors, dec.gains, dec.phases};
  dec.reconstruction_error =
      takagi_reconstruction_error(coupling.k, final_f);
  if (dec.reconstruction_error > 1e-10)
    fail_numeric("takagi_decompose: reconstruction error " +
                 std::to_string(dec.reconstruction_error));
  const double ortho =
      (dec.vectors.adjoint() * dec.vectors - MatrixXcd::Identity(dim, dim))
          .cwiseAbs()
          .maxCoeff();
  if (ortho > 1e-9)
    fail_numeric("takagi_decompose: eigenvectors not orthonormal");
  return dec;
}

ModeDecomposition ModeDecomposition::restricted_to(Eigen::Index k) const {
  if (k < 0 || k >= dim())
    fail_validation("restricted_to: mode index out of range");
  ModeDecomposition out;
  out.basis = basis;
  out.gains = gains.segment(k, 1);
  out.phases = phases.segment(k, 1);
  out.vectors = vectors.col(k);
  out.dominant = {dominant[static_cast<std::size_t>(k)]};
  out.reconstruction_error = reconstruction_error;
  return out;
}

int mode_count(const ModeDecomposition& dec, double cutoff) {
  if (dec.dim() == 0) fail_validation("mode_count: empty decomposition");
  if (!(cutoff > 0.0 && cutoff < 1.0))
    fail_validation("mode_count: cutoff must be in (0, 1)");
  if (!(dec.gains[0] > 0.0)) fail_validation("mode_count: zero leading gain");
  int count = 0;
  for (Eigen::Index k = 0; k < dec.dim(); ++k)
    if (dec.gains[k] / dec.gains[0] >= cutoff) ++count;
  return count;
}

double cooperativity_estimate(double pump_waist, double coherence_len) {
  if (!(pump_waist > 0.0) || !(coherence_len > 0.0))
    fail_validation("cooperativity_estimate: inputs must be positive");
  const double r = pump_waist / coherence_len;
  return r * r;
}

double eigenmode_hg_overlap(const ModeDecomposition& dec, Eigen::Index k,
                            ModeIndex* best_index, double* best_waist) {
  if (k < 0 || k >= dec.dim())
    fail_validation("eigenmode_hg_overlap: mode index out of range");

  // candidate single-HG targets: any index carrying visible weight
  std::vector<ModeIndex> candidates;
  for (Eigen::Index j = 0; j < dec.dim(); ++j)
    if (std::norm(dec.vectors(j, k)) >= 1e-2)
      candidates.push_back(dec.basis.indices[j]);
  if (candidates.empty()) candidates.push_back(dec.dominant[k]);

  double best = 0.0;
  ModeIndex best_mn = candidates.front();
  double best_w = dec.basis.waist;
  for (const ModeIndex& target : candidates) {
    // coarse log scan, then golden-section refinement
    const double lo = dec.basis.waist / 3.5;
    const double hi = dec.basis.waist * 3.5;
    double coarse_w = dec.basis.waist;
    double coarse_v = -1.0;
    const int steps = 33;
    for (int i = 0; i < steps; ++i) {
      const double w = lo * std::pow(hi / lo, i / double(steps - 1));
      const double v = projected_overlap(dec, k, target, w);
      if (v > coarse_v) {
        coarse_v = v;
        coarse_w = w;
      }
    }
    const double span = std::pow(hi / lo, 1.0 / (steps - 1));
    const double w_opt = golden_max(
        [&](double w) { return projected_overlap(dec, k, target, w); },
        coarse_w / span, coarse_w * span, 1e-8);
    const double v = projected_overlap(dec, k, target, w_opt);
    if (v > best) {
      best = v;
      best_mn = target;
      best_w = w_opt;
    }
  }
  if (best_index) *best_index = best_mn;
  if (best_waist) *best_waist = best_w;
  return best;
}

double eigenmode_hg_overlap(const ModeDecomposition& dec, Eigen::Index k) {
  return eigenmode_hg_overlap(dec, k, nullptr, nullptr);
}

double optimal_basis_waist(const CrystalParams& crystal,
                           const PumpProfile& pump, double signal_wavelength,
                           const CouplingOptions& opts) {
  crystal.validate();
  pump.validate();
  const double l_coh =
      coherence_length(signal_wavelength, crystal.length, crystal.signal_index);
  const double seed = std::sqrt(l_coh * pump.waist);

  PumpProfile gaussian_pump = pump;
  gaussian_pump.image.reset();  // waist choice follows the fundamental gain

  auto gain0 = [&](double w) {
    const HgBasis basis = HgBasis::make(w, 0);
    CouplingOptions o = opts;
    o.convergence_check = false;
    o.transverse_nodes = 24;
    const CouplingMatrix cm = build_coupling_matrix(
        crystal, gaussian_pump, signal_wavelength, basis, o);
    return std::abs(cm.k(0, 0));
  };

  const double lo = seed / 4.0;
  const double hi = seed * 4.0;
  double coarse_w = seed;
  double coarse_v = -1.0;
  const int steps = 21;
  for (int i = 0; i < steps; ++i) {
    const double w = lo * std::pow(hi / lo, i / double(steps - 1));
    const double v = gain0(w);
    if (v > coarse_v) {
      coarse_v = v;
      coarse_w = w;
    }
  }
  const double span = std::pow(hi / lo, 1.0 / (steps - 1));
  return golden_max(gain0, coarse_w / span, coarse_w * span, 1e-7);
}

ConvergenceCheck check_truncation_convergence(const CrystalParams& crystal,
                                              const PumpProfile& pump,
                                              double signal_wavelength,
                                              double basis_waist, int n_max,
                                              const CouplingOptions& opts) {
  CouplingOptions o = opts;
  o.convergence_check = false;
  const CouplingMatrix a = build_coupling_matrix(
      crystal, pump, signal_wavelength, HgBasis::make(basis_waist, n_max), o);
  const CouplingMatrix b =
      build_coupling_matrix(crystal, pump, signal_wavelength,
                            HgBasis::make(basis_waist, n_max + 5), o);
  const TakagiFactorization fa = takagi_factorize(a.k);
  const TakagiFactorization fb = takagi_factorize(b.k);

  ConvergenceCheck check;
  const Eigen::Index top = std::min<Eigen::Index>(11, fa.gains.size());
  const double scale = std::max(fa.gains[0], 1e-300);
  for (Eigen::Index k = 0; k < top; ++k)
    check.max_relative_change =
        std::max(check.max_relative_change,
                 std::abs(fa.gains[k] - fb.gains[k]) / scale);
  check.converged = check.max_relative_change < 1e-6;
  return check;
}

}  // namespace siopo
