#include "core/modes.hpp"

#include <algorithm>
#include <cmath>

#include "core/error.hpp"
#include "core/hermite.hpp"

namespace siopo {

void BeamGeometry::validate() const {
  if (!(waist_radius > 0.0)) fail_validation("beam: waist_radius must be > 0");
  if (!(wavelength > 0.0)) fail_validation("beam: wavelength must be > 0");
}

double BeamGeometry::rayleigh_range() const {
  return M_PI * waist_radius * waist_radius / wavelength;
}

double BeamGeometry::width_at(double z) const {
  const double u = (z - waist_position) / rayleigh_range();
  return waist_radius * std::sqrt(1.0 + u * u);
}

double BeamGeometry::gouy_at(double z) const {
  return std::atan((z - waist_position) / rayleigh_range());
}

double BeamGeometry::curvature_at(double z) const {
  const double dz = z - waist_position;
  const double zr = rayleigh_range();
  return dz / (dz * dz + zr * zr);
}

double BeamGeometry::wavenumber() const { return 2.0 * M_PI / wavelength; }

double gouy_phase(ModeIndex idx, const BeamGeometry& beam, double z) {
  beam.validate();
  return (idx.total() + 1) * beam.gouy_at(z);
}

Eigen::MatrixXd hg_amplitudes_1d(int max_order, double width,
                                 const Eigen::VectorXd& x) {
  const double scale = std::sqrt(std::sqrt(2.0) / width);
  Eigen::MatrixXd amps = hermite_functions(max_order, (std::sqrt(2.0) / width) * x);
  return scale * amps;
}

Complex hg_field(ModeIndex idx, const BeamGeometry& beam, double x, double y,
                 double z) {
  beam.validate();
  if (idx.m < 0 || idx.n < 0) fail_validation("hg_field: negative mode index");
  const double w = beam.width_at(z);
  const int top = std::max(idx.m, idx.n);
  std::vector<double> hx(top + 1), hy(top + 1);
  const double s = std::sqrt(2.0) / w;
  hermite_functions(top, s * x, hx.data());
  hermite_functions(top, s * y, hy.data());
  const double amp = std::sqrt(std::sqrt(2.0) / w) * hx[idx.m] *
                     std::sqrt(std::sqrt(2.0) / w) * hy[idx.n];
  const double r2 = x * x + y * y;
  const double phase = gouy_phase(idx, beam, z) -
                       0.5 * beam.wavenumber() * r2 * beam.curvature_at(z);
  return amp * std::polar(1.0, phase);
}

SampledField sample_mode(ModeIndex idx, const BeamGeometry& beam, double z,
                         GridPtr grid) {
  if (!grid) fail_validation("sample_mode: null grid");
  const Eigen::VectorXd& xs = grid->axis_nodes();
  const Eigen::Index n = xs.size();
  const int top = std::max(idx.m, idx.n);
  const double w = beam.width_at(z);
  Eigen::MatrixXd amps = hg_amplitudes_1d(top, w, xs);
  const double gouy = gouy_phase(idx, beam, z);
  const double curv = 0.5 * beam.wavenumber() * beam.curvature_at(z);

  SampledField f;
  f.grid = std::move(grid);
  f.values.resize(n * n);
  for (Eigen::Index i = 0; i < n; ++i)
    for (Eigen::Index j = 0; j < n; ++j) {
      const double r2 = xs[i] * xs[i] + xs[j] * xs[j];
      f.values[i * n + j] = amps(idx.m, i) * amps(idx.n, j) *
                            std::polar(1.0, gouy - curv * r2);
    }
  return f;
}

Complex overlap(const SampledField& a, const SampledField& b) {
  if (!a.grid || !b.grid) fail_validation("overlap: field without grid");
  if (a.grid != b.grid && !a.grid->compatible_with(*b.grid))
    fail_validation("overlap: fields sampled on different grids");
  return a.grid->integrate(a.values.conjugate().cwiseProduct(b.values));
}

double field_norm_squared(const SampledField& f) {
  return overlap(f, f).real();
}

std::vector<ModeIndex> basis_indices(int n_max) {
  if (n_max < 0) fail_validation("basis_indices: n_max must be >= 0");
  std::vector<ModeIndex> idx;
  idx.reserve((n_max + 1) * (n_max + 1));
  for (int m = 0; m <= n_max; ++m)
    for (int n = 0; n <= n_max; ++n) idx.push_back({m, n});
  std::sort(idx.begin(), idx.end(), [](const ModeIndex& a, const ModeIndex& b) {
    if (a.total() != b.total()) return a.total() < b.total();
    return a.m > b.m;
  });
  return idx;
}

}  // namespace siopo
