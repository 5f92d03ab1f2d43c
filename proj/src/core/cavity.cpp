#include "core/cavity.hpp"

#include <cmath>

#include "core/error.hpp"

namespace siopo {

namespace {
constexpr double kSpeedOfLight = 299792458.0;
}

Abcd Abcd::free_space(double length) { return {1.0, length, 0.0, 1.0}; }

Abcd Abcd::thin_lens(double focal_length) {
  return {1.0, 0.0, -1.0 / focal_length, 1.0};
}

Abcd Abcd::curved_mirror(double radius) {
  return {1.0, 0.0, -2.0 / radius, 1.0};
}

Abcd Abcd::operator*(const Abcd& r) const {
  return {a * r.a + b * r.c, a * r.b + b * r.d,
          c * r.a + d * r.c, c * r.b + d * r.d};
}

void CavityGeometry::validate() const {
  if (!(focal_length > 0.0)) fail_validation("cavity: focal_length must be > 0");
  if (!(mirror_radius > 0.0)) fail_validation("cavity: mirror_radius must be > 0");
  if (!(length1 > 0.0)) fail_validation("cavity: length1 must be > 0");
  if (!(length2 > 0.0)) fail_validation("cavity: length2 must be > 0");
  if (output_transmission < 0.0 || output_transmission >= 1.0)
    fail_validation("cavity: output_transmission must be in [0, 1)");
  if (extra_loss < 0.0 || extra_loss >= 1.0)
    fail_validation("cavity: extra_loss must be in [0, 1)");
  if (crystal_length < 0.0) fail_validation("cavity: crystal_length must be >= 0");
  if (crystal_index < 1.0) fail_validation("cavity: crystal_index must be >= 1");
}

std::pair<double, double> self_imaging_lengths(double focal_length,
                                               double mirror_radius) {
  if (!(focal_length > 0.0)) fail_validation("self_imaging_lengths: f must be > 0");
  if (!(mirror_radius > 0.0)) fail_validation("self_imaging_lengths: R must be > 0");
  return {focal_length + focal_length * focal_length / mirror_radius,
          focal_length + mirror_radius};
}

Abcd round_trip_abcd(const CavityGeometry& geom) {
  geom.validate();
  const Abcd l1 = Abcd::free_space(geom.length1);
  const Abcd l2 = Abcd::free_space(geom.length2);
  const Abcd lens = Abcd::thin_lens(geom.focal_length);
  const Abcd mirror = Abcd::curved_mirror(geom.mirror_radius);
  // plane mirror -> lens -> curved mirror -> lens -> plane mirror
  return l1 * lens * l2 * mirror * l2 * lens * l1;
}

CavityReport cavity_report(const CavityGeometry& geom, int max_order) {
  geom.validate();
  if (max_order < 0) fail_validation("cavity_report: max_order must be >= 0");
  const double loss = geom.output_transmission + geom.extra_loss;
  if (loss <= 0.0)
    fail_validation("cavity_report: lossless cavity has undefined finesse");

  CavityReport rep;
  double optical_length = geom.length1 + geom.length2;
  if (geom.include_crystal_optical_path)
    optical_length += (geom.crystal_index - 1.0) * geom.crystal_length;
  rep.free_spectral_range = kSpeedOfLight / (2.0 * optical_length);
  rep.finesse = 2.0 * M_PI / loss;
  rep.bandwidth_fwhm = rep.free_spectral_range / rep.finesse;
  rep.escape_efficiency = geom.output_transmission / loss;

  const Abcd rt = round_trip_abcd(geom);
  const double half_trace = 0.5 * rt.trace();
  rep.stable = std::abs(half_trace) <= 1.0;
  rep.round_trip_gouy = rep.stable ? std::acos(half_trace) : 0.0;

  rep.order_detunings.reserve(max_order + 1);
  for (int q = 0; q <= max_order; ++q) {
    double offset = 0.0;
    if (rep.stable) {
      offset = q * rep.round_trip_gouy / (2.0 * M_PI) * rep.free_spectral_range;
      offset = std::remainder(offset, rep.free_spectral_range);
    }
    rep.order_detunings.emplace_back(q, offset);
  }
  return rep;
}

std::vector<DetuningPoint> degeneracy_scan(const CavityGeometry& geom,
                                           const std::vector<double>& delta_l1,
                                           const std::vector<double>& delta_l2,
                                           int max_order) {
  geom.validate();
  std::vector<DetuningPoint> points;
  points.reserve(delta_l1.size() * delta_l2.size());
  for (double d1 : delta_l1)
    for (double d2 : delta_l2) {
      CavityGeometry g = geom;
      g.length1 += d1;
      g.length2 += d2;
      DetuningPoint p;
      p.delta_l1 = d1;
      p.delta_l2 = d2;
      p.report = cavity_report(g, max_order);
      points.push_back(std::move(p));
    }
  return points;
}

bool order_is_coresonant(const CavityReport& report, int order) {
  for (const auto& [q, offset] : report.order_detunings)
    if (q == order) return std::abs(offset) < 0.5 * report.bandwidth_fwhm;
  fail_validation("order_is_coresonant: order not present in report");
}

}  // namespace siopo
