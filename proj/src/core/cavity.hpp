#pragma once

#include <utility>
#include <vector>

namespace siopo {

// 2x2 ray matrix.
struct Abcd {
  double a = 1.0, b = 0.0, c = 0.0, d = 1.0;

  static Abcd free_space(double length);
  static Abcd thin_lens(double focal_length);
  static Abcd curved_mirror(double radius);

  Abcd operator*(const Abcd& rhs) const;  // this applied after rhs
  double trace() const { return a + d; }
  double determinant() const { return a * d - b * c; }
};

// Plane mirror / lens f / curved mirror R linear cavity.
struct CavityGeometry {
  double focal_length = 0.0;        // f (m)
  double mirror_radius = 0.0;       // R (m)
  double length1 = 0.0;             // plane mirror to lens (m)
  double length2 = 0.0;             // lens to curved mirror (m)
  double output_transmission = 0.0; // output coupler power transmission
  double extra_loss = 0.0;          // other round-trip fractional loss
  double crystal_length = 0.0;      // (m)
  double crystal_index = 1.0;
  bool include_crystal_optical_path = false;

  void validate() const;
};

struct CavityReport {
  double free_spectral_range = 0.0;  // Hz
  double finesse = 0.0;
  double bandwidth_fwhm = 0.0;       // Hz
  double escape_efficiency = 0.0;
  double round_trip_gouy = 0.0;      // rad
  bool stable = true;
  // resonance offset of transverse order q relative to order 0, in Hz,
  // wrapped to (-FSR/2, FSR/2]
  std::vector<std::pair<int, double>> order_detunings;
};

// Degenerate lengths: L1 = f + f^2/R, L2 = f + R.
std::pair<double, double> self_imaging_lengths(double focal_length,
                                               double mirror_radius);

// One full round trip starting at the plane mirror.
Abcd round_trip_abcd(const CavityGeometry& geom);

CavityReport cavity_report(const CavityGeometry& geom, int max_order = 0);

struct DetuningPoint {
  double delta_l1 = 0.0;
  double delta_l2 = 0.0;
  CavityReport report;
};

// Reports over the tensor product of the two detuning lists.  Unstable
// geometries are flagged, not fatal.
std::vector<DetuningPoint> degeneracy_scan(const CavityGeometry& geom,
                                           const std::vector<double>& delta_l1,
                                           const std::vector<double>& delta_l2,
                                           int max_order);

// Co-resonance uses the half-linewidth criterion: order q counts as
// degenerate with the fundamental when |offset| < bandwidth/2.
bool order_is_coresonant(const CavityReport& report, int order);

}  // namespace siopo
