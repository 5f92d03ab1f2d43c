#include <doctest.h>

#include <cmath>

#include "core/modes.hpp"

using namespace siopo;

namespace {
const BeamGeometry kBeam{90e-6, 1064e-9, 0.0};
}

TEST_CASE("fundamental peak amplitude at the waist") {
  const Complex v = hg_field({0, 0}, kBeam, 0.0, 0.0, 0.0);
  CHECK(v.real() ==
        doctest::Approx(std::sqrt(2.0 / M_PI) / kBeam.waist_radius)
            .epsilon(1e-12));
  CHECK(v.imag() == doctest::Approx(0.0));
}

TEST_CASE("odd mode vanishes on its nodal line") {
  for (double y : {-40e-6, 0.0, 25e-6})
    CHECK(std::abs(hg_field({1, 0}, kBeam, 0.0, y, 0.0)) < 1e-18);
}

TEST_CASE("odd x order is antisymmetric under x -> -x") {
  const double x = 37e-6, y = -12e-6, z = 3e-3;
  const Complex a = hg_field({3, 1}, kBeam, x, y, z);
  const Complex b = hg_field({3, 1}, kBeam, -x, y, z);
  CHECK(std::abs(a + b) < 1e-12 * std::abs(a));
}

TEST_CASE("mode normalization on the quadrature grid") {
  GridPtr grid =
      make_grid_for_widths({kBeam.waist_radius, kBeam.waist_radius}, 48);
  for (ModeIndex idx : {ModeIndex{0, 0}, ModeIndex{2, 3}, ModeIndex{5, 5}}) {
    const SampledField f = sample_mode(idx, kBeam, 0.0, grid);
    CHECK(field_norm_squared(f) == doctest::Approx(1.0).epsilon(1e-10));
  }
}

TEST_CASE("gouy phase values") {
  const double zr = kBeam.rayleigh_range();
  CHECK(gouy_phase({0, 0}, kBeam, 0.0) == doctest::Approx(0.0));
  CHECK(gouy_phase({0, 0}, kBeam, zr) == doctest::Approx(M_PI / 4).epsilon(1e-14));
  CHECK(gouy_phase({1, 1}, kBeam, zr) ==
        doctest::Approx(3.0 * M_PI / 4).epsilon(1e-14));
}

TEST_CASE("gouy phase is strictly increasing in z and additive in order") {
  double prev = gouy_phase({2, 1}, kBeam, -5e-3);
  for (int i = 1; i <= 40; ++i) {
    const double z = -5e-3 + i * 0.5e-3;
    const double g = gouy_phase({2, 1}, kBeam, z);
    CHECK(g > prev);
    prev = g;
    CHECK(g == doctest::Approx(4.0 * kBeam.gouy_at(z)).epsilon(1e-14));
  }
}

TEST_CASE("orthonormality of the truncated basis") {
  const int n_max = 6;
  GridPtr grid = make_grid_for_widths(
      {kBeam.waist_radius, kBeam.waist_radius}, 2 * (n_max + 1) + 16);
  std::vector<SampledField> fields;
  for (ModeIndex idx : basis_indices(n_max))
    fields.push_back(sample_mode(idx, kBeam, 0.0, grid));
  for (std::size_t i = 0; i < fields.size(); ++i)
    for (std::size_t j = i; j < fields.size(); ++j) {
      const Complex o = overlap(fields[i], fields[j]);
      CHECK(std::abs(o - (i == j ? 1.0 : 0.0)) < 1e-9);
    }
}

TEST_CASE("two-waist fundamental overlap has the closed form") {
  // <00 at w | 00 at 2w> = 2 w (2w) / (w^2 + 4w^2) = 0.8
  const double w = 90e-6;
  const BeamGeometry narrow{w, 1064e-9, 0.0};
  const BeamGeometry wide{2 * w, 1064e-9, 0.0};
  GridPtr grid = make_grid_for_widths({w, 2 * w}, 48);
  const SampledField a = sample_mode({0, 0}, narrow, 0.0, grid);
  const SampledField b = sample_mode({0, 0}, wide, 0.0, grid);
  CHECK(overlap(a, b).real() == doctest::Approx(0.8).epsilon(1e-9));

  // generic pair, against 2 w1 w2 / (w1^2 + w2^2)
  const double w2 = 130e-6;
  const BeamGeometry other{w2, 1064e-9, 0.0};
  GridPtr grid2 = make_grid_for_widths({w, w2}, 48);
  const double expected = 2.0 * w * w2 / (w * w + w2 * w2);
  CHECK(overlap(sample_mode({0, 0}, narrow, 0.0, grid2),
                sample_mode({0, 0}, other, 0.0, grid2))
            .real() == doctest::Approx(expected).epsilon(1e-9));
}

TEST_CASE("overlap magnitude is bounded by the norms") {
  GridPtr grid =
      make_grid_for_widths({kBeam.waist_radius, kBeam.waist_radius}, 40);
  const SampledField a = sample_mode({1, 2}, kBeam, 2e-3, grid);
  const SampledField b = sample_mode({1, 2}, kBeam, -1e-3, grid);
  const double bound = std::sqrt(field_norm_squared(a) * field_norm_squared(b));
  CHECK(std::abs(overlap(a, b)) <= bound + 1e-9);
}

TEST_CASE("grid mismatch is rejected") {
  GridPtr g1 = make_grid_for_widths({90e-6, 90e-6}, 32);
  GridPtr g2 = make_grid_for_widths({90e-6, 90e-6}, 40);
  const SampledField a = sample_mode({0, 0}, kBeam, 0.0, g1);
  const SampledField b = sample_mode({0, 0}, kBeam, 0.0, g2);
  CHECK_THROWS(overlap(a, b));
}

TEST_CASE("basis ordering: total order first, higher x order ahead") {
  const std::vector<ModeIndex> idx = basis_indices(2);
  REQUIRE(idx.size() == 9);
  CHECK(idx[0] == ModeIndex{0, 0});
  CHECK(idx[1] == ModeIndex{1, 0});
  CHECK(idx[2] == ModeIndex{0, 1});
  CHECK(idx[3] == ModeIndex{2, 0});
  CHECK(idx[4] == ModeIndex{1, 1});
  CHECK(idx[5] == ModeIndex{0, 2});
}

TEST_CASE("invalid beams are rejected") {
  CHECK_THROWS(hg_field({0, 0}, BeamGeometry{-1e-6, 1064e-9, 0.0}, 0, 0, 0));
  CHECK_THROWS(hg_field({0, 0}, BeamGeometry{90e-6, 0.0, 0.0}, 0, 0, 0));
}
