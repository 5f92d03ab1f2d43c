#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "core/modes.hpp"

namespace siopo {

// Flat TOML subset: [section] headers, key = value with quoted strings,
// numbers and booleans, '#' comments.  Enough for experiment description
// files; arrays and nested tables are not accepted.
class KeyValueFile {
 public:
  static KeyValueFile parse(const std::string& text);

  bool has(const std::string& section, const std::string& key) const;
  std::string get_string(const std::string& section, const std::string& key) const;
  double get_number(const std::string& section, const std::string& key) const;
  bool get_bool(const std::string& section, const std::string& key) const;
  std::vector<std::string> keys(const std::string& section) const;

 private:
  std::map<std::string, std::map<std::string, std::string>> values_;
};

enum class Dimension { length, frequency, power, inverse_length, dimensionless };

// "30 mm", "120 um", "3 MHz", "50 mW", "0 /m" -> SI value.  The unit suffix
// must match the expected dimension.
double parse_quantity(const std::string& text, Dimension dim,
                      const std::string& field_name);

struct ExperimentConfig {
  // cavity
  double focal_length = 0.0;
  double mirror_radius = 0.0;
  bool self_imaging = true;
  double length1 = 0.0;
  double length2 = 0.0;
  double output_transmission = 0.0;
  double extra_loss = 0.0;
  bool include_crystal_optical_path = false;

  // crystal
  double crystal_length = 0.0;
  double signal_index = 0.0;
  double phase_mismatch = 0.0;
  double gain_scale = 1.0;

  // pump
  double pump_wavelength = 0.0;
  double pump_waist = 0.0;
  double pump_power = 0.050;
  double pump_ratio = 0.9;
  double pump_waist_position = 0.0;

  // signal
  double signal_wavelength = 0.0;
  bool basis_waist_auto = true;
  double basis_waist = 0.0;

  // basis / spectra
  int truncation = 20;
  double mode_cutoff = 0.6;

  // detection efficiency beyond cavity escape
  double eff_propagation = 1.0;
  double eff_detector = 1.0;
  double eff_visibility = 1.0;
  std::optional<double> eff_escape_override;

  // homodyne
  bool lo_is_eigenmode = false;
  int lo_eigen_index = 0;
  ModeIndex lo_mode{0, 0};
  double lo_waist = 0.0;  // 0 = basis waist
  double analysis_frequency = 3.0e6;  // Hz
  std::uint64_t seed = 1;
  int window_samples = 10000;
  int sweep_windows = 3600;
  int sweeps = 10;
  int phase_bins = 36;

  // degeneracy scan
  double scan_l1_span = 0.0;     // half span (m)
  double scan_l2_span = 1.0e-3;  // half span (m)
  int scan_l1_points = 1;
  int scan_l2_points = 41;
  int scan_max_order = 5;

  std::string output_dir = "out";

  std::vector<std::string> warnings;

  // validated, defaults resolved, geometry and loss split derived
  static ExperimentConfig load(const std::string& path);
  static ExperimentConfig from_text(const std::string& text);

  // full-precision echo; reloads to an equivalent config
  std::string resolved_text() const;
  std::uint64_t hash() const;
};

}  // namespace siopo
