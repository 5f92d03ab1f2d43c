#include "core/config.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <sstream>

#include "core/cavity.hpp"
#include "core/csvio.hpp"
#include "core/error.hpp"

namespace siopo {

namespace {

std::string trim(const std::string& s) {
  std::size_t b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return "";
  std::size_t e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

std::string strip_comment(const std::string& line) {
  bool in_string = false;
  for (std::size_t i = 0; i < line.size(); ++i) {
    if (line[i] == '"') in_string = !in_string;
    if (line[i] == '#' && !in_string) return line.substr(0, i);
  }
  return line;
}

}  // namespace

KeyValueFile KeyValueFile::parse(const std::string& text) {
  KeyValueFile kv;
  std::istringstream in(text);
  std::string line;
  std::string section;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    line = trim(strip_comment(line));
    if (line.empty()) continue;
    if (line.front() == '[') {
      if (line.back() != ']')
        fail_validation("config line " + std::to_string(lineno) +
                        ": malformed section header");
      section = trim(line.substr(1, line.size() - 2));
      if (section.empty())
        fail_validation("config line " + std::to_string(lineno) +
                        ": empty section name");
      kv.values_[section];
      continue;
    }
    const std::size_t eq = line.find('=');
    if (eq == std::string::npos)
      fail_validation("config line " + std::to_string(lineno) +
                      ": expected key = value");
    const std::string key = trim(line.substr(0, eq));
    std::string value = trim(line.substr(eq + 1));
    if (key.empty() || value.empty())
      fail_validation("config line " + std::to_string(lineno) +
                      ": empty key or value");
    if (value.front() == '"') {
      if (value.size() < 2 || value.back() != '"')
        fail_validation("config line " + std::to_string(lineno) +
                        ": unterminated string");
      value = value.substr(1, value.size() - 2);
    }
    kv.values_[section][key] = value;
  }
  return kv;
}

bool KeyValueFile::has(const std::string& section, const std::string& key) const {
  auto s = values_.find(section);
  return s != values_.end() && s->second.count(key) > 0;
}

std::string KeyValueFile::get_string(const std::string& section,
                                     const std::string& key) const {
  auto s = values_.find(section);
  if (s == values_.end() || !s->second.count(key))
    fail_validation("config: missing " + section + "." + key);
  return s->second.at(key);
}

double KeyValueFile::get_number(const std::string& section,
                                const std::string& key) const {
  const std::string v = get_string(section, key);
  std::size_t used = 0;
  double out = 0.0;
  try {
    out = std::stod(v, &used);
  } catch (const std::exception&) {
    fail_validation("config: " + section + "." + key + " is not a number");
  }
  if (trim(v.substr(used)) != "")
    fail_validation("config: " + section + "." + key +
                    " has trailing characters (unit suffixes belong in quoted strings)");
  return out;
}

bool KeyValueFile::get_bool(const std::string& section,
                            const std::string& key) const {
  const std::string v = get_string(section, key);
  if (v == "true") return true;
  if (v == "false") return false;
  fail_validation("config: " + section + "." + key + " must be true or false");
}

std::vector<std::string> KeyValueFile::keys(const std::string& section) const {
  std::vector<std::string> out;
  auto s = values_.find(section);
  if (s == values_.end()) return out;
  for (const auto& [k, v] : s->second) out.push_back(k);
  return out;
}

double parse_quantity(const std::string& text, Dimension dim,
                      const std::string& field_name) {
  std::size_t used = 0;
  double value = 0.0;
  try {
    value = std::stod(text, &used);
  } catch (const std::exception&) {
    fail_validation(field_name + ": cannot parse quantity '" + text + "'");
  }
  std::string unit = trim(text.substr(used));

  struct UnitEntry {
    const char* name;
    Dimension dim;
    double scale;
  };
  static const UnitEntry table[] = {
      {"m", Dimension::length, 1.0},
      {"cm", Dimension::length, 1e-2},
      {"mm", Dimension::length, 1e-3},
      {"um", Dimension::length, 1e-6},
      {"nm", Dimension::length, 1e-9},
      {"Hz", Dimension::frequency, 1.0},
      {"kHz", Dimension::frequency, 1e3},
      {"MHz", Dimension::frequency, 1e6},
      {"GHz", Dimension::frequency, 1e9},
      {"W", Dimension::power, 1.0},
      {"mW", Dimension::power, 1e-3},
      {"uW", Dimension::power, 1e-6},
      {"kW", Dimension::power, 1e3},
      {"/m", Dimension::inverse_length, 1.0},
      {"1/m", Dimension::inverse_length, 1.0},
      {"/mm", Dimension::inverse_length, 1e3},
  };

  if (unit.empty()) {
    if (dim == Dimension::dimensionless ||
        (dim == Dimension::inverse_length && value == 0.0))
      return value;
    fail_validation(field_name + ": missing unit suffix in '" + text + "'");
  }
  if (dim == Dimension::dimensionless)
    fail_validation(field_name + ": unexpected unit on dimensionless value '" +
                    text + "'");
  for (const UnitEntry& e : table)
    if (unit == e.name) {
      if (e.dim != dim)
        fail_validation(field_name + ": unit '" + unit +
                        "' has the wrong dimension");
      return value * e.scale;
    }
  fail_validation(field_name + ": unknown unit '" + unit + "'");
}

namespace {

double quantity(const KeyValueFile& kv, const std::string& sec,
                const std::string& key, Dimension dim) {
  return parse_quantity(kv.get_string(sec, key), dim, sec + "." + key);
}

double quantity_or(const KeyValueFile& kv, const std::string& sec,
                   const std::string& key, Dimension dim, double fallback) {
  return kv.has(sec, key) ? quantity(kv, sec, key, dim) : fallback;
}

double number_or(const KeyValueFile& kv, const std::string& sec,
                 const std::string& key, double fallback) {
  return kv.has(sec, key) ? kv.get_number(sec, key) : fallback;
}

void check_known_keys(const KeyValueFile& kv, const std::string& sec,
                      std::initializer_list<const char*> known) {
  for (const std::string& k : kv.keys(sec)) {
    bool ok = false;
    for (const char* name : known)
      if (k == name) ok = true;
    if (!ok) fail_validation("config: unknown key " + sec + "." + k);
  }
}

}  // namespace

ExperimentConfig ExperimentConfig::load(const std::string& path) {
  return from_text(read_text_file(path));
}

ExperimentConfig ExperimentConfig::from_text(const std::string& text) {
  const KeyValueFile kv = KeyValueFile::parse(text);
  ExperimentConfig c;

  check_known_keys(kv, "cavity",
                   {"focal_length", "mirror_radius", "lengths", "length1",
                    "length2", "finesse", "escape_efficiency",
                    "output_transmission", "round_trip_loss",
                    "include_crystal_optical_path"});
  c.focal_length = quantity(kv, "cavity", "focal_length", Dimension::length);
  c.mirror_radius = quantity(kv, "cavity", "mirror_radius", Dimension::length);
  const std::string lengths =
      kv.has("cavity", "lengths") ? kv.get_string("cavity", "lengths")
                                  : "self-imaging";
  if (lengths == "self-imaging") {
    c.self_imaging = true;
    const auto [l1, l2] = self_imaging_lengths(c.focal_length, c.mirror_radius);
    c.length1 = l1;
    c.length2 = l2;
    if (kv.has("cavity", "length1") || kv.has("cavity", "length2"))
      fail_validation(
          "config: cavity.lengths = self-imaging excludes explicit length1/length2");
  } else if (lengths == "explicit") {
    c.self_imaging = false;
    c.length1 = quantity(kv, "cavity", "length1", Dimension::length);
    c.length2 = quantity(kv, "cavity", "length2", Dimension::length);
  } else {
    fail_validation("config: cavity.lengths must be self-imaging or explicit");
  }

  const bool has_finesse = kv.has("cavity", "finesse");
  const bool has_transmission = kv.has("cavity", "output_transmission");
  if (has_finesse && has_transmission)
    fail_validation(
        "config: give either cavity.finesse or cavity.output_transmission, not both");
  if (has_transmission) {
    c.output_transmission =
        kv.get_number("cavity", "output_transmission");
    c.extra_loss = number_or(kv, "cavity", "round_trip_loss", 0.0);
  } else {
    const double finesse = number_or(kv, "cavity", "finesse", 250.0);
    if (!(finesse > 1.0)) fail_validation("config: cavity.finesse must be > 1");
    const double escape = number_or(kv, "cavity", "escape_efficiency", 0.60);
    if (!(escape > 0.0) || escape > 1.0)
      fail_validation("config: cavity.escape_efficiency must be in (0, 1]");
    const double loss = 2.0 * M_PI / finesse;
    c.output_transmission = escape * loss;
    c.extra_loss = (1.0 - escape) * loss;
  }
  c.include_crystal_optical_path =
      kv.has("cavity", "include_crystal_optical_path")
          ? kv.get_bool("cavity", "include_crystal_optical_path")
          : false;

  check_known_keys(kv, "crystal",
                   {"length", "signal_index", "phase_mismatch", "gain_scale"});
  c.crystal_length = quantity(kv, "crystal", "length", Dimension::length);
  c.signal_index = kv.get_number("crystal", "signal_index");
  c.phase_mismatch = quantity_or(kv, "crystal", "phase_mismatch",
                                 Dimension::inverse_length, 0.0);
  c.gain_scale = number_or(kv, "crystal", "gain_scale", 1.0);

  check_known_keys(kv, "pump",
                   {"wavelength", "waist", "power", "threshold_ratio",
                    "waist_position"});
  c.pump_wavelength = quantity(kv, "pump", "wavelength", Dimension::length);
  c.pump_waist = quantity(kv, "pump", "waist", Dimension::length);
  c.pump_power = quantity_or(kv, "pump", "power", Dimension::power, 0.050);
  c.pump_ratio = number_or(kv, "pump", "threshold_ratio", 0.9);
  c.pump_waist_position =
      quantity_or(kv, "pump", "waist_position", Dimension::length, 0.0);
  if (c.pump_ratio < 0.0 || c.pump_ratio > 1.0)
    fail_validation("config: pump.threshold_ratio must be in [0, 1]");

  check_known_keys(kv, "signal", {"wavelength", "basis_waist"});
  c.signal_wavelength =
      quantity_or(kv, "signal", "wavelength", Dimension::length,
                  2.0 * c.pump_wavelength);
  if (kv.has("signal", "basis_waist")) {
    const std::string bw = kv.get_string("signal", "basis_waist");
    if (bw == "auto") {
      c.basis_waist_auto = true;
    } else {
      c.basis_waist_auto = false;
      c.basis_waist =
          parse_quantity(bw, Dimension::length, "signal.basis_waist");
    }
  }

  check_known_keys(kv, "basis", {"truncation", "mode_cutoff"});
  c.truncation = static_cast<int>(number_or(kv, "basis", "truncation", 20));
  if (c.truncation < 0 || c.truncation > 60)
    fail_validation("config: basis.truncation must be in [0, 60]");
  c.mode_cutoff = number_or(kv, "basis", "mode_cutoff", 0.6);
  if (!(c.mode_cutoff > 0.0 && c.mode_cutoff < 1.0))
    fail_validation("config: basis.mode_cutoff must be in (0, 1)");

  check_known_keys(kv, "efficiency",
                   {"escape", "propagation", "detector_quantum",
                    "homodyne_visibility"});
  c.eff_propagation = number_or(kv, "efficiency", "propagation", 1.0);
  c.eff_detector = number_or(kv, "efficiency", "detector_quantum", 1.0);
  c.eff_visibility = number_or(kv, "efficiency", "homodyne_visibility", 1.0);
  if (kv.has("efficiency", "escape"))
    c.eff_escape_override = kv.get_number("efficiency", "escape");

  check_known_keys(kv, "homodyne",
                   {"lo", "lo_waist", "analysis_frequency", "seed",
                    "window_samples", "sweep_windows", "sweeps", "phase_bins"});
  if (kv.has("homodyne", "lo")) {
    const std::string lo = kv.get_string("homodyne", "lo");
    if (lo.rfind("eigen:", 0) == 0) {
      c.lo_is_eigenmode = true;
      try {
        c.lo_eigen_index = std::stoi(lo.substr(6));
      } catch (const std::exception&) {
        fail_validation("config: homodyne.lo eigen index unreadable");
      }
    } else if (lo.rfind("hg:", 0) == 0) {
      const std::string rest = lo.substr(3);
      const std::size_t comma = rest.find(',');
      if (comma == std::string::npos)
        fail_validation("config: homodyne.lo must look like hg:m,n or eigen:k");
      try {
        c.lo_mode.m = std::stoi(rest.substr(0, comma));
        c.lo_mode.n = std::stoi(rest.substr(comma + 1));
      } catch (const std::exception&) {
        fail_validation("config: homodyne.lo indices unreadable");
      }
      if (c.lo_mode.m < 0 || c.lo_mode.n < 0)
        fail_validation("config: homodyne.lo indices must be >= 0");
    } else {
      fail_validation("config: homodyne.lo must look like hg:m,n or eigen:k");
    }
  }
  c.lo_waist = quantity_or(kv, "homodyne", "lo_waist", Dimension::length, 0.0);
  c.analysis_frequency = quantity_or(kv, "homodyne", "analysis_frequency",
                                     Dimension::frequency, 3.0e6);
  c.seed = static_cast<std::uint64_t>(number_or(kv, "homodyne", "seed", 1.0));
  c.window_samples =
      static_cast<int>(number_or(kv, "homodyne", "window_samples", 10000));
  c.sweep_windows =
      static_cast<int>(number_or(kv, "homodyne", "sweep_windows", 3600));
  c.sweeps = static_cast<int>(number_or(kv, "homodyne", "sweeps", 10));
  c.phase_bins = static_cast<int>(number_or(kv, "homodyne", "phase_bins", 36));

  check_known_keys(kv, "scan",
                   {"l1_span", "l2_span", "l1_points", "l2_points", "max_order"});
  c.scan_l1_span = quantity_or(kv, "scan", "l1_span", Dimension::length, 0.0);
  c.scan_l2_span = quantity_or(kv, "scan", "l2_span", Dimension::length, 1e-3);
  c.scan_l1_points = static_cast<int>(number_or(kv, "scan", "l1_points", 1));
  c.scan_l2_points = static_cast<int>(number_or(kv, "scan", "l2_points", 41));
  c.scan_max_order = static_cast<int>(number_or(kv, "scan", "max_order", 5));
  if (c.scan_l1_points < 1 || c.scan_l2_points < 1 || c.scan_max_order < 0)
    fail_validation("config: scan counts must be positive");

  check_known_keys(kv, "output", {"directory"});
  if (kv.has("output", "directory"))
    c.output_dir = kv.get_string("output", "directory");

  // cross-field checks
  if (std::abs(c.pump_wavelength - 0.5 * c.signal_wavelength) >
      1e-6 * c.signal_wavelength)
    c.warnings.push_back(
        "pump wavelength is not half the signal wavelength; degenerate "
        "operation assumes it is");
  CavityGeometry geom{c.focal_length, c.mirror_radius, c.length1,
                      c.length2,      c.output_transmission, c.extra_loss,
                      c.crystal_length, c.signal_index,
                      c.include_crystal_optical_path};
  geom.validate();
  if (!(c.signal_index > 1.0))
    fail_validation("config: crystal.signal_index must be > 1");
  if (!(c.crystal_length > 0.0))
    fail_validation("config: crystal.length must be > 0");
  if (!(c.pump_waist > 0.0)) fail_validation("config: pump.waist must be > 0");
  if (c.window_samples < 100)
    fail_validation("config: homodyne.window_samples must be >= 100");
  if (c.sweeps < 1 || c.sweep_windows < 2 * c.sweeps)
    fail_validation("config: homodyne sweep layout is degenerate");
  if (c.phase_bins < 1)
    fail_validation("config: homodyne.phase_bins must be >= 1");

  return c;
}

std::string ExperimentConfig::resolved_text() const {
  std::ostringstream out;
  out << "# resolved configuration (all values SI)\n";
  out << "[cavity]\n";
  out << "focal_length = \"" << format_full(focal_length) << " m\"\n";
  out << "mirror_radius = \"" << format_full(mirror_radius) << " m\"\n";
  out << "lengths = \"explicit\"\n";
  out << "length1 = \"" << format_full(length1) << " m\"\n";
  out << "length2 = \"" << format_full(length2) << " m\"\n";
  out << "output_transmission = " << format_full(output_transmission) << "\n";
  out << "round_trip_loss = " << format_full(extra_loss) << "\n";
  out << "include_crystal_optical_path = "
      << (include_crystal_optical_path ? "true" : "false") << "\n";
  out << "\n[crystal]\n";
  out << "length = \"" << format_full(crystal_length) << " m\"\n";
  out << "signal_index = " << format_full(signal_index) << "\n";
  out << "phase_mismatch = \"" << format_full(phase_mismatch) << " /m\"\n";
  out << "gain_scale = " << format_full(gain_scale) << "\n";
  out << "\n[pump]\n";
  out << "wavelength = \"" << format_full(pump_wavelength) << " m\"\n";
  out << "waist = \"" << format_full(pump_waist) << " m\"\n";
  out << "power = \"" << format_full(pump_power) << " W\"\n";
  out << "threshold_ratio = " << format_full(pump_ratio) << "\n";
  out << "waist_position = \"" << format_full(pump_waist_position) << " m\"\n";
  out << "\n[signal]\n";
  out << "wavelength = \"" << format_full(signal_wavelength) << " m\"\n";
  if (basis_waist_auto)
    out << "basis_waist = \"auto\"\n";
  else
    out << "basis_waist = \"" << format_full(basis_waist) << " m\"\n";
  out << "\n[basis]\n";
  out << "truncation = " << truncation << "\n";
  out << "mode_cutoff = " << format_full(mode_cutoff) << "\n";
  out << "\n[efficiency]\n";
  if (eff_escape_override)
    out << "escape = " << format_full(*eff_escape_override) << "\n";
  out << "propagation = " << format_full(eff_propagation) << "\n";
  out << "detector_quantum = " << format_full(eff_detector) << "\n";
  out << "homodyne_visibility = " << format_full(eff_visibility) << "\n";
  out << "\n[homodyne]\n";
  if (lo_is_eigenmode)
    out << "lo = \"eigen:" << lo_eigen_index << "\"\n";
  else
    out << "lo = \"hg:" << lo_mode.m << "," << lo_mode.n << "\"\n";
  if (lo_waist > 0.0)
    out << "lo_waist = \"" << format_full(lo_waist) << " m\"\n";
  out << "analysis_frequency = \"" << format_full(analysis_frequency)
      << " Hz\"\n";
  out << "seed = " << seed << "\n";
  out << "window_samples = " << window_samples << "\n";
  out << "sweep_windows = " << sweep_windows << "\n";
  out << "sweeps = " << sweeps << "\n";
  out << "phase_bins = " << phase_bins << "\n";
  out << "\n[scan]\n";
  out << "l1_span = \"" << format_full(scan_l1_span) << " m\"\n";
  out << "l2_span = \"" << format_full(scan_l2_span) << " m\"\n";
  out << "l1_points = " << scan_l1_points << "\n";
  out << "l2_points = " << scan_l2_points << "\n";
  out << "max_order = " << scan_max_order << "\n";
  out << "\n[output]\n";
  out << "directory = \"" << output_dir << "\"\n";
  return out.str();
}

std::uint64_t ExperimentConfig::hash() const {
  return fnv1a_hash(resolved_text());
}

}  // namespace siopo
