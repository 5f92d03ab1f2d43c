#include "siopo/siopo.h"

#include <algorithm>
#include <cstring>
#include <string>

#include "core/config.hpp"
#include "core/error.hpp"
#include "core/pipeline.hpp"

namespace {

thread_local std::string g_last_error;

siopo_status status_from(const siopo::Error& e) {
  g_last_error = e.what();
  switch (e.code()) {
    case siopo::ErrorCode::validation:
      return SIOPO_ERR_VALIDATION;
    case siopo::ErrorCode::numeric:
      return SIOPO_ERR_NUMERIC;
    case siopo::ErrorCode::reproduction:
      return SIOPO_ERR_REPRODUCTION;
    case siopo::ErrorCode::io:
      return SIOPO_ERR_IO;
  }
  return SIOPO_ERR_VALIDATION;
}

template <typename Fn>
siopo_status guarded(Fn&& fn) {
  try {
    fn();
    g_last_error.clear();
    return SIOPO_OK;
  } catch (const siopo::Error& e) {
    return status_from(e);
  } catch (const std::exception& e) {
    g_last_error = e.what();
    return SIOPO_ERR_VALIDATION;
  }
}

char* copy_string(const std::string& s) {
  char* out = new char[s.size() + 1];
  std::memcpy(out, s.c_str(), s.size() + 1);
  return out;
}

}  // namespace

struct siopo_config {
  siopo::ExperimentConfig cfg;
};

struct siopo_session {
  siopo::Session session;
};

extern "C" {

const char* siopo_version(void) { return SIOPO_VERSION_STRING; }

const char* siopo_last_error(void) { return g_last_error.c_str(); }

siopo_status siopo_config_load(const char* path, siopo_config** out) {
  if (!path || !out) return SIOPO_ERR_NULL_ARGUMENT;
  return guarded([&] {
    auto* handle = new siopo_config{siopo::ExperimentConfig::load(path)};
    *out = handle;
  });
}

siopo_status siopo_config_parse(const char* text, siopo_config** out) {
  if (!text || !out) return SIOPO_ERR_NULL_ARGUMENT;
  return guarded([&] {
    auto* handle = new siopo_config{siopo::ExperimentConfig::from_text(text)};
    *out = handle;
  });
}

void siopo_config_free(siopo_config* cfg) { delete cfg; }

siopo_status siopo_config_set_seed(siopo_config* cfg, uint64_t seed) {
  if (!cfg) return SIOPO_ERR_NULL_ARGUMENT;
  cfg->cfg.seed = seed;
  return SIOPO_OK;
}

siopo_status siopo_config_set_truncation(siopo_config* cfg, int32_t n_max) {
  if (!cfg) return SIOPO_ERR_NULL_ARGUMENT;
  return guarded([&] {
    if (n_max < 0 || n_max > 60)
      siopo::fail_validation("truncation must be in [0, 60]");
    cfg->cfg.truncation = n_max;
  });
}

siopo_status siopo_config_resolved_text(const siopo_config* cfg,
                                        char** out_text) {
  if (!cfg || !out_text) return SIOPO_ERR_NULL_ARGUMENT;
  return guarded([&] { *out_text = copy_string(cfg->cfg.resolved_text()); });
}

siopo_status siopo_config_warnings(const siopo_config* cfg, char** out_text) {
  if (!cfg || !out_text) return SIOPO_ERR_NULL_ARGUMENT;
  return guarded([&] {
    std::string all;
    for (const std::string& w : cfg->cfg.warnings) {
      all += w;
      all += '\n';
    }
    *out_text = copy_string(all);
  });
}

void siopo_string_free(char* text) { delete[] text; }

siopo_status siopo_cavity_numbers_get(const siopo_config* cfg,
                                      siopo_cavity_numbers* out) {
  if (!cfg || !out) return SIOPO_ERR_NULL_ARGUMENT;
  return guarded([&] {
    const siopo::CavityGeometry geom = siopo::geometry_from_config(cfg->cfg);
    const siopo::CavityReport rep = siopo::cavity_report(geom, 0);
    out->length1_m = geom.length1;
    out->length2_m = geom.length2;
    out->optical_length_m = geom.length1 + geom.length2;
    if (geom.include_crystal_optical_path)
      out->optical_length_m += (geom.crystal_index - 1.0) * geom.crystal_length;
    out->free_spectral_range_hz = rep.free_spectral_range;
    out->finesse = rep.finesse;
    out->bandwidth_fwhm_hz = rep.bandwidth_fwhm;
    out->escape_efficiency = rep.escape_efficiency;
    out->round_trip_gouy_rad = rep.round_trip_gouy;
    out->stable = rep.stable ? 1 : 0;
  });
}

siopo_status siopo_session_create(const siopo_config* cfg,
                                  siopo_session** out) {
  if (!cfg || !out) return SIOPO_ERR_NULL_ARGUMENT;
  return guarded([&] {
    auto* handle = new siopo_session{siopo::build_session(cfg->cfg)};
    *out = handle;
  });
}

void siopo_session_free(siopo_session* session) { delete session; }

int32_t siopo_session_mode_dim(const siopo_session* session) {
  if (!session) return 0;
  return static_cast<int32_t>(session->session.decomposition.dim());
}

siopo_status siopo_session_basis_waist(const siopo_session* session,
                                       double* out_m) {
  if (!session || !out_m) return SIOPO_ERR_NULL_ARGUMENT;
  *out_m = session->session.basis_waist;
  return SIOPO_OK;
}

siopo_status siopo_session_coherence_length(const siopo_session* session,
                                            double* out_m) {
  if (!session || !out_m) return SIOPO_ERR_NULL_ARGUMENT;
  *out_m = session->session.coherence_len;
  return SIOPO_OK;
}

siopo_status siopo_session_gains(const siopo_session* session, double* out,
                                 int32_t capacity, int32_t* out_count) {
  if (!session || (!out && capacity > 0)) return SIOPO_ERR_NULL_ARGUMENT;
  const auto& gains = session->session.decomposition.gains;
  if (out_count) *out_count = static_cast<int32_t>(gains.size());
  const int32_t n =
      std::min<int32_t>(capacity, static_cast<int32_t>(gains.size()));
  for (int32_t i = 0; i < n; ++i) out[i] = gains[i];
  return SIOPO_OK;
}

namespace {

siopo_status checked_mode(const siopo_session* session, int32_t k) {
  if (!session) return SIOPO_ERR_NULL_ARGUMENT;
  if (k < 0 || k >= siopo_session_mode_dim(session)) {
    g_last_error = "mode index out of range";
    return SIOPO_ERR_VALIDATION;
  }
  return SIOPO_OK;
}

}  // namespace

siopo_status siopo_session_squeezing_angle(const siopo_session* session,
                                           int32_t k, double* out_rad) {
  if (!out_rad) return SIOPO_ERR_NULL_ARGUMENT;
  if (siopo_status st = checked_mode(session, k); st != SIOPO_OK) return st;
  *out_rad = session->session.decomposition.phases[k];
  return SIOPO_OK;
}

siopo_status siopo_session_dominant_hg(const siopo_session* session, int32_t k,
                                       int32_t* out_m, int32_t* out_n) {
  if (!out_m || !out_n) return SIOPO_ERR_NULL_ARGUMENT;
  if (siopo_status st = checked_mode(session, k); st != SIOPO_OK) return st;
  const siopo::ModeIndex idx =
      session->session.decomposition.dominant[static_cast<std::size_t>(k)];
  *out_m = idx.m;
  *out_n = idx.n;
  return SIOPO_OK;
}

siopo_status siopo_session_hg_overlap(const siopo_session* session, int32_t k,
                                      double* out) {
  if (!out) return SIOPO_ERR_NULL_ARGUMENT;
  if (siopo_status st = checked_mode(session, k); st != SIOPO_OK) return st;
  return guarded([&] {
    *out = siopo::eigenmode_hg_overlap(session->session.decomposition, k);
  });
}

siopo_status siopo_session_mode_count(const siopo_session* session,
                                      double cutoff, int32_t* out_count) {
  if (!session || !out_count) return SIOPO_ERR_NULL_ARGUMENT;
  return guarded([&] {
    *out_count = siopo::mode_count(session->session.decomposition, cutoff);
  });
}

siopo_status siopo_session_min_variance(const siopo_session* session,
                                        int32_t k, double* out) {
  if (!out) return SIOPO_ERR_NULL_ARGUMENT;
  if (siopo_status st = checked_mode(session, k); st != SIOPO_OK) return st;
  return guarded([&] {
    *out = siopo::min_variance_from_gains(session->session.decomposition, k);
  });
}

siopo_status siopo_session_variance_spectrum(const siopo_session* session,
                                             int32_t k, double omega_rad_s,
                                             double pump_ratio,
                                             double efficiency,
                                             double* out_v_minus,
                                             double* out_v_plus) {
  if (!out_v_minus || !out_v_plus) return SIOPO_ERR_NULL_ARGUMENT;
  if (siopo_status st = checked_mode(session, k); st != SIOPO_OK) return st;
  return guarded([&] {
    siopo::OpoDynamics dyn = session->session.dynamics;
    dyn.pump_ratio = pump_ratio;
    siopo::EfficiencyChain eff;
    eff.escape = efficiency;
    const siopo::QuadratureVariances v = siopo::variance_spectrum(
        session->session.decomposition, dyn, eff, k, omega_rad_s);
    *out_v_minus = v.v_minus;
    *out_v_plus = v.v_plus;
  });
}

siopo_status siopo_session_calibrate_pump_ratio(const siopo_session* session,
                                                int32_t k, double target_db,
                                                double omega_rad_s,
                                                double efficiency,
                                                double* out_ratio) {
  if (!out_ratio) return SIOPO_ERR_NULL_ARGUMENT;
  if (siopo_status st = checked_mode(session, k); st != SIOPO_OK) return st;
  return guarded([&] {
    const siopo::Calibration cal = siopo::calibrate_to_measurement(
        session->session.decomposition, session->session.dynamics.cavity_decay,
        k, target_db, omega_rad_s, siopo::CalibrationPin::efficiency,
        efficiency);
    *out_ratio = cal.pump_ratio;
  });
}

siopo_status siopo_run(const siopo_config* cfg, const char* name,
                       const char* out_dir, char** out_summary) {
  if (!cfg || !name || !out_dir) return SIOPO_ERR_NULL_ARGUMENT;
  bool reproduction_failed = false;
  const siopo_status st = guarded([&] {
    const siopo::RunResult res =
        siopo::run_subcommand(name, cfg->cfg, out_dir);
    if (out_summary) *out_summary = copy_string(res.summary);
    reproduction_failed = !res.reproduction_passed;
  });
  if (st != SIOPO_OK) return st;
  if (reproduction_failed) {
    g_last_error = "reproduction criteria failed; see report";
    return SIOPO_ERR_REPRODUCTION;
  }
  return SIOPO_OK;
}

}  // extern "C"
