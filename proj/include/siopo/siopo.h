/* siopo - multimode optical parametric oscillator design and simulation
 *
 * C interface to the shared library.  All entry points return a status code;
 * results come back through out parameters.  Handles are opaque and must be
 * released with the matching _free call.  Error messages for the most recent
 * failure on the calling thread are available from siopo_last_error().
 */
#ifndef SIOPO_SIOPO_H
#define SIOPO_SIOPO_H

#include <stdint.h>

#ifdef __cplusplus
extern "C" {
#endif

#if defined(_WIN32)
#define SIOPO_API __declspec(dllexport)
#else
#define SIOPO_API __attribute__((visibility("default")))
#endif

typedef enum siopo_status {
  SIOPO_OK = 0,
  SIOPO_ERR_VALIDATION = 1, /* bad input or constraint violation */
  SIOPO_ERR_NUMERIC = 2,    /* quadrature or solver non-convergence */
  SIOPO_ERR_REPRODUCTION = 3,
  SIOPO_ERR_IO = 4,
  SIOPO_ERR_NULL_ARGUMENT = 5
} siopo_status;

typedef struct siopo_config siopo_config;   /* experiment description */
typedef struct siopo_session siopo_session; /* built mode decomposition */

SIOPO_API const char* siopo_version(void);

/* Message for the most recent error on this thread; empty string if none. */
SIOPO_API const char* siopo_last_error(void);

/* ---- configuration ---- */

SIOPO_API siopo_status siopo_config_load(const char* path, siopo_config** out);
SIOPO_API siopo_status siopo_config_parse(const char* text, siopo_config** out);
SIOPO_API void siopo_config_free(siopo_config* cfg);

SIOPO_API siopo_status siopo_config_set_seed(siopo_config* cfg, uint64_t seed);
SIOPO_API siopo_status siopo_config_set_truncation(siopo_config* cfg,
                                                   int32_t n_max);

/* Resolved (defaults applied) configuration text.  Free with
 * siopo_string_free. */
SIOPO_API siopo_status siopo_config_resolved_text(const siopo_config* cfg,
                                                  char** out_text);
/* Validation warnings, one per line; empty string if none. */
SIOPO_API siopo_status siopo_config_warnings(const siopo_config* cfg,
                                             char** out_text);
SIOPO_API void siopo_string_free(char* text);

/* ---- cavity numbers (no decomposition required) ---- */

typedef struct siopo_cavity_numbers {
  double length1_m;
  double length2_m;
  double optical_length_m;
  double free_spectral_range_hz;
  double finesse;
  double bandwidth_fwhm_hz;
  double escape_efficiency;
  double round_trip_gouy_rad;
  int32_t stable;
} siopo_cavity_numbers;

SIOPO_API siopo_status siopo_cavity_numbers_get(const siopo_config* cfg,
                                                siopo_cavity_numbers* out);

/* ---- session: coupling matrix and squeezed eigenmodes ---- */

SIOPO_API siopo_status siopo_session_create(const siopo_config* cfg,
                                            siopo_session** out);
SIOPO_API void siopo_session_free(siopo_session* session);

SIOPO_API int32_t siopo_session_mode_dim(const siopo_session* session);
SIOPO_API siopo_status siopo_session_basis_waist(const siopo_session* session,
                                                 double* out_m);
SIOPO_API siopo_status siopo_session_coherence_length(
    const siopo_session* session, double* out_m);

/* Copies up to capacity gains (descending, s^-1); sets *out_count to the
 * full dimension. */
SIOPO_API siopo_status siopo_session_gains(const siopo_session* session,
                                           double* out, int32_t capacity,
                                           int32_t* out_count);
SIOPO_API siopo_status siopo_session_squeezing_angle(
    const siopo_session* session, int32_t k, double* out_rad);
SIOPO_API siopo_status siopo_session_dominant_hg(const siopo_session* session,
                                                 int32_t k, int32_t* out_m,
                                                 int32_t* out_n);
SIOPO_API siopo_status siopo_session_hg_overlap(const siopo_session* session,
                                                int32_t k, double* out);
SIOPO_API siopo_status siopo_session_mode_count(const siopo_session* session,
                                                double cutoff,
                                                int32_t* out_count);

/* Gain-ratio minimum-noise figure (Lambda_0 - Lambda_k)/(Lambda_0 + Lambda_k). */
SIOPO_API siopo_status siopo_session_min_variance(const siopo_session* session,
                                                  int32_t k, double* out);

/* Stationary quadrature variances of mode k at angular frequency omega,
 * pump ratio r in [0, 1] and total detection efficiency in (0, 1]. */
SIOPO_API siopo_status siopo_session_variance_spectrum(
    const siopo_session* session, int32_t k, double omega_rad_s,
    double pump_ratio, double efficiency, double* out_v_minus,
    double* out_v_plus);

/* Pump ratio at which mode k shows target_db at omega with the given total
 * efficiency. */
SIOPO_API siopo_status siopo_session_calibrate_pump_ratio(
    const siopo_session* session, int32_t k, double target_db,
    double omega_rad_s, double efficiency, double* out_ratio);

/* ---- subcommand runners ---- */

/* name in {design, spectrum, modes, homodyne, reproduce-paper}; writes the
 * artifacts under out_dir.  A non-null summary receives printable text (free
 * with siopo_string_free).  reproduce-paper returns SIOPO_ERR_REPRODUCTION
 * when any criterion fails (the report is still written). */
SIOPO_API siopo_status siopo_run(const siopo_config* cfg, const char* name,
                                 const char* out_dir, char** out_summary);

#ifdef __cplusplus
} /* extern "C" */
#endif

#endif /* SIOPO_SIOPO_H */
