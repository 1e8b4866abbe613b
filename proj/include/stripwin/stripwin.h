/* C interface of the stripwin library. All quantities are in normalized units
 * (strip width d = pi, continuum threshold 1) unless a function takes d. */
#ifndef STRIPWIN_H
#define STRIPWIN_H

#include <stddef.h>

#if defined(STRIPWIN_BUILDING_LIBRARY)
#define STRIPWIN_API __attribute__((visibility("default")))
#else
#define STRIPWIN_API
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum stripwin_status {
  STRIPWIN_OK = 0,
  STRIPWIN_ERR_CONFIG = 1,
  STRIPWIN_ERR_DOMAIN = 2,
  STRIPWIN_ERR_POLE = 3,
  STRIPWIN_ERR_NOT_SINGULAR = 4,
  STRIPWIN_ERR_RESOLUTION = 5,
  STRIPWIN_ERR_CONSISTENCY = 6,
  STRIPWIN_ERR_BRACKET_ANOMALY = 7,
  STRIPWIN_ERR_CONVERGENCE = 8,
  STRIPWIN_ERR_CURVE_GAP = 9,
  STRIPWIN_ERR_FIT_QUALITY = 10,
  STRIPWIN_ERR_ITERATION = 11,
  STRIPWIN_ERR_PRECONDITION = 12,
  STRIPWIN_ERR_INTERNAL = 100
} stripwin_status;

enum { STRIPWIN_EVEN = 0, STRIPWIN_ODD = 1 };
enum { STRIPWIN_EDGE_ARC = 0, STRIPWIN_EDGE_RAY = 1 };
enum { STRIPWIN_SIDE_AUTO = 0, STRIPWIN_SIDE_INSIDE = 1, STRIPWIN_SIDE_OUTSIDE = 2 };

STRIPWIN_API const char* stripwin_version(void);
/* Message of the last failed call on the calling thread ("" if none). */
STRIPWIN_API const char* stripwin_last_error(void);
STRIPWIN_API const char* stripwin_status_name(stripwin_status status);

/* Mode-matching truncation: `modes` at the finest level, `levels` ladder
 * levels (modes, modes/2, ...) extrapolated in 1/modes. levels = 1 gives raw
 * truncated values. */
typedef struct stripwin_truncation {
  int modes;
  int levels;
} stripwin_truncation;

STRIPWIN_API stripwin_truncation stripwin_default_truncation(void);

/* ---- geometry and bases ------------------------------------------------ */

STRIPWIN_API stripwin_status stripwin_normalize(double d, double a, double* a_norm, double* scale);
STRIPWIN_API stripwin_status stripwin_chi(int j, double x2, double d, double* value);
STRIPWIN_API stripwin_status stripwin_phi(int k, double x2, double d, double* value);
STRIPWIN_API stripwin_status stripwin_overlap(int j, int k, double* value);
STRIPWIN_API stripwin_status stripwin_regularized_det(double a, double eps, int parity, int modes,
                                                      int* sign, double* log_abs);
STRIPWIN_API stripwin_status stripwin_smallest_singular(double a, double eps, int parity,
                                                        int modes, double* ratio);

/* ---- thresholds ---------------------------------------------------------- */

typedef struct stripwin_threshold_options {
  int scan_points;
  double tol;
  int check_doubling;
  double stability_tol;
} stripwin_threshold_options;

typedef struct stripwin_threshold {
  int n;
  int parity;
  double a_n;
  double residual;
  double bracket_lo;
  double bracket_hi;
  int modes;
} stripwin_threshold;

typedef struct stripwin_thresholds stripwin_thresholds;

STRIPWIN_API stripwin_threshold_options stripwin_default_threshold_options(void);
/* options may be NULL for defaults. */
STRIPWIN_API stripwin_status stripwin_threshold_table(int n_max, stripwin_truncation t,
                                                      const stripwin_threshold_options* options,
                                                      stripwin_thresholds** out);
STRIPWIN_API size_t stripwin_thresholds_count(const stripwin_thresholds* table);
STRIPWIN_API stripwin_status stripwin_thresholds_get(const stripwin_thresholds* table, size_t i,
                                                     stripwin_threshold* out);
STRIPWIN_API void stripwin_thresholds_free(stripwin_thresholds* table);

/* ---- spectrum ------------------------------------------------------------ */

typedef struct stripwin_point {
  int index;
  int parity;
  double a;
  double eps;
  double lambda;
  double m;
} stripwin_point;

typedef struct stripwin_spectrum stripwin_spectrum;

STRIPWIN_API stripwin_status stripwin_spectrum_compute(double a, stripwin_truncation t,
                                                       stripwin_spectrum** out);
STRIPWIN_API size_t stripwin_spectrum_count(const stripwin_spectrum* s);
STRIPWIN_API stripwin_status stripwin_spectrum_get(const stripwin_spectrum* s, size_t i,
                                                   stripwin_point* out);
STRIPWIN_API void stripwin_spectrum_free(stripwin_spectrum* s);
STRIPWIN_API stripwin_status stripwin_eigenvalue(int n, double a, stripwin_truncation t,
                                                 stripwin_point* out);

/* ---- fields -------------------------------------------------------------- */

typedef struct stripwin_field stripwin_field;

typedef struct stripwin_field_info {
  int n;
  int parity;
  double a_ref;
  double eps;
  double c1;
  int modes;
  double kernel_residual;
  double accuracy_radius;
} stripwin_field_info;

typedef struct stripwin_edge_fit {
  double alpha;
  double stderr_alpha;
  double relative_residual;
  int accuracy_warning;
} stripwin_edge_fit;

/* Threshold resonance at the truncated threshold of `modes`. */
STRIPWIN_API stripwin_status stripwin_field_threshold(int n, int modes, stripwin_field** out);
STRIPWIN_API stripwin_status stripwin_field_bound(int n, double a, int modes,
                                                  stripwin_field** out);
STRIPWIN_API stripwin_status stripwin_field_info_get(const stripwin_field* f,
                                                     stripwin_field_info* out);
/* Window coefficients b (count = modes). */
STRIPWIN_API stripwin_status stripwin_field_window_coefficients(const stripwin_field* f,
                                                                double* out, size_t capacity);
STRIPWIN_API stripwin_status stripwin_field_eval(const stripwin_field* f, double x1, double x2,
                                                 int side, double* value, int* warning);
STRIPWIN_API stripwin_status stripwin_field_edge(const stripwin_field* f, const double* radii,
                                                 size_t count, int method,
                                                 stripwin_edge_fit* out);
STRIPWIN_API stripwin_status stripwin_field_mu(const stripwin_field* f, double* mu);
STRIPWIN_API void stripwin_field_free(stripwin_field* f);

/* ---- coefficient mu ------------------------------------------------------ */

typedef struct stripwin_mu_options {
  stripwin_truncation truncation;
  int field_modes;
  int method;
  double radius_lo;  /* in units of d */
  double radius_hi;
  int radius_count;
} stripwin_mu_options;

typedef struct stripwin_mu_report {
  int n;
  double a_n;
  double mu_integral;
  double alpha;
  double alpha_stderr;
  double mu_alpha;
  double rel_diff;
  int modes;
  int accuracy_warning;
} stripwin_mu_report;

STRIPWIN_API stripwin_mu_options stripwin_default_mu_options(void);
STRIPWIN_API stripwin_status stripwin_mu(int n, const stripwin_mu_options* options,
                                         stripwin_mu_report* out);

/* ---- verification reports ------------------------------------------------ */

typedef struct stripwin_report stripwin_report;

typedef struct stripwin_check {
  const char* name;
  int passed;
  double value;
  double limit;
  const char* detail;
} stripwin_check;

/* a_n and mu_ref come from the threshold table and stripwin_mu. */
STRIPWIN_API stripwin_status stripwin_verify_quadratic(int n, double a_n, double mu_ref,
                                                       const double* eps, size_t count,
                                                       stripwin_truncation t,
                                                       stripwin_report** out);
STRIPWIN_API stripwin_status stripwin_verify_decay(int n, double a_n, double mu_ref,
                                                   const double* eps, size_t count,
                                                   stripwin_truncation t, stripwin_report** out);
STRIPWIN_API stripwin_status stripwin_verify_popov(const double* a, size_t count,
                                                   stripwin_truncation t, stripwin_report** out);
STRIPWIN_API stripwin_status stripwin_verify_convergence(int n, const double* eps, size_t count,
                                                         int modes, stripwin_report** out);

STRIPWIN_API const char* stripwin_report_model(const stripwin_report* r);
STRIPWIN_API double stripwin_report_residual_norm(const stripwin_report* r);
STRIPWIN_API int stripwin_report_passed(const stripwin_report* r);
STRIPWIN_API size_t stripwin_report_coefficient_count(const stripwin_report* r);
STRIPWIN_API stripwin_status stripwin_report_coefficient(const stripwin_report* r, size_t i,
                                                         const char** name, double* value);
STRIPWIN_API size_t stripwin_report_sample_count(const stripwin_report* r);
STRIPWIN_API stripwin_status stripwin_report_sample(const stripwin_report* r, size_t i,
                                                    double* input, double* observed,
                                                    double* predicted);
STRIPWIN_API size_t stripwin_report_check_count(const stripwin_report* r);
STRIPWIN_API stripwin_status stripwin_report_check(const stripwin_report* r, size_t i,
                                                   stripwin_check* out);
STRIPWIN_API size_t stripwin_report_note_count(const stripwin_report* r);
STRIPWIN_API const char* stripwin_report_note(const stripwin_report* r, size_t i);
STRIPWIN_API void stripwin_report_free(stripwin_report* r);

/* ---- finite-difference oracle ------------------------------------------- */

typedef struct stripwin_fd_config {
  double a;
  int parity;
  double L;
  double h;
  int count;
  double estimate; /* NaN when unknown */
} stripwin_fd_config;

typedef struct stripwin_oracle_options {
  int base_cells;
  int levels;
  double decay_lengths;
  double max_length;
} stripwin_oracle_options;

typedef struct stripwin_oracle_result {
  double a;
  int parity;
  int rank;
  double L;
  double extrapolated;
  double order1;
  int levels;
  double h[8];
  double lambda[8];
  int truncation_warning;
} stripwin_oracle_result;

/* Writes min(count, capacity) eigenvalues. */
STRIPWIN_API stripwin_status stripwin_fd_eigenvalues(const stripwin_fd_config* cfg, double* out,
                                                     size_t capacity, int* truncation_warning);
STRIPWIN_API stripwin_oracle_options stripwin_default_oracle_options(void);
STRIPWIN_API stripwin_status stripwin_fd_oracle(double a, int parity, int rank,
                                                const stripwin_oracle_options* options,
                                                stripwin_oracle_result* out);
STRIPWIN_API double stripwin_richardson(double lam_h, double lam_h2, double order);

#ifdef __cplusplus
}
#endif

#endif
