/* oscillab — error terms of classical summatory functions and their
 * oscillation statistics.
 *
 * C interface to the shared library. Every function returns an osc_status;
 * results come back through out-parameters. Handles are opaque and must be
 * released with the matching *_free call. All handles are immutable after
 * creation and safe to share across threads.
 */
#ifndef OSCILLAB_H
#define OSCILLAB_H

#include <stddef.h>
#include <stdint.h>

#ifdef __cplusplus
extern "C" {
#endif

typedef enum osc_status {
  OSC_OK = 0,
  OSC_ERR_ARGUMENT = 1,
  OSC_ERR_RANGE = 2,
  OSC_ERR_POLE = 3,
  OSC_ERR_CONVERGENCE = 4,
  OSC_ERR_CONFIG = 5,
  OSC_ERR_EVAL = 6,
  OSC_ERR_CONSISTENCY = 7,
  OSC_ERR_EXTRAPOLATION = 8,
  OSC_ERR_DEGENERATE = 9,
  OSC_ERR_IO = 10,
  OSC_ERR_BAD_MAGIC = 11,
  OSC_ERR_BAD_VERSION = 12,
  OSC_ERR_TRUNCATED = 13,
  OSC_ERR_MISMATCH = 14,
  OSC_ERR_UNKNOWN = 99
} osc_status;

typedef enum osc_kind {
  OSC_KIND_DIVISOR = 0,
  OSC_KIND_SQUAREFREE = 1,
  OSC_KIND_TWISTED = 2,
  OSC_KIND_VON_MANGOLDT = 3,
  OSC_KIND_ABELIAN = 4
} osc_kind;

typedef enum osc_side { OSC_SIDE_PLUS = 0, OSC_SIDE_MINUS = 1, OSC_SIDE_ABS = 2 } osc_side;

/* alpha threshold: constant alpha0, or 3/8 - c / (log T)^{1/8} */
typedef enum osc_alpha_mode { OSC_ALPHA_CONSTANT = 0, OSC_ALPHA_SHRINKING = 1 } osc_alpha_mode;

typedef struct osc_sequence osc_sequence;   /* sieved values + prefix sums */
typedef struct osc_app osc_app;             /* Dirichlet series + pole data */
typedef struct osc_main_term osc_main_term; /* finite x^a (log x)^k expression */
typedef struct osc_delta osc_delta;         /* error-term function */
typedef struct osc_contour osc_contour;     /* five-segment integration path */

const char* osc_version(void);
const char* osc_status_name(osc_status status);
/* message from the most recent failing call on this thread */
const char* osc_last_error(void);

/* --- sequences ---------------------------------------------------------- */

osc_status osc_sieve(osc_kind kind, double theta, uint64_t n_max, int threads,
                     osc_sequence** out);
void osc_sequence_free(osc_sequence* seq);
osc_status osc_sequence_info(const osc_sequence* seq, osc_kind* kind, double* theta,
                             uint64_t* n_max);
osc_status osc_sequence_value(const osc_sequence* seq, uint64_t n, double* out);
/* sum_{n<x} a_n + a_x/2 at integer x, sum_{n<=x} a_n otherwise */
osc_status osc_prefix_star(const osc_sequence* seq, double x, double* out);

osc_status osc_sequence_save(const osc_sequence* seq, const char* path);
osc_status osc_sequence_load(const char* path, osc_sequence** out);
osc_status osc_sequence_load_typed(const char* path, osc_kind kind, double theta,
                                   osc_sequence** out);

/* --- zeta and Dirichlet series ------------------------------------------ */

osc_status osc_zeta(double re, double im, double* out_re, double* out_im);
osc_status osc_zeta_prime(double re, double im, double* out_re, double* out_im);

osc_status osc_app_create(osc_kind kind, double theta, osc_app** out);
void osc_app_free(osc_app* app);
osc_status osc_app_strip(const osc_app* app, double* sigma1, double* sigma2, double* sigma3);
osc_status osc_dirichlet_d(const osc_app* app, double re, double im, double* out_re,
                           double* out_im);

/* --- main terms ---------------------------------------------------------- */

osc_status osc_main_term_closed_form(const osc_app* app, osc_main_term** out);
osc_status osc_main_term_from_poles(const osc_app* app, osc_main_term** out);
void osc_main_term_free(osc_main_term* mt);
osc_status osc_main_term_eval(const osc_main_term* mt, double x, double* out);
osc_status osc_main_term_count(const osc_main_term* mt, size_t* out);
osc_status osc_main_term_term(const osc_main_term* mt, size_t index, double* coeff_re,
                              double* coeff_im, double* exp_re, double* exp_im, int* log_power);
/* writes the JSON form; *needed is set to the full length including NUL */
osc_status osc_main_term_json(const osc_main_term* mt, char* buf, size_t cap, size_t* needed);
/* amplitude/phase of the x cos(theta log x + phase) part; OSC_ERR_RANGE if none */
osc_status osc_main_term_oscillation(const osc_main_term* mt, double* amplitude, double* phase);

/* --- error term analysis -------------------------------------------------- */

osc_status osc_delta_create(const osc_sequence* seq, const osc_main_term* mt, osc_delta** out);
void osc_delta_free(osc_delta* d);
osc_status osc_delta_at(const osc_delta* d, double x, double* out);

osc_status osc_moment(const osc_delta* d, double t, int k, int threads, double* out);
osc_status osc_weighted_moment(const osc_delta* d, double t, double alpha, double y, int threads,
                               double* out);
osc_status osc_smoothed_power_integral(double t, double y, double z_re, double z_im,
                                       double* out_re, double* out_im, double* pred_re,
                                       double* pred_im, int* has_prediction);
osc_status osc_measure_above(const osc_delta* d, double t, double lambda, osc_alpha_mode mode,
                             double alpha_param, osc_side side, int threads, double* out);
/* two-call pattern: query count with buf == NULL, then fetch */
osc_status osc_sign_changes(const osc_delta* d, double t1, double t2, double* buf, size_t cap,
                            size_t* count);

typedef struct osc_report {
  double t_min, t_max;
  double lambda;
  double alpha;
  double moment2, moment4;
  double measure_plus, measure_minus, measure_abs;
  uint64_t n_sign_changes;
  double max_scaled;
  double threshold_lhs, threshold_rhs;
} osc_report;

osc_status osc_omega_report(const osc_delta* d, double t, double lambda, osc_alpha_mode mode,
                            double alpha_param, int threads, osc_report* out);
osc_status osc_report_csv_header(char* buf, size_t cap, size_t* needed);
osc_status osc_report_csv_row(const osc_report* report, char* buf, size_t cap, size_t* needed);
osc_status osc_report_json(const osc_delta* d, const osc_report* report, char* buf, size_t cap,
                           size_t* needed);

/* --- Mellin transform and Perron reconstruction -------------------------- */

osc_status osc_contour_create(const osc_app* app, double sigma3, double t0, double height,
                              osc_contour** out); /* pass 0 to keep a default */
void osc_contour_free(osc_contour* c);

osc_status osc_mellin_direct(const osc_app* app, const osc_delta* d, double s_re, double s_im,
                             double x_max, int threads, double* out_re, double* out_im,
                             double* tail_bound);
osc_status osc_mellin_contour(const osc_app* app, const osc_contour* c, double s_re, double s_im,
                              int threads, double* out_re, double* out_im, double* tail_bound);
osc_status osc_perron(const osc_app* app, double x, double line_sigma, double height, int threads,
                      double* out);

typedef struct osc_pole_strength {
  double extrapolated;
  int converged;
  int has_residue_estimate;
  double residue_estimate;
  int n_probes;
  double probe_offset[16];
  double probe_abs_a[16];
  double probe_scaled[16];
} osc_pole_strength;

osc_status osc_pole_strength(const osc_app* app, const osc_contour* c, double sigma0, double t0,
                             int threads, osc_pole_strength* out);

#ifdef __cplusplus
}
#endif

#endif /* OSCILLAB_H */
