#ifndef EVT_EVT_H
#define EVT_EVT_H

#include <stddef.h>
#include <stdint.h>

#if defined(EVT_BUILDING_LIBRARY)
#define EVT_API __attribute__((visibility("default")))
#else
#define EVT_API
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum {
  EVT_OK = 0,
  EVT_E_DOMAIN,
  EVT_E_UNSUPPORTED_PARAMETER,
  EVT_E_ABSENT_PROFILE,
  EVT_E_DEGENERATE,
  EVT_E_DIFFERENTIATION,
  EVT_E_QUADRATURE,
  EVT_E_INSUFFICIENT_POINTS,
  EVT_E_SIGN_CHANGE,
  EVT_E_INDEX,
  EVT_E_UNSUPPORTED,
  EVT_E_SYNTAX,
  EVT_E_UNKNOWN_IDENTIFIER,
  EVT_E_UNBOUND_PARAMETER,
  EVT_E_DOMAIN_VIOLATION,
  EVT_E_DUPLICATE_NAME,
  EVT_E_NON_MONOTONE,
  EVT_E_CONFIG,
  EVT_E_IO,
  EVT_E_INVALID_ARGUMENT,
  EVT_E_INTERNAL
} evt_status;

typedef struct evt_dist evt_dist;
typedef struct evt_report evt_report;
typedef struct evt_rep evt_rep;
typedef struct evt_rc evt_rc;
typedef struct evt_sim evt_sim;

/* Message of the last failure on the calling thread ("" if none). */
EVT_API const char* evt_last_error(void);
/* 1-based position of the last parser failure, 0 when not applicable. */
EVT_API int evt_last_error_line(void);
EVT_API int evt_last_error_column(void);
EVT_API const char* evt_status_name(evt_status status);
EVT_API const char* evt_version(void);

/* Strings returned through char** are owned by the caller. */
EVT_API void evt_string_free(char* s);
/* Write through a temporary file and rename; path "-" is stdout. */
EVT_API evt_status evt_write_file(const char* path, const char* content);

/* ---- distributions ---- */
EVT_API evt_status evt_dist_create(const char* family, const char* const* names,
                                   const double* values, size_t count, evt_dist** out);
/* key=value distribution description (quantile=..., gamma=..., params). */
EVT_API evt_status evt_dist_from_dsl(const char* text, evt_dist** out);
EVT_API evt_status evt_dist_hill_reference(double gamma, double rho, evt_dist** out);
EVT_API evt_status evt_dist_log_view(const evt_dist* dist, evt_dist** out);
EVT_API void evt_dist_free(evt_dist* dist);
EVT_API evt_status evt_dist_id(const evt_dist* dist, char** out);
EVT_API evt_status evt_dist_tail(const evt_dist* dist, double* gamma, double* rho,
                                 int* has_endpoint, double* endpoint);
EVT_API evt_status evt_dist_default_params(const char* family, char** out);

EVT_API evt_status evt_quantile(const evt_dist* dist, double u, double* out);
EVT_API evt_status evt_d_gamma(double gamma, double x, double* out);
EVT_API evt_status evt_h_star(double gamma, double rho, double x, double* out);
EVT_API evt_status evt_aux_eval(const evt_dist* dist, double u, double x, double* s, double* S,
                                double* h, int* orientation, int* degenerate);

/* ---- catalog ---- */
EVT_API evt_status evt_catalog_csv(char** out);
EVT_API evt_status evt_defaults_csv(char** out);
EVT_API evt_status evt_table_csv(const double* u, size_t nu, const double* x, size_t nx,
                                 char** out);

/* ---- second order condition ---- */
EVT_API evt_status evt_first_order_ratio(const evt_dist* dist, double u, double x, double* out);
EVT_API evt_status evt_soc_remainder(const evt_dist* dist, double u, double x, double* out);
EVT_API evt_status evt_soc_ratio(const evt_dist* dist, double u, double x, double* out);

/* Empty grids or tol <= 0 select the family defaults. */
EVT_API evt_status evt_verify_soc(const evt_dist* dist, const double* x, size_t nx,
                                  const double* u, size_t nu, double tol, evt_report** out);
EVT_API void evt_report_free(evt_report* report);
/* "Converged", "Degenerate" or "NotConverged". */
EVT_API const char* evt_report_verdict(const evt_report* report);
EVT_API size_t evt_report_u_count(const evt_report* report);
EVT_API size_t evt_report_x_count(const evt_report* report);
EVT_API double evt_report_u(const evt_report* report, size_t i);
EVT_API double evt_report_x(const evt_report* report, size_t j);
EVT_API double evt_report_ratio(const evt_report* report, size_t i, size_t j);
EVT_API double evt_report_target(const evt_report* report, size_t j);
EVT_API double evt_report_max_error(const evt_report* report, size_t i);
EVT_API double evt_report_max_abs_remainder(const evt_report* report);
EVT_API double evt_report_tol(const evt_report* report);
EVT_API evt_status evt_report_csv(const evt_report* report, char** out);

/* Empty grid selects 1e-3, 1e-4, 1e-5, 1e-6. */
EVT_API evt_status evt_estimate_rho(const evt_dist* dist, const double* u, size_t nu,
                                    double* rho_hat, double* slope, double* intercept,
                                    double* r_squared);
/* "Regular", "Degenerate" or "Unknown". */
EVT_API evt_status evt_classify_soc(const evt_dist* dist, const char** out);

/* ---- representations ---- */
enum { EVT_B_AUTO = 0, EVT_B_ANALYTIC = 1, EVT_B_NUMERIC = 2 };
EVT_API evt_status evt_extract_b(const evt_dist* dist, double u, int method, double* out);
EVT_API evt_status evt_rep_build(const evt_dist* dist, evt_rep** out);
EVT_API void evt_rep_free(evt_rep* rep);
/* regime: "Frechet", "Weibull" or "Gumbel". */
EVT_API evt_status evt_rep_info(const evt_rep* rep, const char** regime, double* c, double* d,
                                double* gamma, int* has_endpoint, double* endpoint);
EVT_API evt_status evt_rep_eval(const evt_rep* rep, double u, double* p, double* b, double* s);
EVT_API evt_status evt_rep_reconstruct(const evt_rep* rep, double u, double* out);
EVT_API evt_status evt_represented_quantile(const evt_dist* dist, double u, double* out);
EVT_API evt_status evt_residuals(const evt_dist* dist, double u, double x, double* p_term,
                                 double* b_term, double* pb_term);
EVT_API evt_status evt_rep_first_order_error(const evt_dist* dist, const evt_rep* rep, double u,
                                             double x, double* out);
EVT_API evt_status evt_rep_roundtrip_csv(const evt_dist* dist, const double* u, size_t nu,
                                         char** out);

/* ---- regularity conditions ---- */
EVT_API evt_status evt_rc_report(const evt_dist* dist, const size_t* n, const size_t* k,
                                 size_t rows, evt_rc** out);
EVT_API void evt_rc_free(evt_rc* rc);
/* "decreasing", "increasing", "mixed" or "not applicable". */
EVT_API const char* evt_rc_rep_trend(const evt_rc* rc);
EVT_API const char* evt_rc_soc_trend(const evt_rc* rc);
EVT_API size_t evt_rc_rows(const evt_rc* rc);
EVT_API evt_status evt_rc_row(const evt_rc* rc, size_t i, size_t* n, size_t* k,
                              double* rep_column, double* soc_column);
EVT_API evt_status evt_rc_csv(const evt_rc* rc, char** out);

/* ---- simulation ---- */
EVT_API evt_status evt_sim_large_quantile(const evt_dist* dist, size_t n, size_t k, double alpha,
                                          const double* s, size_t ns, size_t reps, uint64_t seed,
                                          evt_sim** out);
/* f is an expression in j; NULL means f = 1. */
EVT_API evt_status evt_sim_hill(const evt_dist* dist, size_t n, size_t k, const char* f,
                                size_t reps, uint64_t seed, evt_sim** out);
EVT_API void evt_sim_free(evt_sim* sim);
EVT_API size_t evt_sim_reps(const evt_sim* sim);
EVT_API evt_status evt_sim_stat(const evt_sim* sim, const char* label, double* mean,
                                double* variance, double* median);
/* Sorted per-replication values of `label`; returns the count written. */
EVT_API size_t evt_sim_values(const evt_sim* sim, const char* label, double* out, size_t cap);
EVT_API evt_status evt_sim_long_csv(const evt_sim* sim, char** out);
EVT_API evt_status evt_sim_summary_csv(const evt_sim* sim, char** out);

/* KS distance of 1 - exp(-E_j) from uniform for the Malmquist spacings. */
EVT_API evt_status evt_malmquist_ks(size_t n, size_t k, uint64_t seed, double* distance);

/* ---- expressions ---- */
/* Parses `text` with the given variable name and returns its canonical print. */
EVT_API evt_status evt_parse_check(const char* text, const char* variable, char** printed);

#ifdef __cplusplus
}
#endif

#endif
