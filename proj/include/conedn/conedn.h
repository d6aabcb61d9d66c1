#ifndef CONEDN_CONEDN_H
#define CONEDN_CONEDN_H

#include <stddef.h>
#include <stdint.h>

#if defined(_WIN32)
#if defined(CONEDN_BUILDING)
#define CDN_API __declspec(dllexport)
#else
#define CDN_API __declspec(dllimport)
#endif
#else
#define CDN_API __attribute__((visibility("default")))
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum cdn_status {
  CDN_OK = 0,
  CDN_ERR_CONFIG = 1,     /* bad argument, key or value */
  CDN_ERR_DOMAIN = 2,     /* input outside the admissible set */
  CDN_ERR_EVALUATION = 3, /* special function or quadrature did not meet tolerance */
  CDN_ERR_SOLVER = 4,     /* strip solve did not converge */
  CDN_ERR_IO = 5,
  CDN_ERR_INTERNAL = 6
} cdn_status;

typedef struct cdn_grid cdn_grid;
typedef struct cdn_profile cdn_profile;
typedef struct cdn_symbol_table cdn_symbol_table;
typedef struct cdn_field cdn_field;
typedef struct cdn_config cdn_config;
typedef struct cdn_report cdn_report;

/* Message for the last failing call on this thread; empty after success. */
CDN_API const char* cdn_last_error(void);
CDN_API const char* cdn_status_name(cdn_status s);
CDN_API const char* cdn_version(void);

/* Periodic sigma grid on [-L, L) with n points (n a power of two, n >= 8). */
CDN_API cdn_status cdn_grid_create(double L, int n, cdn_grid** out);
CDN_API void cdn_grid_destroy(cdn_grid* g);
CDN_API int cdn_grid_size(const cdn_grid* g);
CDN_API cdn_status cdn_grid_nodes(const cdn_grid* g, double* out);
/* Frequencies in FFT order. */
CDN_API cdn_status cdn_grid_frequencies(const cdn_grid* g, double* out);

/* Root of P_{1/2}(-cos theta) on (0.2 pi, 0.35 pi). */
CDN_API cdn_status cdn_taylor_angle(double tol, double* theta_out);
/* P_{1/2}(-cos theta) and P^1_{1/2}(-cos theta) = d/dtheta P_{1/2}(-cos theta). */
CDN_API cdn_status cdn_legendre_half(double theta, double* P, double* P1);
CDN_API cdn_status cdn_taylor_constant(double theta_star, double kappa, double epsilon,
                                       double* C_out);

/* d^m/dtheta^m of the conical function for m = 0..order (order <= 4):
   value m is d[m] * exp(*log_scale). */
CDN_API cdn_status cdn_conical(double zeta, double theta, int order, double* log_scale,
                               double* d);
CDN_API cdn_status cdn_flat_symbol(double zeta, double theta_star, double* g);

CDN_API cdn_status cdn_symbol_table_create(const cdn_grid* g, double theta_star,
                                           cdn_symbol_table** out);
CDN_API void cdn_symbol_table_destroy(cdn_symbol_table* t);
CDN_API cdn_status cdn_symbol_values(const cdn_symbol_table* t, double* g_out);
CDN_API cdn_status cdn_dn_flat(const cdn_symbol_table* t, const double* phi, double* out);

/* eta = theta_star + eta_tilde; eta_tilde has cdn_grid_size entries. */
CDN_API cdn_status cdn_profile_create(const cdn_grid* g, double theta_star,
                                      const double* eta_tilde, cdn_profile** out);
CDN_API void cdn_profile_destroy(cdn_profile* p);

/* Any of G, B, V may be NULL. */
CDN_API cdn_status cdn_dn_general(const cdn_profile* p, int n_y, const double* phi, double* G,
                                  double* B, double* V);
CDN_API cdn_status cdn_solve_strip(const cdn_profile* p, int n_y, const double* phi,
                                   cdn_field** out);
CDN_API cdn_status cdn_shape_derivative(const cdn_profile* p, int n_y, const double* phi,
                                        const double* h, double* out);
/* G_ell[eta_tilde] phi for ell = 0, 1, 2. */
CDN_API cdn_status cdn_stokes_term(const cdn_grid* g, double theta_star, const double* eta_tilde,
                                   int ell, const double* phi, double* out);
CDN_API cdn_status cdn_mean_curvature(const cdn_profile* p, double* out);

CDN_API void cdn_field_destroy(cdn_field* f);
CDN_API cdn_status cdn_field_dims(const cdn_field* f, int* n_sigma, int* n_y);
/* n_sigma * n_y values, sigma-major. */
CDN_API cdn_status cdn_field_values(const cdn_field* f, double* out);
CDN_API cdn_status cdn_field_write_csv(const cdn_field* f, const char* path);
CDN_API cdn_status cdn_field_write_binary(const cdn_field* f, const char* path);

/* Run configuration with defaults; keys are dotted, e.g. "grid.n_y". */
CDN_API cdn_status cdn_config_create(cdn_config** out);
CDN_API cdn_status cdn_config_load_file(const char* path, cdn_config** out);
CDN_API cdn_status cdn_config_load_string(const char* yaml, cdn_config** out);
CDN_API cdn_status cdn_config_set(cdn_config* c, const char* key, const char* value);
CDN_API void cdn_config_destroy(cdn_config* c);
/* 16 hex digits plus terminator. */
CDN_API cdn_status cdn_config_hash(const cdn_config* c, char out[17]);
CDN_API const char* cdn_config_output_dir(const cdn_config* c);

/* Subcommands: angle symbol extend solve bounds shape-check cancel-check
   stokes equilibrium norms. A failed numerical check still returns CDN_OK
   with *pass == 0 in the report. */
CDN_API cdn_status cdn_run(const char* subcommand, const cdn_config* c, cdn_report** out);
CDN_API void cdn_report_destroy(cdn_report* r);
CDN_API int cdn_report_pass(const cdn_report* r);
/* JSON summary; owned by the report. */
CDN_API const char* cdn_report_json(const cdn_report* r);
CDN_API cdn_status cdn_report_write(const cdn_report* r, const char* dir);

#ifdef __cplusplus
}
#endif

#endif
