/*
 * C interface of the fracdirac shared library.
 *
 * All objects are opaque handles created by fd_*_create / fd_solve /
 * fd_*_run and released by the matching fd_*_free. Every fallible call
 * returns an fd_status; on failure fd_last_error() holds a message for the
 * calling thread until its next failing call. Handles are immutable after
 * creation and may be shared between threads for reading.
 */
#ifndef FRACDIRAC_H
#define FRACDIRAC_H

#include <stddef.h>

#if defined(_WIN32)
#  if defined(FRACDIRAC_BUILDING)
#    define FD_API __declspec(dllexport)
#  else
#    define FD_API __declspec(dllimport)
#  endif
#else
#  define FD_API __attribute__((visibility("default")))
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum fd_status {
  FD_OK = 0,
  FD_ERR_ARGUMENT = 1,
  FD_ERR_DOMAIN = 2,
  FD_ERR_PARSE = 3,
  FD_ERR_EVALUATION = 4,
  FD_ERR_CAPABILITY = 5,
  FD_ERR_DIVERGENCE = 6,
  FD_ERR_CONVERGENCE = 7,
  FD_ERR_CONSISTENCY = 8,
  FD_ERR_DEGENERATE_SLOPE = 9,
  FD_ERR_NOT_FOUND = 10,
  FD_ERR_INTERNAL = 11
} fd_status;

FD_API const char* fd_version(void);
FD_API const char* fd_status_name(fd_status status);
FD_API const char* fd_last_error(void);
/* Byte offset of the last parse error on this thread, or -1. */
FD_API long fd_last_error_offset(void);

/* ---- coefficient expressions ------------------------------------------ */

typedef struct fd_expr fd_expr;

FD_API fd_status fd_expr_parse(const char* source, fd_expr** out);
FD_API fd_status fd_expr_eval(const fd_expr* expr, double s_value, double x_value, double* out);
/* Canonical text. Writes at most cap bytes including the terminator and
 * stores the full length (without terminator) in *needed. */
FD_API fd_status fd_expr_canonical(const fd_expr* expr, char* buf, size_t cap, size_t* needed);
FD_API void fd_expr_free(fd_expr* expr);

/* ---- problems ---------------------------------------------------------- */

typedef enum fd_method { FD_METHOD_FRACTAL = 0, FD_METHOD_CLASSICAL = 1 } fd_method;

/* What the variable S of a coefficient formula receives: the abscissa x
 * (convention of the published example tables) or the staircase S(x). */
typedef enum fd_coeff_arg { FD_COEFF_ABSCISSA = 0, FD_COEFF_STAIRCASE = 1 } fd_coeff_arg;

typedef struct fd_problem_desc {
  const char* p;
  const char* r;
  double a;
  double b;
  double alpha;
  int steps;
  fd_method method;
  fd_coeff_arg coefficient_argument;
} fd_problem_desc;

/* a = 0, b = pi, alpha = 1, steps = 4096, fractal method, abscissa binding,
 * p = r = NULL. */
FD_API void fd_problem_desc_init(fd_problem_desc* desc);

typedef struct fd_problem fd_problem;

FD_API fd_status fd_problem_create(const fd_problem_desc* desc, fd_problem** out);
FD_API void fd_problem_free(fd_problem* problem);
FD_API size_t fd_problem_node_count(const fd_problem* problem);
/* x and s each hold fd_problem_node_count() values; either may be NULL. */
FD_API fd_status fd_problem_nodes(const fd_problem* problem, double* x, double* s);

FD_API fd_status fd_characteristic(const fd_problem* problem, double lambda, double* out);
FD_API fd_status fd_characteristic_via_psi(const fd_problem* problem, double lambda, double* out);
FD_API fd_status fd_wronskian_profile(const fd_problem* problem, double lambda, double* out);
FD_API fd_status fd_propagate_phi(const fd_problem* problem, double lambda, double* f1, double* f2);
FD_API fd_status fd_propagate_psi(const fd_problem* problem, double lambda, double* f1, double* f2);

/* Samples Delta at `points` equally spaced lambdas. ok[i] is 0 where the
 * sweep diverged (deltas[i] is then NaN). */
FD_API fd_status fd_scan(const fd_problem* problem, double lambda_min, double lambda_max, int points, double* lambdas,
                         double* deltas, int* ok);
/* Sign-change brackets of a scan. Writes up to capacity pairs and the total
 * number in *count. */
FD_API fd_status fd_find_brackets(const double* lambdas, const double* deltas, const int* ok, int points, double* lo,
                                  double* hi, size_t capacity, size_t* count);

/* ---- spectra ----------------------------------------------------------- */

typedef struct fd_solve_options {
  double lambda_min; /* exclusive */
  double lambda_max;
  int scan_points;
  double tol;
} fd_solve_options;

/* (0, pi], 311 scan points, tol 1e-9. */
FD_API void fd_solve_options_init(fd_solve_options* options);

typedef struct fd_eigen_info {
  int index;
  double lambda;
  double weight;
  double beta;
  double residual;
  double delta_slope;
} fd_eigen_info;

typedef struct fd_relation_info {
  double defect;
  double beta_alpha;
  double slope;
  double staircase_slope;
} fd_relation_info;

typedef struct fd_spectrum fd_spectrum;

FD_API fd_status fd_solve(const fd_problem* problem, const fd_solve_options* options, fd_spectrum** out);
FD_API void fd_spectrum_free(fd_spectrum* spectrum);
FD_API size_t fd_spectrum_count(const fd_spectrum* spectrum);
FD_API fd_status fd_spectrum_get(const fd_spectrum* spectrum, size_t i, fd_eigen_info* out);
/* f1, f2 hold fd_problem_node_count() values each. */
FD_API fd_status fd_spectrum_eigenfunction(const fd_spectrum* spectrum, size_t i, double* f1, double* f2);
/* Row-major count x count matrix of normalized inner products. */
FD_API fd_status fd_spectrum_gram(const fd_spectrum* spectrum, double* matrix);
FD_API fd_status fd_spectrum_relation(const fd_spectrum* spectrum, size_t i, fd_relation_info* out);
FD_API size_t fd_spectrum_failure_count(const fd_spectrum* spectrum);
/* *reason stays valid while the spectrum lives. */
FD_API fd_status fd_spectrum_failure(const fd_spectrum* spectrum, size_t i, double* lo, double* hi,
                                     const char** reason);

/* Eigenvalue `index` at each level (NaN where not found) and the observed
 * orders log2(|l_N - l_2N| / |l_2N - l_4N|), NaN where undefined. lambdas
 * holds nlevels values, orders nlevels - 2. */
FD_API fd_status fd_convergence_study(const fd_problem_desc* desc, const fd_solve_options* options, const int* levels,
                                      size_t nlevels, int index, double* lambdas, double* orders);

/* ---- built-in examples, tables and verification ------------------------ */

typedef struct fd_run_settings {
  int steps;
  int scan_points;
  double tol;
  fd_coeff_arg coefficient_argument;
} fd_run_settings;

/* 4096 steps, 311 scan points, tol 1e-9, abscissa binding. */
FD_API void fd_run_settings_init(fd_run_settings* settings);

/* Coefficient formulas of example 1, 2 or 3; the strings are static. */
FD_API fd_status fd_preset(int example, const char** p, const char** r);

typedef struct fd_table fd_table;

typedef struct fd_table_cell {
  int has_expected;
  double expected;
  int has_computed;
  double computed;
  double tolerance;
  int relative;
  int pass;
} fd_table_cell;

typedef struct fd_table_gap {
  int n;
  int has_classical;
  double classical;
  int has_gap;
  double gap;
  double published_gap;
} fd_table_gap;

FD_API fd_status fd_table_run(int example, const fd_run_settings* settings, fd_table** out);
FD_API void fd_table_free(fd_table* table);
FD_API int fd_table_pass(const fd_table* table);
FD_API size_t fd_table_row_count(const fd_table* table);
/* *alpha is NaN for the classical row. */
FD_API fd_status fd_table_row(const fd_table* table, size_t row, double* alpha, size_t* cells, int* pass);
FD_API fd_status fd_table_cell_get(const fd_table* table, size_t row, size_t col, fd_table_cell* out);
FD_API size_t fd_table_gap_count(const fd_table* table);
FD_API fd_status fd_table_gap_get(const fd_table* table, size_t i, fd_table_gap* out);

typedef enum fd_comparison { FD_BELOW = 0, FD_ABOVE = 1, FD_NEAR = 2 } fd_comparison;

typedef struct fd_check {
  const char* suite;
  const char* name;
  double value;
  double threshold;
  fd_comparison comparison;
  double target;
  int pass;
} fd_check;

typedef struct fd_verify fd_verify;

/* suite: orthogonality, lagrange, wronskian, relation28, convergence, all. */
FD_API fd_status fd_verify_run(const char* suite, const fd_run_settings* settings, fd_verify** out);
FD_API void fd_verify_free(fd_verify* report);
FD_API int fd_verify_pass(const fd_verify* report);
FD_API size_t fd_verify_count(const fd_verify* report);
/* Strings in *out stay valid while the report lives. */
FD_API fd_status fd_verify_check(const fd_verify* report, size_t i, fd_check* out);

#ifdef __cplusplus
}
#endif

#endif
