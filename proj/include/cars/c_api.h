/*
 * C interface to the curvature-aware random search library.
 *
 * All objects are opaque handles created and released through this API.
 * Every fallible call returns a cars_status; on failure a human-readable
 * message for the calling thread is available from cars_last_error().
 * Strings returned through `char**` out-parameters are owned by the caller
 * and must be released with cars_string_free().
 */
#ifndef CARS_C_API_H
#define CARS_C_API_H

#include <stddef.h>
#include <stdint.h>

#if defined(_WIN32)
#  if defined(CARS_BUILDING_LIBRARY)
#    define CARS_API __declspec(dllexport)
#  else
#    define CARS_API __declspec(dllimport)
#  endif
#else
#  define CARS_API __attribute__((visibility("default")))
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum cars_status {
  CARS_OK = 0,
  CARS_ERR_BUDGET_EXHAUSTED = 1,
  CARS_ERR_DIMENSION_MISMATCH = 2,
  CARS_ERR_NO_QUERIES_YET = 3,
  CARS_ERR_ZERO_GRADIENT = 4,
  CARS_ERR_SINGULAR_MATRIX = 5,
  CARS_ERR_INVALID_CONSTANTS = 6,
  CARS_ERR_NONPOSITIVE_CURVATURE = 7,
  CARS_ERR_ZERO_CURVATURE = 8,
  CARS_ERR_UNKNOWN_PROBLEM = 9,
  CARS_ERR_UNKNOWN_SOLVER = 10,
  CARS_ERR_INVALID_TARGETS = 11,
  CARS_ERR_INVALID_CONFIG = 12,
  CARS_ERR_PARSE = 13,
  CARS_ERR_IO = 14,
  CARS_ERR_INVALID_ARGUMENT = 15, /* null handle, index out of range */
  CARS_ERR_INTERNAL = 16
} cars_status;

typedef struct cars_problem cars_problem;
typedef struct cars_run_config cars_run_config;
typedef struct cars_grid_config cars_grid_config;
typedef struct cars_record_set cars_record_set;

CARS_API const char* cars_version(void);
CARS_API const char* cars_status_string(cars_status status);
/* Message of the last failed call on this thread; "" when none. */
CARS_API const char* cars_last_error(void);
CARS_API void cars_string_free(char* s);

/* ---- problems ---------------------------------------------------------- */

CARS_API size_t cars_problem_registry_size(void);
/* Borrowed pointer, valid for the life of the process. */
CARS_API cars_status cars_problem_registry_name(size_t index, const char** name);

CARS_API cars_status cars_problem_lookup(const char* name, cars_problem** out);
CARS_API cars_status cars_problem_make_quartic(size_t dim, double alpha,
                                               double beta, uint64_t seed,
                                               cars_problem** out);
CARS_API void cars_problem_free(cars_problem* problem);

CARS_API const char* cars_problem_name(const cars_problem* problem);
CARS_API size_t cars_problem_dim(const cars_problem* problem);
/* Returns 1 and writes f* when known, 0 otherwise. */
CARS_API int cars_problem_f_star(const cars_problem* problem, double* f_star);
/* Copies the recommended start into x (length dim). */
CARS_API cars_status cars_problem_x0(const cars_problem* problem, double* x,
                                     size_t dim);
CARS_API cars_status cars_problem_evaluate(const cars_problem* problem,
                                           const double* x, size_t dim,
                                           double* value);

/* ---- solvers ----------------------------------------------------------- */

CARS_API size_t cars_solver_count(void);
CARS_API cars_status cars_solver_name(size_t index, const char** name);

/* A run configuration for one solver, starting from its published defaults. */
CARS_API cars_status cars_run_config_create(const char* solver,
                                            cars_run_config** out);
CARS_API void cars_run_config_free(cars_run_config* config);
/* Solver parameter override, e.g. ("L_hat", "2"). Unknown keys fail with
 * CARS_ERR_INVALID_CONFIG. */
CARS_API cars_status cars_run_config_set(cars_run_config* config,
                                         const char* key, const char* value);
CARS_API cars_status cars_run_config_set_seed(cars_run_config* config,
                                              uint64_t seed);
CARS_API cars_status cars_run_config_set_budget(cars_run_config* config,
                                                uint64_t budget);
CARS_API cars_status cars_run_config_set_eps(cars_run_config* config,
                                             const double* eps, size_t count);
/* Stop when best - f* <= gap. */
CARS_API cars_status cars_run_config_set_target_gap(cars_run_config* config,
                                                    double gap);
/* Keep iterating after all accuracy targets are met. */
CARS_API cars_status cars_run_config_set_run_to_budget(cars_run_config* config,
                                                       int enabled);
/* Theory mode: fixed scale-free radius from Hessian Hoelder constants. CARS
 * only. */
CARS_API cars_status cars_run_config_set_theory(cars_run_config* config,
                                                double a, double L_a, double mu,
                                                double epsilon, double gamma);
/* Scale-free radius limit C for the given constants. */
CARS_API cars_status cars_radius_limit(double a, double L_a, double mu,
                                       double epsilon, double gamma,
                                       double* C);

/* Runs one (problem, solver, seed) and appends its record to `sink`. */
CARS_API cars_status cars_run(const cars_problem* problem,
                              const cars_run_config* config,
                              cars_record_set* sink);

/* ---- grids ------------------------------------------------------------- */

CARS_API cars_status cars_grid_config_create(cars_grid_config** out);
CARS_API void cars_grid_config_free(cars_grid_config* grid);
CARS_API cars_status cars_grid_add_problem(cars_grid_config* grid,
                                           const cars_problem* problem);
/* Adds every registered benchmark-suite problem. */
CARS_API cars_status cars_grid_add_suite(cars_grid_config* grid);
/* Solver with its defaults; use cars_grid_add_run_config for overrides. */
CARS_API cars_status cars_grid_add_solver(cars_grid_config* grid,
                                          const char* solver);
CARS_API cars_status cars_grid_add_run_config(cars_grid_config* grid,
                                              const cars_run_config* config);
/* n seeds derived deterministically from master_seed. */
CARS_API cars_status cars_grid_set_seeds(cars_grid_config* grid, size_t n,
                                         uint64_t master_seed);
CARS_API cars_status cars_grid_set_budget(cars_grid_config* grid,
                                          uint64_t budget);
CARS_API cars_status cars_grid_set_eps(cars_grid_config* grid,
                                       const double* eps, size_t count);
CARS_API cars_status cars_grid_set_threads(cars_grid_config* grid,
                                           unsigned threads);
CARS_API cars_status cars_grid_run(const cars_grid_config* grid,
                                   cars_record_set* sink);

/* ---- run records ------------------------------------------------------- */

typedef struct cars_record_info {
  const char* problem; /* borrowed from the set */
  const char* solver;  /* borrowed from the set */
  const char* error;   /* "" on a clean run */
  uint64_t seed;
  uint64_t budget;
  uint64_t queries_used;
  double f0;
  double final_best;
  int has_f_star;
  double f_star;
  size_t target_count;
  size_t trace_length;
} cars_record_info;

CARS_API cars_status cars_record_set_create(cars_record_set** out);
CARS_API void cars_record_set_free(cars_record_set* set);
CARS_API size_t cars_record_set_size(const cars_record_set* set);
CARS_API cars_status cars_record_get(const cars_record_set* set, size_t index,
                                     cars_record_info* info);
/* queries = -1 when unsolved. */
CARS_API cars_status cars_record_target(const cars_record_set* set,
                                        size_t index, size_t target,
                                        double* eps, int64_t* queries);
CARS_API cars_status cars_record_trace_point(const cars_record_set* set,
                                             size_t index, size_t point,
                                             uint64_t* query, double* best);

/* Line-delimited record text (one JSON object per line). */
CARS_API cars_status cars_record_set_to_text(const cars_record_set* set,
                                             char** text);
CARS_API cars_status cars_record_set_append_text(cars_record_set* set,
                                                 const char* text);
CARS_API cars_status cars_record_set_write(const cars_record_set* set,
                                           const char* path);
CARS_API cars_status cars_record_set_read(const char* path,
                                          cars_record_set** out);

/* ---- performance profiles ---------------------------------------------- */

/* Profile CSV at accuracy eps on `points` log-spaced tau values in
 * [1, tau_max]. Fails with CARS_ERR_INVALID_TARGETS (message lists the
 * available eps) when eps is not recorded, CARS_ERR_INVALID_ARGUMENT when
 * the set is empty. */
CARS_API cars_status cars_profile_csv(const cars_record_set* set, double eps,
                                      double tau_max, size_t points,
                                      char** csv);

#ifdef __cplusplus
}
#endif

#endif /* CARS_C_API_H */
