/* Copyright 2026 The nlfem Authors
 * SPDX-License-Identifier: Apache-2.0
 *
 * C interface of the nlfem library. Every call returns an nlfem_status;
 * on failure nlfem_last_error() describes the problem (per thread). Objects
 * returned through out-parameters are owned by the caller and released with
 * the matching *_free function.
 */
#ifndef NLFEM_NLFEM_H
#define NLFEM_NLFEM_H

#include <stddef.h>

#ifdef __cplusplus
extern "C" {
#endif

#if defined(NLFEM_BUILDING_LIBRARY)
#define NLFEM_API __attribute__((visibility("default")))
#else
#define NLFEM_API
#endif

typedef enum nlfem_status {
  NLFEM_OK = 0,
  NLFEM_ERR_DOMAIN = 1,
  NLFEM_ERR_SINGULAR = 2,
  NLFEM_ERR_INDEFINITE = 3,
  NLFEM_ERR_CONVERGENCE = 4,
  NLFEM_ERR_DEGENERATION = 5,
  NLFEM_ERR_IO = 6,
  NLFEM_ERR_INTERNAL = 7
} nlfem_status;

typedef struct nlfem_mesh nlfem_mesh;
typedef struct nlfem_system nlfem_system;
typedef struct nlfem_function nlfem_function;
typedef struct nlfem_eigen nlfem_eigen;
typedef struct nlfem_limit nlfem_limit;

/* Scalar field evaluated at x (x[1] is 0 in 1D). */
typedef double (*nlfem_field)(const double* x, void* ctx);

NLFEM_API const char* nlfem_last_error(void);
NLFEM_API const char* nlfem_status_name(nlfem_status status);
NLFEM_API const char* nlfem_version(void);

NLFEM_API nlfem_status nlfem_fractional_constant(int dim, double s, double* out);
NLFEM_API nlfem_status nlfem_explicit_solution(int dim, double s, double radius, const double* x,
                                               double* out);

/* Meshes */
NLFEM_API nlfem_status nlfem_mesh_interval(double a, double b, size_t nodes, nlfem_mesh** out);
NLFEM_API nlfem_status nlfem_mesh_disk(double radius, int level, nlfem_mesh** out);
NLFEM_API nlfem_status nlfem_mesh_refine(const nlfem_mesh* mesh, nlfem_mesh** out);
NLFEM_API nlfem_status nlfem_mesh_load(const char* path, nlfem_mesh** out);
NLFEM_API nlfem_status nlfem_mesh_save(const nlfem_mesh* mesh, const char* path);
NLFEM_API nlfem_status nlfem_mesh_info(const nlfem_mesh* mesh, int* dim, size_t* vertices,
                                       size_t* elements, size_t* interior);
NLFEM_API void nlfem_mesh_free(nlfem_mesh* mesh);

/* Assembly */
typedef struct nlfem_assembly_options {
  double potential; /* constant V */
  int duffy_order;
  double separation;
  double exterior_radius_factor;
  int annulus_level;
} nlfem_assembly_options;

NLFEM_API void nlfem_assembly_options_default(nlfem_assembly_options* opts);
/* opts may be NULL for the defaults. */
NLFEM_API nlfem_status nlfem_assemble(const nlfem_mesh* mesh, double s,
                                      const nlfem_assembly_options* opts, nlfem_system** out);
NLFEM_API nlfem_status nlfem_system_load(const char* path, nlfem_system** out);
NLFEM_API nlfem_status nlfem_system_save(const nlfem_system* sys, const char* path);
NLFEM_API nlfem_status nlfem_system_info(const nlfem_system* sys, int* dim, size_t* size, double* s);
NLFEM_API nlfem_status nlfem_system_entry(const nlfem_system* sys, size_t i, size_t j, double* stiffness,
                                          double* mass);
NLFEM_API void nlfem_system_free(nlfem_system* sys);

/* Finite element functions (one coefficient per interior node) */
NLFEM_API nlfem_status nlfem_function_create(const nlfem_system* sys, const double* coefficients,
                                             size_t count, nlfem_function** out);
NLFEM_API nlfem_status nlfem_function_interpolate(const nlfem_system* sys, nlfem_field f, void* ctx,
                                                  nlfem_function** out);
NLFEM_API nlfem_status nlfem_function_size(const nlfem_function* f, size_t* count);
NLFEM_API nlfem_status nlfem_function_coefficients(const nlfem_function* f, double* out, size_t count);
/* Positions of the interior nodes carrying the coefficients, as (x, y) pairs; out holds 2*count. */
NLFEM_API nlfem_status nlfem_function_nodes(const nlfem_function* f, double* out, size_t count);
NLFEM_API nlfem_status nlfem_function_eval(const nlfem_function* f, const double* x, double* out);
NLFEM_API nlfem_status nlfem_function_extrema(const nlfem_function* f, double* min, double* max);
/* JSON solution file: mesh, coefficients, p, s, energy, grad_norm. */
NLFEM_API nlfem_status nlfem_function_save(const nlfem_function* f, const char* path, double p, double s,
                                           double energy, double grad_norm);
NLFEM_API nlfem_status nlfem_function_load(const char* path, nlfem_function** out, double* p, double* s);
/* Plot data: "x u" (1D, x ascending) or "x y u" (2D). */
NLFEM_API nlfem_status nlfem_function_write_plot(const nlfem_function* f, const char* path);
NLFEM_API void nlfem_function_free(nlfem_function* f);

/* Linear and nonlinear solves */
typedef struct nlfem_solve_report {
  int iterations;
  double gradient_norm;
  double energy;
  double wall_time;
} nlfem_solve_report;

/* f may be NULL for the constant source 1. */
NLFEM_API nlfem_status nlfem_solve_linear(const nlfem_system* sys, nlfem_field f, void* ctx,
                                          nlfem_function** out);
NLFEM_API nlfem_status nlfem_energy(const nlfem_system* sys, double p, double lambda,
                                    const nlfem_function* u, double* out);
/* On NLFEM_ERR_CONVERGENCE, *out holds the best iterate (caller frees) and the
   report its energy and gradient norm. */
NLFEM_API nlfem_status nlfem_ground_state(const nlfem_system* sys, double p, double lambda,
                                          const nlfem_function* u0, double tol, int max_iter,
                                          nlfem_function** out, nlfem_solve_report* report);
NLFEM_API nlfem_status nlfem_nodal_solution(const nlfem_system* sys, double p, double lambda,
                                            const nlfem_function* u0, double tol, int max_iter,
                                            nlfem_function** out, nlfem_solve_report* report);

/* Eigenpairs of S x = lambda M x */
NLFEM_API nlfem_status nlfem_eigen_compute(const nlfem_system* sys, size_t k, double tol,
                                           nlfem_eigen** out);
NLFEM_API nlfem_status nlfem_eigen_count(const nlfem_eigen* e, size_t* count);
NLFEM_API nlfem_status nlfem_eigen_value(const nlfem_eigen* e, size_t i, double* lambda, double* residual,
                                         int* near_degenerate);
/* Eigenfunctions are sign-normalized (largest coefficient positive). */
NLFEM_API nlfem_status nlfem_eigen_vector(const nlfem_eigen* e, size_t i, nlfem_function** out);
NLFEM_API nlfem_status nlfem_eigen_iterations(const nlfem_eigen* e, int* iterations);
NLFEM_API void nlfem_eigen_free(nlfem_eigen* e);

/* Studies */
typedef struct nlfem_convergence_row {
  size_t nodes;
  double h_error;
  double l2_error;
  double center_value;
} nlfem_convergence_row;

/* rows must hold `count` entries. */
NLFEM_API nlfem_status nlfem_convergence(double s, const size_t* sizes, size_t count,
                                         nlfem_convergence_row* rows, double* h_slope, double* l2_slope);

typedef struct nlfem_limit_row {
  double p;
  double energy;
  double angle; /* radians */
  double limit_residual;
  double norm;
} nlfem_limit_row;

NLFEM_API nlfem_status nlfem_limit_study(const nlfem_system* sys, int index, const double* p_sequence,
                                         size_t count, const nlfem_function* u0, double tol,
                                         int max_iter, nlfem_limit** out);
NLFEM_API nlfem_status nlfem_limit_row_at(const nlfem_limit* l, size_t i, nlfem_limit_row* row);
NLFEM_API nlfem_status nlfem_limit_summary(const nlfem_limit* l, double* lambda, size_t* eigenspace_dim,
                                           double* direct_residual);
NLFEM_API nlfem_status nlfem_limit_solution(const nlfem_limit* l, size_t i, nlfem_function** out);
NLFEM_API nlfem_status nlfem_limit_basis(const nlfem_limit* l, size_t j, nlfem_function** out);
NLFEM_API void nlfem_limit_free(nlfem_limit* l);

typedef enum nlfem_transform {
  NLFEM_REFLECT_X = 0, /* 1D: reflection about the interval midpoint */
  NLFEM_REFLECT_Y = 1,
  NLFEM_ROTATE_90 = 2
} nlfem_transform;

typedef struct nlfem_symmetry {
  double rho_plus;
  double rho_minus;
  double residual;
  int symmetric;
  int interpolated;
} nlfem_symmetry;

NLFEM_API nlfem_status nlfem_symmetry_report(const nlfem_function* u, nlfem_transform t, int interpolate,
                                             nlfem_symmetry* out);

typedef struct nlfem_table_row {
  double s;
  double p;
  double ground_energy;
  double ground_max;
  double nodal_energy;
  double nodal_max;
  double nodal_min;
} nlfem_table_row;

NLFEM_API nlfem_status nlfem_table(double s, double p, size_t nodes, double tol, int max_iter,
                                   nlfem_table_row* out);

#ifdef __cplusplus
}
#endif

#endif /* NLFEM_NLFEM_H */
