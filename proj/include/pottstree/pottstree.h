// Copyright 2026 The pottstree Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

/*
 * C interface to the pottstree library.
 *
 * Every function returns a pottstree_status. On failure the thread-local
 * message returned by pottstree_last_error() describes what went wrong.
 * Objects are opaque handles created by *_create / compute functions and
 * released with the matching *_destroy function; destroy accepts NULL.
 */
#ifndef POTTSTREE_H_
#define POTTSTREE_H_

#include <stddef.h>
#include <stdint.h>

#if defined(_WIN32)
#  if defined(POTTSTREE_BUILDING_LIBRARY)
#    define POTTSTREE_API __declspec(dllexport)
#  else
#    define POTTSTREE_API __declspec(dllimport)
#  endif
#else
#  define POTTSTREE_API __attribute__((visibility("default")))
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum pottstree_status {
  POTTSTREE_OK = 0,
  POTTSTREE_INVALID_ARGUMENT = 1,
  POTTSTREE_DOMAIN_ERROR = 2,
  POTTSTREE_SIZE_ERROR = 3,
  POTTSTREE_NUMERICAL_ERROR = 4,
  POTTSTREE_IO_ERROR = 5,
  POTTSTREE_INTERNAL_ERROR = 6
} pottstree_status;

typedef enum pottstree_format {
  POTTSTREE_FORMAT_CSV = 0,
  POTTSTREE_FORMAT_JSON = 1
} pottstree_format;

/* Bits of the flags word reported for root searches and scan rows. */
#define POTTSTREE_FLAG_NEAR_DEGENERATE 0x1u
#define POTTSTREE_FLAG_DOMAIN_EDGE 0x2u
#define POTTSTREE_FLAG_UNPAIRED 0x4u
#define POTTSTREE_FLAG_ERROR 0x8u

#define POTTSTREE_ROOT_TRANSLATION_INVARIANT 0
#define POTTSTREE_ROOT_PERIOD2 1

POTTSTREE_API const char* pottstree_version(void);
POTTSTREE_API const char* pottstree_status_string(pottstree_status status);
/* Message of the last failed call on this thread; empty after a success. */
POTTSTREE_API const char* pottstree_last_error(void);

/* ---- model parameters ---- */

/* theta = exp(J * beta); beta must be positive. */
POTTSTREE_API pottstree_status pottstree_theta_from_coupling(double coupling, double beta,
                                                             double* theta);

/* ---- trees ---- */

typedef struct pottstree_tree pottstree_tree;

POTTSTREE_API pottstree_status pottstree_tree_create(int k, int depth, pottstree_tree** out);
POTTSTREE_API void pottstree_tree_destroy(pottstree_tree* tree);
POTTSTREE_API size_t pottstree_tree_vertex_count(const pottstree_tree* tree);
POTTSTREE_API size_t pottstree_tree_edge_count(const pottstree_tree* tree);
POTTSTREE_API int pottstree_tree_depth(const pottstree_tree* tree);
POTTSTREE_API pottstree_status pottstree_tree_sphere_size(const pottstree_tree* tree, int m,
                                                          size_t* size);
/* Copies up to `capacity` child indices; `count` receives the full number. */
POTTSTREE_API pottstree_status pottstree_tree_children(const pottstree_tree* tree, size_t vertex,
                                                       size_t* children, size_t capacity,
                                                       size_t* count);

/* ---- period-2 scalar functions (q = 3) ---- */

POTTSTREE_API pottstree_status pottstree_theta_cr(int k, double* out);
POTTSTREE_API pottstree_status pottstree_f(double x, double theta, int k, double* out);
POTTSTREE_API pottstree_status pottstree_g(double x, double theta, int k, double* out);
POTTSTREE_API pottstree_status pottstree_h(double x, double theta, int k, double* out);
POTTSTREE_API pottstree_status pottstree_h_prime(double x, double theta, int k, double* out);
POTTSTREE_API pottstree_status pottstree_system6_map(const double z_in[4], double theta, int k,
                                                     double z_out[4]);
/* ok[0..2]: order reversal, z3 vs z1', z4 vs z2'. Requires 0 < theta < 1. */
POTTSTREE_API pottstree_status pottstree_sign_relations(const double z_in[4],
                                                        const double z_out[4], double theta,
                                                        int ok[3]);
POTTSTREE_API pottstree_status pottstree_descartes_bound(double theta, int k, int* changes);

/* ---- roots of h ---- */

typedef struct pottstree_roots pottstree_roots;

/* grid <= 0 selects the default grid. */
POTTSTREE_API pottstree_status pottstree_roots_find(double theta, int k, int grid,
                                                    pottstree_roots** out);
POTTSTREE_API void pottstree_roots_destroy(pottstree_roots* roots);
POTTSTREE_API size_t pottstree_roots_count(const pottstree_roots* roots);
POTTSTREE_API unsigned pottstree_roots_flags(const pottstree_roots* roots);
POTTSTREE_API pottstree_status pottstree_roots_get(const pottstree_roots* roots, size_t index,
                                                   double* x, double* residual, int* kind);
POTTSTREE_API size_t pottstree_roots_pair_count(const pottstree_roots* roots);
POTTSTREE_API pottstree_status pottstree_roots_pair(const pottstree_roots* roots, size_t index,
                                                    double* lower, double* upper);
/* One-row table in the scan schema; the buffer lives until the next render
 * or destroy. */
POTTSTREE_API pottstree_status pottstree_roots_render(pottstree_roots* roots,
                                                      pottstree_format format, const char** text,
                                                      size_t* length);

/* ---- theta scans ---- */

typedef struct pottstree_scan pottstree_scan;

POTTSTREE_API pottstree_status pottstree_scan_theta(int k, double theta_lo, double theta_hi,
                                                    int steps, pottstree_scan** out);
POTTSTREE_API void pottstree_scan_destroy(pottstree_scan* scan);
POTTSTREE_API size_t pottstree_scan_row_count(const pottstree_scan* scan);
POTTSTREE_API pottstree_status pottstree_scan_row(const pottstree_scan* scan, size_t index,
                                                  double* theta, int* count, unsigned* flags);
/* Serialised table. The returned buffer stays valid until the scan is
 * destroyed or rendered again. */
POTTSTREE_API pottstree_status pottstree_scan_render(pottstree_scan* scan, pottstree_format format,
                                                     const char** text, size_t* length);
POTTSTREE_API pottstree_status pottstree_scan_write(const pottstree_scan* scan,
                                                    pottstree_format format, const char* path);

/* ---- exhaustive consistency verification ---- */

typedef struct pottstree_verify_result {
  int trials;
  double max_violation;
} pottstree_verify_result;

/* Random leaf fields, propagation, optional perturbation of one W_{n-1}
 * field, then an exhaustive check of the consistency condition. */
POTTSTREE_API pottstree_status pottstree_verify(int k, int q, int depth, double theta,
                                                uint64_t seed, int trials, double perturb,
                                                pottstree_verify_result* result);

/* ---- period-2 orbit iteration ---- */

typedef struct pottstree_orbit pottstree_orbit;

/* Iterates the even-step map T o T from z0. Sign relations are checked for
 * both half steps of every iteration when 0 < theta < 1. */
POTTSTREE_API pottstree_status pottstree_orbit_run(double theta, int k, const double z0[4],
                                                   double tol, int max_iter,
                                                   pottstree_orbit** out);
POTTSTREE_API void pottstree_orbit_destroy(pottstree_orbit* orbit);
POTTSTREE_API int pottstree_orbit_converged(const pottstree_orbit* orbit);
POTTSTREE_API int pottstree_orbit_iterations(const pottstree_orbit* orbit);
/* 1 when the sign relations were checked (0 < theta < 1), 0 otherwise. */
POTTSTREE_API int pottstree_orbit_signs_checked(const pottstree_orbit* orbit);
/* Number of half steps whose sign relations failed. */
POTTSTREE_API int pottstree_orbit_sign_failures(const pottstree_orbit* orbit);
POTTSTREE_API void pottstree_orbit_point(const pottstree_orbit* orbit, double z[4]);
/* Trace entry 0 is z0; entry i is the iterate after i even steps. */
POTTSTREE_API size_t pottstree_orbit_trace_length(const pottstree_orbit* orbit);
POTTSTREE_API pottstree_status pottstree_orbit_trace(const pottstree_orbit* orbit, size_t index,
                                                     double z[4]);

#ifdef __cplusplus
}
#endif

#endif /* POTTSTREE_H_ */
