/*
 * Copyright 2026 the feec authors.
 * This file is licensed to you under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License. You may obtain a copy
 * of the License at http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software distributed under
 * the License is distributed on an "AS IS" BASIS, WITHOUT WARRANTIES OR REPRESENTATIONS
 * OF ANY KIND, either express or implied. See the License for the specific language
 * governing permissions and limitations under the License.
 */

/* C API of the feec shared library: opaque mesh handles, status codes, and
 * JSON report strings. Every returned string is heap-allocated and must be
 * released with feec_string_free. On any non-zero status, feec_last_error()
 * describes the failure (thread local); feec_last_error_diagnostic() carries
 * an optional JSON payload for invariant violations. */

#ifndef FEEC_H
#define FEEC_H

#include <stdint.h>

#ifdef __cplusplus
extern "C" {
#endif

#if defined _WIN32
#define FEEC_API __declspec(dllexport)
#else
#define FEEC_API __attribute__((visibility("default")))
#endif

typedef struct feec_mesh feec_mesh;

typedef enum feec_status {
  FEEC_OK = 0,
  FEEC_ERROR_USAGE = 1,   /* bad arguments to an API call */
  FEEC_ERROR_PARSE = 2,   /* unreadable or ill-formed input */
  FEEC_ERROR_DOMAIN = 3,  /* domain failure or invariant violation */
} feec_status;

/* --- mesh lifecycle ----------------------------------------------------- */

/* kind_spec: "simplex:3", "sphere:2", "circle:24", "torus:3,3", "book" */
FEEC_API feec_status feec_mesh_generate(const char* kind_spec, feec_mesh** out);
FEEC_API feec_status feec_mesh_parse_json(const char* text, feec_mesh** out);
FEEC_API feec_status feec_mesh_read_file(const char* path, feec_mesh** out);
FEEC_API feec_status feec_mesh_to_json(const feec_mesh* mesh, char** out_text);
FEEC_API feec_status feec_mesh_subdivide(const feec_mesh* mesh, feec_mesh** out);
FEEC_API void feec_mesh_free(feec_mesh* mesh);
FEEC_API void feec_string_free(char* text);

/* --- error reporting ---------------------------------------------------- */

FEEC_API const char* feec_last_error(void);
FEEC_API const char* feec_last_error_diagnostic(void); /* "" when absent */

/* --- tolerance overrides ------------------------------------------------ */

/* Overrides apply to subsequent calls on this thread; unknown names fail. */
FEEC_API feec_status feec_set_tolerance(const char* name, double value);
FEEC_API void feec_reset_tolerances(void);

/* --- computations (JSON reports) ---------------------------------------- */

FEEC_API feec_status feec_check(const feec_mesh* mesh, char** report);
/* order 1 is the Whitney complex; order n >= 2 uses the high-order spaces */
FEEC_API feec_status feec_betti(const feec_mesh* mesh, int order, char** report);
/* rel: "boundary" or a path to a {"cells": ...} JSON file */
FEEC_API feec_status feec_relative_betti(const feec_mesh* mesh, const char* rel, char** report);
FEEC_API feec_status feec_mv_check(const feec_mesh* mesh, int steps, char** report);
FEEC_API feec_status feec_wedge_check(const feec_mesh* mesh, int k, int m, int l, int n, int trials,
                                      uint64_t seed, char** report);
FEEC_API feec_status feec_interpolate(const feec_mesh* mesh, const char* form_json, char** report);
/* cochain_json may be NULL for a seeded random input */
FEEC_API feec_status feec_hodge(const feec_mesh* mesh, int degree, uint64_t seed,
                                const char* cochain_json, char** report);
FEEC_API feec_status feec_harmonic(const feec_mesh* mesh, int degree, char** report);
FEEC_API feec_status feec_poincare(const feec_mesh* mesh, int degree, int levels, char** report);
FEEC_API feec_status feec_infsup(const feec_mesh* mesh, int degree, int levels, char** report);
FEEC_API feec_status feec_fortin(const feec_mesh* mesh, int degree, int levels, char** report);
FEEC_API feec_status feec_gap_study(const feec_mesh* mesh, int degree, int levels, char** report);

#ifdef __cplusplus
}
#endif

#endif /* FEEC_H */
