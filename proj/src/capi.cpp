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

#include "feec/feec.h"

#include <cstring>
#include <string>

#include "feec/runner.hpp"

struct feec_mesh {
  feec::Mesh mesh;
};

namespace {

thread_local std::string g_last_error;
thread_local std::string g_last_diagnostic;
thread_local feec::Tolerances g_tolerances;

char* dup_string(const std::string& s) {
  char* out = static_cast<char*>(std::malloc(s.size() + 1));
  std::memcpy(out, s.c_str(), s.size() + 1);
  return out;
}

template <typename Fn>
feec_status guarded(Fn&& fn) {
  g_last_error.clear();
  g_last_diagnostic.clear();
  try {
    fn();
    return FEEC_OK;
  } catch (const feec::InvariantError& e) {
    g_last_error = e.what();
    g_last_diagnostic = e.diagnostic_json;
    return FEEC_ERROR_DOMAIN;
  } catch (const feec::ParseError& e) {
    g_last_error = e.what();
    return FEEC_ERROR_PARSE;
  } catch (const std::invalid_argument& e) {
    g_last_error = e.what();
    return FEEC_ERROR_USAGE;
  } catch (const std::exception& e) {
    g_last_error = e.what();
    return FEEC_ERROR_DOMAIN;
  }
}

feec_status require(bool ok, const char* message) {
  if (ok) return FEEC_OK;
  g_last_error = message;
  return FEEC_ERROR_USAGE;
}

}  // namespace

extern "C" {

feec_status feec_mesh_generate(const char* kind_spec, feec_mesh** out) {
  if (feec_status s = require(kind_spec && out, "null argument")) return s;
  return guarded([&] {
    auto handle = new feec_mesh{feec::generate_mesh(kind_spec)};
    *out = handle;
  });
}

feec_status feec_mesh_parse_json(const char* text, feec_mesh** out) {
  if (feec_status s = require(text && out, "null argument")) return s;
  return guarded([&] { *out = new feec_mesh{feec::parse_mesh_json(text)}; });
}

feec_status feec_mesh_read_file(const char* path, feec_mesh** out) {
  if (feec_status s = require(path && out, "null argument")) return s;
  return guarded([&] { *out = new feec_mesh{feec::load_mesh_file(path)}; });
}

feec_status feec_mesh_to_json(const feec_mesh* mesh, char** out_text) {
  if (feec_status s = require(mesh && out_text, "null argument")) return s;
  return guarded([&] { *out_text = dup_string(feec::mesh_to_json(mesh->mesh)); });
}

feec_status feec_mesh_subdivide(const feec_mesh* mesh, feec_mesh** out) {
  if (feec_status s = require(mesh && out, "null argument")) return s;
  return guarded([&] {
    auto sub = feec::barycentric_subdivision(mesh->mesh.complex, mesh->mesh.realization);
    *out = new feec_mesh{std::move(sub.mesh)};
  });
}

void feec_mesh_free(feec_mesh* mesh) { delete mesh; }

void feec_string_free(char* text) { std::free(text); }

const char* feec_last_error(void) { return g_last_error.c_str(); }

const char* feec_last_error_diagnostic(void) { return g_last_diagnostic.c_str(); }

feec_status feec_set_tolerance(const char* name, double value) {
  if (feec_status s = require(name != nullptr, "null argument")) return s;
  return guarded([&] { g_tolerances.set(name, value); });
}

void feec_reset_tolerances(void) { g_tolerances = feec::Tolerances{}; }

feec_status feec_check(const feec_mesh* mesh, char** report) {
  if (feec_status s = require(mesh && report, "null argument")) return s;
  return guarded([&] { *report = dup_string(feec::run_check(mesh->mesh)); });
}

feec_status feec_betti(const feec_mesh* mesh, int order, char** report) {
  if (feec_status s = require(mesh && report, "null argument")) return s;
  return guarded([&] { *report = dup_string(feec::run_betti(mesh->mesh, order)); });
}

feec_status feec_relative_betti(const feec_mesh* mesh, const char* rel, char** report) {
  if (feec_status s = require(mesh && rel && report, "null argument")) return s;
  return guarded([&] { *report = dup_string(feec::run_relative_betti(mesh->mesh, rel)); });
}

feec_status feec_mv_check(const feec_mesh* mesh, int steps, char** report) {
  if (feec_status s = require(mesh && report, "null argument")) return s;
  return guarded([&] { *report = dup_string(feec::run_mv_check(mesh->mesh, steps)); });
}

feec_status feec_wedge_check(const feec_mesh* mesh, int k, int m, int l, int n, int trials,
                             uint64_t seed, char** report) {
  if (feec_status s = require(mesh && report, "null argument")) return s;
  return guarded(
      [&] { *report = dup_string(feec::run_wedge_check(mesh->mesh, k, m, l, n, trials, seed)); });
}

feec_status feec_interpolate(const feec_mesh* mesh, const char* form_json, char** report) {
  if (feec_status s = require(mesh && form_json && report, "null argument")) return s;
  return guarded([&] { *report = dup_string(feec::run_interpolate(mesh->mesh, form_json)); });
}

feec_status feec_hodge(const feec_mesh* mesh, int degree, uint64_t seed, const char* cochain_json,
                       char** report) {
  if (feec_status s = require(mesh && report, "null argument")) return s;
  return guarded([&] {
    *report = dup_string(feec::run_hodge(mesh->mesh, degree, seed,
                                         cochain_json ? cochain_json : "", g_tolerances));
  });
}

feec_status feec_harmonic(const feec_mesh* mesh, int degree, char** report) {
  if (feec_status s = require(mesh && report, "null argument")) return s;
  return guarded([&] { *report = dup_string(feec::run_harmonic(mesh->mesh, degree, g_tolerances)); });
}

feec_status feec_poincare(const feec_mesh* mesh, int degree, int levels, char** report) {
  if (feec_status s = require(mesh && report, "null argument")) return s;
  return guarded(
      [&] { *report = dup_string(feec::run_poincare(mesh->mesh, degree, levels, g_tolerances)); });
}

feec_status feec_infsup(const feec_mesh* mesh, int degree, int levels, char** report) {
  if (feec_status s = require(mesh && report, "null argument")) return s;
  return guarded(
      [&] { *report = dup_string(feec::run_infsup(mesh->mesh, degree, levels, g_tolerances)); });
}

feec_status feec_fortin(const feec_mesh* mesh, int degree, int levels, char** report) {
  if (feec_status s = require(mesh && report, "null argument")) return s;
  return guarded(
      [&] { *report = dup_string(feec::run_fortin(mesh->mesh, degree, levels, g_tolerances)); });
}

feec_status feec_gap_study(const feec_mesh* mesh, int degree, int levels, char** report) {
  if (feec_status s = require(mesh && report, "null argument")) return s;
  return guarded(
      [&] { *report = dup_string(feec::run_gap_study(mesh->mesh, degree, levels, g_tolerances)); });
}

}  // extern "C"
