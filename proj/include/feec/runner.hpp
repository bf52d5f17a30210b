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

#pragma once

#include <optional>
#include <random>
#include <string>

#include "feec/hodge.hpp"
#include "feec/io.hpp"

namespace feec {

/// Domain failures that carry a diagnostic payload (matrices and
/// dimensions); the CLI dumps the payload to a sidecar file.
struct InvariantError : std::runtime_error {
  std::string diagnostic_json;
  InvariantError(const std::string& message, std::string diagnostic)
      : std::runtime_error(message), diagnostic_json(std::move(diagnostic)) {}
};

/// Deterministic generator of report randomness: explicitly specified
/// engine, no distribution library involved.
struct ReportRng {
  std::mt19937_64 engine;
  explicit ReportRng(uint64_t seed) : engine(seed) {}
  uint64_t next() { return engine(); }
  double next_unit() {  // in [-1, 1)
    return static_cast<double>(next() >> 11) / 9007199254740992.0 * 2.0 - 1.0;
  }
  Rational next_small_rational() {
    int num = static_cast<int>(next() % 19) - 9;
    int den = static_cast<int>(next() % 9) + 1;
    Rational q(num, den);
    q.canonicalize();
    return q;
  }
};

// Each run_* computes one subcommand's report and returns its JSON text.
std::string run_check(const Mesh& mesh);
std::string run_betti(const Mesh& mesh, int order = 1);
std::string run_relative_betti(const Mesh& mesh, const std::string& rel_spec);
std::string run_mv_check(const Mesh& mesh, int steps);
std::string run_wedge_check(const Mesh& mesh, int k, int m, int l, int n, int trials, uint64_t seed);
std::string run_interpolate(const Mesh& mesh, const std::string& form_json);
std::string run_hodge(const Mesh& mesh, int degree, uint64_t seed, const std::string& cochain_json,
                      const Tolerances& tol);
std::string run_harmonic(const Mesh& mesh, int degree, const Tolerances& tol);
std::string run_poincare(const Mesh& mesh, int degree, int levels, const Tolerances& tol);
std::string run_infsup(const Mesh& mesh, int degree, int levels, const Tolerances& tol);
std::string run_fortin(const Mesh& mesh, int degree, int levels, const Tolerances& tol);
std::string run_gap_study(const Mesh& mesh, int degree, int levels, const Tolerances& tol);

/// Parses {"cells": [[...], ...]} with ids referring to the host mesh.
SimplicialComplex parse_subcomplex_cells(const std::string& text);

/// The mesh boundary: closure of the codimension-1 faces incident to exactly
/// one top-dimensional simplex. Empty optional when the complex is closed.
std::optional<SimplicialComplex> boundary_subcomplex(const SimplicialComplex& complex);

}  // namespace feec
