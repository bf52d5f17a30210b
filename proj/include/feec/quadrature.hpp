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

#include <vector>

#include "feec/rational.hpp"

namespace feec {

/// Grundmann-Moller symmetric simplex rule. Nodes are full barycentric
/// tuples; weights are normalized to sum to 1, so
///   integral over |T| of f dV  ~=  vol(T) * sum_q w_q f(node_q).
/// Nodes and weights are exact rationals with double mirrors.
struct QuadratureRule {
  int dim = 0;
  int exactness_degree = 0;
  std::vector<std::vector<Rational>> nodes_exact;
  std::vector<Rational> weights_exact;
  std::vector<std::vector<double>> nodes;
  std::vector<double> weights;
};

/// Rule of algebraic exactness degree 2s+1 on the dim-simplex.
QuadratureRule grundmann_moller(int dim, int s);

/// The library default (s = 5, degree 11), cached per dimension.
const QuadratureRule& simplex_quadrature(int dim);

}  // namespace feec
