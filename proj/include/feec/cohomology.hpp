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

#include <string>
#include <vector>

#include "feec/whitney.hpp"

namespace feec {

/// A finite cochain complex presented by exact differential matrices
/// d[k] : C^k -> C^{k+1}. All rank and kernel computations are exact; there
/// are no tolerances in this module.
struct CochainComplexView {
  std::vector<int> dims;      // dim C^k for k = 0..K
  std::vector<QMatrix> d;     // size K; d[k] has shape dims[k+1] x dims[k]
  std::string label;

  int top_degree() const { return static_cast<int>(dims.size()) - 1; }
  int dim_at(int k) const { return k >= 0 && k <= top_degree() ? dims[k] : 0; }
  const QMatrix& differential(int k) const;   // empty matrix outside range
  QMatrix differential_shaped(int k) const;   // dims-shaped zero outside range
  void validate() const;                      // shapes chain and d . d == 0
};

/// Per-degree matrices intertwining two complexes (f d = d f, exactly).
struct ComplexMorphism {
  const CochainComplexView* source = nullptr;
  const CochainComplexView* target = nullptr;
  std::vector<QMatrix> f;  // size max(top_degree)+1

  void validate() const;
};

std::vector<int> betti(const CochainComplexView& complex);

/// Euler characteristic both ways: by dimensions and by betti numbers; the
/// two must agree.
std::pair<int, int> euler_poincare(const CochainComplexView& complex);

CochainComplexView whitney_complex(const SimplicialComplex& complex);

/// X^._n with differentials expressed in the pivot-generator bases; the
/// exact solve must succeed (d-stability of the span), otherwise throws.
CochainComplexView highorder_complex(const SimplicialComplex& complex, int order);

/// Quotient complex on the simplices of K not in L; L must be a subcomplex.
CochainComplexView relative_complex(const SimplicialComplex& complex, const SimplicialComplex& sub);

/// Cohomology of one complex with deterministic representative bases.
struct CohomologyData {
  // per degree: kernel basis, image basis (pivot columns of d^{k-1}), and
  // representative columns completing image to kernel
  std::vector<QMatrix> cocycles;
  std::vector<QMatrix> coboundaries;
  std::vector<QMatrix> representatives;
  std::vector<int> betti;

  /// Coordinates of a closed vector in the representative basis.
  std::vector<Rational> class_coordinates(int degree, const QMatrix& closed_column) const;
};
CohomologyData cohomology_data(const CochainComplexView& complex);

/// Matrix of the induced map on cohomology in the representative bases.
QMatrix induced_map(const CohomologyData& src, const CohomologyData& dst,
                    const ComplexMorphism& morphism, int degree);

/// The degree-raising connecting maps of a short exact sequence
/// 0 -> A -> B -> C -> 0, built by explicit snake-lemma lifting.
struct LongExactSequence {
  // node order per degree k: H^k A -> H^k B -> H^k C -> H^{k+1} A
  std::vector<QMatrix> on_a;         // H^k f
  std::vector<QMatrix> on_b;         // H^k g
  std::vector<QMatrix> connecting;   // delta^k
};

struct ExactnessCheck {
  int degree = 0;
  std::string node;  // "A", "B", "C"
  bool ok = false;
  int rank_in = 0;
  int rank_out = 0;
  int dim_node = 0;
  bool composite_zero = false;
};

struct MayerVietorisReport {
  bool ok = true;
  // per-degree short-sequence checks
  struct ShortCheck {
    int degree = 0;
    bool injective = false;
    bool middle_exact = false;
    bool surjective = false;
    int dim_a = 0, dim_b = 0, dim_c = 0;
    int rank_f = 0, rank_g = 0;
  };
  std::vector<ShortCheck> short_checks;
  std::vector<ExactnessCheck> long_checks;
  std::vector<int> betti_union;
  std::string detail;  // first failure description, empty when ok
};

/// Whitney-level Mayer-Vietoris for attaching one top simplex T to K'
/// (boundary of T already in K'): builds the three complexes and both
/// morphisms, verifies per-degree short exactness by exact rank identities,
/// constructs the snake connecting maps, and verifies exactness of the
/// assembled long sequence at every node.
MayerVietorisReport mayer_vietoris_check(const SimplicialComplex& k_prime, const Simplex& t);

/// Explicit primitive of a closed form on one simplex via the homotopy
/// operator: returns v with dv = u, exactly. Throws when du != 0.
PolyForm simplex_exactness_witness(const PolyForm& u, int base_vertex);

}  // namespace feec
