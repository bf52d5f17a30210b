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

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "feec/polyform.hpp"

namespace feec {

/// Coefficient vector over the canonical k-simplex basis. Values are exact
/// rationals; float-born data (quadrature interpolation, file input written
/// as numbers) is converted exactly and tagged.
struct Cochain {
  int degree = 0;
  std::vector<Rational> values;
  bool float_tagged = false;

  Eigen::VectorXd to_double() const;
  static Cochain from_double(int degree, const Eigen::VectorXd& v);
  static Cochain indicator(const SimplicialComplex& complex, const Simplex& t);
  bool operator==(const Cochain&) const = default;
};

/// The Whitney form of T as a compatible family: the defining alternating
/// sum on every simplex containing T, zero elsewhere.
CompatibleForm whitney_form(const SimplicialComplex& complex, const Simplex& t);

/// sum_T c_T lambda_T as a compatible family (components on every simplex).
CompatibleForm cochain_to_form(const SimplicialComplex& complex, const Cochain& c);

/// Degree of freedom mu_T: the exact integral of the T-component over |T|
/// with the increasing-order orientation; metric-free.
Rational dof(const CompatibleForm& u, const Simplex& t);
double dof(const EvaluableForm& u, const Simplex& t);

Cochain interpolate(const SimplicialComplex& complex, const CompatibleForm& u);
Cochain interpolate(const SimplicialComplex& complex, const EvaluableForm& u);

/// Exact prolongation of k-cochains from a complex to its barycentric
/// subdivision (Whitney spaces are nested under subdivision). Column T holds
/// the fine degrees of freedom of the coarse basis form lambda_T.
QMatrix subdivision_prolongation(const SimplicialComplex& coarse, const SubdivisionResult& fine,
                                 int degree);

/// Pullback of a coarse local component onto one fine simplex (exact); used
/// by the prolongation and by nestedness checks.
PolyForm restrict_to_fine_simplex(const PolyForm& coarse_local, const Simplex& coarse_host,
                                  const Simplex& fine_simplex,
                                  const std::vector<Simplex>& vertex_parent);

/// The high-order space X^k_n: span of (n-1)-fold products of hat functions
/// with Whitney k-forms (products of n hats for k = 0), with an exact
/// rational coefficient frame over the facets for rank and membership
/// computations.
class HighOrderSpace {
 public:
  struct Generator {
    std::vector<int> hats;  // sorted vertex ids, possibly repeated
    Simplex base;           // k-simplex (ignored for k = 0 spaces, dim -1 sentinel)
  };

  static HighOrderSpace build(const SimplicialComplex& complex, int degree, int order);

  const SimplicialComplex& complex() const { return *complex_; }
  int degree() const { return degree_; }
  int order() const { return order_; }
  int dimension() const { return dimension_; }
  const std::vector<Generator>& generators() const { return generators_; }
  const std::vector<int>& basis_generators() const { return basis_; }

  /// One generator, materialized at build time (components on facets only;
  /// traces determine the rest).
  const CompatibleForm& generator_form(int index) const { return generator_forms_[index]; }
  CompatibleForm element_from_coefficients(const std::vector<Rational>& coefficients) const;

  /// Exact membership: coefficients over the generator list (free
  /// coefficients zero, so basis generators carry the representation), or
  /// nullopt for NOT_IN_SPAN.
  std::optional<std::vector<Rational>> membership(const CompatibleForm& u) const;

 private:
  const SimplicialComplex* complex_ = nullptr;
  int degree_ = 0;
  int order_ = 0;
  int dimension_ = 0;
  std::vector<Generator> generators_;
  std::vector<CompatibleForm> generator_forms_;
  std::vector<int> basis_;
  // facet-component term frame and the eliminated span matrix
  std::map<std::pair<int, TermKey>, int> frame_index_;
  QEchelon factorization_;
  int frame_rows_ = 0;

  CompatibleForm materialize(int index) const;
  std::optional<QMatrix> vectorize(const CompatibleForm& u) const;
  friend struct HighOrderSpaceTestAccess;
};

struct WedgeClosureFailure {
  int trial = 0;
  std::vector<std::string> left_coefficients;
  std::vector<std::string> right_coefficients;
};

struct WedgeClosureReport {
  int degree_left = 0, order_left = 0;
  int degree_right = 0, order_right = 0;
  int trials = 0;
  uint64_t seed = 0;
  bool all_members = true;
  bool bracket_identity_ok = true;
  std::vector<WedgeClosureFailure> failures;
};

/// Random elements of X^k_m and X^l_n are wedged and tested for membership
/// in X^{k+l}_{m+n}; also checks the graded product identity for brackets of
/// random affine families on each facet.
WedgeClosureReport verify_wedge_closure(const SimplicialComplex& complex, int k, int m, int l, int n,
                                        int trials, uint64_t seed);

}  // namespace feec
