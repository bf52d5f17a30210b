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

#include <Eigen/Dense>
#include <functional>
#include <memory>
#include <map>
#include <vector>

#include "feec/exact_matrix.hpp"
#include "feec/quadrature.hpp"
#include "feec/simplicial.hpp"

namespace feec {

/// Canonical term key of a polynomial differential form on a d-simplex:
/// monomial exponents of lambda_1..lambda_d and an increasing tuple of
/// differential positions in {1..d}. Position 0 never appears; it is
/// eliminated through lambda_0 = 1 - sum lambda_i, dlambda_0 = -sum dlambda_i
/// on entry, which makes equality of forms a map comparison.
struct TermKey {
  std::vector<uint8_t> alpha;        // size = host dim
  std::vector<uint8_t> index_tuple;  // increasing, values in 1..d, size = degree
  auto operator<=>(const TermKey&) const = default;
};

/// A raw (not yet canonical) term over positions 0..d. Used by builders;
/// index entries may include 0, repeat, or be unsorted.
struct FormTerm {
  std::vector<int> alpha;    // size d+1, exponent per position
  std::vector<int> indices;  // differential positions, any order
  Rational coefficient;
};

/// Polynomial differential form in barycentric coordinates on one simplex,
/// with exact rational coefficients in canonical normal form.
class PolyForm {
 public:
  PolyForm() = default;
  PolyForm(Simplex host, int degree);

  static PolyForm from_terms(const Simplex& host, int degree, const std::vector<FormTerm>& terms);
  static PolyForm constant(const Simplex& host, const Rational& value);
  /// Barycentric coordinate of a vertex (by global id) of the host.
  static PolyForm hat(const Simplex& host, int vertex);
  static PolyForm hat_differential(const Simplex& host, int vertex);
  /// The local component of the Whitney form of face T on this host,
  /// k! sum (-1)^i lambda_i dlambda_0 ^ ... omit i ... ^ dlambda_k.
  static PolyForm whitney(const Simplex& host, const Simplex& face);

  const Simplex& host() const { return host_; }
  int degree() const { return degree_; }
  bool is_zero() const { return terms_.empty(); }
  int polynomial_degree() const;
  const std::map<TermKey, Rational>& terms() const { return terms_; }

  PolyForm operator+(const PolyForm& rhs) const;
  PolyForm operator-(const PolyForm& rhs) const;
  PolyForm operator-() const;
  PolyForm scaled(const Rational& c) const;
  bool operator==(const PolyForm& rhs) const;

  PolyForm wedge(const PolyForm& rhs) const;
  PolyForm derivative() const;

  /// Pullback along the canonical inclusion of a face: substitute
  /// lambda_j = 0, dlambda_j = 0 for deleted vertices and re-canonicalize on
  /// the face. Commutes with d and wedge.
  PolyForm trace_to(const Simplex& face) const;

  /// Pullback along an affine map into this host. vertex_barycentric has one
  /// row per host position and one column per target position; entry (p,q)
  /// is the host barycentric coordinate lambda_p of the image of target
  /// vertex q. Columns must sum to 1.
  PolyForm pullback_onto(const Simplex& target, const QMatrix& vertex_barycentric) const;

  /// Koszul homotopy operator toward a base vertex (global id in host).
  /// Degree drops by one; A du + d A u = u for k >= 1. Throws for 0-forms.
  PolyForm koszul(int base_vertex) const;

  /// Value of a 0-form at a vertex of the host.
  Rational value_at_vertex(int vertex) const;

  /// Integral over the host of a top-degree form (degree == dim), with the
  /// increasing-vertex-order orientation. Metric-free and exact.
  Rational integrate_over_host() const;

  /// Mean value (1/vol) * integral(p dV) of a 0-form; multiply by the
  /// realized volume to integrate the density.
  Rational average_over_host() const;

  /// Exact evaluation as an alternating tensor. bary_tail holds
  /// lambda_1..lambda_d; directions is d x k, one column per argument vector
  /// expressed in the (lambda_1..lambda_d) chart.
  Rational eval(const std::vector<Rational>& bary_tail, const QMatrix& directions) const;

  /// Coefficient polynomial of one increasing tuple, evaluated at a point.
  Rational eval_component(const std::vector<Rational>& bary_tail,
                          const std::vector<uint8_t>& index_tuple) const;

 private:
  void add_term(TermKey key, const Rational& c);
  void add_general_term(const FormTerm& term);

  Simplex host_;
  int degree_ = 0;
  std::map<TermKey, Rational> terms_;
};

/// Density integral of a 0-form against the realized volume measure,
/// returned as exact combinatorial factor times float volume.
struct DensityIntegral {
  Rational factor;  // integral / volume
  double volume = 0;
  double value() const { return to_double(factor) * volume; }
};
DensityIntegral integrate_density(const PolyForm& zero_form, const AffineRealization& realization);

/// Pointwise inner product density <u,v> of two equal-degree forms on one
/// simplex: a 0-form with exact coefficients, given the inverse-metric Gram
/// matrix of the barycentric gradients.
PolyForm inner_product_density(const PolyForm& u, const PolyForm& v, const QMatrix& gradient_gram);

/// A family of per-simplex polynomial forms over a complex; missing
/// components are zero. Trace compatibility across faces is checkable
/// exactly.
class CompatibleForm {
 public:
  CompatibleForm() = default;
  CompatibleForm(const SimplicialComplex& complex, int degree);

  const SimplicialComplex& complex() const { return *complex_; }
  int degree() const { return degree_; }

  void set_component(const Simplex& simplex, PolyForm form);
  PolyForm component(const Simplex& simplex) const;
  bool has_component(const Simplex& simplex) const;
  const std::map<Simplex, PolyForm>& components() const { return components_; }

  CompatibleForm derivative() const;
  CompatibleForm wedge(const CompatibleForm& rhs) const;
  CompatibleForm operator+(const CompatibleForm& rhs) const;
  CompatibleForm operator-(const CompatibleForm& rhs) const;
  CompatibleForm scaled(const Rational& c) const;
  bool operator==(const CompatibleForm& rhs) const;

  /// Exact codim-1 trace compatibility on every stored component (trace
  /// functoriality makes codim-1 sufficient). Returns false and an
  /// explanation on the first mismatch.
  bool compatible(std::string* why = nullptr) const;

  CompatibleForm restricted_to(const SimplicialComplex& sub) const;

 private:
  const SimplicialComplex* complex_ = nullptr;
  int degree_ = 0;
  std::map<Simplex, PolyForm> components_;
};

/// A k-form given by evaluation callbacks instead of coefficients; carries
/// smooth (non-polynomial) test forms through interpolation experiments.
/// component_fn returns the alternating-tensor component
/// u(e_{i_1},...,e_{i_k}) in the simplex frame e_i = v_i - v_0, for an
/// increasing position tuple.
class EvaluableForm {
 public:
  using ComponentFn = std::function<double(const Simplex&, const std::vector<double>& barycentric,
                                           const std::vector<int>& index_tuple)>;
  /// Ambient alternating tensor: value at a point on k tangent columns.
  using AmbientFn = std::function<double(const Eigen::VectorXd& point, const Eigen::MatrixXd& tangents)>;

  EvaluableForm(const SimplicialComplex& complex, int degree, ComponentFn fn);
  static EvaluableForm from_ambient(const SimplicialComplex& complex,
                                    const AffineRealization& realization, int degree, AmbientFn fn);
  static EvaluableForm from_compatible(const CompatibleForm& form);

  const SimplicialComplex& complex() const { return *complex_; }
  int degree() const { return degree_; }

  double component(const Simplex& simplex, const std::vector<double>& barycentric,
                   const std::vector<int>& index_tuple) const;

  /// Quadrature integral over a realized simplex of dimension == degree.
  double integrate_over(const Simplex& simplex) const;

  void attach_derivative(EvaluableForm d);
  bool has_derivative() const { return static_cast<bool>(derivative_fn_); }
  EvaluableForm exterior_derivative() const;

  /// Statistical trace-compatibility check: samples points on shared
  /// codim-1 faces and compares the face component against the alternating
  /// evaluation from each coface, within tol.
  bool spot_check_compatibility(int samples_per_face, double tol, uint64_t seed) const;

 private:
  const SimplicialComplex* complex_ = nullptr;
  int degree_ = 0;
  ComponentFn fn_;
  std::shared_ptr<EvaluableForm> derivative_fn_;
};

/// Increasing k-tuples from {1..d}.
std::vector<std::vector<int>> increasing_tuples(int d, int k);

}  // namespace feec
