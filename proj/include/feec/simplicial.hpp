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
#include <string>
#include <string_view>
#include <vector>

#include "feec/exact_matrix.hpp"
#include "feec/rational.hpp"

namespace feec {

/// An abstract simplex: a strictly increasing list of vertex ids. The
/// increasing order doubles as the canonical orientation, so incidence
/// numbers are (-1)^position with no user-supplied orientation data.
class Simplex {
 public:
  Simplex() = default;
  explicit Simplex(std::vector<int> vertices);
  static Simplex from_unsorted(std::vector<int> vertices);

  int dim() const { return static_cast<int>(v_.size()) - 1; }
  int size() const { return static_cast<int>(v_.size()); }
  int vertex(int position) const { return v_[position]; }
  const std::vector<int>& vertices() const { return v_; }

  bool contains(const Simplex& face) const;
  bool contains_vertex(int vertex) const;
  std::optional<int> position_of(int vertex) const;
  Simplex face_without_position(int position) const;
  std::vector<Simplex> proper_faces() const;  // all non-empty strict subsets

  std::string key() const;  // "0-4-7"

  bool operator==(const Simplex&) const = default;
  auto operator<=>(const Simplex&) const = default;

 private:
  std::vector<int> v_;
};

/// A finite simplicial complex: for each dimension, the lexicographically
/// sorted list of simplices, closed under taking non-empty subsets.
/// Immutable after construction; index_of gives the canonical position used
/// by every matrix in the library.
class SimplicialComplex {
 public:
  SimplicialComplex() = default;

  /// Closure of the given top cells. Throws on an empty cell list or a cell
  /// with repeated vertices.
  static SimplicialComplex closure_of(const std::vector<std::vector<int>>& top_cells);

  int dimension() const { return static_cast<int>(skeleton_.size()) - 1; }
  int vertex_count() const { return vertex_count_; }
  int count(int k) const;
  int total_count() const;
  const std::vector<Simplex>& simplices(int k) const;
  const Simplex& simplex(int k, int index) const { return skeleton_[k][index]; }
  int index_of(const Simplex& s) const;  // -1 when absent
  bool contains(const Simplex& s) const { return index_of(s) >= 0; }

  /// st(T): every simplex sharing at least one vertex with T. Throws when T
  /// is not a member.
  std::vector<Simplex> star(const Simplex& t) const;
  /// All simplices having T as a face (including T itself).
  std::vector<Simplex> cofaces(const Simplex& t) const;
  /// Maximal simplices.
  const std::vector<Simplex>& facets() const { return facets_; }
  std::vector<std::vector<int>> facet_cells() const;

  bool has_subcomplex(const SimplicialComplex& sub) const;
  std::vector<int> euler_summands() const;  // counts per degree

 private:
  std::vector<std::vector<Simplex>> skeleton_;
  std::vector<Simplex> facets_;
  int vertex_count_ = 0;
};

/// Incidence number eps(T,T'): (-1)^l when T' is obtained from T by deleting
/// the vertex at position l, 0 for any other pair.
int incidence_number(const Simplex& t, const Simplex& t_prime);

/// Matrix of the exterior derivative on Whitney forms in the canonical
/// bases; rows are (k+1)-simplices, columns k-simplices.
struct IncidenceMatrix {
  int degree = 0;
  int rows = 0;
  int cols = 0;
  std::vector<int8_t> entries;  // row-major

  int8_t at(int r, int c) const { return entries[static_cast<size_t>(r) * cols + c]; }
  QMatrix to_rational() const;
  Eigen::MatrixXd to_double() const;
};

IncidenceMatrix coboundary_matrix(const SimplicialComplex& complex, int k);

/// The complex of all proper faces of T.
SimplicialComplex boundary_complex(const Simplex& t);

/// Exact rational vertex coordinates in one common ambient space.
class AffineRealization {
 public:
  AffineRealization() = default;
  AffineRealization(int ambient_dim, std::vector<std::vector<Rational>> coordinates);

  int ambient_dim() const { return ambient_dim_; }
  int vertex_count() const { return static_cast<int>(coordinates_.size()); }
  const std::vector<Rational>& coordinate(int vertex) const { return coordinates_[vertex]; }
  const std::vector<std::vector<Rational>>& coordinates() const { return coordinates_; }

  /// Every simplex must have affine span of dimension exactly dim(T);
  /// checked by exact rational rank of the edge-vector matrix. Throws on the
  /// first violation.
  void validate(const SimplicialComplex& complex) const;

  /// Columns are v_i - v_0 for i = 1..dim.
  QMatrix edge_matrix(const Simplex& t) const;
  /// Metric tensor C = E^T E of the simplex frame (exact).
  QMatrix gram(const Simplex& t) const;
  /// Inverse metric; entry (i,j) is grad(lambda_i) . grad(lambda_j) for
  /// positions 1..dim.
  QMatrix gradient_gram(const Simplex& t) const;
  double volume(const Simplex& t) const;  // sqrt(det C)/dim!
  double max_edge_length(const SimplicialComplex& complex) const;
  Eigen::VectorXd point(const Simplex& t, const std::vector<double>& barycentric) const;

 private:
  int ambient_dim_ = 0;
  std::vector<std::vector<Rational>> coordinates_;
};

struct Mesh {
  SimplicialComplex complex;
  AffineRealization realization;
};

/// Barycentric subdivision. Fine vertex j is the barycenter of
/// vertex_parent[j]; fine simplices are chains of nested parents.
struct SubdivisionResult {
  Mesh mesh;
  std::vector<Simplex> vertex_parent;
};

SubdivisionResult barycentric_subdivision(const SimplicialComplex& complex,
                                          const AffineRealization& realization);

// Built-in geometries. Coordinates are exact rationals; the circle and torus
// use root-of-unity coordinates scaled to unit edge length, rounded to 12
// decimal digits and then treated as exact.
Mesh make_simplex(int n);
Mesh make_sphere(int n);
Mesh make_circle(int segments);
Mesh make_flat_torus(int m, int n);
Mesh make_book();

/// Parses "simplex:3", "sphere:2", "circle:24", "torus:3,3"
/// (alias "flat_torus:3,3"), or "book".
Mesh generate_mesh(std::string_view kind_spec);

}  // namespace feec
