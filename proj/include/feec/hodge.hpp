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

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "feec/cohomology.hpp"

namespace feec {

/// Float tolerances of the metric layer. Every threshold used by an
/// operation or report lives here, so the CLI can override by name and
/// reports can embed the values actually used.
struct Tolerances {
  double nullspace_rel = 1e-8;        // singular values below this * sigma_max are zero
  double orthogonality_rel = 1e-9;    // pairwise Hodge-part orthogonality
  double reconstruction_rel = 1e-10;  // Hodge reconstruction residual
  double quadrature_entry = 1e-9;     // per-entry commuting-diagram tolerance (evaluable)
  double infsup_consistency = 1e-9;   // |beta_h * C_h - 1|
  double fortin_idempotence = 1e-10;  // in-space Fortin projection residual
  double poincare_band = 1.5;         // max/min Poincare constant across levels
  double gap_resolution = 1e-6;       // principal angles below sqrt(eps) scale read as zero

  std::map<std::string, double> as_map() const;
  void set(const std::string& name, double value);  // throws on unknown name
};

/// Mass matrix of the Whitney k-basis under the piecewise-flat metric of the
/// realization, with its assembly metadata.
struct MassMatrix {
  int degree = 0;
  Eigen::MatrixXd matrix;
  std::vector<double> facet_volumes;

  void check_spd(double symmetry_rel = 1e-13) const;  // throws when violated
};

/// Shared per-mesh metric data: facet geometry and lazily built mass
/// matrices and exact coboundaries.
class HodgeContext {
 public:
  HodgeContext(const SimplicialComplex& complex, const AffineRealization& realization,
               Tolerances tolerances = {});

  const SimplicialComplex& complex() const { return *complex_; }
  const AffineRealization& realization() const { return *realization_; }
  const Tolerances& tolerances() const { return tol_; }

  const MassMatrix& mass(int degree) const;
  const struct HarmonicBasis& harmonic(int degree) const;    // cached
  const Eigen::MatrixXd& coboundary(int degree) const;       // float copy
  const QMatrix& coboundary_exact(int degree) const;
  int exact_rank_d(int degree) const;                        // exact rank of d_k
  const std::vector<int>& betti() const;                     // exact

  double mass_inner(int degree, const Eigen::VectorXd& u, const Eigen::VectorXd& v) const;
  double mass_norm(int degree, const Eigen::VectorXd& u) const;

 private:
  const SimplicialComplex* complex_;
  const AffineRealization* realization_;
  Tolerances tol_;
  mutable std::map<int, MassMatrix> mass_;
  mutable std::map<int, struct HarmonicBasis> harmonic_;
  mutable std::map<int, Eigen::MatrixXd> cob_;
  mutable std::map<int, QMatrix> cob_exact_;
  mutable std::map<int, int> rank_d_;
  mutable std::optional<std::vector<int>> betti_;
};

Eigen::MatrixXd mass_matrix(const SimplicialComplex& complex, const AffineRealization& realization,
                            int degree);

/// M-orthonormal basis of the discrete harmonic space: closed cochains
/// orthogonal to every coboundary. The float nullspace dimension is
/// cross-checked against the exact betti number; disagreement throws (a
/// certified-dimension protocol rather than a silent re-threshold).
struct HarmonicBasis {
  int degree = 0;
  Eigen::MatrixXd vectors;  // columns, M-orthonormal
  int dimension() const { return static_cast<int>(vectors.cols()); }
};

/// Certified-dimension failure; carries the offending system for diagnosis.
struct HarmonicMismatchError : std::runtime_error {
  int degree = 0;
  int nullspace_dim = 0;
  int betti = 0;
  Eigen::MatrixXd stacked_system;
  Eigen::VectorXd singular_values;
  HarmonicMismatchError(int k, int got, int expected, Eigen::MatrixXd sys, Eigen::VectorXd sv)
      : std::runtime_error("harmonic/betti mismatch at degree " + std::to_string(k) + ": " +
                           std::to_string(got) + " vs " + std::to_string(expected)),
        degree(k),
        nullspace_dim(got),
        betti(expected),
        stacked_system(std::move(sys)),
        singular_values(std::move(sv)) {}
};

HarmonicBasis harmonic_basis(const HodgeContext& ctx, int degree);

/// L2-orthogonal split u = d(alpha) + h + r with h harmonic; residual r is
/// the co-exact remainder.
struct HodgeParts {
  int degree = 0;
  Eigen::VectorXd input;
  Eigen::VectorXd alpha;      // (k-1)-cochain, empty when k = 0
  Eigen::VectorXd exact;      // d(alpha)
  Eigen::VectorXd harmonic;
  Eigen::VectorXd residual;
  double norm_input = 0, norm_exact = 0, norm_harmonic = 0, norm_residual = 0;
  double reconstruction_rel = 0;  // |u - (dA + h + r)| / |u|
  double orthogonality_rel = 0;   // max pairwise |<x,y>| / |u|^2
};
HodgeParts hodge_decompose(const HodgeContext& ctx, int degree, const Eigen::VectorXd& u);

/// Best constant in |v| <= C |dv| on the M-orthogonal complement of the
/// closed cochains: 1/sqrt(lambda_min) of the projected stiffness pencil.
struct PoincareResult {
  double constant = 0;
  double lambda_min = 0;
  bool vacuous = false;  // complement is {0}
};
PoincareResult poincare_constant(const HodgeContext& ctx, int degree);

/// Smallest non-zero singular value of the mass-weighted coboundary,
/// computed independently of poincare_constant (SVD route; the exact rank of
/// d picks the cutoff). beta_h * C_h = 1 is asserted by callers as a
/// consistency identity.
double inf_sup_constant(const HodgeContext& ctx, int degree);

/// Fortin projection onto the context's space: the saddle-point system
///   <u_h, v> + <p_h, dv> = rhs1(v),  <q, d u_h> = rhs2(q)
/// with p_h ranging over the exact image basis of d.
Eigen::VectorXd fortin_solve(const HodgeContext& ctx, int degree, const Eigen::VectorXd& rhs1,
                             const Eigen::VectorXd& rhs2);
/// Same-level projection (rhs built from a cochain already in the space).
Eigen::VectorXd fortin_project(const HodgeContext& ctx, int degree, const Eigen::VectorXd& u);
/// Projection of a fine-level cochain through exact prolongation matrices
/// p_k (k-cochains) and p_k1 ((k+1)-cochains).
Eigen::VectorXd fortin_project_fine(const HodgeContext& coarse, const HodgeContext& fine,
                                    const Eigen::MatrixXd& p_k, const Eigen::MatrixXd& p_k1,
                                    int degree, const Eigen::VectorXd& u_fine);
/// Projection of an evaluable form; right-hand sides by quadrature.
Eigen::VectorXd fortin_project_evaluable(const HodgeContext& ctx, int degree,
                                         const EvaluableForm& u);

/// One refinement level of a spectral study.
struct SpectralLevel {
  double h = 0;          // max edge length
  double poincare = 0;
  double infsup = 0;
  int harmonic_dim = 0;
  double gap = 0;        // principal-angle gap to the previous level (0 at level 0)
};

struct SpectralReport {
  int degree = 0;
  std::vector<SpectralLevel> levels;
  std::map<std::string, double> thresholds;
};

/// Builds `levels` meshes by repeated barycentric subdivision, computes the
/// spectral quantities per level, and the principal-angle gap between the
/// prolonged harmonic space of each level and the next.
SpectralReport harmonic_gap_study(const Mesh& base, int levels, int degree,
                                  const Tolerances& tol = {});

/// Principal-angle gap between two subspaces given by basis columns, in the
/// M inner product: sin of the largest principal angle.
double subspace_gap(const Eigen::MatrixXd& a, const Eigen::MatrixXd& b, const Eigen::MatrixXd& m);

}  // namespace feec
