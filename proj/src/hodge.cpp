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

#include "feec/hodge.hpp"

#include <Eigen/Eigenvalues>
#include <Eigen/SVD>
#include <cmath>
#include <stdexcept>

namespace feec {

std::map<std::string, double> Tolerances::as_map() const {
  return {{"nullspace_rel", nullspace_rel},
          {"orthogonality_rel", orthogonality_rel},
          {"reconstruction_rel", reconstruction_rel},
          {"quadrature_entry", quadrature_entry},
          {"infsup_consistency", infsup_consistency},
          {"fortin_idempotence", fortin_idempotence},
          {"poincare_band", poincare_band},
          {"gap_resolution", gap_resolution}};
}

void Tolerances::set(const std::string& name, double value) {
  if (name == "nullspace_rel")
    nullspace_rel = value;
  else if (name == "orthogonality_rel")
    orthogonality_rel = value;
  else if (name == "reconstruction_rel")
    reconstruction_rel = value;
  else if (name == "quadrature_entry")
    quadrature_entry = value;
  else if (name == "infsup_consistency")
    infsup_consistency = value;
  else if (name == "fortin_idempotence")
    fortin_idempotence = value;
  else if (name == "poincare_band")
    poincare_band = value;
  else if (name == "gap_resolution")
    gap_resolution = value;
  else
    throw std::invalid_argument("unknown tolerance '" + name + "'");
}

void MassMatrix::check_spd(double symmetry_rel) const {
  double scale = matrix.cwiseAbs().maxCoeff();
  double asym = (matrix - matrix.transpose()).cwiseAbs().maxCoeff();
  if (scale > 0 && asym > symmetry_rel * scale)
    throw std::runtime_error("mass matrix asymmetry beyond tolerance");
  Eigen::LLT<Eigen::MatrixXd> llt(matrix);
  if (llt.info() != Eigen::Success)
    throw std::runtime_error("mass matrix is not positive definite");
}

Eigen::MatrixXd mass_matrix(const SimplicialComplex& complex, const AffineRealization& realization,
                            int degree) {
  const int n = complex.count(degree);
  Eigen::MatrixXd m = Eigen::MatrixXd::Zero(n, n);
  for (const auto& facet : complex.facets()) {
    const int d = facet.dim();
    if (d < degree) continue;
    double vol = realization.volume(facet);
    if (vol <= 0) throw std::runtime_error("degenerate facet " + facet.key());
    QMatrix gram = degree > 0 ? realization.gradient_gram(facet) : QMatrix(0, 0);
    // local Whitney forms of the k-faces of the facet
    auto tuples = increasing_tuples(d + 1, degree + 1);
    std::vector<PolyForm> local;
    std::vector<int> global_index;
    for (const auto& tuple : tuples) {
      std::vector<int> verts(degree + 1);
      for (int i = 0; i <= degree; ++i) verts[i] = facet.vertex(tuple[i] - 1);
      Simplex face(std::move(verts));
      local.push_back(PolyForm::whitney(facet, face));
      global_index.push_back(complex.index_of(face));
    }
    for (size_t a = 0; a < local.size(); ++a) {
      for (size_t b = a; b < local.size(); ++b) {
        PolyForm density = inner_product_density(local[a], local[b], gram);
        double value = to_double(density.average_over_host()) * vol;
        m(global_index[a], global_index[b]) += value;
        if (a != b) m(global_index[b], global_index[a]) += value;
      }
    }
  }
  return m;
}

HodgeContext::HodgeContext(const SimplicialComplex& complex, const AffineRealization& realization,
                           Tolerances tolerances)
    : complex_(&complex), realization_(&realization), tol_(tolerances) {}

const MassMatrix& HodgeContext::mass(int degree) const {
  auto it = mass_.find(degree);
  if (it == mass_.end()) {
    MassMatrix mm;
    mm.degree = degree;
    mm.matrix = mass_matrix(*complex_, *realization_, degree);
    for (const auto& facet : complex_->facets()) mm.facet_volumes.push_back(realization_->volume(facet));
    mm.check_spd();
    it = mass_.emplace(degree, std::move(mm)).first;
  }
  return it->second;
}

const Eigen::MatrixXd& HodgeContext::coboundary(int degree) const {
  auto it = cob_.find(degree);
  if (it == cob_.end())
    it = cob_.emplace(degree, coboundary_matrix(*complex_, degree).to_double()).first;
  return it->second;
}

const QMatrix& HodgeContext::coboundary_exact(int degree) const {
  auto it = cob_exact_.find(degree);
  if (it == cob_exact_.end())
    it = cob_exact_.emplace(degree, coboundary_matrix(*complex_, degree).to_rational()).first;
  return it->second;
}

int HodgeContext::exact_rank_d(int degree) const {
  auto it = rank_d_.find(degree);
  if (it == rank_d_.end()) it = rank_d_.emplace(degree, coboundary_exact(degree).rank()).first;
  return it->second;
}

const std::vector<int>& HodgeContext::betti() const {
  if (!betti_) betti_ = feec::betti(whitney_complex(*complex_));
  return *betti_;
}

double HodgeContext::mass_inner(int degree, const Eigen::VectorXd& u, const Eigen::VectorXd& v) const {
  return u.dot(mass(degree).matrix * v);
}

double HodgeContext::mass_norm(int degree, const Eigen::VectorXd& u) const {
  return std::sqrt(std::max(0.0, mass_inner(degree, u, u)));
}

namespace {

/// M-orthonormalizes columns by modified Gram-Schmidt; assumes full rank.
Eigen::MatrixXd m_orthonormalize(const Eigen::MatrixXd& basis, const Eigen::MatrixXd& m) {
  Eigen::MatrixXd q = basis;
  for (int j = 0; j < q.cols(); ++j) {
    for (int i = 0; i < j; ++i) {
      double proj = q.col(i).dot(m * q.col(j));
      q.col(j) -= proj * q.col(i);
    }
    double norm = std::sqrt(q.col(j).dot(m * q.col(j)));
    if (norm <= 0) throw std::runtime_error("orthonormalization breakdown");
    q.col(j) /= norm;
  }
  return q;
}

}  // namespace

const HarmonicBasis& HodgeContext::harmonic(int degree) const {
  auto it = harmonic_.find(degree);
  if (it == harmonic_.end()) it = harmonic_.emplace(degree, harmonic_basis(*this, degree)).first;
  return it->second;
}

HarmonicBasis harmonic_basis(const HodgeContext& ctx, int degree) {
  const SimplicialComplex& complex = ctx.complex();
  const int n = complex.count(degree);
  const int dim = complex.dimension();
  int rows_top = degree < dim ? complex.count(degree + 1) : 0;
  int rows_bot = degree > 0 ? complex.count(degree - 1) : 0;
  Eigen::MatrixXd stacked(rows_top + rows_bot, n);
  if (rows_top > 0) stacked.topRows(rows_top) = ctx.coboundary(degree);
  if (rows_bot > 0)
    stacked.bottomRows(rows_bot) = ctx.coboundary(degree - 1).transpose() * ctx.mass(degree).matrix;

  HarmonicBasis out;
  out.degree = degree;
  int expected = ctx.betti()[degree];
  if (stacked.rows() == 0) {
    // complex with a single degree: everything is harmonic
    out.vectors = m_orthonormalize(Eigen::MatrixXd::Identity(n, n), ctx.mass(degree).matrix);
    if (n != expected) throw std::runtime_error("harmonic/betti mismatch");
    return out;
  }
  Eigen::JacobiSVD<Eigen::MatrixXd> svd(stacked, Eigen::ComputeFullV);
  const auto& sv = svd.singularValues();
  double cutoff = sv.size() > 0 ? sv(0) * ctx.tolerances().nullspace_rel : 0;
  int rank = 0;
  for (int i = 0; i < sv.size(); ++i)
    if (sv(i) > cutoff) ++rank;
  int nullity = n - rank;
  if (nullity != expected) throw HarmonicMismatchError(degree, nullity, expected, stacked, sv);
  Eigen::MatrixXd kernel = svd.matrixV().rightCols(nullity);
  out.vectors = nullity > 0 ? m_orthonormalize(kernel, ctx.mass(degree).matrix)
                            : Eigen::MatrixXd(n, 0);
  return out;
}

HodgeParts hodge_decompose(const HodgeContext& ctx, int degree, const Eigen::VectorXd& u) {
  const Eigen::MatrixXd& m = ctx.mass(degree).matrix;
  HodgeParts parts;
  parts.degree = degree;
  parts.input = u;

  if (degree > 0) {
    const Eigen::MatrixXd& d_prev = ctx.coboundary(degree - 1);
    // minimize |u - d alpha|_M: weighted least squares through the M^{1/2} factor
    Eigen::LLT<Eigen::MatrixXd> llt(m);
    if (llt.info() != Eigen::Success) throw std::runtime_error("mass factorization failed");
    Eigen::MatrixXd l = llt.matrixL();
    Eigen::MatrixXd weighted = l.transpose() * d_prev;
    Eigen::VectorXd rhs = l.transpose() * u;
    parts.alpha = weighted.bdcSvd(Eigen::ComputeThinU | Eigen::ComputeThinV).solve(rhs);
    parts.exact = d_prev * parts.alpha;
  } else {
    parts.alpha = Eigen::VectorXd(0);
    parts.exact = Eigen::VectorXd::Zero(u.size());
  }

  const HarmonicBasis& hb = ctx.harmonic(degree);
  parts.harmonic = Eigen::VectorXd::Zero(u.size());
  for (int j = 0; j < hb.dimension(); ++j)
    parts.harmonic += hb.vectors.col(j).dot(m * u) * hb.vectors.col(j);
  parts.residual = u - parts.exact - parts.harmonic;

  auto norm = [&](const Eigen::VectorXd& x) { return std::sqrt(std::max(0.0, x.dot(m * x))); };
  parts.norm_input = norm(u);
  parts.norm_exact = norm(parts.exact);
  parts.norm_harmonic = norm(parts.harmonic);
  parts.norm_residual = norm(parts.residual);
  Eigen::VectorXd recon = parts.exact + parts.harmonic + parts.residual;
  double denom = parts.norm_input > 0 ? parts.norm_input : 1;
  parts.reconstruction_rel = norm(u - recon) / denom;
  double denom2 = denom * denom;
  double o1 = std::abs(parts.exact.dot(m * parts.harmonic));
  double o2 = std::abs(parts.exact.dot(m * parts.residual));
  double o3 = std::abs(parts.harmonic.dot(m * parts.residual));
  parts.orthogonality_rel = std::max({o1, o2, o3}) / denom2;
  return parts;
}

namespace {

/// Orthonormal basis (Euclidean) of the M-orthogonal complement of ker d_k,
/// from the exact rational kernel basis.
Eigen::MatrixXd complement_basis(const HodgeContext& ctx, int degree, int* kernel_dim) {
  const QMatrix kernel = ctx.coboundary_exact(degree).kernel_basis();
  *kernel_dim = kernel.cols();
  const int n = ctx.complex().count(degree);
  if (kernel.cols() == 0) return Eigen::MatrixXd::Identity(n, n);
  Eigen::MatrixXd w = (ctx.mass(degree).matrix * kernel.to_double()).transpose();  // z x n
  Eigen::JacobiSVD<Eigen::MatrixXd> svd(w, Eigen::ComputeFullV);
  return svd.matrixV().rightCols(n - kernel.cols());
}

}  // namespace

PoincareResult poincare_constant(const HodgeContext& ctx, int degree) {
  if (degree >= ctx.complex().dimension())
    throw std::invalid_argument("poincare constant needs degree < dimension");
  PoincareResult res;
  int kernel_dim = 0;
  Eigen::MatrixXd q = complement_basis(ctx, degree, &kernel_dim);
  if (q.cols() == 0) {
    res.vacuous = true;
    return res;
  }
  const Eigen::MatrixXd& d = ctx.coboundary(degree);
  Eigen::MatrixXd stiff = d.transpose() * ctx.mass(degree + 1).matrix * d;
  Eigen::MatrixXd a = q.transpose() * stiff * q;
  Eigen::MatrixXd b = q.transpose() * ctx.mass(degree).matrix * q;
  Eigen::GeneralizedSelfAdjointEigenSolver<Eigen::MatrixXd> solver(a, b);
  if (solver.info() != Eigen::Success) throw std::runtime_error("generalized eigensolve failed");
  res.lambda_min = solver.eigenvalues()(0);
  if (res.lambda_min <= 0)
    throw std::runtime_error("non-positive eigenvalue on the complement of ker d");
  res.constant = 1.0 / std::sqrt(res.lambda_min);
  return res;
}

double inf_sup_constant(const HodgeContext& ctx, int degree) {
  if (degree >= ctx.complex().dimension())
    throw std::invalid_argument("inf-sup constant needs degree < dimension");
  int rank = ctx.exact_rank_d(degree);
  if (rank == 0) return 0;
  // B = M_{k+1}^{1/2} D M_k^{-1/2}; smallest singular value on range(D),
  // cut off by the exact rank
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> ek(ctx.mass(degree).matrix);
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> ek1(ctx.mass(degree + 1).matrix);
  if (ek.info() != Eigen::Success || ek1.info() != Eigen::Success)
    throw std::runtime_error("mass eigendecomposition failed");
  Eigen::VectorXd inv_sqrt_k = ek.eigenvalues().cwiseMax(0.0).cwiseSqrt().cwiseInverse();
  Eigen::VectorXd sqrt_k1 = ek1.eigenvalues().cwiseMax(0.0).cwiseSqrt();
  Eigen::MatrixXd m_inv_sqrt =
      ek.eigenvectors() * inv_sqrt_k.asDiagonal() * ek.eigenvectors().transpose();
  Eigen::MatrixXd m_sqrt =
      ek1.eigenvectors() * sqrt_k1.asDiagonal() * ek1.eigenvectors().transpose();
  Eigen::MatrixXd weighted = m_sqrt * ctx.coboundary(degree) * m_inv_sqrt;
  Eigen::JacobiSVD<Eigen::MatrixXd> svd(weighted);
  return svd.singularValues()(rank - 1);
}

Eigen::VectorXd fortin_solve(const HodgeContext& ctx, int degree, const Eigen::VectorXd& rhs1,
                             const Eigen::VectorXd& rhs2) {
  const Eigen::MatrixXd& m = ctx.mass(degree).matrix;
  const Eigen::MatrixXd& d = ctx.coboundary(degree);
  Eigen::MatrixXd image_basis = ctx.coboundary_exact(degree).column_space_basis().to_double();
  const int n = static_cast<int>(m.rows());
  const int p = static_cast<int>(image_basis.cols());
  Eigen::MatrixXd constraint = image_basis.transpose() * ctx.mass(degree + 1).matrix * d;  // p x n
  Eigen::MatrixXd sys = Eigen::MatrixXd::Zero(n + p, n + p);
  sys.topLeftCorner(n, n) = m;
  sys.topRightCorner(n, p) = constraint.transpose();
  sys.bottomLeftCorner(p, n) = constraint;
  Eigen::VectorXd rhs(n + p);
  rhs.head(n) = rhs1;
  rhs.tail(p) = rhs2;
  Eigen::PartialPivLU<Eigen::MatrixXd> lu(sys);
  Eigen::VectorXd sol = lu.solve(rhs);
  double residual = (sys * sol - rhs).norm();
  double scale = rhs.norm() > 0 ? rhs.norm() : 1;
  if (!(residual / scale < 1e-8)) throw std::runtime_error("singular Fortin saddle system");
  return sol.head(n);
}

Eigen::VectorXd fortin_project(const HodgeContext& ctx, int degree, const Eigen::VectorXd& u) {
  Eigen::MatrixXd image_basis = ctx.coboundary_exact(degree).column_space_basis().to_double();
  Eigen::VectorXd rhs1 = ctx.mass(degree).matrix * u;
  Eigen::VectorXd rhs2 =
      image_basis.transpose() * ctx.mass(degree + 1).matrix * (ctx.coboundary(degree) * u);
  return fortin_solve(ctx, degree, rhs1, rhs2);
}

Eigen::VectorXd fortin_project_fine(const HodgeContext& coarse, const HodgeContext& fine,
                                    const Eigen::MatrixXd& p_k, const Eigen::MatrixXd& p_k1,
                                    int degree, const Eigen::VectorXd& u_fine) {
  Eigen::MatrixXd image_basis = coarse.coboundary_exact(degree).column_space_basis().to_double();
  Eigen::VectorXd rhs1 = p_k.transpose() * (fine.mass(degree).matrix * u_fine);
  Eigen::VectorXd du_fine = fine.coboundary(degree) * u_fine;
  Eigen::VectorXd rhs2 =
      image_basis.transpose() * (p_k1.transpose() * (fine.mass(degree + 1).matrix * du_fine));
  return fortin_solve(coarse, degree, rhs1, rhs2);
}

Eigen::VectorXd fortin_project_evaluable(const HodgeContext& ctx, int degree,
                                         const EvaluableForm& u) {
  const SimplicialComplex& complex = ctx.complex();
  const AffineRealization& real = ctx.realization();
  EvaluableForm du = u.exterior_derivative();

  // <u, lambda_T> over facets by quadrature against the metric pairing
  auto pair_with_whitney = [&](const EvaluableForm& w, int deg) {
    Eigen::VectorXd rhs = Eigen::VectorXd::Zero(complex.count(deg));
    for (const auto& facet : complex.facets()) {
      const int d = facet.dim();
      if (d < deg) continue;
      double vol = real.volume(facet);
      QMatrix gram = deg > 0 ? real.gradient_gram(facet) : QMatrix(0, 0);
      Eigen::MatrixXd gram_d = deg > 0 ? gram.to_double() : Eigen::MatrixXd(0, 0);
      const QuadratureRule& rule = simplex_quadrature(d);
      auto tuples = increasing_tuples(d, deg);
      // det of the inverse-metric minor per tuple pair
      auto minor_det = [&](const std::vector<int>& ti, const std::vector<int>& tj) {
        if (deg == 0) return 1.0;
        Eigen::MatrixXd mm(deg, deg);
        for (int r = 0; r < deg; ++r)
          for (int c = 0; c < deg; ++c) mm(r, c) = gram_d(ti[r] - 1, tj[c] - 1);
        return mm.determinant();
      };
      for (const auto& face_tuple : increasing_tuples(d + 1, deg + 1)) {
        std::vector<int> verts(deg + 1);
        for (int i = 0; i <= deg; ++i) verts[i] = facet.vertex(face_tuple[i] - 1);
        Simplex face(std::move(verts));
        int gidx = complex.index_of(face);
        PolyForm whit = PolyForm::whitney(facet, face);
        double acc = 0;
        for (size_t q = 0; q < rule.nodes.size(); ++q) {
          std::vector<Rational> tail(d);
          for (int i = 0; i < d; ++i) tail[i] = rule.nodes_exact[q][i + 1];
          for (const auto& ti : tuples) {
            double uv = w.component(facet, rule.nodes[q], ti);
            if (uv == 0) continue;
            for (const auto& tj : tuples) {
              double g = minor_det(ti, tj);
              if (g == 0) continue;
              std::vector<uint8_t> tj8(tj.begin(), tj.end());
              acc += rule.weights[q] * uv * g * to_double(whit.eval_component(tail, tj8));
            }
          }
        }
        rhs[gidx] += acc * vol;
      }
    }
    return rhs;
  };

  Eigen::MatrixXd image_basis = ctx.coboundary_exact(degree).column_space_basis().to_double();
  Eigen::VectorXd rhs1 = pair_with_whitney(u, degree);
  Eigen::VectorXd rhs2 = image_basis.transpose() * pair_with_whitney(du, degree + 1);
  return fortin_solve(ctx, degree, rhs1, rhs2);
}

double subspace_gap(const Eigen::MatrixXd& a, const Eigen::MatrixXd& b, const Eigen::MatrixXd& m) {
  if (a.cols() == 0 && b.cols() == 0) return 0;
  if (a.cols() != b.cols()) return 1;
  Eigen::MatrixXd qa = m_orthonormalize(a, m);
  Eigen::MatrixXd qb = m_orthonormalize(b, m);
  Eigen::MatrixXd cosines = qa.transpose() * m * qb;
  Eigen::JacobiSVD<Eigen::MatrixXd> svd(cosines);
  double cmin = svd.singularValues()(svd.singularValues().size() - 1);
  cmin = std::min(1.0, std::max(-1.0, cmin));
  return std::sqrt(std::max(0.0, 1.0 - cmin * cmin));
}

SpectralReport harmonic_gap_study(const Mesh& base, int levels, int degree, const Tolerances& tol) {
  if (levels < 1) throw std::invalid_argument("gap study needs at least one level");
  SpectralReport report;
  report.degree = degree;
  report.thresholds = tol.as_map();

  std::vector<Mesh> meshes;
  std::vector<QMatrix> prolongations;  // level j-1 -> j
  meshes.push_back(base);
  for (int j = 1; j < levels; ++j) {
    SubdivisionResult sub = barycentric_subdivision(meshes.back().complex, meshes.back().realization);
    prolongations.push_back(subdivision_prolongation(meshes.back().complex, sub, degree));
    meshes.push_back(std::move(sub.mesh));
  }

  Eigen::MatrixXd previous_harmonic;  // prolonged to the current level
  for (int j = 0; j < levels; ++j) {
    HodgeContext ctx(meshes[j].complex, meshes[j].realization, tol);
    SpectralLevel level;
    level.h = meshes[j].realization.max_edge_length(meshes[j].complex);
    const HarmonicBasis& hb = ctx.harmonic(degree);
    level.harmonic_dim = hb.dimension();
    if (degree < meshes[j].complex.dimension()) {
      PoincareResult pc = poincare_constant(ctx, degree);
      level.poincare = pc.constant;
      level.infsup = pc.vacuous ? 0 : inf_sup_constant(ctx, degree);
    }
    if (j > 0)
      level.gap = subspace_gap(previous_harmonic, hb.vectors, ctx.mass(degree).matrix);
    if (j + 1 < levels)
      previous_harmonic = prolongations[j].to_double() * hb.vectors;
    report.levels.push_back(level);
  }
  return report;
}

}  // namespace feec
