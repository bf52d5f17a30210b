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

#include "feec/cohomology.hpp"

#include <algorithm>
#include <stdexcept>

namespace feec {

const QMatrix& CochainComplexView::differential(int k) const {
  static const QMatrix empty;
  if (k < 0 || k >= static_cast<int>(d.size())) {
    // shaped zero differentials are materialized on demand by callers; the
    // empty matrix suffices for rank arithmetic
    return empty;
  }
  return d[k];
}

void CochainComplexView::validate() const {
  if (d.size() + 1 != dims.size()) throw std::invalid_argument("complex: differential count mismatch");
  for (size_t k = 0; k < d.size(); ++k) {
    if (d[k].rows() != dims[k + 1] || d[k].cols() != dims[k])
      throw std::invalid_argument("complex: differential shape mismatch at degree " + std::to_string(k));
    if (k > 0 && !(d[k] * d[k - 1]).is_zero())
      throw std::invalid_argument("not a complex: d.d != 0 at degree " + std::to_string(k - 1));
  }
}

QMatrix CochainComplexView::differential_shaped(int k) const {
  if (k >= 0 && k < static_cast<int>(d.size())) return d[k];
  return QMatrix(dim_at(k + 1), dim_at(k));
}

void ComplexMorphism::validate() const {
  if (!source || !target) throw std::invalid_argument("morphism without endpoints");
  int top = std::max(source->top_degree(), target->top_degree());
  if (static_cast<int>(f.size()) != top + 1) throw std::invalid_argument("morphism length mismatch");
  for (int k = 0; k < top; ++k) {
    QMatrix lhs = f[k + 1] * source->differential_shaped(k);
    QMatrix rhs = target->differential_shaped(k) * f[k];
    if (!(lhs == rhs))
      throw std::invalid_argument("morphism does not intertwine differentials at degree " +
                                  std::to_string(k));
  }
}

std::vector<int> betti(const CochainComplexView& complex) {
  complex.validate();
  int top = complex.top_degree();
  std::vector<int> b(top + 1, 0);
  std::vector<int> rank_d(top + 1, 0);
  for (int k = 0; k < top; ++k) rank_d[k] = complex.d[k].rank();
  for (int k = 0; k <= top; ++k) {
    int ker = k < top ? complex.dims[k] - rank_d[k] : complex.dims[k];
    int im = k > 0 ? rank_d[k - 1] : 0;
    b[k] = ker - im;
    if (b[k] < 0) throw std::logic_error("negative betti number");
  }
  return b;
}

std::pair<int, int> euler_poincare(const CochainComplexView& complex) {
  auto b = betti(complex);
  int chi_dims = 0, chi_betti = 0;
  for (int k = 0; k <= complex.top_degree(); ++k) {
    int sign = k % 2 == 0 ? 1 : -1;
    chi_dims += sign * complex.dims[k];
    chi_betti += sign * b[k];
  }
  if (chi_dims != chi_betti) throw std::logic_error("Euler characteristic mismatch");
  return {chi_dims, chi_betti};
}

CochainComplexView whitney_complex(const SimplicialComplex& complex) {
  CochainComplexView view;
  view.label = "whitney";
  for (int k = 0; k <= complex.dimension(); ++k) view.dims.push_back(complex.count(k));
  for (int k = 0; k < complex.dimension(); ++k)
    view.d.push_back(coboundary_matrix(complex, k).to_rational());
  view.validate();
  return view;
}

CochainComplexView highorder_complex(const SimplicialComplex& complex, int order) {
  CochainComplexView view;
  view.label = "highorder-" + std::to_string(order);
  std::vector<HighOrderSpace> spaces;
  for (int k = 0; k <= complex.dimension(); ++k) {
    spaces.push_back(HighOrderSpace::build(complex, k, order));
    view.dims.push_back(spaces.back().dimension());
  }
  for (int k = 0; k < complex.dimension(); ++k) {
    const HighOrderSpace& src = spaces[k];
    const HighOrderSpace& dst = spaces[k + 1];
    QMatrix dk(dst.dimension(), src.dimension());
    for (int j = 0; j < src.dimension(); ++j) {
      CompatibleForm gen = src.generator_form(src.basis_generators()[j]);
      auto coeffs = dst.membership(gen.derivative());
      if (!coeffs) throw std::runtime_error("span not d-stable at degree " + std::to_string(k));
      for (int i = 0; i < dst.dimension(); ++i) dk.at(i, j) = (*coeffs)[dst.basis_generators()[i]];
    }
    view.d.push_back(std::move(dk));
  }
  view.validate();
  return view;
}

CochainComplexView relative_complex(const SimplicialComplex& complex, const SimplicialComplex& sub) {
  if (!complex.has_subcomplex(sub)) throw std::invalid_argument("relative: not a subcomplex");
  CochainComplexView view;
  view.label = "relative";
  // basis: simplices of K not in L, in canonical order per degree
  std::vector<std::vector<int>> keep(complex.dimension() + 1);
  for (int k = 0; k <= complex.dimension(); ++k) {
    for (int i = 0; i < complex.count(k); ++i)
      if (!sub.contains(complex.simplex(k, i))) keep[k].push_back(i);
    view.dims.push_back(static_cast<int>(keep[k].size()));
  }
  for (int k = 0; k < complex.dimension(); ++k) {
    QMatrix full = coboundary_matrix(complex, k).to_rational();
    QMatrix dk(view.dims[k + 1], view.dims[k]);
    for (int r = 0; r < view.dims[k + 1]; ++r)
      for (int c = 0; c < view.dims[k]; ++c) dk.at(r, c) = full.at(keep[k + 1][r], keep[k][c]);
    view.d.push_back(std::move(dk));
  }
  view.validate();
  return view;
}

CohomologyData cohomology_data(const CochainComplexView& complex) {
  complex.validate();
  int top = complex.top_degree();
  CohomologyData data;
  data.cocycles.resize(top + 1);
  data.coboundaries.resize(top + 1);
  data.representatives.resize(top + 1);
  data.betti.resize(top + 1);
  for (int k = 0; k <= top; ++k) {
    QMatrix kernel =
        k < top ? complex.d[k].kernel_basis() : QMatrix::identity(complex.dims[k]);
    QMatrix image = k > 0 ? complex.d[k - 1].column_space_basis() : QMatrix(complex.dims[k], 0);
    // complete the image basis to a kernel basis: kernel columns that add
    // new pivots to [image | kernel]
    QMatrix aug = QMatrix::hstack(image, kernel);
    std::vector<int> pivots = aug.pivot_columns();
    std::vector<int> rep_cols;
    for (int p : pivots)
      if (p >= image.cols()) rep_cols.push_back(p - image.cols());
    data.cocycles[k] = kernel;
    data.coboundaries[k] = image;
    data.representatives[k] = kernel.columns(rep_cols);
    data.betti[k] = data.representatives[k].cols();
  }
  return data;
}

std::vector<Rational> CohomologyData::class_coordinates(int degree, const QMatrix& closed_column) const {
  const QMatrix& image = coboundaries[degree];
  const QMatrix& reps = representatives[degree];
  QMatrix basis = QMatrix::hstack(image, reps);
  auto x = basis.solve(closed_column);
  if (!x) throw std::invalid_argument("class_coordinates: vector is not a cocycle");
  std::vector<Rational> coords(reps.cols());
  for (int i = 0; i < reps.cols(); ++i) coords[i] = x->at(image.cols() + i, 0);
  return coords;
}

QMatrix induced_map(const CohomologyData& src, const CohomologyData& dst,
                    const ComplexMorphism& morphism, int degree) {
  const QMatrix& reps = src.representatives[degree];
  QMatrix out(dst.representatives[degree].cols(), reps.cols());
  for (int j = 0; j < reps.cols(); ++j) {
    QMatrix mapped = morphism.f[degree] * reps.column(j);
    auto coords = dst.class_coordinates(degree, mapped);
    for (size_t i = 0; i < coords.size(); ++i) out.at(static_cast<int>(i), j) = coords[i];
  }
  return out;
}

namespace {

/// delta^k : H^k C -> H^{k+1} A by snake-lemma lifting: lift a C-cocycle
/// through g, differentiate in B, pull back through f.
QMatrix connecting_map(const CochainComplexView& a, const CochainComplexView& b,
                       const ComplexMorphism& f, const ComplexMorphism& g,
                       const CohomologyData& ha, const CohomologyData& hc, int degree) {
  int dim_src = hc.representatives.size() > static_cast<size_t>(degree)
                    ? hc.representatives[degree].cols()
                    : 0;
  int dim_dst = ha.representatives.size() > static_cast<size_t>(degree + 1)
                    ? ha.representatives[degree + 1].cols()
                    : 0;
  QMatrix out(dim_dst, dim_src);
  if (dim_src == 0 || degree + 1 > a.top_degree()) return out;
  for (int j = 0; j < dim_src; ++j) {
    QMatrix z = hc.representatives[degree].column(j);
    auto lift = g.f[degree].solve(z);
    if (!lift) throw std::logic_error("snake: surjectivity lift failed");
    QMatrix db = b.differential(degree) * *lift;
    auto pre = f.f[degree + 1].solve(db);
    if (!pre) throw std::logic_error("snake: preimage under injection failed");
    if (degree + 1 < a.top_degree() && !(a.differential(degree + 1) * *pre).is_zero())
      throw std::logic_error("snake: connecting image not closed");
    auto coords = ha.class_coordinates(degree + 1, *pre);
    for (size_t i = 0; i < coords.size(); ++i) out.at(static_cast<int>(i), j) = coords[i];
  }
  return out;
}

ExactnessCheck check_node(int degree, const std::string& node, const QMatrix& incoming,
                          const QMatrix& outgoing, int dim_node) {
  ExactnessCheck chk;
  chk.degree = degree;
  chk.node = node;
  chk.dim_node = dim_node;
  chk.rank_in = incoming.cols() == 0 || incoming.rows() == 0 ? 0 : incoming.rank();
  chk.rank_out = outgoing.cols() == 0 || outgoing.rows() == 0 ? 0 : outgoing.rank();
  bool composite_zero = true;
  if (incoming.cols() > 0 && outgoing.rows() > 0 && incoming.rows() > 0 && outgoing.cols() > 0)
    composite_zero = (outgoing * incoming).is_zero();
  chk.composite_zero = composite_zero;
  chk.ok = composite_zero && (chk.rank_in + chk.rank_out == dim_node);
  return chk;
}

}  // namespace

MayerVietorisReport mayer_vietoris_check(const SimplicialComplex& k_prime, const Simplex& t) {
  MayerVietorisReport report;
  if (k_prime.contains(t)) throw std::invalid_argument("mayer-vietoris: T already present");
  for (const auto& face : t.proper_faces())
    if (!k_prime.contains(face))
      throw std::invalid_argument("mayer-vietoris: boundary of T not contained in K'");

  // union complex and the closed simplex
  auto cells = k_prime.facet_cells();
  cells.push_back(t.vertices());
  SimplicialComplex k_union = SimplicialComplex::closure_of(cells);
  SimplicialComplex t_closed = SimplicialComplex::closure_of({t.vertices()});
  SimplicialComplex t_boundary = boundary_complex(t);

  CochainComplexView a = whitney_complex(k_union);
  CochainComplexView b_left = whitney_complex(k_prime);
  CochainComplexView b_right = whitney_complex(t_closed);
  CochainComplexView c = whitney_complex(t_boundary);

  int top = a.top_degree();
  // direct sum B = Lambda(K') x Lambda(T)
  CochainComplexView b;
  b.label = "sum";
  for (int k = 0; k <= top; ++k) {
    int dl = k <= b_left.top_degree() ? b_left.dims[k] : 0;
    int dr = k <= b_right.top_degree() ? b_right.dims[k] : 0;
    b.dims.push_back(dl + dr);
  }
  for (int k = 0; k < top; ++k) {
    QMatrix dk(b.dims[k + 1], b.dims[k]);
    int dl_rows = k + 1 <= b_left.top_degree() ? b_left.dims[k + 1] : 0;
    int dl_cols = k <= b_left.top_degree() ? b_left.dims[k] : 0;
    if (dl_rows > 0 && dl_cols > 0) {
      const QMatrix& dd = b_left.d[k];
      for (int r = 0; r < dd.rows(); ++r)
        for (int cc = 0; cc < dd.cols(); ++cc) dk.at(r, cc) = dd.at(r, cc);
    }
    if (k < b_right.top_degree()) {
      const QMatrix& dd = b_right.d[k];
      for (int r = 0; r < dd.rows(); ++r)
        for (int cc = 0; cc < dd.cols(); ++cc) dk.at(dl_rows + r, dl_cols + cc) = dd.at(r, cc);
    }
    b.d.push_back(std::move(dk));
  }
  b.validate();

  // restriction pair u -> (u|K', u|T); difference (u,v) -> u|dT - v|dT
  ComplexMorphism f{&a, &b, {}};
  ComplexMorphism g{&b, &c, {}};
  for (int k = 0; k <= top; ++k) {
    QMatrix fk(b.dims[k], a.dims[k]);
    int dl = k <= b_left.top_degree() ? b_left.dims[k] : 0;
    for (int i = 0; i < a.dims[k]; ++i) {
      const Simplex& s = k_union.simplex(k, i);
      if (int idx = k_prime.index_of(s); idx >= 0) fk.at(idx, i) = 1;
      if (int idx = t_closed.index_of(s); idx >= 0) fk.at(dl + idx, i) = 1;
    }
    f.f.push_back(std::move(fk));

    int dc = k <= c.top_degree() ? c.dims[k] : 0;
    QMatrix gk(dc, b.dims[k]);
    for (int i = 0; i < dc; ++i) {
      const Simplex& s = t_boundary.simplex(k, i);
      gk.at(i, k_prime.index_of(s)) = 1;
      gk.at(i, dl + t_closed.index_of(s)) = -1;
    }
    g.f.push_back(std::move(gk));
  }
  f.validate();
  g.validate();

  // per-degree short exactness by exact rank identities
  for (int k = 0; k <= top; ++k) {
    MayerVietorisReport::ShortCheck chk;
    chk.degree = k;
    chk.dim_a = a.dims[k];
    chk.dim_b = b.dims[k];
    chk.dim_c = k <= c.top_degree() ? c.dims[k] : 0;
    chk.rank_f = f.f[k].rank();
    chk.rank_g = chk.dim_c > 0 ? g.f[k].rank() : 0;
    chk.injective = chk.rank_f == chk.dim_a;
    bool composite_zero = chk.dim_c == 0 || (g.f[k] * f.f[k]).is_zero();
    chk.middle_exact = composite_zero && (chk.rank_f + chk.rank_g == chk.dim_b);
    chk.surjective = chk.rank_g == chk.dim_c;
    if (!(chk.injective && chk.middle_exact && chk.surjective)) {
      report.ok = false;
      if (report.detail.empty())
        report.detail = "short sequence fails at degree " + std::to_string(k);
    }
    report.short_checks.push_back(chk);
  }

  // long exact sequence
  CohomologyData ha = cohomology_data(a);
  CohomologyData hb = cohomology_data(b);
  CohomologyData hc = cohomology_data(c);
  int c_top = c.top_degree();

  std::vector<QMatrix> on_a(top + 1), on_b(top + 1), delta(top + 1);
  for (int k = 0; k <= top; ++k) {
    on_a[k] = induced_map(ha, hb, f, k);
    if (k <= c_top) {
      // induced map into C
      const QMatrix& reps = hb.representatives[k];
      QMatrix m(hc.representatives[k].cols(), reps.cols());
      for (int j = 0; j < reps.cols(); ++j) {
        auto coords = hc.class_coordinates(k, g.f[k] * reps.column(j));
        for (size_t i = 0; i < coords.size(); ++i) m.at(static_cast<int>(i), j) = coords[i];
      }
      on_b[k] = std::move(m);
    } else {
      on_b[k] = QMatrix(0, hb.betti[k]);
    }
    if (k <= c_top)
      delta[k] = connecting_map(a, b, f, g, ha, hc, k);
    else
      delta[k] = QMatrix(k + 1 <= top ? ha.betti[k + 1] : 0, 0);
  }

  // exactness at every node: H^0 A -> H^0 B -> H^0 C -> H^1 A -> ...
  for (int k = 0; k <= top; ++k) {
    QMatrix in_a = k > 0 ? delta[k - 1] : QMatrix(ha.betti[0], 0);
    auto node_a = check_node(k, "A", in_a, on_a[k], ha.betti[k]);
    report.long_checks.push_back(node_a);
    auto node_b = check_node(k, "B", on_a[k], on_b[k], hb.betti[k]);
    report.long_checks.push_back(node_b);
    if (k <= c_top) {
      auto node_c = check_node(k, "C", on_b[k], delta[k], hc.betti[k]);
      report.long_checks.push_back(node_c);
    }
  }
  for (const auto& chk : report.long_checks) {
    if (!chk.ok) {
      report.ok = false;
      if (report.detail.empty())
        report.detail = "long sequence fails at H^" + std::to_string(chk.degree) + " " + chk.node;
    }
  }
  report.betti_union = ha.betti;
  return report;
}

PolyForm simplex_exactness_witness(const PolyForm& u, int base_vertex) {
  if (u.degree() < 1) throw std::invalid_argument("witness needs degree >= 1");
  if (!u.derivative().is_zero()) throw std::invalid_argument("witness: form is not closed");
  PolyForm v = u.koszul(base_vertex);
  if (!(v.derivative() == u)) throw std::logic_error("homotopy identity violated for closed form");
  return v;
}

}  // namespace feec
