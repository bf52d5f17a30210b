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

#include "feec/whitney.hpp"

#include <algorithm>
#include <map>
#include <random>
#include <set>
#include <stdexcept>

namespace feec {

Eigen::VectorXd Cochain::to_double() const {
  Eigen::VectorXd v(values.size());
  for (size_t i = 0; i < values.size(); ++i) v[static_cast<long>(i)] = feec::to_double(values[i]);
  return v;
}

Cochain Cochain::from_double(int degree, const Eigen::VectorXd& v) {
  Cochain c;
  c.degree = degree;
  c.float_tagged = true;
  c.values.resize(v.size());
  for (long i = 0; i < v.size(); ++i) c.values[static_cast<size_t>(i)] = rational_from_double(v[i]);
  return c;
}

Cochain Cochain::indicator(const SimplicialComplex& complex, const Simplex& t) {
  int idx = complex.index_of(t);
  if (idx < 0) throw std::invalid_argument("indicator: simplex not in complex");
  Cochain c;
  c.degree = t.dim();
  c.values.assign(complex.count(t.dim()), Rational(0));
  c.values[idx] = 1;
  return c;
}

CompatibleForm cochain_to_form(const SimplicialComplex& complex, const Cochain& c) {
  const int k = c.degree;
  if (static_cast<int>(c.values.size()) != complex.count(k))
    throw std::invalid_argument("cochain length mismatch");
  CompatibleForm out(complex, k);
  for (int dim = k; dim <= complex.dimension(); ++dim) {
    for (const auto& s : complex.simplices(dim)) {
      PolyForm local(s, k);
      // sum over the k-faces of s with non-zero coefficient
      for (const auto& tuple : increasing_tuples(dim + 1, k + 1)) {
        std::vector<int> verts(k + 1);
        for (int i = 0; i <= k; ++i) verts[i] = s.vertex(tuple[i] - 1);
        Simplex face(std::move(verts));
        int idx = complex.index_of(face);
        const Rational& coef = c.values[idx];
        if (coef == 0) continue;
        local = local + PolyForm::whitney(s, face).scaled(coef);
      }
      out.set_component(s, std::move(local));
    }
  }
  return out;
}

CompatibleForm whitney_form(const SimplicialComplex& complex, const Simplex& t) {
  return cochain_to_form(complex, Cochain::indicator(complex, t));
}

Rational dof(const CompatibleForm& u, const Simplex& t) {
  if (t.dim() != u.degree()) throw std::invalid_argument("dof: degree must equal dim T");
  return u.component(t).integrate_over_host();
}

double dof(const EvaluableForm& u, const Simplex& t) {
  if (t.dim() != u.degree()) throw std::invalid_argument("dof: degree must equal dim T");
  return u.integrate_over(t);
}

Cochain interpolate(const SimplicialComplex& complex, const CompatibleForm& u) {
  const int k = u.degree();
  if (k < 0 || k > complex.dimension()) throw std::invalid_argument("interpolate: degree out of range");
  Cochain c;
  c.degree = k;
  c.values.reserve(complex.count(k));
  for (const auto& t : complex.simplices(k)) c.values.push_back(dof(u, t));
  return c;
}

Cochain interpolate(const SimplicialComplex& complex, const EvaluableForm& u) {
  const int k = u.degree();
  if (k < 0 || k > complex.dimension()) throw std::invalid_argument("interpolate: degree out of range");
  Eigen::VectorXd v(complex.count(k));
  for (int i = 0; i < complex.count(k); ++i) v[i] = dof(u, complex.simplex(k, i));
  return Cochain::from_double(k, v);
}

PolyForm restrict_to_fine_simplex(const PolyForm& coarse_local, const Simplex& coarse_host,
                                  const Simplex& fine_simplex,
                                  const std::vector<Simplex>& vertex_parent) {
  // barycentric coordinates of the fine vertices inside the coarse host:
  // a barycenter of a face S spreads 1/|S| over the positions of S
  QMatrix b(coarse_host.dim() + 1, fine_simplex.dim() + 1);
  for (int q = 0; q < fine_simplex.size(); ++q) {
    const Simplex& parent = vertex_parent[fine_simplex.vertex(q)];
    if (!coarse_host.contains(parent))
      throw std::invalid_argument("fine simplex does not sit inside the coarse host");
    Rational w(1, parent.size());
    w.canonicalize();
    for (int v : parent.vertices()) b.at(*coarse_host.position_of(v), q) = w;
  }
  return coarse_local.pullback_onto(fine_simplex, b);
}

QMatrix subdivision_prolongation(const SimplicialComplex& coarse, const SubdivisionResult& fine,
                                 int degree) {
  const SimplicialComplex& fc = fine.mesh.complex;
  QMatrix p(fc.count(degree), coarse.count(degree));
  // walk the fine simplices once; only the k-faces of the hosting coarse
  // simplex contribute (lambda_T vanishes outside its cofaces)
  for (int row = 0; row < fc.count(degree); ++row) {
    const Simplex& ft = fc.simplex(degree, row);
    const Simplex* host = &fine.vertex_parent[ft.vertex(0)];
    for (int q = 1; q < ft.size(); ++q) {
      const Simplex& cand = fine.vertex_parent[ft.vertex(q)];
      if (cand.dim() > host->dim()) host = &cand;
    }
    for (const auto& tuple : increasing_tuples(host->dim() + 1, degree + 1)) {
      std::vector<int> verts(degree + 1);
      for (int i = 0; i <= degree; ++i) verts[i] = host->vertex(tuple[i] - 1);
      Simplex coarse_face(std::move(verts));
      int col = coarse.index_of(coarse_face);
      PolyForm local = restrict_to_fine_simplex(PolyForm::whitney(*host, coarse_face), *host, ft,
                                                fine.vertex_parent);
      p.at(row, col) = local.integrate_over_host();
    }
  }
  return p;
}

HighOrderSpace HighOrderSpace::build(const SimplicialComplex& complex, int degree, int order) {
  if (order < 1) throw std::invalid_argument("high-order space needs order >= 1");
  if (degree < 0 || degree > complex.dimension())
    throw std::invalid_argument("high-order space degree out of range");
  HighOrderSpace space;
  space.complex_ = &complex;
  space.degree_ = degree;
  space.order_ = order;

  // tuples of hats per facet; only tuples spanning a simplex together with
  // the base give non-zero products
  const int hat_count = degree == 0 ? order : order - 1;
  std::set<std::pair<std::vector<int>, Simplex>> seen;
  Simplex sentinel({0});
  for (const auto& facet : complex.facets()) {
    if (facet.dim() < degree) continue;
    std::vector<std::vector<int>> tuples;  // sorted, with repetition
    std::vector<int> current;
    const auto& verts = facet.vertices();
    std::function<void(size_t, int)> rec = [&](size_t start, int remaining) {
      if (remaining == 0) {
        tuples.push_back(current);
        return;
      }
      for (size_t i = start; i < verts.size(); ++i) {
        current.push_back(verts[i]);
        rec(i, remaining - 1);
        current.pop_back();
      }
    };
    rec(0, hat_count);
    if (degree == 0) {
      for (auto& tup : tuples)
        if (seen.emplace(tup, sentinel).second)
          space.generators_.push_back({tup, sentinel});
    } else {
      for (const auto& base_tuple : increasing_tuples(facet.dim() + 1, degree + 1)) {
        std::vector<int> base_verts(degree + 1);
        for (int i = 0; i <= degree; ++i) base_verts[i] = facet.vertex(base_tuple[i] - 1);
        Simplex base(std::move(base_verts));
        for (auto& tup : tuples)
          if (seen.emplace(tup, base).second) space.generators_.push_back({tup, base});
      }
    }
  }

  // canonical generator order: base simplex first, then the hat tuple; for
  // order one this is exactly the T^k enumeration
  std::sort(space.generators_.begin(), space.generators_.end(),
            [](const Generator& a, const Generator& b) {
              if (a.base != b.base) return a.base < b.base;
              return a.hats < b.hats;
            });

  // term frame over facets
  std::map<std::pair<int, TermKey>, int> frame_index;
  std::vector<QMatrix> columns;
  std::vector<std::map<std::pair<int, TermKey>, Rational>> gen_terms(space.generators_.size());
  for (size_t g = 0; g < space.generators_.size(); ++g) {
    space.generator_forms_.push_back(space.materialize(static_cast<int>(g)));
    const CompatibleForm& f = space.generator_forms_.back();
    for (const auto& [s, local] : f.components()) {
      int facet_idx = -1;
      for (size_t fi = 0; fi < complex.facets().size(); ++fi)
        if (complex.facets()[fi] == s) {
          facet_idx = static_cast<int>(fi);
          break;
        }
      for (const auto& [key, c] : local.terms()) {
        auto fk = std::make_pair(facet_idx, key);
        gen_terms[g][fk] = c;
        frame_index.emplace(fk, 0);
      }
    }
  }
  int row = 0;
  for (auto& [key, idx] : frame_index) idx = row++;
  space.frame_rows_ = row;
  space.frame_index_ = frame_index;

  QMatrix span(row, static_cast<int>(space.generators_.size()));
  for (size_t g = 0; g < space.generators_.size(); ++g)
    for (const auto& [fk, c] : gen_terms[g]) span.at(frame_index.at(fk), static_cast<int>(g)) = c;
  space.factorization_ = span.reduced_echelon(true);
  space.dimension_ = space.factorization_.rank;
  space.basis_ = space.factorization_.pivot_cols;
  return space;
}

CompatibleForm HighOrderSpace::materialize(int index) const {
  const Generator& gen = generators_[index];
  CompatibleForm out(*complex_, degree_);
  for (const auto& facet : complex_->facets()) {
    if (facet.dim() < degree_) continue;
    bool live = degree_ == 0 || facet.contains(gen.base);
    for (int v : gen.hats)
      if (!facet.contains_vertex(v)) live = false;
    if (!live) continue;
    PolyForm local = degree_ == 0 ? PolyForm::constant(facet, Rational(1))
                                  : PolyForm::whitney(facet, gen.base);
    for (int v : gen.hats) local = local.wedge(PolyForm::hat(facet, v));
    out.set_component(facet, std::move(local));
  }
  return out;
}

CompatibleForm HighOrderSpace::element_from_coefficients(const std::vector<Rational>& coefficients) const {
  if (coefficients.size() != generators_.size())
    throw std::invalid_argument("coefficient count mismatch");
  CompatibleForm out(*complex_, degree_);
  for (size_t g = 0; g < coefficients.size(); ++g) {
    if (coefficients[g] == 0) continue;
    out = out + generator_forms_[g].scaled(coefficients[g]);
  }
  return out;
}

std::optional<QMatrix> HighOrderSpace::vectorize(const CompatibleForm& u) const {
  QMatrix b(frame_rows_, 1);
  for (size_t fi = 0; fi < complex_->facets().size(); ++fi) {
    const Simplex& facet = complex_->facets()[fi];
    if (facet.dim() < degree_) continue;
    PolyForm local = u.component(facet);
    for (const auto& [key, c] : local.terms()) {
      auto it = frame_index_.find({static_cast<int>(fi), key});
      if (it == frame_index_.end()) return std::nullopt;  // term outside the span's frame
      b.at(it->second, 0) = c;
    }
  }
  return b;
}

std::optional<std::vector<Rational>> HighOrderSpace::membership(const CompatibleForm& u) const {
  if (u.degree() != degree_) throw std::invalid_argument("membership degree mismatch");
  auto b = vectorize(u);
  if (!b) return std::nullopt;
  QMatrix t = factorization_.transform * *b;
  for (int r = dimension_; r < frame_rows_; ++r)
    if (t.at(r, 0) != 0) return std::nullopt;
  std::vector<Rational> x(generators_.size(), Rational(0));
  for (int i = 0; i < dimension_; ++i) x[basis_[i]] = t.at(i, 0);
  return x;
}

namespace {

Rational random_small_rational(std::mt19937_64& rng) {
  // numerators in {-9..9}, denominators in {1..9}; modulo keeps the draw
  // portable across standard libraries
  int num = static_cast<int>(rng() % 19) - 9;
  int den = static_cast<int>(rng() % 9) + 1;
  Rational q(num, den);
  q.canonicalize();
  return q;
}

/// u_{[a..b]} with one optional omitted index: the alternating sum
/// sum_j (-1)^j u_j du ^ ... omit j ... ^ du over the surviving list, signs
/// by position. The (-1)^a prefactor of the written definition cancels the
/// original-index parity offset, leaving the plain position-signed bracket.
PolyForm bracket(const std::vector<PolyForm>& u, const std::vector<PolyForm>& du, int a, int b,
                 int omit) {
  std::vector<int> live;
  for (int i = a; i <= b; ++i)
    if (i != omit) live.push_back(i);
  const Simplex& host = u[a].host();
  PolyForm acc(host, static_cast<int>(live.size()) - 1);
  for (size_t i = 0; i < live.size(); ++i) {
    PolyForm term = u[live[i]];
    for (size_t j = 0; j < live.size(); ++j) {
      if (j == i) continue;
      term = term.wedge(du[live[j]]);
    }
    if (i % 2 == 1) term = -term;
    acc = acc + term;
  }
  return acc;
}

bool check_bracket_identity(const Simplex& facet, int k, int l, std::mt19937_64& rng) {
  // u_{[0..k-1]} ^ u_{[k..k+l]} == (-1)^{k-1} sum_i (-1)^i u_i u_{[0.. î ..k+l]}
  const int count = k + l + 1;
  std::vector<PolyForm> u, du;
  for (int i = 0; i < count; ++i) {
    PolyForm f(facet, 0);
    for (int v : facet.vertices()) {
      Rational c = random_small_rational(rng);
      if (c != 0) f = f + PolyForm::hat(facet, v).scaled(c);
    }
    u.push_back(f);
    du.push_back(f.derivative());
  }
  PolyForm lhs = bracket(u, du, 0, k - 1, -1).wedge(bracket(u, du, k, k + l, -1));
  PolyForm rhs(facet, lhs.degree());
  for (int i = 0; i < k; ++i) {
    PolyForm term = u[i].wedge(bracket(u, du, 0, k + l, i));
    if (i % 2 == 1) term = -term;
    rhs = rhs + term;
  }
  if (k % 2 == 0) rhs = -rhs;  // the (-1)^{k-1} prefactor
  return lhs == rhs;
}

}  // namespace

WedgeClosureReport verify_wedge_closure(const SimplicialComplex& complex, int k, int m, int l, int n,
                                        int trials, uint64_t seed) {
  WedgeClosureReport report;
  report.degree_left = k;
  report.order_left = m;
  report.degree_right = l;
  report.order_right = n;
  report.trials = trials;
  report.seed = seed;

  HighOrderSpace left = HighOrderSpace::build(complex, k, m);
  HighOrderSpace right = HighOrderSpace::build(complex, l, n);
  HighOrderSpace target = HighOrderSpace::build(complex, k + l, m + n);

  std::mt19937_64 rng(seed);
  for (int trial = 0; trial < trials; ++trial) {
    std::vector<Rational> ca(left.generators().size());
    std::vector<Rational> cb(right.generators().size());
    for (auto& c : ca) c = random_small_rational(rng);
    for (auto& c : cb) c = random_small_rational(rng);
    CompatibleForm u = left.element_from_coefficients(ca);
    CompatibleForm v = right.element_from_coefficients(cb);
    if (!target.membership(u.wedge(v))) {
      report.all_members = false;
      WedgeClosureFailure fail;
      fail.trial = trial;
      for (const auto& c : ca) fail.left_coefficients.push_back(rational_to_string(c));
      for (const auto& c : cb) fail.right_coefficients.push_back(rational_to_string(c));
      report.failures.push_back(std::move(fail));
    }
  }

  if (k >= 1) {
    for (const auto& facet : complex.facets()) {
      if (facet.dim() < k + l) continue;
      if (!check_bracket_identity(facet, k, l, rng)) {
        report.bracket_identity_ok = false;
        break;
      }
    }
  }
  return report;
}

}  // namespace feec
