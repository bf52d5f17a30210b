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

#include "feec/simplicial.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <map>
#include <set>
#include <stdexcept>

namespace feec {

Simplex::Simplex(std::vector<int> vertices) : v_(std::move(vertices)) {
  if (v_.empty()) throw std::invalid_argument("empty simplex");
  for (size_t i = 0; i + 1 < v_.size(); ++i)
    if (v_[i] >= v_[i + 1]) throw std::invalid_argument("simplex vertices must be strictly increasing");
  if (v_.front() < 0) throw std::invalid_argument("negative vertex id");
}

Simplex Simplex::from_unsorted(std::vector<int> vertices) {
  std::sort(vertices.begin(), vertices.end());
  return Simplex(std::move(vertices));
}

bool Simplex::contains(const Simplex& face) const {
  return std::includes(v_.begin(), v_.end(), face.v_.begin(), face.v_.end());
}

bool Simplex::contains_vertex(int vertex) const {
  return std::binary_search(v_.begin(), v_.end(), vertex);
}

std::optional<int> Simplex::position_of(int vertex) const {
  auto it = std::lower_bound(v_.begin(), v_.end(), vertex);
  if (it == v_.end() || *it != vertex) return std::nullopt;
  return static_cast<int>(it - v_.begin());
}

Simplex Simplex::face_without_position(int position) const {
  std::vector<int> w;
  w.reserve(v_.size() - 1);
  for (int i = 0; i < size(); ++i)
    if (i != position) w.push_back(v_[i]);
  return Simplex(std::move(w));
}

std::vector<Simplex> Simplex::proper_faces() const {
  std::vector<Simplex> faces;
  int n = size();
  for (unsigned mask = 1; mask + 1 < (1u << n); ++mask) {
    std::vector<int> w;
    for (int i = 0; i < n; ++i)
      if (mask & (1u << i)) w.push_back(v_[i]);
    faces.emplace_back(std::move(w));
  }
  std::sort(faces.begin(), faces.end());
  return faces;
}

std::string Simplex::key() const {
  std::string s;
  for (size_t i = 0; i < v_.size(); ++i) {
    if (i) s += '-';
    s += std::to_string(v_[i]);
  }
  return s;
}

SimplicialComplex SimplicialComplex::closure_of(const std::vector<std::vector<int>>& top_cells) {
  if (top_cells.empty()) throw std::invalid_argument("empty complex");
  std::set<Simplex> all;
  int max_dim = 0;
  for (const auto& cell : top_cells) {
    if (cell.empty()) throw std::invalid_argument("empty cell");
    std::vector<int> sorted = cell;
    std::sort(sorted.begin(), sorted.end());
    if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end())
      throw std::invalid_argument("degenerate cell: repeated vertex");
    Simplex top(std::move(sorted));
    max_dim = std::max(max_dim, top.dim());
    all.insert(top);
    for (auto& f : top.proper_faces()) all.insert(std::move(f));
  }
  SimplicialComplex k;
  k.skeleton_.resize(max_dim + 1);
  for (const auto& s : all) k.skeleton_[s.dim()].push_back(s);
  // std::set iteration is already sorted; per-dimension lists inherit order
  std::set<int> verts;
  for (const auto& s : k.skeleton_[0]) verts.insert(s.vertex(0));
  k.vertex_count_ = static_cast<int>(verts.size());
  for (const auto& s : all) {
    bool maximal = true;
    for (const auto& other : all) {
      if (other.dim() > s.dim() && other.contains(s)) {
        maximal = false;
        break;
      }
    }
    if (maximal) k.facets_.push_back(s);
  }
  return k;
}

int SimplicialComplex::count(int k) const {
  if (k < 0 || k > dimension()) return 0;
  return static_cast<int>(skeleton_[k].size());
}

int SimplicialComplex::total_count() const {
  int n = 0;
  for (const auto& level : skeleton_) n += static_cast<int>(level.size());
  return n;
}

const std::vector<Simplex>& SimplicialComplex::simplices(int k) const {
  static const std::vector<Simplex> empty;
  if (k < 0 || k > dimension()) return empty;
  return skeleton_[k];
}

int SimplicialComplex::index_of(const Simplex& s) const {
  if (s.dim() < 0 || s.dim() > dimension()) return -1;
  const auto& level = skeleton_[s.dim()];
  auto it = std::lower_bound(level.begin(), level.end(), s);
  if (it == level.end() || !(*it == s)) return -1;
  return static_cast<int>(it - level.begin());
}

std::vector<Simplex> SimplicialComplex::star(const Simplex& t) const {
  if (!contains(t)) throw std::invalid_argument("star: simplex not in complex");
  std::vector<Simplex> out;
  for (const auto& level : skeleton_)
    for (const auto& s : level) {
      bool meets = false;
      for (int v : t.vertices())
        if (s.contains_vertex(v)) {
          meets = true;
          break;
        }
      if (meets) out.push_back(s);
    }
  return out;
}

std::vector<Simplex> SimplicialComplex::cofaces(const Simplex& t) const {
  std::vector<Simplex> out;
  for (int k = t.dim(); k <= dimension(); ++k)
    for (const auto& s : skeleton_[k])
      if (s.contains(t)) out.push_back(s);
  return out;
}

std::vector<std::vector<int>> SimplicialComplex::facet_cells() const {
  std::vector<std::vector<int>> cells;
  cells.reserve(facets_.size());
  for (const auto& f : facets_) cells.push_back(f.vertices());
  return cells;
}

bool SimplicialComplex::has_subcomplex(const SimplicialComplex& sub) const {
  for (int k = 0; k <= sub.dimension(); ++k)
    for (const auto& s : sub.simplices(k))
      if (!contains(s)) return false;
  return true;
}

std::vector<int> SimplicialComplex::euler_summands() const {
  std::vector<int> c;
  for (int k = 0; k <= dimension(); ++k) c.push_back(count(k));
  return c;
}

int incidence_number(const Simplex& t, const Simplex& t_prime) {
  if (t_prime.dim() != t.dim() - 1) return 0;
  if (!t.contains(t_prime)) return 0;
  for (int l = 0; l < t.size(); ++l)
    if (!t_prime.contains_vertex(t.vertex(l))) return (l % 2 == 0) ? 1 : -1;
  return 0;  // unreachable
}

IncidenceMatrix coboundary_matrix(const SimplicialComplex& complex, int k) {
  if (k < 0 || k >= complex.dimension())
    throw std::invalid_argument("coboundary degree out of range");
  IncidenceMatrix m;
  m.degree = k;
  m.rows = complex.count(k + 1);
  m.cols = complex.count(k);
  m.entries.assign(static_cast<size_t>(m.rows) * m.cols, 0);
  for (int r = 0; r < m.rows; ++r) {
    const Simplex& t = complex.simplex(k + 1, r);
    for (int l = 0; l < t.size(); ++l) {
      Simplex face = t.face_without_position(l);
      int c = complex.index_of(face);
      m.entries[static_cast<size_t>(r) * m.cols + c] = (l % 2 == 0) ? 1 : -1;
    }
  }
  return m;
}

QMatrix IncidenceMatrix::to_rational() const {
  QMatrix q(rows, cols);
  for (int r = 0; r < rows; ++r)
    for (int c = 0; c < cols; ++c)
      if (int8_t e = at(r, c); e != 0) q.at(r, c) = e;
  return q;
}

Eigen::MatrixXd IncidenceMatrix::to_double() const {
  Eigen::MatrixXd m(rows, cols);
  for (int r = 0; r < rows; ++r)
    for (int c = 0; c < cols; ++c) m(r, c) = at(r, c);
  return m;
}

SimplicialComplex boundary_complex(const Simplex& t) {
  if (t.dim() == 0) throw std::invalid_argument("a vertex has empty boundary");
  std::vector<std::vector<int>> cells;
  for (int l = 0; l < t.size(); ++l) cells.push_back(t.face_without_position(l).vertices());
  return SimplicialComplex::closure_of(cells);
}

AffineRealization::AffineRealization(int ambient_dim, std::vector<std::vector<Rational>> coordinates)
    : ambient_dim_(ambient_dim), coordinates_(std::move(coordinates)) {
  for (const auto& c : coordinates_)
    if (static_cast<int>(c.size()) != ambient_dim_)
      throw std::invalid_argument("coordinate dimension mismatch");
}

void AffineRealization::validate(const SimplicialComplex& complex) const {
  if (vertex_count() < complex.vertex_count())
    throw std::invalid_argument("realization misses vertices");
  for (int k = 1; k <= complex.dimension(); ++k)
    for (const auto& t : complex.simplices(k))
      if (edge_matrix(t).rank() != k)
        throw std::invalid_argument("degenerate realization: simplex " + t.key() +
                                    " has affine span of dimension < " + std::to_string(k));
}

QMatrix AffineRealization::edge_matrix(const Simplex& t) const {
  QMatrix e(ambient_dim_, t.dim());
  const auto& base = coordinates_[t.vertex(0)];
  for (int j = 1; j < t.size(); ++j) {
    const auto& p = coordinates_[t.vertex(j)];
    for (int i = 0; i < ambient_dim_; ++i) e.at(i, j - 1) = p[i] - base[i];
  }
  return e;
}

QMatrix AffineRealization::gram(const Simplex& t) const {
  QMatrix e = edge_matrix(t);
  return e.transposed() * e;
}

QMatrix AffineRealization::gradient_gram(const Simplex& t) const {
  auto inv = gram(t).inverse();
  if (!inv) throw std::invalid_argument("degenerate simplex " + t.key());
  return *inv;
}

double AffineRealization::volume(const Simplex& t) const {
  if (t.dim() == 0) return 1.0;
  Rational det = gram(t).determinant();
  double d = to_double(det);
  if (d <= 0) throw std::invalid_argument("degenerate simplex " + t.key());
  return std::sqrt(d) / to_double(factorial(static_cast<unsigned>(t.dim())));
}

double AffineRealization::max_edge_length(const SimplicialComplex& complex) const {
  double h = 0;
  for (const auto& e : complex.simplices(1)) h = std::max(h, volume(e));
  return h;
}

Eigen::VectorXd AffineRealization::point(const Simplex& t, const std::vector<double>& barycentric) const {
  Eigen::VectorXd p = Eigen::VectorXd::Zero(ambient_dim_);
  for (int j = 0; j < t.size(); ++j) {
    const auto& c = coordinates_[t.vertex(j)];
    for (int i = 0; i < ambient_dim_; ++i) p[i] += barycentric[j] * to_double(c[i]);
  }
  return p;
}

SubdivisionResult barycentric_subdivision(const SimplicialComplex& complex,
                                          const AffineRealization& realization) {
  // fine vertex per simplex, ordered by (dimension, canonical index)
  std::map<Simplex, int> vertex_id;
  std::vector<Simplex> vertex_parent;
  for (int k = 0; k <= complex.dimension(); ++k)
    for (const auto& s : complex.simplices(k)) {
      vertex_id[s] = static_cast<int>(vertex_parent.size());
      vertex_parent.push_back(s);
    }

  std::vector<std::vector<Rational>> coords(vertex_parent.size(),
                                            std::vector<Rational>(realization.ambient_dim()));
  for (size_t j = 0; j < vertex_parent.size(); ++j) {
    const Simplex& s = vertex_parent[j];
    Rational w(1, s.size());
    w.canonicalize();
    for (int v : s.vertices()) {
      const auto& p = realization.coordinate(v);
      for (int i = 0; i < realization.ambient_dim(); ++i) coords[j][i] += w * p[i];
    }
  }

  // top cells: flags of faces inside each facet, one per vertex permutation
  std::vector<std::vector<int>> cells;
  for (const auto& facet : complex.facets()) {
    std::vector<int> perm(facet.vertices());
    std::sort(perm.begin(), perm.end());
    do {
      std::vector<int> cell;
      std::vector<int> prefix;
      for (int v : perm) {
        prefix.push_back(v);
        cell.push_back(vertex_id.at(Simplex::from_unsorted(prefix)));
      }
      cells.push_back(std::move(cell));
    } while (std::next_permutation(perm.begin(), perm.end()));
  }

  SubdivisionResult out;
  out.mesh.complex = SimplicialComplex::closure_of(cells);
  out.mesh.realization = AffineRealization(realization.ambient_dim(), std::move(coords));
  out.vertex_parent = std::move(vertex_parent);
  return out;
}

namespace {

Rational round_decimal(double x, int digits) {
  double scale = std::pow(10.0, digits);
  double r = std::round(x * scale);
  mpz_class num(r);  // exact: r is an integer-valued double
  mpz_class den;
  mpz_ui_pow_ui(den.get_mpz_t(), 10, static_cast<unsigned>(digits));
  Rational q(num, den);
  q.canonicalize();
  return q;
}

constexpr double kTau = 6.283185307179586476925286766559;

}  // namespace

Mesh make_simplex(int n) {
  if (n < 0) throw std::invalid_argument("simplex dimension must be >= 0");
  std::vector<int> cell(n + 1);
  for (int i = 0; i <= n; ++i) cell[i] = i;
  std::vector<std::vector<Rational>> coords(n + 1, std::vector<Rational>(std::max(n, 1)));
  for (int i = 1; i <= n; ++i) coords[i][i - 1] = 1;
  return {SimplicialComplex::closure_of({cell}), AffineRealization(std::max(n, 1), std::move(coords))};
}

Mesh make_sphere(int n) {
  if (n < 0) throw std::invalid_argument("sphere dimension must be >= 0");
  std::vector<int> v(n + 2);
  for (int i = 0; i < n + 2; ++i) v[i] = i;
  Simplex top(std::move(v));
  std::vector<std::vector<Rational>> coords(n + 2, std::vector<Rational>(n + 1));
  for (int i = 1; i <= n + 1; ++i) coords[i][i - 1] = 1;
  SimplicialComplex k = boundary_complex(top);
  return {std::move(k), AffineRealization(n + 1, std::move(coords))};
}

Mesh make_circle(int segments) {
  if (segments < 3) throw std::invalid_argument("circle needs at least 3 segments");
  double radius = 0.5 / std::sin(M_PI / segments);  // unit edge length
  std::vector<std::vector<Rational>> coords(segments, std::vector<Rational>(2));
  for (int i = 0; i < segments; ++i) {
    double a = kTau * i / segments;
    coords[i][0] = round_decimal(radius * std::cos(a), 12);
    coords[i][1] = round_decimal(radius * std::sin(a), 12);
  }
  std::vector<std::vector<int>> cells;
  for (int i = 0; i < segments; ++i) cells.push_back({i, (i + 1) % segments});
  return {SimplicialComplex::closure_of(cells), AffineRealization(2, std::move(coords))};
}

Mesh make_flat_torus(int m, int n) {
  if (m < 3 || n < 3) throw std::invalid_argument("flat torus needs m,n >= 3");
  double rm = 0.5 / std::sin(M_PI / m);
  double rn = 0.5 / std::sin(M_PI / n);
  std::vector<std::vector<Rational>> coords(static_cast<size_t>(m) * n, std::vector<Rational>(4));
  auto id = [n](int i, int j) { return i * n + j; };
  for (int i = 0; i < m; ++i)
    for (int j = 0; j < n; ++j) {
      double a = kTau * i / m;
      double b = kTau * j / n;
      auto& c = coords[id(i, j)];
      c[0] = round_decimal(rm * std::cos(a), 12);
      c[1] = round_decimal(rm * std::sin(a), 12);
      c[2] = round_decimal(rn * std::cos(b), 12);
      c[3] = round_decimal(rn * std::sin(b), 12);
    }
  std::vector<std::vector<int>> cells;
  for (int i = 0; i < m; ++i)
    for (int j = 0; j < n; ++j) {
      int i1 = (i + 1) % m;
      int j1 = (j + 1) % n;
      cells.push_back({id(i, j), id(i1, j), id(i, j1)});
      cells.push_back({id(i1, j), id(i, j1), id(i1, j1)});
    }
  return {SimplicialComplex::closure_of(cells), AffineRealization(4, std::move(coords))};
}

Mesh make_book() {
  // three triangles glued along the edge {0,1}, pages in pairwise distinct planes
  std::vector<std::vector<Rational>> coords = {
      {Rational(0), Rational(0), Rational(0)},  {Rational(1), Rational(0), Rational(0)},
      {Rational(1, 2), Rational(1), Rational(0)}, {Rational(1, 2), Rational(0), Rational(1)},
      {Rational(1, 2), Rational(-1), Rational(1)},
  };
  for (auto& c : coords)
    for (auto& q : c) q.canonicalize();
  return {SimplicialComplex::closure_of({{0, 1, 2}, {0, 1, 3}, {0, 1, 4}}),
          AffineRealization(3, std::move(coords))};
}

Mesh generate_mesh(std::string_view kind_spec) {
  std::string_view kind = kind_spec;
  std::string_view params;
  if (auto colon = kind_spec.find(':'); colon != std::string_view::npos) {
    kind = kind_spec.substr(0, colon);
    params = kind_spec.substr(colon + 1);
  }
  auto parse_ints = [&](size_t expect) {
    std::vector<int> out;
    size_t pos = 0;
    while (pos <= params.size() && !params.empty()) {
      size_t comma = params.find(',', pos);
      std::string_view tok = params.substr(pos, comma == std::string_view::npos ? params.size() - pos
                                                                                : comma - pos);
      int value = 0;
      auto [p, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), value);
      if (ec != std::errc() || p != tok.data() + tok.size())
        throw std::invalid_argument("bad generator parameter '" + std::string(tok) + "'");
      out.push_back(value);
      if (comma == std::string_view::npos) break;
      pos = comma + 1;
    }
    if (out.size() != expect)
      throw std::invalid_argument("generator '" + std::string(kind) + "' expects " +
                                  std::to_string(expect) + " parameter(s)");
    return out;
  };
  if (kind == "simplex") return make_simplex(parse_ints(1)[0]);
  if (kind == "sphere") return make_sphere(parse_ints(1)[0]);
  if (kind == "circle") return make_circle(parse_ints(1)[0]);
  if (kind == "torus" || kind == "flat_torus") {
    auto p = parse_ints(2);
    return make_flat_torus(p[0], p[1]);
  }
  if (kind == "book") {
    if (!params.empty()) throw std::invalid_argument("book takes no parameters");
    return make_book();
  }
  throw std::invalid_argument("unknown generator kind '" + std::string(kind) + "'");
}

}  // namespace feec
