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

#include "feec/polyform.hpp"

#include <algorithm>
#include <random>
#include <stdexcept>

namespace feec {

namespace {

/// Sorts differential positions in place; returns the permutation sign, or 0
/// when an index repeats.
int normalize_indices(std::vector<int>& idx) {
  int sign = 1;
  for (size_t i = 1; i < idx.size(); ++i)
    for (size_t j = i; j > 0 && idx[j - 1] >= idx[j]; --j) {
      if (idx[j - 1] == idx[j]) return 0;
      std::swap(idx[j - 1], idx[j]);
      sign = -sign;
    }
  return sign;
}

/// Sign of merging two increasing tuples into one increasing tuple, 0 when
/// they intersect.
int shuffle_sign(const std::vector<uint8_t>& a, const std::vector<uint8_t>& b,
                 std::vector<uint8_t>& merged) {
  merged.clear();
  merged.reserve(a.size() + b.size());
  size_t i = 0, j = 0;
  int inversions = 0;
  while (i < a.size() && j < b.size()) {
    if (a[i] == b[j]) return 0;
    if (a[i] < b[j]) {
      merged.push_back(a[i++]);
    } else {
      inversions += static_cast<int>(a.size() - i);
      merged.push_back(b[j++]);
    }
  }
  while (i < a.size()) merged.push_back(a[i++]);
  while (j < b.size()) merged.push_back(b[j++]);
  return inversions % 2 == 0 ? 1 : -1;
}

}  // namespace

std::vector<std::vector<int>> increasing_tuples(int d, int k) {
  std::vector<std::vector<int>> out;
  if (k < 0 || k > d) return out;
  std::vector<int> tuple(k);
  for (int i = 0; i < k; ++i) tuple[i] = i + 1;
  while (true) {
    out.push_back(tuple);
    int pos = k - 1;
    while (pos >= 0 && tuple[pos] == d - (k - 1 - pos)) --pos;
    if (pos < 0) break;
    ++tuple[pos];
    for (int i = pos + 1; i < k; ++i) tuple[i] = tuple[i - 1] + 1;
  }
  if (k == 0) out = {{}};
  return out;
}

PolyForm::PolyForm(Simplex host, int degree) : host_(std::move(host)), degree_(degree) {
  if (degree_ < 0 || degree_ > host_.dim()) terms_.clear();
}

void PolyForm::add_term(TermKey key, const Rational& c) {
  if (c == 0) return;
  auto [it, inserted] = terms_.emplace(std::move(key), c);
  if (!inserted) {
    it->second += c;
    if (it->second == 0) terms_.erase(it);
  }
}

void PolyForm::add_general_term(const FormTerm& term) {
  if (term.coefficient == 0) return;
  const int d = host_.dim();
  std::vector<int> idx = term.indices;
  int sign = normalize_indices(idx);
  if (sign == 0) return;
  Rational coef = term.coefficient * sign;

  // dlambda_0 = -sum dlambda_i: expand an index 0 (sorted first) into d terms
  std::vector<std::vector<int>> tuples;
  std::vector<Rational> tuple_coefs;
  if (!idx.empty() && idx[0] == 0) {
    std::vector<int> rest(idx.begin() + 1, idx.end());
    for (int i = 1; i <= d; ++i) {
      std::vector<int> candidate;
      candidate.push_back(i);
      candidate.insert(candidate.end(), rest.begin(), rest.end());
      int s = normalize_indices(candidate);
      if (s == 0) continue;
      tuples.push_back(std::move(candidate));
      tuple_coefs.push_back(coef * (-s));
    }
  } else {
    tuples.push_back(idx);
    tuple_coefs.push_back(coef);
  }

  // lambda_0^a = (1 - sum lambda_i)^a: expand by repeated multiplication
  struct Monomial {
    std::vector<uint8_t> alpha;
    Rational c;
  };
  std::vector<Monomial> polys;
  {
    std::vector<uint8_t> base(d, 0);
    for (int p = 1; p <= d; ++p) base[p - 1] = static_cast<uint8_t>(term.alpha[p]);
    polys.push_back({std::move(base), Rational(1)});
    for (int rep = 0; rep < term.alpha[0]; ++rep) {
      std::vector<Monomial> next;
      auto push = [&next](std::vector<uint8_t> a, Rational c) {
        for (auto& m : next)
          if (m.alpha == a) {
            m.c += c;
            return;
          }
        next.push_back({std::move(a), std::move(c)});
      };
      for (const auto& m : polys) {
        push(m.alpha, m.c);
        for (int i = 0; i < d; ++i) {
          auto a = m.alpha;
          ++a[i];
          push(std::move(a), -m.c);
        }
      }
      polys = std::move(next);
    }
  }

  for (size_t t = 0; t < tuples.size(); ++t) {
    std::vector<uint8_t> tuple8(tuples[t].begin(), tuples[t].end());
    for (const auto& m : polys) add_term(TermKey{m.alpha, tuple8}, tuple_coefs[t] * m.c);
  }
}

PolyForm PolyForm::from_terms(const Simplex& host, int degree, const std::vector<FormTerm>& terms) {
  PolyForm f(host, degree);
  if (degree < 0 || degree > host.dim()) return f;
  for (const auto& t : terms) {
    if (static_cast<int>(t.alpha.size()) != host.dim() + 1)
      throw std::invalid_argument("FormTerm alpha size must be host dim + 1");
    if (static_cast<int>(t.indices.size()) != degree)
      throw std::invalid_argument("FormTerm index count must equal the degree");
    for (int p : t.indices)
      if (p < 0 || p > host.dim()) throw std::invalid_argument("FormTerm index out of range");
    f.add_general_term(t);
  }
  return f;
}

PolyForm PolyForm::constant(const Simplex& host, const Rational& value) {
  PolyForm f(host, 0);
  if (value != 0) f.terms_[TermKey{std::vector<uint8_t>(host.dim(), 0), {}}] = value;
  return f;
}

PolyForm PolyForm::hat(const Simplex& host, int vertex) {
  auto pos = host.position_of(vertex);
  if (!pos) throw std::invalid_argument("hat: vertex not in simplex");
  FormTerm t;
  t.alpha.assign(host.dim() + 1, 0);
  t.alpha[*pos] = 1;
  t.coefficient = 1;
  return from_terms(host, 0, {t});
}

PolyForm PolyForm::hat_differential(const Simplex& host, int vertex) {
  auto pos = host.position_of(vertex);
  if (!pos) throw std::invalid_argument("hat_differential: vertex not in simplex");
  FormTerm t;
  t.alpha.assign(host.dim() + 1, 0);
  t.indices = {*pos};
  t.coefficient = 1;
  return from_terms(host, 1, {t});
}

PolyForm PolyForm::whitney(const Simplex& host, const Simplex& face) {
  if (!host.contains(face)) throw std::invalid_argument("whitney: face not contained in host");
  const int k = face.dim();
  std::vector<int> positions(face.size());
  for (int i = 0; i < face.size(); ++i) positions[i] = *host.position_of(face.vertex(i));
  std::vector<FormTerm> terms;
  Rational k_fact = factorial(static_cast<unsigned>(k));
  for (int i = 0; i <= k; ++i) {
    FormTerm t;
    t.alpha.assign(host.dim() + 1, 0);
    t.alpha[positions[i]] = 1;
    for (int j = 0; j <= k; ++j)
      if (j != i) t.indices.push_back(positions[j]);
    t.coefficient = (i % 2 == 0) ? k_fact : -k_fact;
    terms.push_back(std::move(t));
  }
  return from_terms(host, k, terms);
}

int PolyForm::polynomial_degree() const {
  int deg = 0;
  for (const auto& [key, c] : terms_) {
    int total = 0;
    for (uint8_t a : key.alpha) total += a;
    deg = std::max(deg, total);
  }
  return deg;
}

PolyForm PolyForm::operator+(const PolyForm& rhs) const {
  if (host_ != rhs.host_ || degree_ != rhs.degree_)
    throw std::invalid_argument("form sum: host or degree mismatch");
  PolyForm out = *this;
  for (const auto& [key, c] : rhs.terms_) out.add_term(key, c);
  return out;
}

PolyForm PolyForm::operator-(const PolyForm& rhs) const { return *this + (-rhs); }

PolyForm PolyForm::operator-() const {
  PolyForm out = *this;
  for (auto& [key, c] : out.terms_) c = -c;
  return out;
}

PolyForm PolyForm::scaled(const Rational& c) const {
  PolyForm out(host_, degree_);
  if (c == 0) return out;
  out.terms_ = terms_;
  for (auto& [key, v] : out.terms_) v *= c;
  return out;
}

bool PolyForm::operator==(const PolyForm& rhs) const {
  return host_ == rhs.host_ && degree_ == rhs.degree_ && terms_ == rhs.terms_;
}

PolyForm PolyForm::wedge(const PolyForm& rhs) const {
  if (host_ != rhs.host_) throw std::invalid_argument("wedge: host mismatch");
  int out_degree = degree_ + rhs.degree_;
  PolyForm out(host_, out_degree);
  if (out_degree > host_.dim()) return out;  // exterior algebra truncates
  std::vector<uint8_t> merged;
  for (const auto& [ka, ca] : terms_) {
    for (const auto& [kb, cb] : rhs.terms_) {
      int sign = shuffle_sign(ka.index_tuple, kb.index_tuple, merged);
      if (sign == 0) continue;
      std::vector<uint8_t> alpha(ka.alpha);
      for (size_t i = 0; i < alpha.size(); ++i) alpha[i] = static_cast<uint8_t>(alpha[i] + kb.alpha[i]);
      out.add_term(TermKey{std::move(alpha), merged}, ca * cb * sign);
    }
  }
  return out;
}

PolyForm PolyForm::derivative() const {
  PolyForm out(host_, degree_ + 1);
  if (degree_ + 1 > host_.dim()) return out;
  for (const auto& [key, c] : terms_) {
    for (size_t i = 0; i < key.alpha.size(); ++i) {
      if (key.alpha[i] == 0) continue;
      // d(lambda^a dl_I) picks up a * lambda^{a-e_i} dl_i ^ dl_I
      std::vector<uint8_t> single{static_cast<uint8_t>(i + 1)};
      std::vector<uint8_t> merged;
      int sign = shuffle_sign(single, key.index_tuple, merged);
      if (sign == 0) continue;
      std::vector<uint8_t> alpha = key.alpha;
      --alpha[i];
      out.add_term(TermKey{std::move(alpha), std::move(merged)}, c * key.alpha[i] * sign);
    }
  }
  return out;
}

PolyForm PolyForm::pullback_onto(const Simplex& target, const QMatrix& vertex_barycentric) const {
  const int ds = host_.dim();
  const int dt = target.dim();
  if (vertex_barycentric.rows() != ds + 1 || vertex_barycentric.cols() != dt + 1)
    throw std::invalid_argument("pullback: barycentric matrix shape mismatch");
  // canonical images of lambda_p and dlambda_p (p = 1..ds) on the target:
  // constants fold into the hat expansion via sum lambda_q = 1
  std::vector<PolyForm> lambda_img(ds + 1), dlambda_img(ds + 1);
  for (int p = 0; p <= ds; ++p) {
    PolyForm f(target, 0);
    const Rational& c0 = vertex_barycentric.at(p, 0);
    if (c0 != 0) f = PolyForm::constant(target, c0);
    PolyForm df(target, 1);
    for (int q = 1; q <= dt; ++q) {
      Rational w = vertex_barycentric.at(p, q) - c0;
      if (w == 0) continue;
      TermKey mon{std::vector<uint8_t>(dt, 0), {}};
      mon.alpha[q - 1] = 1;
      f.add_term(mon, w);
      df.add_term(TermKey{std::vector<uint8_t>(dt, 0), {static_cast<uint8_t>(q)}}, w);
    }
    lambda_img[p] = std::move(f);
    dlambda_img[p] = std::move(df);
  }
  PolyForm out(target, degree_);
  if (degree_ > dt) return out;
  for (const auto& [key, c] : terms_) {
    PolyForm acc = PolyForm::constant(target, c);
    for (size_t i = 0; i < key.alpha.size(); ++i)
      for (int rep = 0; rep < key.alpha[i]; ++rep) acc = acc.wedge(lambda_img[i + 1]);
    for (uint8_t p : key.index_tuple) acc = acc.wedge(dlambda_img[p]);
    if (acc.degree() != degree_) throw std::logic_error("pullback degree bookkeeping");
    out = out + acc;
  }
  return out;
}

PolyForm PolyForm::trace_to(const Simplex& face) const {
  if (!host_.contains(face)) throw std::invalid_argument("trace: not a face of the host");
  QMatrix b(host_.dim() + 1, face.dim() + 1);
  for (int q = 0; q < face.size(); ++q) b.at(*host_.position_of(face.vertex(q)), q) = 1;
  return pullback_onto(face, b);
}

PolyForm PolyForm::koszul(int base_vertex) const {
  if (degree_ == 0)
    throw std::invalid_argument("koszul of a 0-form; use the identity u - u(x_0) = A du");
  auto base = host_.position_of(base_vertex);
  if (!base) throw std::invalid_argument("koszul: base vertex not in host");
  const int b = *base;
  const int k = degree_;
  PolyForm out(host_, degree_ - 1);
  for (const auto& [key, c] : terms_) {
    int alpha_total = 0;
    for (uint8_t a : key.alpha) alpha_total += a;
    const int ab = b >= 1 ? key.alpha[b - 1] : 0;
    // time integral of t^{k-1} * (lambda o F_t)^alpha, by binomial expansion
    // of (1 - t + t*lambda_b)^{alpha_b}; Beta integrals are exact rationals
    std::vector<Rational> radial_coef(ab + 1);
    for (int r = 0; r <= ab; ++r) {
      unsigned p = static_cast<unsigned>(k - 1 + alpha_total - ab + r);
      unsigned q = static_cast<unsigned>(ab - r);
      radial_coef[r] = binomial(static_cast<unsigned>(ab), static_cast<unsigned>(r)) * factorial(p) *
                       factorial(q) / factorial(p + q + 1);
    }
    for (size_t m = 0; m < key.index_tuple.size(); ++m) {
      int im = key.index_tuple[m];
      int sign = (m % 2 == 0) ? 1 : -1;
      std::vector<uint8_t> rest;
      for (size_t j = 0; j < key.index_tuple.size(); ++j)
        if (j != m) rest.push_back(key.index_tuple[j]);
      for (int r = 0; r <= ab; ++r) {
        Rational w = c * sign * radial_coef[r];
        std::vector<uint8_t> alpha = key.alpha;
        if (b >= 1) alpha[b - 1] = static_cast<uint8_t>(r);
        // contraction factor dlambda_im(X) = lambda_im - [im == b]
        std::vector<uint8_t> alpha_up = alpha;
        ++alpha_up[im - 1];
        out.add_term(TermKey{std::move(alpha_up), rest}, w);
        if (im == b) out.add_term(TermKey{alpha, rest}, -w);
      }
    }
  }
  return out;
}

Rational PolyForm::value_at_vertex(int vertex) const {
  if (degree_ != 0) throw std::invalid_argument("value_at_vertex needs a 0-form");
  auto pos = host_.position_of(vertex);
  if (!pos) throw std::invalid_argument("vertex not in host");
  Rational v = 0;
  for (const auto& [key, c] : terms_) {
    bool live = true;
    for (size_t i = 0; i < key.alpha.size(); ++i) {
      bool is_base = static_cast<int>(i + 1) == *pos;
      if (key.alpha[i] > 0 && !is_base) {
        live = false;
        break;
      }
    }
    if (live) v += c;
  }
  return v;
}

Rational PolyForm::integrate_over_host() const {
  const int d = host_.dim();
  if (degree_ != d) throw std::invalid_argument("integrate_over_host needs degree == dim host");
  Rational total = 0;
  for (const auto& [key, c] : terms_) {
    // the only increasing d-tuple is (1..d); integral of lambda^alpha over
    // the reference simplex is prod(alpha_i!)/(d+|alpha|)!
    Rational numer = 1;
    int alpha_total = 0;
    for (uint8_t a : key.alpha) {
      numer *= factorial(a);
      alpha_total += a;
    }
    total += c * numer / factorial(static_cast<unsigned>(d + alpha_total));
  }
  return total;
}

Rational PolyForm::average_over_host() const {
  if (degree_ != 0) throw std::invalid_argument("average_over_host needs a 0-form");
  const int d = host_.dim();
  Rational total = 0;
  for (const auto& [key, c] : terms_) {
    Rational numer = 1;
    int alpha_total = 0;
    for (uint8_t a : key.alpha) {
      numer *= factorial(a);
      alpha_total += a;
    }
    total += c * numer * factorial(static_cast<unsigned>(d)) /
             factorial(static_cast<unsigned>(d + alpha_total));
  }
  return total;
}

Rational PolyForm::eval_component(const std::vector<Rational>& bary_tail,
                                  const std::vector<uint8_t>& index_tuple) const {
  Rational v = 0;
  for (const auto& [key, c] : terms_) {
    if (key.index_tuple != index_tuple) continue;
    Rational m = c;
    for (size_t i = 0; i < key.alpha.size(); ++i)
      for (int rep = 0; rep < key.alpha[i]; ++rep) m *= bary_tail[i];
    v += m;
  }
  return v;
}

Rational PolyForm::eval(const std::vector<Rational>& bary_tail, const QMatrix& directions) const {
  const int d = host_.dim();
  if (static_cast<int>(bary_tail.size()) != d) throw std::invalid_argument("eval: point size");
  if (directions.rows() != d || directions.cols() != degree_)
    throw std::invalid_argument("eval: directions shape");
  Rational v = 0;
  for (const auto& [key, c] : terms_) {
    Rational m = c;
    for (size_t i = 0; i < key.alpha.size(); ++i)
      for (int rep = 0; rep < key.alpha[i]; ++rep) m *= bary_tail[i];
    if (m == 0) continue;
    QMatrix minor(degree_, degree_);
    for (int r = 0; r < degree_; ++r)
      for (int cidx = 0; cidx < degree_; ++cidx)
        minor.at(r, cidx) = directions.at(key.index_tuple[r] - 1, cidx);
    v += m * minor.determinant();
  }
  return v;
}

DensityIntegral integrate_density(const PolyForm& zero_form, const AffineRealization& realization) {
  DensityIntegral out;
  out.factor = zero_form.average_over_host();
  out.volume = realization.volume(zero_form.host());
  return out;
}

PolyForm inner_product_density(const PolyForm& u, const PolyForm& v, const QMatrix& gradient_gram) {
  if (u.host() != v.host() || u.degree() != v.degree())
    throw std::invalid_argument("inner product: host or degree mismatch");
  const int k = u.degree();
  PolyForm out(u.host(), 0);
  for (const auto& [ka, ca] : u.terms()) {
    for (const auto& [kb, cb] : v.terms()) {
      QMatrix minor(k, k);
      for (int r = 0; r < k; ++r)
        for (int c = 0; c < k; ++c)
          minor.at(r, c) = gradient_gram.at(ka.index_tuple[r] - 1, kb.index_tuple[c] - 1);
      Rational g = k == 0 ? Rational(1) : minor.determinant();
      if (g == 0) continue;
      FormTerm ft;
      ft.alpha.assign(u.host().dim() + 1, 0);
      for (size_t i = 0; i < ka.alpha.size(); ++i) ft.alpha[i + 1] = ka.alpha[i] + kb.alpha[i];
      ft.coefficient = ca * cb * g;
      out = out + PolyForm::from_terms(u.host(), 0, {ft});
    }
  }
  return out;
}

CompatibleForm::CompatibleForm(const SimplicialComplex& complex, int degree)
    : complex_(&complex), degree_(degree) {}

void CompatibleForm::set_component(const Simplex& simplex, PolyForm form) {
  if (form.degree() != degree_) throw std::invalid_argument("component degree mismatch");
  if (form.host() != simplex) throw std::invalid_argument("component host mismatch");
  if (form.is_zero())
    components_.erase(simplex);
  else
    components_[simplex] = std::move(form);
}

PolyForm CompatibleForm::component(const Simplex& simplex) const {
  auto it = components_.find(simplex);
  if (it != components_.end()) return it->second;
  return PolyForm(simplex, degree_);
}

bool CompatibleForm::has_component(const Simplex& simplex) const {
  return components_.count(simplex) > 0;
}

CompatibleForm CompatibleForm::derivative() const {
  CompatibleForm out(*complex_, degree_ + 1);
  for (const auto& [s, f] : components_) out.set_component(s, f.derivative());
  return out;
}

CompatibleForm CompatibleForm::wedge(const CompatibleForm& rhs) const {
  if (complex_ != rhs.complex_) throw std::invalid_argument("wedge: complex mismatch");
  CompatibleForm out(*complex_, degree_ + rhs.degree_);
  for (const auto& [s, f] : components_) {
    auto it = rhs.components_.find(s);
    if (it == rhs.components_.end()) continue;
    out.set_component(s, f.wedge(it->second));
  }
  return out;
}

CompatibleForm CompatibleForm::operator+(const CompatibleForm& rhs) const {
  if (complex_ != rhs.complex_ || degree_ != rhs.degree_)
    throw std::invalid_argument("form sum mismatch");
  CompatibleForm out = *this;
  for (const auto& [s, f] : rhs.components_) {
    auto it = out.components_.find(s);
    if (it == out.components_.end())
      out.set_component(s, f);
    else
      out.set_component(s, it->second + f);
  }
  return out;
}

CompatibleForm CompatibleForm::operator-(const CompatibleForm& rhs) const {
  return *this + rhs.scaled(Rational(-1));
}

CompatibleForm CompatibleForm::scaled(const Rational& c) const {
  CompatibleForm out(*complex_, degree_);
  if (c == 0) return out;
  for (const auto& [s, f] : components_) out.set_component(s, f.scaled(c));
  return out;
}

bool CompatibleForm::operator==(const CompatibleForm& rhs) const {
  if (complex_ != rhs.complex_ || degree_ != rhs.degree_) return false;
  // components maps store no zero forms, so map equality is form equality
  return components_ == rhs.components_;
}

bool CompatibleForm::compatible(std::string* why) const {
  for (const auto& [s, f] : components_) {
    if (s.dim() == 0) continue;
    for (int l = 0; l < s.size(); ++l) {
      Simplex face = s.face_without_position(l);
      if (face.dim() < degree_) continue;
      PolyForm expected = f.trace_to(face);
      if (!(expected == component(face))) {
        if (why) *why = "trace of " + s.key() + " onto " + face.key() + " disagrees";
        return false;
      }
    }
  }
  return true;
}

CompatibleForm CompatibleForm::restricted_to(const SimplicialComplex& sub) const {
  CompatibleForm out(sub, degree_);
  for (const auto& [s, f] : components_) {
    if (sub.contains(s)) {
      PolyForm g = f;
      out.set_component(s, std::move(g));
    }
  }
  return out;
}

EvaluableForm::EvaluableForm(const SimplicialComplex& complex, int degree, ComponentFn fn)
    : complex_(&complex), degree_(degree), fn_(std::move(fn)) {}

EvaluableForm EvaluableForm::from_ambient(const SimplicialComplex& complex,
                                          const AffineRealization& realization, int degree,
                                          AmbientFn fn) {
  const AffineRealization* real = &realization;
  auto component_fn = [real, fn, degree](const Simplex& s, const std::vector<double>& bary,
                                         const std::vector<int>& tuple) {
    Eigen::VectorXd p = real->point(s, bary);
    Eigen::MatrixXd tangents(real->ambient_dim(), degree);
    for (int c = 0; c < degree; ++c) {
      int pos = tuple[c];
      const auto& head = real->coordinate(s.vertex(0));
      const auto& tip = real->coordinate(s.vertex(pos));
      for (int i = 0; i < real->ambient_dim(); ++i)
        tangents(i, c) = to_double(tip[i]) - to_double(head[i]);
    }
    return fn(p, tangents);
  };
  return EvaluableForm(complex, degree, component_fn);
}

EvaluableForm EvaluableForm::from_compatible(const CompatibleForm& form) {
  CompatibleForm snapshot = form;
  int degree = form.degree();
  auto component_fn = [snapshot, degree](const Simplex& s, const std::vector<double>& bary,
                                         const std::vector<int>& tuple) {
    PolyForm f = snapshot.component(s);
    std::vector<Rational> tail(s.dim());
    for (int i = 0; i < s.dim(); ++i) tail[i] = rational_from_double(bary[i + 1]);
    std::vector<uint8_t> tuple8(tuple.begin(), tuple.end());
    return to_double(f.eval_component(tail, tuple8));
  };
  return EvaluableForm(form.complex(), degree, component_fn);
}

double EvaluableForm::component(const Simplex& simplex, const std::vector<double>& barycentric,
                                const std::vector<int>& index_tuple) const {
  return fn_(simplex, barycentric, index_tuple);
}

double EvaluableForm::integrate_over(const Simplex& simplex) const {
  if (simplex.dim() != degree_)
    throw std::invalid_argument("integrate_over needs dim(T) == degree");
  const QuadratureRule& rule = simplex_quadrature(simplex.dim());
  std::vector<int> full_tuple(degree_);
  for (int i = 0; i < degree_; ++i) full_tuple[i] = i + 1;
  double acc = 0;
  for (size_t q = 0; q < rule.nodes.size(); ++q)
    acc += rule.weights[q] * fn_(simplex, rule.nodes[q], full_tuple);
  // reference-simplex volume 1/k!; the frame pullback is metric-free
  return acc / to_double(factorial(static_cast<unsigned>(degree_)));
}

void EvaluableForm::attach_derivative(EvaluableForm d) {
  if (d.degree_ != degree_ + 1) throw std::invalid_argument("derivative degree mismatch");
  derivative_fn_ = std::make_shared<EvaluableForm>(std::move(d));
}

EvaluableForm EvaluableForm::exterior_derivative() const {
  if (!derivative_fn_) throw std::invalid_argument("no derivative callback attached");
  return *derivative_fn_;
}

bool EvaluableForm::spot_check_compatibility(int samples_per_face, double tol, uint64_t seed) const {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> unif(0.05, 0.95);
  const auto& complex = *complex_;
  for (int k = std::max(degree_, 1); k <= complex.dimension(); ++k) {
    for (const auto& s : complex.simplices(k)) {
      for (int l = 0; l < s.size(); ++l) {
        Simplex face = s.face_without_position(l);
        if (face.dim() < degree_) continue;
        for (int trial = 0; trial < samples_per_face; ++trial) {
          // random interior point of the face
          std::vector<double> fb(face.size());
          double total = 0;
          for (auto& x : fb) {
            x = unif(rng);
            total += x;
          }
          for (auto& x : fb) x /= total;
          // the same point in the coface
          std::vector<double> sb(s.size(), 0.0);
          for (int i = 0; i < face.size(); ++i) sb[*s.position_of(face.vertex(i))] = fb[i];
          auto tuples = increasing_tuples(face.dim(), degree_);
          for (const auto& tuple : tuples) {
            double lhs = fn_(face, fb, tuple);
            // push face frame vectors into the coface chart and evaluate by
            // alternating expansion over the coface components
            Eigen::MatrixXd dirs = Eigen::MatrixXd::Zero(s.dim(), degree_);
            for (int c = 0; c < degree_; ++c) {
              int p_tip = *s.position_of(face.vertex(tuple[c]));
              int p_base = *s.position_of(face.vertex(0));
              if (p_tip >= 1) dirs(p_tip - 1, c) += 1;
              if (p_base >= 1) dirs(p_base - 1, c) -= 1;
            }
            double rhs = 0;
            for (const auto& big : increasing_tuples(s.dim(), degree_)) {
              Eigen::MatrixXd minor(degree_, degree_);
              for (int r = 0; r < degree_; ++r)
                for (int c = 0; c < degree_; ++c) minor(r, c) = dirs(big[r] - 1, c);
              double det = degree_ == 0 ? 1.0 : minor.determinant();
              if (det == 0) continue;
              rhs += det * fn_(s, sb, big);
            }
            if (std::abs(lhs - rhs) > tol * (1 + std::abs(lhs))) return false;
          }
        }
      }
    }
  }
  return true;
}

}  // namespace feec
