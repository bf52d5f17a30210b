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

#include <doctest.h>

#include <cmath>
#include <functional>
#include <random>

#include "feec/polyform.hpp"
#include "form_oracles.hpp"

using namespace feec;

namespace {

const Simplex kTriangle({0, 1, 2});
const Simplex kTetra({0, 1, 2, 3});

PolyForm whitney_edge01_on_triangle() {
  // lambda_0 dlambda_1 - lambda_1 dlambda_0
  return PolyForm::hat(kTriangle, 0).wedge(PolyForm::hat_differential(kTriangle, 1)) -
         PolyForm::hat(kTriangle, 1).wedge(PolyForm::hat_differential(kTriangle, 0));
}

}  // namespace

TEST_CASE("hat products and alternation") {
  PolyForm l1 = PolyForm::hat(kTriangle, 1);
  PolyForm l2 = PolyForm::hat(kTriangle, 2);
  PolyForm prod = l1.wedge(l2);
  CHECK(prod.degree() == 0);
  CHECK(prod.terms().size() == 1);
  CHECK(prod.terms().begin()->second == 1);
  // the single term is lambda_1 lambda_2
  CHECK(prod.terms().begin()->first.alpha == std::vector<uint8_t>{1, 1});

  PolyForm dl1 = PolyForm::hat_differential(kTriangle, 1);
  CHECK(dl1.wedge(dl1).is_zero());
}

TEST_CASE("canonical elimination of vertex zero") {
  // lambda_0 = 1 - lambda_1 - lambda_2 and dlambda_0 = -dlambda_1 - dlambda_2
  PolyForm l0 = PolyForm::hat(kTriangle, 0);
  PolyForm sum = l0 + PolyForm::hat(kTriangle, 1) + PolyForm::hat(kTriangle, 2);
  CHECK(sum == PolyForm::constant(kTriangle, 1));
  PolyForm dsum = PolyForm::hat_differential(kTriangle, 0) +
                  PolyForm::hat_differential(kTriangle, 1) +
                  PolyForm::hat_differential(kTriangle, 2);
  CHECK(dsum.is_zero());
}

TEST_CASE("graded commutativity on random forms") {
  std::mt19937_64 rng(11);
  for (int trial = 0; trial < 30; ++trial) {
    int k = static_cast<int>(rng() % 3);
    int l = static_cast<int>(rng() % 3);
    PolyForm u = oracle::random_polyform(kTetra, k, 2, rng);
    PolyForm v = oracle::random_polyform(kTetra, l, 2, rng);
    PolyForm uv = u.wedge(v);
    PolyForm vu = v.wedge(u);
    PolyForm diff = (k * l) % 2 == 0 ? uv - vu : uv + vu;
    CHECK(diff.is_zero());
  }
}

TEST_CASE("wedge against the shuffle-sum oracle") {
  std::mt19937_64 rng(23);
  for (int trial = 0; trial < 30; ++trial) {
    int k = static_cast<int>(rng() % 2) + (trial % 2);
    int l = static_cast<int>(rng() % 2);
    PolyForm u = oracle::random_polyform(kTetra, k, 2, rng);
    PolyForm v = oracle::random_polyform(kTetra, l, 2, rng);
    CHECK(oracle::from_polyform(u.wedge(v)) ==
          oracle::oracle_wedge(oracle::from_polyform(u), oracle::from_polyform(v)));
  }
}

TEST_CASE("wedge preconditions and truncation") {
  PolyForm u = PolyForm::hat_differential(kTriangle, 1);
  PolyForm on_other_host = PolyForm::hat(Simplex({0, 1, 3}), 1);
  CHECK_THROWS_AS(u.wedge(on_other_host), std::invalid_argument);
  // degree overflow truncates to the zero form of the summed degree
  PolyForm two = u.wedge(PolyForm::hat_differential(kTriangle, 2));
  PolyForm overflow = two.wedge(u);
  CHECK(overflow.degree() == 3);
  CHECK(overflow.is_zero());
}

TEST_CASE("exterior derivative basics") {
  PolyForm l1 = PolyForm::hat(kTriangle, 1);
  CHECK(l1.derivative() == PolyForm::hat_differential(kTriangle, 1));

  PolyForm prod = l1.wedge(PolyForm::hat(kTriangle, 2));
  PolyForm expected = PolyForm::hat(kTriangle, 2).wedge(PolyForm::hat_differential(kTriangle, 1)) +
                      l1.wedge(PolyForm::hat_differential(kTriangle, 2));
  CHECK(prod.derivative() == expected);
}

TEST_CASE("d of the edge Whitney form is twice the area form") {
  PolyForm w = whitney_edge01_on_triangle();
  PolyForm dw = w.derivative();
  PolyForm area = PolyForm::hat_differential(kTriangle, 0)
                      .wedge(PolyForm::hat_differential(kTriangle, 1))
                      .scaled(2);
  CHECK(dw == area);
  // same statement through the independent partial-derivative oracle
  CHECK(oracle::from_polyform(dw) == oracle::oracle_d(oracle::from_polyform(w)));
}

TEST_CASE("d is a differential and satisfies Leibniz, random forms") {
  std::mt19937_64 rng(37);
  for (int trial = 0; trial < 30; ++trial) {
    int k = static_cast<int>(rng() % 3);
    int l = static_cast<int>(rng() % 2);
    PolyForm u = oracle::random_polyform(kTetra, k, 3, rng);
    PolyForm v = oracle::random_polyform(kTetra, l, 2, rng);
    CHECK(u.derivative().derivative().is_zero());
    CHECK(oracle::from_polyform(u.derivative()) == oracle::oracle_d(oracle::from_polyform(u)));
    PolyForm lhs = u.wedge(v).derivative();
    PolyForm rhs = u.derivative().wedge(v) +
                   (k % 2 == 0 ? u.wedge(v.derivative()) : -u.wedge(v.derivative()));
    CHECK(lhs == rhs);
  }
}

TEST_CASE("traces of the edge Whitney form") {
  PolyForm w = whitney_edge01_on_triangle();
  Simplex edge01({0, 1});
  // on the edge, lambda_0 + lambda_1 = 1, so the trace is dlambda_1
  CHECK(w.trace_to(edge01) == PolyForm::hat_differential(edge01, 1));
  CHECK(w.trace_to(Simplex({1, 2})).is_zero());
  CHECK(w.trace_to(Simplex({0, 2})).is_zero());

  PolyForm c = PolyForm::constant(kTriangle, Rational(7, 2));
  CHECK(c.trace_to(edge01) == PolyForm::constant(edge01, Rational(7, 2)));
  CHECK_THROWS_AS(w.trace_to(Simplex({1, 3})), std::invalid_argument);
}

TEST_CASE("trace commutes with d and wedge and composes, random forms") {
  std::mt19937_64 rng(41);
  Simplex face({0, 1, 2});
  Simplex edge({0, 2});
  for (int trial = 0; trial < 25; ++trial) {
    PolyForm u = oracle::random_polyform(kTetra, 1, 2, rng);
    PolyForm v = oracle::random_polyform(kTetra, 1, 2, rng);
    CHECK(u.trace_to(face).derivative() == u.derivative().trace_to(face));
    CHECK(u.wedge(v).trace_to(face) == u.trace_to(face).wedge(v.trace_to(face)));
    CHECK(u.trace_to(face).trace_to(edge) == u.trace_to(edge));
  }
}

TEST_CASE("integration of monomial densities") {
  PolyForm l1 = PolyForm::hat(kTriangle, 1);
  CHECK(l1.average_over_host() == Rational(1, 3));
  CHECK(l1.wedge(PolyForm::hat(kTriangle, 2)).average_over_host() == Rational(1, 12));
  CHECK(PolyForm::constant(kTriangle, 1).average_over_host() == 1);
  // lambda_0 by symmetry
  CHECK(PolyForm::hat(kTriangle, 0).average_over_host() == Rational(1, 3));
}

TEST_CASE("Monte Carlo oracle for the lambda_1 lambda_2 moment") {
  std::mt19937_64 rng(2026);
  auto unit = [&rng] { return static_cast<double>(rng() >> 11) / 9007199254740992.0; };
  double acc = 0;
  const int samples = 1000000;
  for (int i = 0; i < samples; ++i) {
    double a = unit(), b = unit();
    if (a + b > 1) {
      a = 1 - a;
      b = 1 - b;
    }
    acc += a * b;
  }
  double estimate = acc / samples;  // mean of lambda_1 lambda_2 over the triangle
  CHECK(std::abs(estimate - 1.0 / 12) < 1e-3);
}

TEST_CASE("density integral scales by realized area") {
  Mesh tri = make_simplex(2);
  PolyForm l1 = PolyForm::hat(kTriangle, 1);
  DensityIntegral integral = integrate_density(l1, tri.realization);
  CHECK(integral.volume == doctest::Approx(0.5));
  CHECK(integral.value() == doctest::Approx(0.5 / 3));
}

TEST_CASE("oriented integral of the top Whitney component is one") {
  for (const Simplex& host : {Simplex({0, 1}), kTriangle, kTetra}) {
    PolyForm w = PolyForm::whitney(host, host);
    CHECK(w.integrate_over_host() == 1);
  }
  CHECK_THROWS_AS(PolyForm::hat(kTriangle, 1).integrate_over_host(), std::invalid_argument);
}

TEST_CASE("koszul of constant one-forms") {
  PolyForm dl1 = PolyForm::hat_differential(kTriangle, 1);
  CHECK(dl1.koszul(0) == PolyForm::hat(kTriangle, 1));
  CHECK(dl1.koszul(1) == PolyForm::hat(kTriangle, 1) - PolyForm::constant(kTriangle, 1));
  CHECK_THROWS_WITH_AS(PolyForm::hat(kTriangle, 1).koszul(0), doctest::Contains("0-form"),
                       std::invalid_argument);
  CHECK_THROWS_AS(dl1.koszul(9), std::invalid_argument);
}

TEST_CASE("homotopy identity on the edge Whitney form") {
  PolyForm w = whitney_edge01_on_triangle();
  for (int base : {0, 1, 2}) {
    PolyForm recovered = w.derivative().koszul(base) + w.koszul(base).derivative();
    CHECK(recovered == w);
  }
}

TEST_CASE("homotopy identities on random forms, all base vertices") {
  std::mt19937_64 rng(53);
  for (const Simplex& host : {kTriangle, kTetra}) {
    for (int trial = 0; trial < 25; ++trial) {
      for (int base = 0; base <= host.dim(); ++base) {
        int k = 1 + static_cast<int>(rng() % host.dim());
        PolyForm u = oracle::random_polyform(host, k, 3, rng);
        CHECK(u.derivative().koszul(host.vertex(base)) + u.koszul(host.vertex(base)).derivative() ==
              u);
        PolyForm f = oracle::random_polyform(host, 0, 3, rng);
        PolyForm recovered = f.derivative().koszul(host.vertex(base));
        CHECK(recovered == f - PolyForm::constant(host, f.value_at_vertex(host.vertex(base))));
      }
    }
  }
}

TEST_CASE("pullback onto a subdivided edge reproduces evaluations") {
  // map the edge {0,1} onto its first half: target vertex 0 -> 0, 1 -> midpoint
  Simplex edge({0, 1});
  QMatrix b(2, 2);
  b.at(0, 0) = 1;
  b.at(0, 1) = Rational(1, 2);
  b.at(1, 0) = 0;
  b.at(1, 1) = Rational(1, 2);
  PolyForm u = PolyForm::hat(edge, 1);  // lambda_1
  PolyForm pulled = u.pullback_onto(edge, b);
  // at target barycentric (1-t, t), the source coordinate is t/2
  std::vector<Rational> at{Rational(1, 3)};
  CHECK(pulled.eval_component(at, {}) == Rational(1, 6));
  // pullback commutes with d
  CHECK(u.derivative().pullback_onto(edge, b) == pulled.derivative());
}

TEST_CASE("quadrature is exact to degree nine") {
  for (int dim = 1; dim <= 4; ++dim) {
    const QuadratureRule& rule = simplex_quadrature(dim);
    REQUIRE(rule.exactness_degree >= 8);
    // all monomials lambda^alpha with |alpha| <= 9 over positions 0..dim
    for (int total = 0; total <= 9; ++total) {
      std::vector<int> alpha(dim + 1, 0);
      std::function<void(int, int)> rec = [&](int pos, int remaining) {
        if (pos == dim) {
          alpha[pos] = remaining;
          Rational quad = 0;
          for (size_t q = 0; q < rule.nodes_exact.size(); ++q) {
            Rational term = rule.weights_exact[q];
            for (int i = 0; i <= dim; ++i)
              for (int rep = 0; rep < alpha[i]; ++rep) term *= rule.nodes_exact[q][i];
            quad += term;
          }
          Rational expected = factorial(static_cast<unsigned>(dim));
          for (int i = 0; i <= dim; ++i) expected *= factorial(static_cast<unsigned>(alpha[i]));
          expected /= factorial(static_cast<unsigned>(dim + total));
          CHECK(quad == expected);
          return;
        }
        for (int v = 0; v <= remaining; ++v) {
          alpha[pos] = v;
          rec(pos + 1, remaining - v);
        }
      };
      rec(0, total);
    }
  }
}

TEST_CASE("evaluable wrapper matches exact integration") {
  Mesh tetra = make_simplex(3);
  std::mt19937_64 rng(67);
  for (int k = 1; k <= 3; ++k) {
    CompatibleForm form(tetra.complex, k);
    for (const auto& s : tetra.complex.simplices(k))
      form.set_component(s, oracle::random_polyform(s, k, std::min(6, 8 - k), rng));
    EvaluableForm wrapped = EvaluableForm::from_compatible(form);
    for (const auto& s : tetra.complex.simplices(k)) {
      double exact = to_double(form.component(s).integrate_over_host());
      double quad = wrapped.integrate_over(s);
      CHECK(quad == doctest::Approx(exact).epsilon(1e-12));
    }
  }
}

TEST_CASE("degree ten monomial against the closed-form integral") {
  // integral over the edge of lambda_1^10 dlambda_1 = 1/11; degree ten
  // exceeds the rule's exactness so only 1e-6 relative agreement is claimed
  SimplicialComplex complex = SimplicialComplex::closure_of({{0, 1}});
  const Simplex& host = complex.simplex(1, 0);
  std::vector<FormTerm> terms(1);
  terms[0].alpha = {0, 10};
  terms[0].indices = {1};
  terms[0].coefficient = 1;
  CompatibleForm form(complex, 1);
  form.set_component(host, PolyForm::from_terms(host, 1, terms));
  EvaluableForm wrapped = EvaluableForm::from_compatible(form);
  double quad = wrapped.integrate_over(host);
  CHECK(std::abs(quad - 1.0 / 11) <= 1e-6 / 11);
}

TEST_CASE("compatible form checking catches broken traces") {
  Mesh tri = make_simplex(2);
  // hat of vertex 0 as a family: components on simplices containing 0 only
  CompatibleForm hat0(tri.complex, 0);
  for (int dim = 0; dim <= 2; ++dim)
    for (const auto& s : tri.complex.simplices(dim))
      if (s.contains_vertex(0)) hat0.set_component(s, PolyForm::hat(s, 0));
  CHECK(hat0.compatible());

  CompatibleForm bad = hat0;
  bad.set_component(tri.complex.simplex(0, 1), PolyForm::constant(tri.complex.simplex(0, 1), 5));
  std::string why;
  CHECK_FALSE(bad.compatible(&why));
  CHECK(!why.empty());
}

TEST_CASE("evaluable compatibility spot check accepts ambient forms") {
  Mesh torus = make_flat_torus(3, 3);
  EvaluableForm trig = EvaluableForm::from_ambient(
      torus.complex, torus.realization, 1,
      [](const Eigen::VectorXd& p, const Eigen::MatrixXd& t) {
        return std::sin(0.4 * p[0]) * t(1, 0) + 0.25 * std::cos(0.3 * p[2]) * t(3, 0);
      });
  CHECK(trig.spot_check_compatibility(20, 1e-9, 99));
}
