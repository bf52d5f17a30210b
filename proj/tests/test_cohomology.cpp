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

#include <random>

#include "feec/cohomology.hpp"
#include "form_oracles.hpp"

using namespace feec;

TEST_CASE("betti numbers of the standard geometries") {
  CHECK(betti(whitney_complex(make_simplex(0).complex)) == std::vector<int>{1});
  for (int n = 1; n <= 4; ++n) {
    auto b = betti(whitney_complex(make_simplex(n).complex));
    std::vector<int> expected(n + 1, 0);
    expected[0] = 1;
    CHECK(b == expected);
  }
  for (int n = 1; n <= 3; ++n) {
    auto b = betti(whitney_complex(make_sphere(n).complex));
    std::vector<int> expected(n + 1, 0);
    expected[0] = 1;
    expected[n] = 1;
    CHECK(b == expected);
  }
  CHECK(betti(whitney_complex(make_flat_torus(3, 3).complex)) == std::vector<int>{1, 2, 1});
  CHECK(betti(whitney_complex(make_flat_torus(4, 4).complex)) == std::vector<int>{1, 2, 1});
  CHECK(betti(whitney_complex(make_book().complex)) == std::vector<int>{1, 0, 0});
  CHECK(betti(whitney_complex(make_circle(12).complex)) == std::vector<int>{1, 1});
}

TEST_CASE("betti rejects non-complexes") {
  CochainComplexView bad;
  bad.dims = {2, 2, 1};
  bad.d.emplace_back(2, 2);
  bad.d.emplace_back(1, 2);
  bad.d[0].at(0, 0) = 1;
  bad.d[1].at(0, 0) = 1;
  CHECK_THROWS_WITH_AS(betti(bad), doctest::Contains("not a complex"), std::invalid_argument);
}

TEST_CASE("euler characteristic both ways") {
  auto tor = whitney_complex(make_flat_torus(3, 3).complex);
  CHECK(euler_poincare(tor) == std::pair<int, int>{0, 0});
  auto book = whitney_complex(make_book().complex);
  CHECK(euler_poincare(book) == std::pair<int, int>{1, 1});
  auto s3 = whitney_complex(make_simplex(3).complex);
  CHECK(euler_poincare(s3) == std::pair<int, int>{1, 1});
}

TEST_CASE("relative cohomology of the simplex modulo its boundary") {
  for (int n = 1; n <= 4; ++n) {
    Mesh mesh = make_simplex(n);
    SimplicialComplex boundary = boundary_complex(mesh.complex.simplex(n, 0));
    auto b = betti(relative_complex(mesh.complex, boundary));
    std::vector<int> expected(n + 1, 0);
    expected[n] = 1;
    CHECK(b == expected);
  }
}

TEST_CASE("relative complex demands a subcomplex") {
  Mesh tri = make_simplex(2);
  SimplicialComplex other = SimplicialComplex::closure_of({{0, 1, 3}});
  CHECK_THROWS_AS(relative_complex(tri.complex, other), std::invalid_argument);
}

TEST_CASE("betti is invariant under barycentric subdivision") {
  for (const char* spec : {"simplex:2", "sphere:1", "book"}) {
    Mesh mesh = generate_mesh(spec);
    auto before = betti(whitney_complex(mesh.complex));
    auto sub = barycentric_subdivision(mesh.complex, mesh.realization);
    CHECK(betti(whitney_complex(sub.mesh.complex)) == before);
  }
}

TEST_CASE("high-order complexes reproduce the Whitney cohomology") {
  SUBCASE("order one is the incidence complex") {
    Mesh torus = make_flat_torus(3, 3);
    CochainComplexView ho = highorder_complex(torus.complex, 1);
    CochainComplexView w = whitney_complex(torus.complex);
    REQUIRE(ho.dims == w.dims);
    for (size_t k = 0; k < w.d.size(); ++k) CHECK(ho.d[k] == w.d[k]);
  }
  SUBCASE("orders two and three on small complexes") {
    for (const char* spec : {"simplex:2", "sphere:1"}) {
      Mesh mesh = generate_mesh(spec);
      auto expected = betti(whitney_complex(mesh.complex));
      for (int order : {2, 3}) CHECK(betti(highorder_complex(mesh.complex, order)) == expected);
    }
  }
}

TEST_CASE("connecting maps: filling the hollow triangle") {
  // K' = boundary of {0,1,2}; gluing the face relates the circle to a point
  SimplicialComplex hollow = boundary_complex(Simplex({0, 1, 2}));
  MayerVietorisReport report = mayer_vietoris_check(hollow, Simplex({0, 1, 2}));
  CHECK(report.ok);
  CHECK(report.betti_union == std::vector<int>{1, 0, 0});
  // the short sequences and the long sequence were verified at every degree
  CHECK(report.short_checks.size() == 3);
  for (const auto& chk : report.short_checks) {
    CHECK(chk.injective);
    CHECK(chk.middle_exact);
    CHECK(chk.surjective);
  }
  for (const auto& chk : report.long_checks) CHECK(chk.ok);
}

TEST_CASE("mayer-vietoris preconditions") {
  SimplicialComplex hollow = boundary_complex(Simplex({0, 1, 2}));
  CHECK_THROWS_AS(mayer_vietoris_check(hollow, Simplex({0, 1})), std::invalid_argument);
  CHECK_THROWS_AS(mayer_vietoris_check(hollow, Simplex({0, 1, 3})), std::invalid_argument);
}

TEST_CASE("gluing the last triangles of the torus") {
  Mesh torus = make_flat_torus(3, 3);
  const auto& tris = torus.complex.simplices(2);
  // remove the last triangle, keep all edges
  std::vector<std::vector<int>> cells;
  for (int i = 0; i + 1 < static_cast<int>(tris.size()); ++i) cells.push_back(tris[i].vertices());
  for (const auto& e : torus.complex.simplices(1)) cells.push_back(e.vertices());
  SimplicialComplex punctured = SimplicialComplex::closure_of(cells);
  CHECK(betti(whitney_complex(punctured)) == std::vector<int>{1, 2, 0});

  MayerVietorisReport report = mayer_vietoris_check(punctured, tris.back());
  CHECK(report.ok);
  CHECK(report.betti_union == std::vector<int>{1, 2, 1});
}

TEST_CASE("long exact sequence alternating sum for relative pairs") {
  // sum_k (-1)^k (b_k(K) - b_k(L) - b_k(K,L)) = 0
  for (const char* spec : {"simplex:2", "simplex:3", "book"}) {
    Mesh mesh = generate_mesh(spec);
    auto sub = boundary_complex(mesh.complex.facets().front());
    auto bk = betti(whitney_complex(mesh.complex));
    auto bl = betti(whitney_complex(sub));
    auto brel = betti(relative_complex(mesh.complex, sub));
    int acc = 0;
    for (size_t k = 0; k < bk.size(); ++k) {
      int sign = k % 2 == 0 ? 1 : -1;
      int l = k < bl.size() ? bl[k] : 0;
      acc += sign * (bk[k] - l - brel[k]);
    }
    CHECK(acc == 0);
  }
}

TEST_CASE("exactness witness closes the loop on closed forms") {
  std::mt19937_64 rng(29);
  const Simplex tetra({0, 1, 2, 3});
  for (int trial = 0; trial < 20; ++trial) {
    int k = static_cast<int>(rng() % 3);
    // an exact (hence closed) form of degree k+1
    PolyForm u = oracle::random_polyform(tetra, k, 3, rng).derivative();
    int base = tetra.vertex(static_cast<int>(rng() % 4));
    PolyForm v = simplex_exactness_witness(u, base);
    CHECK(v.derivative() == u);
  }
  // the witness for 2 dlambda_0 ^ dlambda_1 with base vertex 2
  PolyForm area = PolyForm::hat_differential(tetra, 0)
                      .wedge(PolyForm::hat_differential(tetra, 1))
                      .scaled(2);
  PolyForm witness = simplex_exactness_witness(area, 2);
  CHECK(witness.derivative() == area);
  // a non-closed form is rejected
  PolyForm not_closed = PolyForm::hat(tetra, 1).wedge(PolyForm::hat_differential(tetra, 2));
  CHECK_THROWS_AS(simplex_exactness_witness(not_closed, 0), std::invalid_argument);
}

TEST_CASE("cohomology data produces reproducible representatives") {
  Mesh torus = make_flat_torus(3, 3);
  CochainComplexView view = whitney_complex(torus.complex);
  CohomologyData data = cohomology_data(view);
  CHECK(data.betti == std::vector<int>{1, 2, 1});
  // representatives are cocycles and independent modulo coboundaries
  for (int k = 0; k <= 2; ++k) {
    if (k < 2) CHECK((view.d[k] * data.representatives[k]).is_zero());
    QMatrix aug = QMatrix::hstack(data.coboundaries[k], data.representatives[k]);
    CHECK(aug.rank() == data.coboundaries[k].cols() + data.betti[k]);
  }
  CohomologyData again = cohomology_data(view);
  for (int k = 0; k <= 2; ++k) CHECK(again.representatives[k] == data.representatives[k]);
}
