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

#include "feec/runner.hpp"

#include <json.hpp>

#include <algorithm>
#include <cmath>
#include <map>
#include <memory>
#include <set>

namespace feec {

namespace {

void write_int_array(JsonWriter& w, const std::vector<int>& values) {
  w.begin_array();
  for (int v : values) w.value(v);
  w.end_array();
}

void write_thresholds(JsonWriter& w, const Tolerances& tol) {
  w.key("thresholds").begin_object();
  for (const auto& [name, value] : tol.as_map()) w.key(name).value(value);
  w.end_object();
}

void write_spectral_report(JsonWriter& w, const SpectralReport& report) {
  w.begin_object();
  w.key("degree").value(report.degree);
  w.key("levels").begin_array();
  for (const auto& level : report.levels) {
    w.begin_object();
    w.key("h").value(level.h);
    w.key("poincare").value(level.poincare);
    w.key("infsup").value(level.infsup);
    w.key("harmonic_dim").value(level.harmonic_dim);
    w.key("gap").value(level.gap);
    w.end_object();
  }
  w.end_array();
  w.key("thresholds").begin_object();
  for (const auto& [name, value] : report.thresholds) w.key(name).value(value);
  w.end_object();
  w.end_object();
}

std::string diagnostic_for(const HarmonicMismatchError& err) {
  JsonWriter w;
  w.begin_object();
  w.key("error").value("harmonic/betti mismatch");
  w.key("degree").value(err.degree);
  w.key("nullspace_dim").value(err.nullspace_dim);
  w.key("betti").value(err.betti);
  w.key("singular_values").begin_array();
  for (int i = 0; i < err.singular_values.size(); ++i) w.value(err.singular_values(i));
  w.end_array();
  w.key("stacked_system").begin_array();
  for (int r = 0; r < err.stacked_system.rows(); ++r) {
    w.begin_array();
    for (int c = 0; c < err.stacked_system.cols(); ++c) w.value(err.stacked_system(r, c));
    w.end_array();
  }
  w.end_array();
  w.end_object();
  return w.str();
}

/// Re-throws harmonic mismatches as invariant errors with a JSON payload.
template <typename Fn>
auto with_diagnostics(Fn&& fn) {
  try {
    return fn();
  } catch (const HarmonicMismatchError& err) {
    throw InvariantError(err.what(), diagnostic_for(err));
  }
}

}  // namespace

std::optional<SimplicialComplex> boundary_subcomplex(const SimplicialComplex& complex) {
  const int top = complex.dimension();
  if (top == 0) return std::nullopt;
  std::map<Simplex, int> incident;
  for (const auto& cell : complex.simplices(top))
    for (int l = 0; l < cell.size(); ++l) ++incident[cell.face_without_position(l)];
  std::vector<std::vector<int>> cells;
  for (const auto& [face, count] : incident)
    if (count == 1) cells.push_back(face.vertices());
  if (cells.empty()) return std::nullopt;
  return SimplicialComplex::closure_of(cells);
}

SimplicialComplex parse_subcomplex_cells(const std::string& text) {
  nlohmann::json doc;
  try {
    doc = nlohmann::json::parse(text);
  } catch (const std::exception& e) {
    throw ParseError(std::string("parse: ") + e.what());
  }
  if (!doc.contains("cells") || !doc["cells"].is_array())
    throw ParseError("parse: subcomplex file needs a 'cells' array");
  std::vector<std::vector<int>> cells;
  for (const auto& cell : doc["cells"]) {
    std::vector<int> c;
    for (const auto& v : cell) c.push_back(v.get<int>());
    cells.push_back(std::move(c));
  }
  try {
    return SimplicialComplex::closure_of(cells);
  } catch (const std::exception& e) {
    throw ParseError(std::string("parse: ") + e.what());
  }
}

std::string run_check(const Mesh& mesh) {
  const SimplicialComplex& complex = mesh.complex;
  // closure by exhaustive subset scan
  for (int k = 0; k <= complex.dimension(); ++k)
    for (const auto& s : complex.simplices(k))
      for (const auto& face : s.proper_faces())
        if (!complex.contains(face))
          throw std::runtime_error("closure violation at " + s.key());
  mesh.realization.validate(complex);
  // coboundary invariants
  for (int k = 0; k + 1 < complex.dimension(); ++k) {
    QMatrix dk = coboundary_matrix(complex, k).to_rational();
    QMatrix dk1 = coboundary_matrix(complex, k + 1).to_rational();
    if (!(dk1 * dk).is_zero()) throw std::runtime_error("d.d != 0 at degree " + std::to_string(k));
  }
  for (int k = 0; k < complex.dimension(); ++k) {
    IncidenceMatrix m = coboundary_matrix(complex, k);
    for (int r = 0; r < m.rows; ++r) {
      int nonzeros = 0;
      for (int c = 0; c < m.cols; ++c)
        if (m.at(r, c) != 0) ++nonzeros;
      if (nonzeros != k + 2)
        throw std::runtime_error("incidence row " + std::to_string(r) + " has " +
                                 std::to_string(nonzeros) + " nonzeros");
    }
  }
  JsonWriter w;
  w.begin_object();
  w.key("ok").value(true);
  w.key("dimension").value(complex.dimension());
  w.key("counts");
  write_int_array(w, complex.euler_summands());
  w.key("vertices").value(complex.vertex_count());
  w.key("ambient_dim").value(mesh.realization.ambient_dim());
  w.end_object();
  return w.str();
}

std::string run_betti(const Mesh& mesh, int order) {
  if (order < 1) throw std::invalid_argument("order must be >= 1");
  CochainComplexView view =
      order == 1 ? whitney_complex(mesh.complex) : highorder_complex(mesh.complex, order);
  auto b = betti(view);
  auto [chi, chi2] = euler_poincare(view);
  JsonWriter w;
  w.begin_object();
  w.key("betti");
  write_int_array(w, b);
  w.key("euler").value(chi);
  w.key("dims");
  write_int_array(w, view.dims);
  if (order > 1) w.key("order").value(order);
  w.end_object();
  return w.str();
}

std::string run_relative_betti(const Mesh& mesh, const std::string& rel_spec) {
  std::optional<SimplicialComplex> sub;
  if (rel_spec == "boundary") {
    sub = boundary_subcomplex(mesh.complex);
  } else {
    sub = parse_subcomplex_cells(read_file(rel_spec));
  }
  JsonWriter w;
  w.begin_object();
  if (!sub) {
    // closed complex: relative and absolute cohomology coincide
    auto b = betti(whitney_complex(mesh.complex));
    w.key("betti");
    write_int_array(w, b);
    w.key("relative_to").value("empty");
  } else {
    CochainComplexView view = relative_complex(mesh.complex, *sub);
    auto b = betti(view);
    w.key("betti");
    write_int_array(w, b);
    w.key("relative_to").value(rel_spec);
    w.key("dims");
    write_int_array(w, view.dims);
  }
  w.end_object();
  return w.str();
}

namespace {

void write_mv_report(JsonWriter& w, const MayerVietorisReport& report) {
  w.begin_object();
  w.key("ok").value(report.ok);
  w.key("betti");
  write_int_array(w, report.betti_union);
  w.key("short_sequences").begin_array();
  for (const auto& chk : report.short_checks) {
    w.begin_object();
    w.key("degree").value(chk.degree);
    w.key("ok").value(chk.injective && chk.middle_exact && chk.surjective);
    w.key("ranks").begin_object();
    w.key("dim_a").value(chk.dim_a);
    w.key("dim_b").value(chk.dim_b);
    w.key("dim_c").value(chk.dim_c);
    w.key("rank_f").value(chk.rank_f);
    w.key("rank_g").value(chk.rank_g);
    w.end_object();
    w.end_object();
  }
  w.end_array();
  w.key("long_sequence").begin_array();
  for (const auto& chk : report.long_checks) {
    w.begin_object();
    w.key("degree").value(chk.degree);
    w.key("node").value(chk.node);
    w.key("ok").value(chk.ok);
    w.key("ranks").begin_object();
    w.key("in").value(chk.rank_in);
    w.key("out").value(chk.rank_out);
    w.key("dim").value(chk.dim_node);
    w.end_object();
    w.key("composite_zero").value(chk.composite_zero);
    w.end_object();
  }
  w.end_array();
  if (!report.detail.empty()) w.key("detail").value(report.detail);
  w.end_object();
}

}  // namespace

std::string run_mv_check(const Mesh& mesh, int steps) {
  const SimplicialComplex& complex = mesh.complex;
  const int top = complex.dimension();
  if (top < 1) throw std::invalid_argument("mv-check needs dimension >= 1");
  std::vector<Simplex> removable;
  for (const auto& s : complex.simplices(top)) removable.push_back(s);
  if (steps < 1 || steps > static_cast<int>(removable.size()))
    throw std::invalid_argument("mv-check steps out of range");
  std::vector<Simplex> removed(removable.end() - steps, removable.end());

  // keep every simplex except the removed top cells
  std::vector<std::vector<int>> cells;
  for (const auto& s : complex.simplices(top))
    if (std::find(removed.begin(), removed.end(), s) == removed.end()) cells.push_back(s.vertices());
  for (const auto& s : removed)
    for (int l = 0; l < s.size(); ++l) cells.push_back(s.face_without_position(l).vertices());
  SimplicialComplex current = SimplicialComplex::closure_of(cells);

  JsonWriter w;
  w.begin_object();
  w.key("steps").begin_array();
  bool all_ok = true;
  std::vector<int> final_betti;
  for (const auto& t : removed) {
    MayerVietorisReport report = mayer_vietoris_check(current, t);
    all_ok = all_ok && report.ok;
    final_betti = report.betti_union;
    w.begin_object();
    w.key("glued").value(t.key());
    w.key("report");
    write_mv_report(w, report);
    w.end_object();
    auto next_cells = current.facet_cells();
    next_cells.push_back(t.vertices());
    current = SimplicialComplex::closure_of(next_cells);
  }
  w.end_array();
  w.key("ok").value(all_ok);
  w.key("betti");
  write_int_array(w, final_betti);
  w.end_object();
  if (!all_ok) throw InvariantError("mayer-vietoris exactness failure", w.str());
  return w.str();
}

std::string run_wedge_check(const Mesh& mesh, int k, int m, int l, int n, int trials, uint64_t seed) {
  WedgeClosureReport report = verify_wedge_closure(mesh.complex, k, m, l, n, trials, seed);
  JsonWriter w;
  w.begin_object();
  w.key("degrees");
  write_int_array(w, {k, l});
  w.key("orders");
  write_int_array(w, {m, n});
  w.key("trials").value(report.trials);
  w.key("seed").value(report.seed);
  w.key("all_members").value(report.all_members);
  w.key("bracket_identity").value(report.bracket_identity_ok);
  w.key("failures").begin_array();
  for (const auto& fail : report.failures) {
    w.begin_object();
    w.key("trial").value(fail.trial);
    w.key("left").begin_array();
    for (const auto& c : fail.left_coefficients) w.value(c);
    w.end_array();
    w.key("right").begin_array();
    for (const auto& c : fail.right_coefficients) w.value(c);
    w.end_array();
    w.end_object();
  }
  w.end_array();
  w.end_object();
  return w.str();
}

std::string run_interpolate(const Mesh& mesh, const std::string& form_json) {
  CompatibleForm form = parse_form_json(form_json, mesh.complex);
  Cochain c = interpolate(mesh.complex, form);
  JsonWriter w;
  w.begin_object();
  w.key("degree").value(c.degree);
  w.key("values").begin_object();
  for (int i = 0; i < mesh.complex.count(c.degree); ++i) {
    if (c.values[i] == 0) continue;
    w.key(mesh.complex.simplex(c.degree, i).key()).value(c.values[i]);
  }
  w.end_object();
  w.end_object();
  return w.str();
}

std::string run_hodge(const Mesh& mesh, int degree, uint64_t seed, const std::string& cochain_json,
                      const Tolerances& tol) {
  return with_diagnostics([&] {
    HodgeContext ctx(mesh.complex, mesh.realization, tol);
    Eigen::VectorXd u;
    if (!cochain_json.empty()) {
      Cochain c = parse_cochain_json(cochain_json, mesh.complex);
      if (c.degree != degree) throw std::invalid_argument("cochain degree does not match -k");
      u = c.to_double();
    } else {
      ReportRng rng(seed);
      u.resize(mesh.complex.count(degree));
      for (int i = 0; i < u.size(); ++i) u[i] = rng.next_unit();
    }
    HodgeParts parts = hodge_decompose(ctx, degree, u);
    JsonWriter w;
    w.begin_object();
    w.key("degree").value(degree);
    w.key("seed").value(seed);
    w.key("norms").begin_object();
    w.key("input").value(parts.norm_input);
    w.key("exact").value(parts.norm_exact);
    w.key("harmonic").value(parts.norm_harmonic);
    w.key("residual").value(parts.norm_residual);
    w.end_object();
    w.key("reconstruction_rel").value(parts.reconstruction_rel);
    w.key("orthogonality_rel").value(parts.orthogonality_rel);
    write_thresholds(w, tol);
    w.end_object();
    return w.str();
  });
}

std::string run_harmonic(const Mesh& mesh, int degree, const Tolerances& tol) {
  return with_diagnostics([&] {
    HodgeContext ctx(mesh.complex, mesh.realization, tol);
    HarmonicBasis basis = harmonic_basis(ctx, degree);
    JsonWriter w;
    w.begin_object();
    w.key("degree").value(degree);
    w.key("harmonic_dim").value(basis.dimension());
    w.key("betti").value(ctx.betti()[degree]);
    w.key("basis").begin_array();
    for (int j = 0; j < basis.dimension(); ++j) {
      w.begin_array();
      for (int i = 0; i < basis.vectors.rows(); ++i) w.value(basis.vectors(i, j));
      w.end_array();
    }
    w.end_array();
    write_thresholds(w, tol);
    w.end_object();
    return w.str();
  });
}

namespace {

SpectralReport spectral_study_checked(const Mesh& mesh, int degree, int levels,
                                      const Tolerances& tol) {
  SpectralReport report = harmonic_gap_study(mesh, levels, degree, tol);
  for (const auto& level : report.levels) {
    if (level.poincare > 0 && level.infsup > 0) {
      double product = level.poincare * level.infsup;
      if (std::abs(product - 1.0) > tol.infsup_consistency)
        throw InvariantError("inf-sup/Poincare reciprocity violated: product " +
                                 JsonWriter::format_double(product),
                             "{}");
    }
  }
  return report;
}

}  // namespace

std::string run_poincare(const Mesh& mesh, int degree, int levels, const Tolerances& tol) {
  return with_diagnostics([&] {
    SpectralReport report = spectral_study_checked(mesh, degree, levels, tol);
    JsonWriter w;
    write_spectral_report(w, report);
    return w.str();
  });
}

std::string run_infsup(const Mesh& mesh, int degree, int levels, const Tolerances& tol) {
  return run_poincare(mesh, degree, levels, tol);
}

std::string run_gap_study(const Mesh& mesh, int degree, int levels, const Tolerances& tol) {
  return with_diagnostics([&] {
    SpectralReport report = harmonic_gap_study(mesh, levels, degree, tol);
    JsonWriter w;
    write_spectral_report(w, report);
    return w.str();
  });
}

std::string run_fortin(const Mesh& mesh, int degree, int levels, const Tolerances& tol) {
  return with_diagnostics([&] {
    if (levels < 1) throw std::invalid_argument("fortin needs at least one level");
    std::vector<Mesh> meshes{mesh};
    std::vector<QMatrix> p_k, p_k1;
    for (int j = 1; j < levels; ++j) {
      SubdivisionResult sub =
          barycentric_subdivision(meshes.back().complex, meshes.back().realization);
      p_k.push_back(subdivision_prolongation(meshes.back().complex, sub, degree));
      p_k1.push_back(subdivision_prolongation(meshes.back().complex, sub, degree + 1));
      meshes.push_back(std::move(sub.mesh));
    }

    JsonWriter w;
    w.begin_object();
    w.key("degree").value(degree);
    w.key("idempotence").begin_array();
    std::vector<std::unique_ptr<HodgeContext>> contexts;
    for (const auto& level_mesh : meshes)
      contexts.push_back(
          std::make_unique<HodgeContext>(level_mesh.complex, level_mesh.realization, tol));
    for (int j = 0; j < levels; ++j) {
      HodgeContext& ctx = *contexts[j];
      const int n = meshes[j].complex.count(degree);
      double worst = 0;
      for (int probe = 0; probe < std::min(5, n); ++probe) {
        Eigen::VectorXd u = Eigen::VectorXd::Zero(n);
        u[probe] = 1.0;
        Eigen::VectorXd proj = fortin_project(ctx, degree, u);
        double norm_u = ctx.mass_norm(degree, u);
        worst = std::max(worst, ctx.mass_norm(degree, u - proj) / norm_u);
      }
      Eigen::VectorXd ones = Eigen::VectorXd::Ones(n);
      worst = std::max(worst, ctx.mass_norm(degree, ones - fortin_project(ctx, degree, ones)) /
                                  ctx.mass_norm(degree, ones));
      w.begin_object();
      w.key("level").value(j);
      w.key("residual_rel").value(worst);
      w.end_object();
    }
    w.end_array();

    w.key("harmonic_pairs").begin_array();
    for (int j = 1; j < levels; ++j) {
      HodgeContext& coarse = *contexts[j - 1];
      HodgeContext& fine = *contexts[j];
      const HarmonicBasis& hb = fine.harmonic(degree);
      Eigen::MatrixXd pk = p_k[j - 1].to_double();
      Eigen::MatrixXd pk1 = p_k1[j - 1].to_double();
      double worst = 0;
      for (int col = 0; col < hb.dimension(); ++col) {
        Eigen::VectorXd u = hb.vectors.col(col);
        Eigen::VectorXd coarse_proj = fortin_project_fine(coarse, fine, pk, pk1, degree, u);
        Eigen::VectorXd back = pk * coarse_proj;
        worst = std::max(worst, fine.mass_norm(degree, u - back));
      }
      w.begin_object();
      w.key("coarse").value(j - 1);
      w.key("fine").value(j);
      w.key("max_error").value(worst);
      w.end_object();
    }
    w.end_array();
    write_thresholds(w, tol);
    w.end_object();
    return w.str();
  });
}

}  // namespace feec
