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

#include <CLI11.hpp>

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <memory>
#include <sstream>
#include <string>
#include <vector>

#include "feec/feec.h"

namespace {

struct MeshDeleter {
  void operator()(feec_mesh* m) const { feec_mesh_free(m); }
};
using MeshPtr = std::unique_ptr<feec_mesh, MeshDeleter>;

struct StringDeleter {
  void operator()(char* s) const { feec_string_free(s); }
};
using ApiString = std::unique_ptr<char, StringDeleter>;

struct Options {
  std::string input_path;
  std::string generate;
  std::string rel = "boundary";
  std::string output;
  std::string cochain_path;
  std::string form_path;
  std::vector<std::string> tolerance_overrides;
  int degree = 0;
  int order = 1;
  int levels = 1;
  int steps = 1;
  int trials = 100;
  int order_left = 1, order_right = 1, degree_right = 0;
  uint64_t seed = 0;
};

std::string json_escape(const std::string& s) {
  std::string out;
  for (char c : s) {
    switch (c) {
      case '"': out += "\\\""; break;
      case '\\': out += "\\\\"; break;
      case '\n': out += "\\n"; break;
      default: out += c;
    }
  }
  return out;
}

int emit(const Options& opt, const std::string& text) {
  if (opt.output.empty()) {
    std::cout << text << "\n";
  } else {
    std::ofstream out(opt.output, std::ios::binary);
    if (!out) {
      std::cerr << "cannot write " << opt.output << "\n";
      return 1;
    }
    out << text;
  }
  return 0;
}

int fail(const Options& opt, feec_status status) {
  const char* kind = status == FEEC_ERROR_PARSE ? "parse" : "domain";
  std::string report = std::string("{\"error\":{\"kind\":\"") + kind + "\",\"message\":\"" +
                       json_escape(feec_last_error()) + "\"";
  std::string diagnostic = feec_last_error_diagnostic();
  if (!diagnostic.empty() && diagnostic != "{}") {
    std::string sidecar = (opt.output.empty() ? std::string("feec") : opt.output) + ".diag.json";
    std::ofstream out(sidecar, std::ios::binary);
    if (out) {
      out << diagnostic;
      report += ",\"diagnostic\":\"" + json_escape(sidecar) + "\"";
    }
  }
  report += "}}";
  std::cout << report << "\n";
  return status == FEEC_ERROR_USAGE ? 2 : 1;
}

std::string read_file_or_die(const std::string& path, bool* ok) {
  std::ifstream in(path, std::ios::binary);
  if (!in) {
    *ok = false;
    return {};
  }
  std::ostringstream ss;
  ss << in.rdbuf();
  *ok = true;
  return ss.str();
}

MeshPtr acquire_mesh(const Options& opt, feec_status* status) {
  feec_mesh* raw = nullptr;
  if (!opt.generate.empty())
    *status = feec_mesh_generate(opt.generate.c_str(), &raw);
  else
    *status = feec_mesh_read_file(opt.input_path.c_str(), &raw);
  return MeshPtr(raw);
}

int apply_tolerances(const Options& opt) {
  for (const auto& spec : opt.tolerance_overrides) {
    auto eq = spec.find('=');
    if (eq == std::string::npos) return 2;
    std::string name = spec.substr(0, eq);
    char* end = nullptr;
    double value = std::strtod(spec.c_str() + eq + 1, &end);
    if (end == spec.c_str() + eq + 1 || *end != '\0') return 2;
    if (feec_set_tolerance(name.c_str(), value) != FEEC_OK) return 2;
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"finite element exterior calculus on simplicial complexes"};
  app.require_subcommand(1);
  Options opt;

  auto add_mesh_options = [&](CLI::App* cmd, bool mesh_required = true) {
    cmd->add_option("mesh", opt.input_path, "mesh JSON file");
    cmd->add_option("--generate", opt.generate,
                    "generator spec: simplex:N sphere:N circle:N torus:M,N book");
    cmd->add_option("-o,--output", opt.output, "write the report to a file instead of stdout");
    cmd->add_option("--tol", opt.tolerance_overrides, "tolerance override name=value")
        ->take_all();
    if (mesh_required) {
      cmd->callback([cmd, &opt] {
        if (opt.generate.empty() && opt.input_path.empty())
          throw CLI::ValidationError("either a mesh file or --generate is required");
      });
    }
  };

  auto* check = app.add_subcommand("check", "validate closure, realization, and coboundary laws");
  add_mesh_options(check);

  auto* betti = app.add_subcommand("betti", "exact cohomology dimensions");
  add_mesh_options(betti);
  betti->add_option("-n", opt.order, "space order: 1 = Whitney, n >= 2 = high-order");

  auto* relative = app.add_subcommand("relative-betti", "relative cohomology dimensions");
  add_mesh_options(relative);
  relative->add_option("--rel", opt.rel, "'boundary' or a {\"cells\":...} JSON file");

  auto* mv = app.add_subcommand("mv-check", "Mayer-Vietoris exactness while re-gluing top cells");
  add_mesh_options(mv);
  mv->add_option("--steps", opt.steps, "number of top cells to remove and re-glue");

  auto* wedge = app.add_subcommand("wedge-check", "wedge closure of high-order spaces");
  add_mesh_options(wedge);
  wedge->add_option("-k", opt.degree, "left form degree");
  wedge->add_option("-l", opt.degree_right, "right form degree");
  wedge->add_option("-m", opt.order_left, "left order");
  wedge->add_option("-n", opt.order_right, "right order");
  wedge->add_option("--trials", opt.trials, "random trials");
  wedge->add_option("--seed", opt.seed, "random seed");

  auto* interp = app.add_subcommand("interpolate", "canonical interpolation of a form file");
  add_mesh_options(interp);
  interp->add_option("--form", opt.form_path, "compatible form JSON file")->required();

  auto* hodge = app.add_subcommand("hodge", "Hodge decomposition of a cochain");
  add_mesh_options(hodge);
  hodge->add_option("-k", opt.degree, "cochain degree");
  hodge->add_option("--seed", opt.seed, "seed for the random input cochain");
  hodge->add_option("--cochain", opt.cochain_path, "cochain JSON file (instead of random)");

  auto* harmonic = app.add_subcommand("harmonic", "discrete harmonic basis");
  add_mesh_options(harmonic);
  harmonic->add_option("-k", opt.degree, "degree");

  auto* poincare = app.add_subcommand("poincare", "discrete Poincare constants across levels");
  add_mesh_options(poincare);
  poincare->add_option("-k", opt.degree, "degree");
  poincare->add_option("--levels", opt.levels, "subdivision levels");

  auto* infsup = app.add_subcommand("infsup", "inf-sup constants across levels");
  add_mesh_options(infsup);
  infsup->add_option("-k", opt.degree, "degree");
  infsup->add_option("--levels", opt.levels, "subdivision levels");

  auto* fortin = app.add_subcommand("fortin", "Fortin projection experiments");
  add_mesh_options(fortin);
  fortin->add_option("-k", opt.degree, "degree");
  fortin->add_option("--levels", opt.levels, "subdivision levels");

  auto* gap = app.add_subcommand("gap-study", "harmonic-space gaps across levels");
  add_mesh_options(gap);
  gap->add_option("-k", opt.degree, "degree");
  gap->add_option("--levels", opt.levels, "subdivision levels");

  auto* refine = app.add_subcommand("refine", "one barycentric subdivision, emitted as mesh JSON");
  add_mesh_options(refine);

  auto* generate = app.add_subcommand("generate", "emit a generated mesh as JSON");
  generate->add_option("--generate", opt.generate, "generator spec")->required();
  generate->add_option("-o,--output", opt.output, "write to a file instead of stdout");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : 2;  // usage errors exit with 2; --help with 0
  }

  if (int rc = apply_tolerances(opt); rc != 0) {
    std::cout << "{\"error\":{\"kind\":\"usage\",\"message\":\"bad tolerance override\"}}\n";
    return rc;
  }

  feec_status status = FEEC_OK;
  MeshPtr mesh;
  if (!generate->parsed()) {
    mesh = acquire_mesh(opt, &status);
    if (status != FEEC_OK || !mesh) return fail(opt, status);
  }

  ApiString report;
  char* raw = nullptr;

  if (check->parsed()) {
    status = feec_check(mesh.get(), &raw);
  } else if (betti->parsed()) {
    status = feec_betti(mesh.get(), opt.order, &raw);
  } else if (relative->parsed()) {
    status = feec_relative_betti(mesh.get(), opt.rel.c_str(), &raw);
  } else if (mv->parsed()) {
    status = feec_mv_check(mesh.get(), opt.steps, &raw);
  } else if (wedge->parsed()) {
    status = feec_wedge_check(mesh.get(), opt.degree, opt.order_left, opt.degree_right,
                              opt.order_right, opt.trials, opt.seed, &raw);
  } else if (interp->parsed()) {
    bool ok = false;
    std::string form = read_file_or_die(opt.form_path, &ok);
    if (!ok) {
      std::cout << "{\"error\":{\"kind\":\"parse\",\"message\":\"cannot read form file\"}}\n";
      return 1;
    }
    status = feec_interpolate(mesh.get(), form.c_str(), &raw);
  } else if (hodge->parsed()) {
    std::string cochain;
    if (!opt.cochain_path.empty()) {
      bool ok = false;
      cochain = read_file_or_die(opt.cochain_path, &ok);
      if (!ok) {
        std::cout << "{\"error\":{\"kind\":\"parse\",\"message\":\"cannot read cochain file\"}}\n";
        return 1;
      }
    }
    status = feec_hodge(mesh.get(), opt.degree, opt.seed,
                        opt.cochain_path.empty() ? nullptr : cochain.c_str(), &raw);
  } else if (harmonic->parsed()) {
    status = feec_harmonic(mesh.get(), opt.degree, &raw);
  } else if (poincare->parsed()) {
    status = feec_poincare(mesh.get(), opt.degree, opt.levels, &raw);
  } else if (infsup->parsed()) {
    status = feec_infsup(mesh.get(), opt.degree, opt.levels, &raw);
  } else if (fortin->parsed()) {
    status = feec_fortin(mesh.get(), opt.degree, opt.levels, &raw);
  } else if (gap->parsed()) {
    status = feec_gap_study(mesh.get(), opt.degree, opt.levels, &raw);
  } else if (refine->parsed()) {
    feec_mesh* fine = nullptr;
    status = feec_mesh_subdivide(mesh.get(), &fine);
    MeshPtr fine_ptr(fine);
    if (status == FEEC_OK) status = feec_mesh_to_json(fine_ptr.get(), &raw);
  } else if (generate->parsed()) {
    feec_mesh* generated = nullptr;
    status = feec_mesh_generate(opt.generate.c_str(), &generated);
    MeshPtr gen_ptr(generated);
    if (status == FEEC_OK) status = feec_mesh_to_json(gen_ptr.get(), &raw);
  }

  report.reset(raw);
  if (status != FEEC_OK) return fail(opt, status);
  return emit(opt, report.get());
}
