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

#include <memory>
#include <string>
#include <vector>

#include "feec/polyform.hpp"
#include "feec/whitney.hpp"

namespace feec {

/// Raised for unreadable or ill-formed input files; the CLI maps it to the
/// "parse" error kind.
struct ParseError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// Deterministic JSON writer: keys in emission order, floats as %.17g,
/// rationals as "p/q" strings. Reports are byte-stable for fixed inputs.
class JsonWriter {
 public:
  JsonWriter& begin_object();
  JsonWriter& end_object();
  JsonWriter& begin_array();
  JsonWriter& end_array();
  JsonWriter& key(const std::string& name);
  JsonWriter& value(const std::string& s);
  JsonWriter& value(const char* s);
  JsonWriter& value(double x);
  JsonWriter& value(int x);
  JsonWriter& value(long x);
  JsonWriter& value(uint64_t x);
  JsonWriter& value(bool b);
  JsonWriter& value(const Rational& q);  // "p/q" string
  JsonWriter& raw_number(const std::string& literal);
  JsonWriter& null_value();
  std::string str() const { return out_; }

  static std::string format_double(double x);

 private:
  void separator();
  std::string out_;
  std::vector<bool> first_in_scope_;
  bool pending_key_ = false;
};

/// Mesh file schema: {"vertices": [[x,...],...], "cells": [[i,...],...]}.
/// Vertex numbers are parsed from their decimal literals into exact
/// rationals ("p/q" strings also accepted); cells are top-level simplices of
/// possibly mixed dimension; sparse vertex ids are remapped densely by
/// sorted order and the closure is computed on load.
Mesh parse_mesh_json(const std::string& text);
Mesh load_mesh_file(const std::string& path);
/// Exact serialization: coordinates whose denominator divides a power of
/// ten are written as decimal numbers, others as "p/q" strings.
std::string mesh_to_json(const Mesh& mesh);

/// Cochain schema: {"degree": k, "values": {"i0-...-ik": "p/q" | float}};
/// missing keys are zero.
Cochain parse_cochain_json(const std::string& text, const SimplicialComplex& complex);
std::string cochain_to_json(const Cochain& cochain, const SimplicialComplex& complex);

/// Compatible-form schema: {"degree": k, "components": {"i0-i1-...":
/// [{"alpha": [...], "I": [...], "coef": "p/q"}, ...]}}. Term indices are
/// positions 1..d with the canonical normal form.
CompatibleForm parse_form_json(const std::string& text, const SimplicialComplex& complex);
std::string form_to_json(const CompatibleForm& form);

std::string read_file(const std::string& path);
void write_file(const std::string& path, const std::string& text);

}  // namespace feec
