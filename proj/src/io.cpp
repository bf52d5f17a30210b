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

#include "feec/io.hpp"

#include <json.hpp>

#include <cstdio>
#include <fstream>
#include <map>
#include <set>
#include <sstream>

namespace feec {

namespace {

/// SAX-built JSON value that keeps the literal text of every number, so
/// decimal literals can be turned into exact rationals.
struct JNode {
  enum Kind { Null, Boolean, Number, String, Array, Object } kind = Null;
  bool boolean = false;
  std::string literal;  // numbers: raw token; strings: decoded text
  std::vector<JNode> items;
  std::vector<std::pair<std::string, JNode>> fields;

  const JNode* find(const std::string& name) const {
    for (const auto& [k, v] : fields)
      if (k == name) return &v;
    return nullptr;
  }
};

struct SaxBuilder : nlohmann::json_sax<nlohmann::json> {
  JNode root;
  std::vector<JNode*> stack;
  std::string pending_key;

  JNode* place() {
    if (stack.empty()) return &root;
    JNode* top = stack.back();
    if (top->kind == JNode::Array) {
      top->items.emplace_back();
      return &top->items.back();
    }
    top->fields.emplace_back(pending_key, JNode{});
    return &top->fields.back().second;
  }

  bool null() override {
    place()->kind = JNode::Null;
    return true;
  }
  bool boolean(bool b) override {
    JNode* n = place();
    n->kind = JNode::Boolean;
    n->boolean = b;
    return true;
  }
  bool number_integer(number_integer_t v) override {
    JNode* n = place();
    n->kind = JNode::Number;
    n->literal = std::to_string(v);
    return true;
  }
  bool number_unsigned(number_unsigned_t v) override {
    JNode* n = place();
    n->kind = JNode::Number;
    n->literal = std::to_string(v);
    return true;
  }
  bool number_float(number_float_t, const string_t& s) override {
    JNode* n = place();
    n->kind = JNode::Number;
    n->literal = s;
    return true;
  }
  bool string(string_t& s) override {
    JNode* n = place();
    n->kind = JNode::String;
    n->literal = s;
    return true;
  }
  bool binary(binary_t&) override { return false; }
  bool start_object(std::size_t) override {
    JNode* n = place();
    n->kind = JNode::Object;
    stack.push_back(n);
    return true;
  }
  bool key(string_t& s) override {
    pending_key = s;
    return true;
  }
  bool end_object() override {
    stack.pop_back();
    return true;
  }
  bool start_array(std::size_t) override {
    JNode* n = place();
    n->kind = JNode::Array;
    stack.push_back(n);
    return true;
  }
  bool end_array() override {
    stack.pop_back();
    return true;
  }
  bool parse_error(std::size_t position, const std::string&,
                   const nlohmann::detail::exception& ex) override {
    throw ParseError("parse: invalid JSON at byte " + std::to_string(position) + ": " + ex.what());
  }
};

JNode parse_tree(const std::string& text) {
  SaxBuilder builder;
  if (!nlohmann::json::sax_parse(text, &builder))
    throw ParseError("parse: invalid JSON document");
  return builder.root;
}

Rational node_to_rational(const JNode& node, const char* what) {
  if (node.kind == JNode::Number || node.kind == JNode::String) {
    try {
      return rational_from_string(node.literal);
    } catch (const std::exception& e) {
      throw ParseError(std::string("parse: bad ") + what + ": " + e.what());
    }
  }
  throw ParseError(std::string("parse: expected number or string for ") + what);
}

long node_to_long(const JNode& node, const char* what) {
  if (node.kind != JNode::Number) throw ParseError(std::string("parse: expected integer ") + what);
  try {
    size_t used = 0;
    long v = std::stol(node.literal, &used);
    if (used != node.literal.size()) throw std::invalid_argument("trailing characters");
    return v;
  } catch (const std::exception&) {
    throw ParseError(std::string("parse: bad integer ") + what + " '" + node.literal + "'");
  }
}

Simplex simplex_from_key(const std::string& key) {
  std::vector<int> verts;
  size_t pos = 0;
  while (pos <= key.size()) {
    size_t dash = key.find('-', pos);
    std::string tok = key.substr(pos, dash == std::string::npos ? key.size() - pos : dash - pos);
    try {
      verts.push_back(std::stoi(tok));
    } catch (const std::exception&) {
      throw ParseError("parse: bad simplex key '" + key + "'");
    }
    if (dash == std::string::npos) break;
    pos = dash + 1;
  }
  try {
    return Simplex(std::move(verts));
  } catch (const std::exception& e) {
    throw ParseError("parse: bad simplex key '" + key + "': " + e.what());
  }
}

}  // namespace

JsonWriter& JsonWriter::begin_object() {
  separator();
  out_ += '{';
  first_in_scope_.push_back(true);
  return *this;
}

JsonWriter& JsonWriter::end_object() {
  out_ += '}';
  first_in_scope_.pop_back();
  return *this;
}

JsonWriter& JsonWriter::begin_array() {
  separator();
  out_ += '[';
  first_in_scope_.push_back(true);
  return *this;
}

JsonWriter& JsonWriter::end_array() {
  out_ += ']';
  first_in_scope_.pop_back();
  return *this;
}

void JsonWriter::separator() {
  if (pending_key_) {
    pending_key_ = false;
    return;
  }
  if (first_in_scope_.empty()) return;
  if (!first_in_scope_.back()) out_ += ',';
  first_in_scope_.back() = false;
}

JsonWriter& JsonWriter::key(const std::string& name) {
  separator();
  out_ += '"';
  out_ += name;
  out_ += "\":";
  pending_key_ = true;
  return *this;
}

JsonWriter& JsonWriter::value(const std::string& s) {
  separator();
  out_ += '"';
  for (char c : s) {
    switch (c) {
      case '"': out_ += "\\\""; break;
      case '\\': out_ += "\\\\"; break;
      case '\n': out_ += "\\n"; break;
      case '\t': out_ += "\\t"; break;
      case '\r': out_ += "\\r"; break;
      default:
        if (static_cast<unsigned char>(c) < 0x20) {
          char buf[8];
          std::snprintf(buf, sizeof(buf), "\\u%04x", c);
          out_ += buf;
        } else {
          out_ += c;
        }
    }
  }
  out_ += '"';
  return *this;
}

JsonWriter& JsonWriter::value(const char* s) { return value(std::string(s)); }

std::string JsonWriter::format_double(double x) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.17g", x);
  std::string s(buf);
  // keep the output valid JSON
  if (s.find_first_of(".eE") == std::string::npos && s.find_first_of("0123456789") != std::string::npos)
    return s;
  if (s == "inf" || s == "-inf" || s == "nan") throw std::invalid_argument("non-finite report value");
  return s;
}

JsonWriter& JsonWriter::value(double x) {
  separator();
  out_ += format_double(x);
  return *this;
}

JsonWriter& JsonWriter::value(int x) {
  separator();
  out_ += std::to_string(x);
  return *this;
}

JsonWriter& JsonWriter::value(long x) {
  separator();
  out_ += std::to_string(x);
  return *this;
}

JsonWriter& JsonWriter::value(uint64_t x) {
  separator();
  out_ += std::to_string(x);
  return *this;
}

JsonWriter& JsonWriter::value(bool b) {
  separator();
  out_ += b ? "true" : "false";
  return *this;
}

JsonWriter& JsonWriter::value(const Rational& q) { return value(rational_to_string(q)); }

JsonWriter& JsonWriter::raw_number(const std::string& literal) {
  separator();
  out_ += literal;
  return *this;
}

JsonWriter& JsonWriter::null_value() {
  separator();
  out_ += "null";
  return *this;
}

Mesh parse_mesh_json(const std::string& text) {
  JNode root = parse_tree(text);
  if (root.kind != JNode::Object) throw ParseError("parse: mesh document must be an object");
  const JNode* vertices = root.find("vertices");
  const JNode* cells = root.find("cells");
  if (!vertices || vertices->kind != JNode::Array)
    throw ParseError("parse: mesh needs a 'vertices' array");
  if (!cells || cells->kind != JNode::Array) throw ParseError("parse: mesh needs a 'cells' array");
  if (vertices->items.empty()) throw ParseError("parse: empty vertex list");

  int ambient = -1;
  std::vector<std::vector<Rational>> coords;
  for (const auto& row : vertices->items) {
    if (row.kind != JNode::Array) throw ParseError("parse: vertex rows must be arrays");
    if (ambient < 0)
      ambient = static_cast<int>(row.items.size());
    else if (ambient != static_cast<int>(row.items.size()))
      throw ParseError("parse: inconsistent vertex dimensions");
    std::vector<Rational> p;
    for (const auto& x : row.items) p.push_back(node_to_rational(x, "vertex coordinate"));
    coords.push_back(std::move(p));
  }

  std::vector<std::vector<int>> raw_cells;
  std::set<long> used;
  for (const auto& cell : cells->items) {
    if (cell.kind != JNode::Array) throw ParseError("parse: cells must be arrays");
    std::vector<int> c;
    for (const auto& v : cell.items) {
      long id = node_to_long(v, "cell vertex id");
      if (id < 0 || id >= static_cast<long>(coords.size()))
        throw ParseError("parse: cell vertex id out of range");
      used.insert(id);
      c.push_back(static_cast<int>(id));
    }
    raw_cells.push_back(std::move(c));
  }
  if (raw_cells.empty()) throw ParseError("parse: empty complex");

  // dense remap by sorted order; only referenced vertices survive
  std::map<long, int> remap;
  std::vector<std::vector<Rational>> dense_coords;
  for (long id : used) {
    remap[id] = static_cast<int>(dense_coords.size());
    dense_coords.push_back(coords[static_cast<size_t>(id)]);
  }
  for (auto& cell : raw_cells)
    for (auto& v : cell) v = remap.at(v);

  Mesh mesh;
  try {
    mesh.complex = SimplicialComplex::closure_of(raw_cells);
    mesh.realization = AffineRealization(ambient, std::move(dense_coords));
    mesh.realization.validate(mesh.complex);
  } catch (const ParseError&) {
    throw;
  } catch (const std::exception& e) {
    throw ParseError(std::string("parse: ") + e.what());
  }
  return mesh;
}

Mesh load_mesh_file(const std::string& path) { return parse_mesh_json(read_file(path)); }

namespace {

/// Exact decimal form when the denominator divides a power of ten.
std::optional<std::string> decimal_literal(const Rational& q) {
  mpz_class den = q.get_den();
  int twos = 0, fives = 0;
  while (mpz_divisible_ui_p(den.get_mpz_t(), 2)) {
    mpz_divexact_ui(den.get_mpz_t(), den.get_mpz_t(), 2);
    ++twos;
  }
  while (mpz_divisible_ui_p(den.get_mpz_t(), 5)) {
    mpz_divexact_ui(den.get_mpz_t(), den.get_mpz_t(), 5);
    ++fives;
  }
  if (den != 1) return std::nullopt;
  int digits = std::max(twos, fives);
  if (digits > 24) return std::nullopt;
  mpz_class scale;
  mpz_ui_pow_ui(scale.get_mpz_t(), 10, static_cast<unsigned>(digits));
  mpz_class scaled = q.get_num() * scale / q.get_den();
  std::string body = mpz_class(abs(scaled)).get_str();
  std::string sign = scaled < 0 ? "-" : "";
  if (digits == 0) return sign + body;
  while (static_cast<int>(body.size()) <= digits) body.insert(body.begin(), '0');
  body.insert(body.size() - digits, ".");
  return sign + body;
}

}  // namespace

std::string mesh_to_json(const Mesh& mesh) {
  JsonWriter w;
  w.begin_object();
  w.key("vertices").begin_array();
  for (int v = 0; v < mesh.realization.vertex_count(); ++v) {
    w.begin_array();
    for (const auto& x : mesh.realization.coordinate(v)) {
      if (auto dec = decimal_literal(x))
        w.raw_number(*dec);
      else
        w.value(x);
    }
    w.end_array();
  }
  w.end_array();
  w.key("cells").begin_array();
  for (const auto& cell : mesh.complex.facet_cells()) {
    w.begin_array();
    for (int v : cell) w.value(v);
    w.end_array();
  }
  w.end_array();
  w.end_object();
  return w.str();
}

Cochain parse_cochain_json(const std::string& text, const SimplicialComplex& complex) {
  JNode root = parse_tree(text);
  if (root.kind != JNode::Object) throw ParseError("parse: cochain document must be an object");
  const JNode* degree = root.find("degree");
  const JNode* values = root.find("values");
  if (!degree) throw ParseError("parse: cochain needs 'degree'");
  if (!values || values->kind != JNode::Object) throw ParseError("parse: cochain needs 'values'");
  Cochain c;
  c.degree = static_cast<int>(node_to_long(*degree, "degree"));
  if (c.degree < 0 || c.degree > complex.dimension())
    throw ParseError("parse: cochain degree out of range");
  c.values.assign(complex.count(c.degree), Rational(0));
  for (const auto& [key, node] : values->fields) {
    Simplex s = simplex_from_key(key);
    int idx = complex.index_of(s);
    if (idx < 0) throw ParseError("parse: cochain key '" + key + "' not in complex");
    if (s.dim() != c.degree) throw ParseError("parse: cochain key degree mismatch");
    c.values[idx] = node_to_rational(node, "cochain value");
    if (node.kind == JNode::Number && node.literal.find_first_of(".eE") != std::string::npos)
      c.float_tagged = true;
  }
  return c;
}

std::string cochain_to_json(const Cochain& cochain, const SimplicialComplex& complex) {
  JsonWriter w;
  w.begin_object();
  w.key("degree").value(cochain.degree);
  w.key("values").begin_object();
  for (int i = 0; i < complex.count(cochain.degree); ++i) {
    const Rational& v = cochain.values[i];
    if (v == 0) continue;
    w.key(complex.simplex(cochain.degree, i).key());
    if (cochain.float_tagged)
      w.value(to_double(v));
    else
      w.value(v);
  }
  w.end_object();
  w.end_object();
  return w.str();
}

CompatibleForm parse_form_json(const std::string& text, const SimplicialComplex& complex) {
  JNode root = parse_tree(text);
  if (root.kind != JNode::Object) throw ParseError("parse: form document must be an object");
  const JNode* degree = root.find("degree");
  const JNode* components = root.find("components");
  if (!degree) throw ParseError("parse: form needs 'degree'");
  if (!components || components->kind != JNode::Object)
    throw ParseError("parse: form needs 'components'");
  int k = static_cast<int>(node_to_long(*degree, "degree"));
  if (k < 0 || k > complex.dimension()) throw ParseError("parse: form degree out of range");
  CompatibleForm form(complex, k);
  for (const auto& [key, comp] : components->fields) {
    Simplex host = simplex_from_key(key);
    if (!complex.contains(host)) throw ParseError("parse: component host '" + key + "' not in complex");
    if (comp.kind != JNode::Array) throw ParseError("parse: component must be a term array");
    std::vector<FormTerm> terms;
    for (const auto& term : comp.items) {
      if (term.kind != JNode::Object) throw ParseError("parse: term must be an object");
      const JNode* alpha = term.find("alpha");
      const JNode* tuple = term.find("I");
      const JNode* coef = term.find("coef");
      if (!alpha || alpha->kind != JNode::Array || !tuple || tuple->kind != JNode::Array || !coef)
        throw ParseError("parse: term needs alpha, I, coef");
      FormTerm ft;
      ft.alpha.assign(host.dim() + 1, 0);
      if (static_cast<int>(alpha->items.size()) != host.dim())
        throw ParseError("parse: alpha length must be the host dimension");
      for (size_t i = 0; i < alpha->items.size(); ++i)
        ft.alpha[i + 1] = static_cast<int>(node_to_long(alpha->items[i], "alpha entry"));
      for (const auto& ix : tuple->items)
        ft.indices.push_back(static_cast<int>(node_to_long(ix, "I entry")));
      ft.coefficient = node_to_rational(*coef, "term coefficient");
      terms.push_back(std::move(ft));
    }
    form.set_component(host, PolyForm::from_terms(host, k, terms));
  }
  std::string why;
  if (!form.compatible(&why)) throw ParseError("parse: form is not trace compatible: " + why);
  return form;
}

std::string form_to_json(const CompatibleForm& form) {
  JsonWriter w;
  w.begin_object();
  w.key("degree").value(form.degree());
  w.key("components").begin_object();
  for (const auto& [s, f] : form.components()) {
    if (f.is_zero()) continue;
    w.key(s.key()).begin_array();
    for (const auto& [key, c] : f.terms()) {
      w.begin_object();
      w.key("alpha").begin_array();
      for (uint8_t a : key.alpha) w.value(static_cast<int>(a));
      w.end_array();
      w.key("I").begin_array();
      for (uint8_t i : key.index_tuple) w.value(static_cast<int>(i));
      w.end_array();
      w.key("coef").value(c);
      w.end_object();
    }
    w.end_array();
  }
  w.end_object();
  w.end_object();
  return w.str();
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ParseError("parse: cannot read '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_file(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write '" + path + "'");
  out << text;
  out.flush();
  if (!out) throw std::runtime_error("write failed for '" + path + "'");
}

}  // namespace feec
