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

#include "feec/quadrature.hpp"

#include <map>
#include <mutex>
#include <stdexcept>

namespace feec {

namespace {

void enumerate_multi_indices(int slots, int total, std::vector<int>& current,
                             std::vector<std::vector<int>>& out) {
  if (slots == 1) {
    current.push_back(total);
    out.push_back(current);
    current.pop_back();
    return;
  }
  for (int v = 0; v <= total; ++v) {
    current.push_back(v);
    enumerate_multi_indices(slots - 1, total - v, current, out);
    current.pop_back();
  }
}

}  // namespace

QuadratureRule grundmann_moller(int dim, int s) {
  if (dim < 0 || s < 0) throw std::invalid_argument("bad quadrature parameters");
  QuadratureRule rule;
  rule.dim = dim;
  rule.exactness_degree = 2 * s + 1;
  const int n = dim;
  const int d = 2 * s + 1;
  Rational n_fact = factorial(static_cast<unsigned>(n));
  for (int i = 0; i <= s; ++i) {
    // weight (-1)^i (d+n-2i)^d / (2^{2s} i! (d+n-i)!), normalized by n!
    mpz_class numer;
    mpz_ui_pow_ui(numer.get_mpz_t(), static_cast<unsigned long>(d + n - 2 * i),
                  static_cast<unsigned long>(d));
    mpz_class two_pow;
    mpz_ui_pow_ui(two_pow.get_mpz_t(), 2, static_cast<unsigned long>(2 * s));
    Rational w(numer, two_pow);
    w.canonicalize();
    w /= factorial(static_cast<unsigned>(i));
    w /= factorial(static_cast<unsigned>(d + n - i));
    if (i % 2 == 1) w = -w;
    w *= n_fact;

    std::vector<std::vector<int>> betas;
    std::vector<int> current;
    enumerate_multi_indices(n + 1, s - i, current, betas);
    Rational denom(2 * (s - i) + n + 1);
    for (const auto& beta : betas) {
      std::vector<Rational> node(n + 1);
      for (int j = 0; j <= n; ++j) {
        node[j] = Rational(2 * beta[j] + 1) / denom;
        node[j].canonicalize();
      }
      rule.nodes_exact.push_back(std::move(node));
      rule.weights_exact.push_back(w);
    }
  }
  rule.nodes.reserve(rule.nodes_exact.size());
  rule.weights.reserve(rule.weights_exact.size());
  for (const auto& node : rule.nodes_exact) {
    std::vector<double> nd(node.size());
    for (size_t j = 0; j < node.size(); ++j) nd[j] = to_double(node[j]);
    rule.nodes.push_back(std::move(nd));
  }
  for (const auto& w : rule.weights_exact) rule.weights.push_back(to_double(w));
  return rule;
}

const QuadratureRule& simplex_quadrature(int dim) {
  static std::mutex mu;
  static std::map<int, QuadratureRule> cache;
  std::lock_guard<std::mutex> lock(mu);
  auto it = cache.find(dim);
  if (it == cache.end()) it = cache.emplace(dim, grundmann_moller(dim, 5)).first;
  return it->second;
}

}  // namespace feec
