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

#include <gmpxx.h>

#include <cstdint>
#include <stdexcept>
#include <string>
#include <string_view>

namespace feec {

/// Exact rational scalar used by every combinatorial and symbolic layer.
/// Geometry (volumes, eigenvalues) enters only after an explicit conversion
/// to double.
using Rational = mpq_class;

inline double to_double(const Rational& q) { return q.get_d(); }

inline Rational rational_of(long num, long den = 1) {
  if (den == 0) throw std::invalid_argument("rational with zero denominator");
  Rational q(num, den);
  q.canonicalize();
  return q;
}

/// Exact conversion; every finite double is a rational.
Rational rational_from_double(double x);

/// Parses "p", "p/q", or a decimal string with optional exponent
/// ("-3.25e-2" -> -13/400). Decimal digits are taken literally, so the result
/// is the exact decimal value, not a binary approximation.
Rational rational_from_string(std::string_view text);

/// "p" when the denominator is 1, else "p/q".
std::string rational_to_string(const Rational& q);

Rational factorial(unsigned n);
Rational binomial(unsigned n, unsigned k);

}  // namespace feec
