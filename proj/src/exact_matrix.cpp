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

#include "feec/exact_matrix.hpp"

#include <cctype>
#include <cmath>
#include <cstdio>
#include <stdexcept>

namespace feec {

Rational rational_from_double(double x) {
  if (!std::isfinite(x)) throw std::invalid_argument("non-finite double");
  Rational q;
  mpq_set_d(q.get_mpq_t(), x);
  return q;
}

Rational rational_from_string(std::string_view text) {
  auto bad = [&] { return std::invalid_argument("cannot parse rational: '" + std::string(text) + "'"); };
  if (text.empty()) throw bad();
  auto slash = text.find('/');
  if (slash != std::string_view::npos) {
    mpz_class num, den;
    if (num.set_str(std::string(text.substr(0, slash)), 10) != 0) throw bad();
    if (den.set_str(std::string(text.substr(slash + 1)), 10) != 0) throw bad();
    if (den == 0) throw bad();
    Rational q(num, den);
    q.canonicalize();
    return q;
  }
  // decimal with optional exponent
  size_t i = 0;
  bool neg = false;
  if (text[i] == '+' || text[i] == '-') {
    neg = text[i] == '-';
    ++i;
  }
  std::string digits;
  long frac_len = 0;
  bool any = false;
  for (; i < text.size() && std::isdigit(static_cast<unsigned char>(text[i])); ++i) {
    digits += text[i];
    any = true;
  }
  if (i < text.size() && text[i] == '.') {
    ++i;
    for (; i < text.size() && std::isdigit(static_cast<unsigned char>(text[i])); ++i) {
      digits += text[i];
      ++frac_len;
      any = true;
    }
  }
  if (!any) throw bad();
  long expo = 0;
  if (i < text.size() && (text[i] == 'e' || text[i] == 'E')) {
    ++i;
    bool eneg = false;
    if (i < text.size() && (text[i] == '+' || text[i] == '-')) {
      eneg = text[i] == '-';
      ++i;
    }
    if (i == text.size()) throw bad();
    for (; i < text.size() && std::isdigit(static_cast<unsigned char>(text[i])); ++i)
      expo = expo * 10 + (text[i] - '0');
    if (eneg) expo = -expo;
  }
  if (i != text.size()) throw bad();

  mpz_class mantissa;
  if (digits.empty()) digits = "0";
  mantissa.set_str(digits, 10);
  if (neg) mantissa = -mantissa;
  long ten_power = expo - frac_len;
  mpz_class pow10;
  mpz_ui_pow_ui(pow10.get_mpz_t(), 10, static_cast<unsigned long>(std::abs(ten_power)));
  Rational q = ten_power >= 0 ? Rational(mantissa * pow10) : Rational(mantissa, pow10);
  q.canonicalize();
  return q;
}

std::string rational_to_string(const Rational& q) {
  if (q.get_den() == 1) return q.get_num().get_str();
  return q.get_num().get_str() + "/" + q.get_den().get_str();
}

Rational factorial(unsigned n) {
  mpz_class f;
  mpz_fac_ui(f.get_mpz_t(), n);
  return Rational(f);
}

Rational binomial(unsigned n, unsigned k) {
  if (k > n) return 0;
  mpz_class b;
  mpz_bin_uiui(b.get_mpz_t(), n, k);
  return Rational(b);
}

QMatrix QMatrix::identity(int n) {
  QMatrix m(n, n);
  for (int i = 0; i < n; ++i) m.at(i, i) = 1;
  return m;
}

QMatrix QMatrix::from_double(const Eigen::MatrixXd& src) {
  QMatrix m(static_cast<int>(src.rows()), static_cast<int>(src.cols()));
  for (int r = 0; r < m.rows(); ++r)
    for (int c = 0; c < m.cols(); ++c) m.at(r, c) = rational_from_double(src(r, c));
  return m;
}

QMatrix QMatrix::transposed() const {
  QMatrix t(cols_, rows_);
  for (int r = 0; r < rows_; ++r)
    for (int c = 0; c < cols_; ++c) t.at(c, r) = at(r, c);
  return t;
}

QMatrix QMatrix::operator*(const QMatrix& rhs) const {
  if (cols_ != rhs.rows_) throw std::invalid_argument("QMatrix product shape mismatch");
  QMatrix out(rows_, rhs.cols_);
  for (int r = 0; r < rows_; ++r) {
    for (int k = 0; k < cols_; ++k) {
      const Rational& v = at(r, k);
      if (v == 0) continue;
      for (int c = 0; c < rhs.cols_; ++c) {
        if (rhs.at(k, c) == 0) continue;
        out.at(r, c) += v * rhs.at(k, c);
      }
    }
  }
  return out;
}

QMatrix QMatrix::operator+(const QMatrix& rhs) const {
  if (rows_ != rhs.rows_ || cols_ != rhs.cols_) throw std::invalid_argument("QMatrix sum shape mismatch");
  QMatrix out(rows_, cols_);
  for (size_t i = 0; i < a_.size(); ++i) out.a_[i] = a_[i] + rhs.a_[i];
  return out;
}

QMatrix QMatrix::operator-(const QMatrix& rhs) const {
  if (rows_ != rhs.rows_ || cols_ != rhs.cols_) throw std::invalid_argument("QMatrix diff shape mismatch");
  QMatrix out(rows_, cols_);
  for (size_t i = 0; i < a_.size(); ++i) out.a_[i] = a_[i] - rhs.a_[i];
  return out;
}

bool QMatrix::operator==(const QMatrix& rhs) const {
  return rows_ == rhs.rows_ && cols_ == rhs.cols_ && a_ == rhs.a_;
}

bool QMatrix::is_zero() const {
  for (const auto& v : a_)
    if (v != 0) return false;
  return true;
}

QMatrix QMatrix::hstack(const QMatrix& a, const QMatrix& b) {
  if (a.rows_ != b.rows_) throw std::invalid_argument("hstack row mismatch");
  QMatrix out(a.rows_, a.cols_ + b.cols_);
  for (int r = 0; r < a.rows_; ++r) {
    for (int c = 0; c < a.cols_; ++c) out.at(r, c) = a.at(r, c);
    for (int c = 0; c < b.cols_; ++c) out.at(r, a.cols_ + c) = b.at(r, c);
  }
  return out;
}

QMatrix QMatrix::vstack(const QMatrix& a, const QMatrix& b) {
  if (a.cols_ != b.cols_) throw std::invalid_argument("vstack col mismatch");
  QMatrix out(a.rows_ + b.rows_, a.cols_);
  for (int r = 0; r < a.rows_; ++r)
    for (int c = 0; c < a.cols_; ++c) out.at(r, c) = a.at(r, c);
  for (int r = 0; r < b.rows_; ++r)
    for (int c = 0; c < a.cols_; ++c) out.at(a.rows_ + r, c) = b.at(r, c);
  return out;
}

QMatrix QMatrix::columns(const std::vector<int>& idx) const {
  QMatrix out(rows_, static_cast<int>(idx.size()));
  for (int r = 0; r < rows_; ++r)
    for (size_t j = 0; j < idx.size(); ++j) out.at(r, static_cast<int>(j)) = at(r, idx[j]);
  return out;
}

QMatrix QMatrix::column(int j) const { return columns({j}); }

QEchelon QMatrix::reduced_echelon(bool with_transform) const {
  QEchelon e;
  e.rref = *this;
  if (with_transform) e.transform = identity(rows_);
  int pivot_row = 0;
  for (int col = 0; col < cols_ && pivot_row < rows_; ++col) {
    int sel = -1;
    for (int r = pivot_row; r < rows_; ++r) {
      if (e.rref.at(r, col) != 0) {
        sel = r;
        break;
      }
    }
    if (sel < 0) continue;
    if (sel != pivot_row) {
      for (int c = 0; c < cols_; ++c) std::swap(e.rref.at(sel, c), e.rref.at(pivot_row, c));
      if (with_transform)
        for (int c = 0; c < rows_; ++c) std::swap(e.transform.at(sel, c), e.transform.at(pivot_row, c));
    }
    Rational inv = 1 / e.rref.at(pivot_row, col);
    for (int c = col; c < cols_; ++c) e.rref.at(pivot_row, c) *= inv;
    if (with_transform)
      for (int c = 0; c < rows_; ++c) e.transform.at(pivot_row, c) *= inv;
    for (int r = 0; r < rows_; ++r) {
      if (r == pivot_row) continue;
      Rational f = e.rref.at(r, col);
      if (f == 0) continue;
      for (int c = col; c < cols_; ++c) {
        if (e.rref.at(pivot_row, c) == 0) continue;
        e.rref.at(r, c) -= f * e.rref.at(pivot_row, c);
      }
      if (with_transform)
        for (int c = 0; c < rows_; ++c) {
          if (e.transform.at(pivot_row, c) == 0) continue;
          e.transform.at(r, c) -= f * e.transform.at(pivot_row, c);
        }
    }
    e.pivot_cols.push_back(col);
    ++pivot_row;
  }
  e.rank = pivot_row;
  return e;
}

int QMatrix::rank() const { return reduced_echelon().rank; }

std::vector<int> QMatrix::pivot_columns() const { return reduced_echelon().pivot_cols; }

QMatrix QMatrix::kernel_basis() const {
  QEchelon e = reduced_echelon();
  std::vector<bool> is_pivot(cols_, false);
  for (int p : e.pivot_cols) is_pivot[p] = true;
  std::vector<int> free_cols;
  for (int c = 0; c < cols_; ++c)
    if (!is_pivot[c]) free_cols.push_back(c);
  QMatrix ker(cols_, static_cast<int>(free_cols.size()));
  for (size_t j = 0; j < free_cols.size(); ++j) {
    int fc = free_cols[j];
    ker.at(fc, static_cast<int>(j)) = 1;
    for (int i = 0; i < e.rank; ++i) ker.at(e.pivot_cols[i], static_cast<int>(j)) = -e.rref.at(i, fc);
  }
  return ker;
}

QMatrix QMatrix::column_space_basis() const { return columns(pivot_columns()); }

std::optional<QMatrix> QMatrix::solve(const QMatrix& rhs) const {
  if (rhs.rows_ != rows_) throw std::invalid_argument("solve shape mismatch");
  QMatrix aug = hstack(*this, rhs);
  QEchelon e = aug.reduced_echelon();
  // any pivot in the rhs block means inconsistency
  for (int p : e.pivot_cols)
    if (p >= cols_) return std::nullopt;
  QMatrix x(cols_, rhs.cols_);
  for (size_t i = 0; i < e.pivot_cols.size(); ++i)
    for (int c = 0; c < rhs.cols_; ++c) x.at(e.pivot_cols[i], c) = e.rref.at(static_cast<int>(i), cols_ + c);
  return x;
}

Rational QMatrix::determinant() const {
  if (rows_ != cols_) throw std::invalid_argument("determinant of non-square matrix");
  QMatrix m = *this;
  Rational det = 1;
  for (int col = 0; col < cols_; ++col) {
    int sel = -1;
    for (int r = col; r < rows_; ++r)
      if (m.at(r, col) != 0) {
        sel = r;
        break;
      }
    if (sel < 0) return 0;
    if (sel != col) {
      for (int c = 0; c < cols_; ++c) std::swap(m.at(sel, c), m.at(col, c));
      det = -det;
    }
    det *= m.at(col, col);
    Rational inv = 1 / m.at(col, col);
    for (int r = col + 1; r < rows_; ++r) {
      Rational f = m.at(r, col) * inv;
      if (f == 0) continue;
      for (int c = col; c < cols_; ++c) m.at(r, c) -= f * m.at(col, c);
    }
  }
  return det;
}

std::optional<QMatrix> QMatrix::inverse() const {
  if (rows_ != cols_) throw std::invalid_argument("inverse of non-square matrix");
  QEchelon e = reduced_echelon(true);
  if (e.rank != rows_) return std::nullopt;
  return e.transform;
}

Eigen::MatrixXd QMatrix::to_double() const {
  Eigen::MatrixXd m(rows_, cols_);
  for (int r = 0; r < rows_; ++r)
    for (int c = 0; c < cols_; ++c) m(r, c) = feec::to_double(at(r, c));
  return m;
}

bool same_column_space(const QMatrix& a, const QMatrix& b) {
  if (a.rows() != b.rows()) return false;
  int ra = a.rank();
  int rb = b.rank();
  if (ra != rb) return false;
  return QMatrix::hstack(a, b).rank() == ra;
}

}  // namespace feec
