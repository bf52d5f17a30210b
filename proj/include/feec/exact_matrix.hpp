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

#include <Eigen/Dense>
#include <optional>
#include <vector>

#include "feec/rational.hpp"

namespace feec {

struct QEchelon;

/// Dense matrix over exact rationals. Ranks, kernels and solves are exact;
/// there are no tolerances anywhere in this class. Pivoting is deterministic
/// (first non-zero row in column order), which makes kernel bases and
/// particular solutions reproducible byte-for-byte.
class QMatrix {
 public:
  QMatrix() = default;
  QMatrix(int rows, int cols) : rows_(rows), cols_(cols), a_(static_cast<size_t>(rows) * cols) {}

  static QMatrix identity(int n);
  static QMatrix from_double(const Eigen::MatrixXd& m);  // exact per entry

  int rows() const { return rows_; }
  int cols() const { return cols_; }

  Rational& at(int r, int c) { return a_[static_cast<size_t>(r) * cols_ + c]; }
  const Rational& at(int r, int c) const { return a_[static_cast<size_t>(r) * cols_ + c]; }

  QMatrix transposed() const;
  QMatrix operator*(const QMatrix& rhs) const;
  QMatrix operator+(const QMatrix& rhs) const;
  QMatrix operator-(const QMatrix& rhs) const;
  bool operator==(const QMatrix& rhs) const;
  bool is_zero() const;

  static QMatrix hstack(const QMatrix& a, const QMatrix& b);
  static QMatrix vstack(const QMatrix& a, const QMatrix& b);
  QMatrix columns(const std::vector<int>& idx) const;
  QMatrix column(int j) const;

  QEchelon reduced_echelon(bool with_transform = false) const;

  int rank() const;
  /// Columns span the kernel; built from the RREF with free variables set to
  /// unit vectors in column order.
  QMatrix kernel_basis() const;
  /// The pivot columns of *this (a deterministic basis of the column space).
  QMatrix column_space_basis() const;
  std::vector<int> pivot_columns() const;

  /// Particular solution of A X = B with free variables set to zero, or
  /// nullopt when the system is inconsistent.
  std::optional<QMatrix> solve(const QMatrix& rhs) const;

  Rational determinant() const;  // square only
  std::optional<QMatrix> inverse() const;

  Eigen::MatrixXd to_double() const;

 private:
  int rows_ = 0;
  int cols_ = 0;
  std::vector<Rational> a_;
};

struct QEchelon {
  QMatrix rref;       // reduced row echelon form
  QMatrix transform;  // T with T * A == rref (only when requested)
  std::vector<int> pivot_cols;
  int rank = 0;
};

/// True when the column spaces coincide (exact rank comparison of A, B and
/// [A|B]).
bool same_column_space(const QMatrix& a, const QMatrix& b);

}  // namespace feec
