// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <complex>
#include <cstddef>
#include <stdexcept>
#include <string>
#include <vector>

namespace qvolt {

using Complex = std::complex<double>;
using CVec = std::vector<Complex>;

/// Error for malformed inputs (dimension mismatches, schema violations,
/// violated structural preconditions). Carries a human-readable message.
class Error : public std::runtime_error {
 public:
  explicit Error(const std::string& what) : std::runtime_error(what) {}
};

/// Dense complex matrix, row-major. Products route through the kernel layer.
class Matrix {
 public:
  Matrix() = default;
  Matrix(std::size_t rows, std::size_t cols)
      : rows_(rows), cols_(cols), data_(rows * cols, Complex(0.0, 0.0)) {}

  static Matrix identity(std::size_t n);
  static Matrix zeros(std::size_t rows, std::size_t cols) {
    return Matrix(rows, cols);
  }
  static Matrix from_rows(const std::vector<CVec>& rows);
  /// Matrix with the given columns (each of equal length).
  static Matrix from_columns(const std::vector<CVec>& cols);
  static Matrix diag(const CVec& d);
  static Matrix kron(const Matrix& a, const Matrix& b);

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  bool empty() const { return data_.empty(); }

  Complex& at(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }
  const Complex& at(std::size_t r, std::size_t c) const {
    return data_[r * cols_ + c];
  }

  Complex* data() { return data_.data(); }
  const Complex* data() const { return data_.data(); }

  Matrix operator*(const Matrix& rhs) const;
  Matrix operator+(const Matrix& rhs) const;
  Matrix operator-(const Matrix& rhs) const;
  Matrix operator*(Complex s) const;
  Matrix operator-() const { return *this * Complex(-1.0, 0.0); }

  Matrix transpose() const;
  Matrix conj() const;
  /// Conjugate transpose.
  Matrix dagger() const;

  CVec apply(const CVec& x) const;
  CVec column(std::size_t c) const;
  CVec row(std::size_t r) const;
  void set_column(std::size_t c, const CVec& v);

  double max_abs() const;
  double frobenius() const;

  bool same_shape(const Matrix& o) const {
    return rows_ == o.rows_ && cols_ == o.cols_;
  }

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  CVec data_;
};

Matrix operator*(Complex s, const Matrix& m);

/// Entrywise max-norm of a - b.
double max_abs_diff(const Matrix& a, const Matrix& b);
double max_abs_diff(const CVec& a, const CVec& b);
double max_abs(const CVec& v);

CVec kron_vec(const CVec& a, const CVec& b);
CVec add(const CVec& a, const CVec& b);
CVec sub(const CVec& a, const CVec& b);
CVec scale(Complex s, const CVec& a);
/// Standard (unweighted) inner product, conjugate-linear in the first slot.
Complex dot(const CVec& a, const CVec& b);
CVec unit_vec(std::size_t dim, std::size_t k);

}  // namespace qvolt
