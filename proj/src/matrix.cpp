// SPDX-License-Identifier: Apache-2.0
#include "qvolt/matrix.hpp"

#include <cmath>

#include "qvolt/kernels.hpp"

namespace qvolt {

Matrix Matrix::identity(std::size_t n) {
  Matrix m(n, n);
  for (std::size_t i = 0; i < n; ++i) m.at(i, i) = Complex(1.0, 0.0);
  return m;
}

Matrix Matrix::from_rows(const std::vector<CVec>& rows) {
  if (rows.empty()) return Matrix();
  Matrix m(rows.size(), rows[0].size());
  for (std::size_t r = 0; r < rows.size(); ++r) {
    if (rows[r].size() != m.cols_) throw Error("from_rows: ragged rows");
    for (std::size_t c = 0; c < m.cols_; ++c) m.at(r, c) = rows[r][c];
  }
  return m;
}

Matrix Matrix::from_columns(const std::vector<CVec>& cols) {
  if (cols.empty()) return Matrix();
  Matrix m(cols[0].size(), cols.size());
  for (std::size_t c = 0; c < cols.size(); ++c) {
    if (cols[c].size() != m.rows_) throw Error("from_columns: ragged columns");
    for (std::size_t r = 0; r < m.rows_; ++r) m.at(r, c) = cols[c][r];
  }
  return m;
}

Matrix Matrix::diag(const CVec& d) {
  Matrix m(d.size(), d.size());
  for (std::size_t i = 0; i < d.size(); ++i) m.at(i, i) = d[i];
  return m;
}

Matrix Matrix::kron(const Matrix& a, const Matrix& b) {
  Matrix m(a.rows_ * b.rows_, a.cols_ * b.cols_);
  for (std::size_t i = 0; i < a.rows_; ++i) {
    for (std::size_t j = 0; j < a.cols_; ++j) {
      const Complex aij = a.at(i, j);
      if (aij == Complex(0.0, 0.0)) continue;
      for (std::size_t p = 0; p < b.rows_; ++p) {
        Complex* out = &m.at(i * b.rows_ + p, j * b.cols_);
        const Complex* in = &b.at(p, 0);
        for (std::size_t q = 0; q < b.cols_; ++q) out[q] = aij * in[q];
      }
    }
  }
  return m;
}

Matrix Matrix::operator*(const Matrix& rhs) const {
  if (cols_ != rhs.rows_) throw Error("matrix product: shape mismatch");
  Matrix out(rows_, rhs.cols_);
  if (!data_.empty() && !rhs.data_.empty()) {
    kernels::zgemm(data_.data(), rhs.data_.data(), out.data_.data(), rows_,
                   cols_, rhs.cols_);
  }
  return out;
}

Matrix Matrix::operator+(const Matrix& rhs) const {
  if (!same_shape(rhs)) throw Error("matrix sum: shape mismatch");
  Matrix out = *this;
  for (std::size_t i = 0; i < data_.size(); ++i) out.data_[i] += rhs.data_[i];
  return out;
}

Matrix Matrix::operator-(const Matrix& rhs) const {
  if (!same_shape(rhs)) throw Error("matrix difference: shape mismatch");
  Matrix out = *this;
  for (std::size_t i = 0; i < data_.size(); ++i) out.data_[i] -= rhs.data_[i];
  return out;
}

Matrix Matrix::operator*(Complex s) const {
  Matrix out = *this;
  for (auto& v : out.data_) v *= s;
  return out;
}

Matrix operator*(Complex s, const Matrix& m) { return m * s; }

Matrix Matrix::transpose() const {
  Matrix out(cols_, rows_);
  for (std::size_t r = 0; r < rows_; ++r)
    for (std::size_t c = 0; c < cols_; ++c) out.at(c, r) = at(r, c);
  return out;
}

Matrix Matrix::conj() const {
  Matrix out = *this;
  for (auto& v : out.data_) v = std::conj(v);
  return out;
}

Matrix Matrix::dagger() const {
  Matrix out(cols_, rows_);
  for (std::size_t r = 0; r < rows_; ++r)
    for (std::size_t c = 0; c < cols_; ++c) out.at(c, r) = std::conj(at(r, c));
  return out;
}

CVec Matrix::apply(const CVec& x) const {
  if (x.size() != cols_) throw Error("matrix apply: shape mismatch");
  CVec y(rows_, Complex(0.0, 0.0));
  if (!data_.empty())
    kernels::zgemm(data_.data(), x.data(), y.data(), rows_, cols_, 1);
  return y;
}

CVec Matrix::column(std::size_t c) const {
  CVec v(rows_);
  for (std::size_t r = 0; r < rows_; ++r) v[r] = at(r, c);
  return v;
}

CVec Matrix::row(std::size_t r) const {
  CVec v(cols_);
  for (std::size_t c = 0; c < cols_; ++c) v[c] = at(r, c);
  return v;
}

void Matrix::set_column(std::size_t c, const CVec& v) {
  if (v.size() != rows_) throw Error("set_column: shape mismatch");
  for (std::size_t r = 0; r < rows_; ++r) at(r, c) = v[r];
}

double Matrix::max_abs() const {
  double m = 0.0;
  for (const auto& v : data_) m = std::max(m, std::abs(v));
  return m;
}

double Matrix::frobenius() const {
  double s = 0.0;
  for (const auto& v : data_) s += std::norm(v);
  return std::sqrt(s);
}

double max_abs_diff(const Matrix& a, const Matrix& b) {
  if (!a.same_shape(b)) throw Error("max_abs_diff: shape mismatch");
  double m = 0.0;
  for (std::size_t r = 0; r < a.rows(); ++r)
    for (std::size_t c = 0; c < a.cols(); ++c)
      m = std::max(m, std::abs(a.at(r, c) - b.at(r, c)));
  return m;
}

double max_abs_diff(const CVec& a, const CVec& b) {
  if (a.size() != b.size()) throw Error("max_abs_diff: size mismatch");
  double m = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i)
    m = std::max(m, std::abs(a[i] - b[i]));
  return m;
}

double max_abs(const CVec& v) {
  double m = 0.0;
  for (const auto& x : v) m = std::max(m, std::abs(x));
  return m;
}

CVec kron_vec(const CVec& a, const CVec& b) {
  CVec out(a.size() * b.size());
  std::size_t k = 0;
  for (const auto& x : a)
    for (const auto& y : b) out[k++] = x * y;
  return out;
}

CVec add(const CVec& a, const CVec& b) {
  if (a.size() != b.size()) throw Error("vector sum: size mismatch");
  CVec out = a;
  for (std::size_t i = 0; i < b.size(); ++i) out[i] += b[i];
  return out;
}

CVec sub(const CVec& a, const CVec& b) {
  if (a.size() != b.size()) throw Error("vector difference: size mismatch");
  CVec out = a;
  for (std::size_t i = 0; i < b.size(); ++i) out[i] -= b[i];
  return out;
}

CVec scale(Complex s, const CVec& a) {
  CVec out = a;
  for (auto& v : out) v *= s;
  return out;
}

Complex dot(const CVec& a, const CVec& b) {
  if (a.size() != b.size()) throw Error("dot: size mismatch");
  Complex s(0.0, 0.0);
  for (std::size_t i = 0; i < a.size(); ++i) s += std::conj(a[i]) * b[i];
  return s;
}

CVec unit_vec(std::size_t dim, std::size_t k) {
  CVec v(dim, Complex(0.0, 0.0));
  v[k] = Complex(1.0, 0.0);
  return v;
}

}  // namespace qvolt
