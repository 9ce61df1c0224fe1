// SPDX-License-Identifier: Apache-2.0
#include "qvolt/linalg.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

namespace qvolt {

LuFactors::LuFactors(Matrix a) : lu_(std::move(a)) {
  if (lu_.rows() != lu_.cols()) throw Error("lu: matrix not square");
  const std::size_t n = lu_.rows();
  perm_.resize(n);
  std::iota(perm_.begin(), perm_.end(), std::size_t{0});
  for (std::size_t col = 0; col < n; ++col) {
    std::size_t pivot = col;
    double best = std::abs(lu_.at(col, col));
    for (std::size_t r = col + 1; r < n; ++r) {
      const double v = std::abs(lu_.at(r, col));
      if (v > best) {
        best = v;
        pivot = r;
      }
    }
    if (best == 0.0) throw Error("lu: singular matrix");
    if (pivot != col) {
      for (std::size_t c = 0; c < n; ++c)
        std::swap(lu_.at(pivot, c), lu_.at(col, c));
      std::swap(perm_[pivot], perm_[col]);
    }
    const Complex d = lu_.at(col, col);
    for (std::size_t r = col + 1; r < n; ++r) {
      const Complex f = lu_.at(r, col) / d;
      lu_.at(r, col) = f;
      if (f == Complex(0.0, 0.0)) continue;
      for (std::size_t c = col + 1; c < n; ++c)
        lu_.at(r, c) -= f * lu_.at(col, c);
    }
  }
}

CVec LuFactors::solve(const CVec& b) const {
  const std::size_t n = dim();
  if (b.size() != n) throw Error("lu solve: size mismatch");
  CVec y(n);
  for (std::size_t r = 0; r < n; ++r) {
    Complex s = b[perm_[r]];
    for (std::size_t c = 0; c < r; ++c) s -= lu_.at(r, c) * y[c];
    y[r] = s;
  }
  for (std::size_t ri = n; ri-- > 0;) {
    Complex s = y[ri];
    for (std::size_t c = ri + 1; c < n; ++c) s -= lu_.at(ri, c) * y[c];
    y[ri] = s / lu_.at(ri, ri);
  }
  return y;
}

Matrix LuFactors::solve(const Matrix& b) const {
  if (b.rows() != dim()) throw Error("lu solve: shape mismatch");
  Matrix x(b.rows(), b.cols());
  for (std::size_t c = 0; c < b.cols(); ++c) x.set_column(c, solve(b.column(c)));
  return x;
}

Matrix inverse(const Matrix& a) {
  return LuFactors(a).solve(Matrix::identity(a.rows()));
}

namespace {

double off_diagonal_norm(const Matrix& a) {
  double s = 0.0;
  for (std::size_t r = 0; r < a.rows(); ++r)
    for (std::size_t c = 0; c < a.cols(); ++c)
      if (r != c) s += std::norm(a.at(r, c));
  return std::sqrt(s);
}

}  // namespace

HermitianEigen eigh(const Matrix& input) {
  if (input.rows() != input.cols()) throw Error("eigh: matrix not square");
  const std::size_t n = input.rows();
  Matrix a = (input + input.dagger()) * Complex(0.5, 0.0);
  Matrix v = Matrix::identity(n);
  const double scale = std::max(a.max_abs(), 1e-300);
  const double stop = 1e-15 * scale * static_cast<double>(n);

  for (int sweep = 0; sweep < 100 && off_diagonal_norm(a) > stop; ++sweep) {
    for (std::size_t p = 0; p + 1 < n; ++p) {
      for (std::size_t q = p + 1; q < n; ++q) {
        const Complex apq = a.at(p, q);
        const double g = std::abs(apq);
        if (g <= 1e-18 * scale) continue;
        // Phase rotation makes the 2x2 pivot real symmetric, then a Givens
        // rotation annihilates it.
        const Complex phase = apq / g;
        const double app = a.at(p, p).real();
        const double aqq = a.at(q, q).real();
        const double tau = (aqq - app) / (2.0 * g);
        const double t =
            (tau >= 0.0 ? 1.0 : -1.0) / (std::abs(tau) + std::hypot(1.0, tau));
        const double c = 1.0 / std::hypot(1.0, t);
        const double s = t * c;
        // Column rotation R: columns p,q; R_pp = c*phase, R_qp = -s*conj?..
        // Built as U * J with U = diag(phase, 1), J the real Givens block.
        const Complex rpp = phase * c;
        const Complex rpq = phase * s;
        const Complex rqp = Complex(-s, 0.0);
        const Complex rqq = Complex(c, 0.0);
        // A <- R^H A R, applied as rows then columns.
        for (std::size_t j = 0; j < n; ++j) {
          const Complex xp = a.at(p, j);
          const Complex xq = a.at(q, j);
          a.at(p, j) = std::conj(rpp) * xp + std::conj(rqp) * xq;
          a.at(q, j) = std::conj(rpq) * xp + std::conj(rqq) * xq;
        }
        for (std::size_t i = 0; i < n; ++i) {
          const Complex xp = a.at(i, p);
          const Complex xq = a.at(i, q);
          a.at(i, p) = xp * rpp + xq * rqp;
          a.at(i, q) = xp * rpq + xq * rqq;
          const Complex vp = v.at(i, p);
          const Complex vq = v.at(i, q);
          v.at(i, p) = vp * rpp + vq * rqp;
          v.at(i, q) = vp * rpq + vq * rqq;
        }
        a.at(p, q) = Complex(0.0, 0.0);
        a.at(q, p) = Complex(0.0, 0.0);
      }
    }
  }

  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::sort(order.begin(), order.end(), [&](std::size_t x, std::size_t y) {
    return a.at(x, x).real() < a.at(y, y).real();
  });

  HermitianEigen out;
  out.values.resize(n);
  out.vectors = Matrix(n, n);
  for (std::size_t k = 0; k < n; ++k) {
    out.values[k] = a.at(order[k], order[k]).real();
    out.vectors.set_column(k, v.column(order[k]));
  }
  return out;
}

Matrix nullspace(const Matrix& m, double cutoff) {
  const Matrix gram = m.dagger() * m;
  const HermitianEigen eig = eigh(gram);
  std::vector<CVec> cols;
  for (std::size_t k = 0; k < eig.values.size(); ++k) {
    if (eig.values[k] < cutoff * cutoff) cols.push_back(eig.vectors.column(k));
  }
  if (cols.empty()) return Matrix(m.cols(), 0);
  return Matrix::from_columns(cols);
}

std::vector<std::pair<std::size_t, std::size_t>> cluster_sorted(
    const std::vector<double>& values, double gap) {
  std::vector<std::pair<std::size_t, std::size_t>> out;
  std::size_t begin = 0;
  for (std::size_t i = 1; i <= values.size(); ++i) {
    if (i == values.size() || values[i] - values[i - 1] > gap) {
      out.emplace_back(begin, i);
      begin = i;
    }
  }
  return out;
}

}  // namespace qvolt
