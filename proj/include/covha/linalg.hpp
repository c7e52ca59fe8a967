#pragma once

#include <algorithm>
#include <cmath>
#include <complex>
#include <stdexcept>
#include <vector>

namespace covha {

using cplx = std::complex<double>;

/// Dense row-major complex matrix, sized for desk-scale problems (<= 64x64).
struct Matrix {
  int rows = 0;
  int cols = 0;
  std::vector<cplx> a;

  Matrix() = default;
  Matrix(int r, int c) : rows(r), cols(c), a(static_cast<size_t>(r) * c) {}

  cplx& operator()(int i, int j) { return a[static_cast<size_t>(i) * cols + j]; }
  const cplx& operator()(int i, int j) const { return a[static_cast<size_t>(i) * cols + j]; }

  static Matrix identity(int n) {
    Matrix m(n, n);
    for (int i = 0; i < n; ++i) m(i, i) = 1.0;
    return m;
  }
};

inline Matrix operator*(const Matrix& x, const Matrix& y) {
  if (x.cols != y.rows) throw std::invalid_argument("matrix product: shape mismatch");
  Matrix r(x.rows, y.cols);
  for (int i = 0; i < x.rows; ++i)
    for (int k = 0; k < x.cols; ++k) {
      const cplx xik = x(i, k);
      if (xik == cplx{}) continue;
      for (int j = 0; j < y.cols; ++j) r(i, j) += xik * y(k, j);
    }
  return r;
}

inline Matrix operator-(const Matrix& x, const Matrix& y) {
  if (x.rows != y.rows || x.cols != y.cols)
    throw std::invalid_argument("matrix difference: shape mismatch");
  Matrix r = x;
  for (size_t i = 0; i < r.a.size(); ++i) r.a[i] -= y.a[i];
  return r;
}

inline double max_abs(const Matrix& m) {
  double best = 0.0;
  for (const cplx& v : m.a) best = std::max(best, std::abs(v));
  return best;
}

inline Matrix adjoint(const Matrix& m) {
  Matrix r(m.cols, m.rows);
  for (int i = 0; i < m.rows; ++i)
    for (int j = 0; j < m.cols; ++j) r(j, i) = std::conj(m(i, j));
  return r;
}

/// Reduced row echelon form in place. Pivot threshold is relative to the
/// largest modulus of the input matrix. Returns the pivot column indices.
inline std::vector<int> rref(Matrix& m, double rel_tol = 1e-10) {
  std::vector<int> pivots;
  const double scale = max_abs(m);
  if (scale == 0.0) return pivots;
  const double tol = rel_tol * scale;
  int row = 0;
  for (int col = 0; col < m.cols && row < m.rows; ++col) {
    int p = -1;
    double best = tol;
    for (int i = row; i < m.rows; ++i) {
      const double v = std::abs(m(i, col));
      if (v > best) {
        best = v;
        p = i;
      }
    }
    if (p < 0) continue;
    if (p != row)
      for (int j = 0; j < m.cols; ++j) std::swap(m(p, j), m(row, j));
    const cplx inv_piv = 1.0 / m(row, col);
    for (int j = 0; j < m.cols; ++j) m(row, j) *= inv_piv;
    m(row, col) = 1.0;
    for (int i = 0; i < m.rows; ++i) {
      if (i == row) continue;
      const cplx f = m(i, col);
      if (f == cplx{}) continue;
      for (int j = 0; j < m.cols; ++j) m(i, j) -= f * m(row, j);
      m(i, col) = 0.0;
    }
    pivots.push_back(col);
    ++row;
  }
  return pivots;
}

inline int rank(Matrix m, double rel_tol = 1e-10) {
  return static_cast<int>(rref(m, rel_tol).size());
}

/// Basis of {x : m x = 0}, one vector per free column of the RREF.
inline std::vector<std::vector<cplx>> null_space(Matrix m, double rel_tol = 1e-10) {
  const std::vector<int> pivots = rref(m, rel_tol);
  std::vector<bool> is_pivot(m.cols, false);
  for (int c : pivots) is_pivot[c] = true;
  std::vector<std::vector<cplx>> basis;
  for (int fc = 0; fc < m.cols; ++fc) {
    if (is_pivot[fc]) continue;
    std::vector<cplx> x(m.cols, cplx{});
    x[fc] = 1.0;
    for (size_t k = 0; k < pivots.size(); ++k) x[pivots[k]] = -m(static_cast<int>(k), fc);
    basis.push_back(std::move(x));
  }
  return basis;
}

/// Gaussian elimination with partial pivoting; m must be square nonsingular.
inline std::vector<cplx> solve(Matrix m, std::vector<cplx> b) {
  if (m.rows != m.cols || static_cast<int>(b.size()) != m.rows)
    throw std::invalid_argument("solve: shape mismatch");
  const int n = m.rows;
  for (int col = 0; col < n; ++col) {
    int p = col;
    for (int i = col + 1; i < n; ++i)
      if (std::abs(m(i, col)) > std::abs(m(p, col))) p = i;
    if (std::abs(m(p, col)) == 0.0) throw std::runtime_error("solve: singular matrix");
    if (p != col) {
      for (int j = 0; j < n; ++j) std::swap(m(p, j), m(col, j));
      std::swap(b[p], b[col]);
    }
    for (int i = col + 1; i < n; ++i) {
      const cplx f = m(i, col) / m(col, col);
      if (f == cplx{}) continue;
      for (int j = col; j < n; ++j) m(i, j) -= f * m(col, j);
      b[i] -= f * b[col];
    }
  }
  std::vector<cplx> x(n);
  for (int i = n - 1; i >= 0; --i) {
    cplx s = b[i];
    for (int j = i + 1; j < n; ++j) s -= m(i, j) * x[j];
    x[i] = s / m(i, i);
  }
  return x;
}

/// Minimizer of |a x - b|_2 by normal equations; a must have full column rank.
inline std::vector<cplx> least_squares(const Matrix& a, const std::vector<cplx>& b) {
  if (static_cast<int>(b.size()) != a.rows)
    throw std::invalid_argument("least_squares: shape mismatch");
  Matrix g(a.cols, a.cols);
  std::vector<cplx> rhs(a.cols, cplx{});
  for (int i = 0; i < a.cols; ++i) {
    for (int j = 0; j < a.cols; ++j) {
      cplx s{};
      for (int k = 0; k < a.rows; ++k) s += std::conj(a(k, i)) * a(k, j);
      g(i, j) = s;
    }
    cplx s{};
    for (int k = 0; k < a.rows; ++k) s += std::conj(a(k, i)) * b[k];
    rhs[i] = s;
  }
  return solve(std::move(g), std::move(rhs));
}

}  // namespace covha
