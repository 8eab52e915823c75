#pragma once

// Dense matrices over an exact field-like type K (rationals or rational
// functions).  All elimination is exact; a singular system is reported by
// throwing SingularMatrix rather than returning garbage.

#include <stdexcept>
#include <vector>

#include "qh/poly.hpp"

namespace qh {

struct SingularMatrix : std::domain_error {
  explicit SingularMatrix(const std::string& what) : std::domain_error(what) {}
};

template <class K>
class Matrix {
 public:
  Matrix() : rows_(0), cols_(0) {}
  Matrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), a_(rows * cols) {}
  static Matrix identity(std::size_t n) {
    Matrix m(n, n);
    for (std::size_t i = 0; i < n; ++i) m(i, i) = K(1);
    return m;
  }

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  K& operator()(std::size_t i, std::size_t j) { return a_[i * cols_ + j]; }
  const K& operator()(std::size_t i, std::size_t j) const { return a_[i * cols_ + j]; }

  friend Matrix operator+(const Matrix& x, const Matrix& y) {
    check_same(x, y);
    Matrix r(x.rows_, x.cols_);
    for (std::size_t i = 0; i < x.a_.size(); ++i) r.a_[i] = x.a_[i] + y.a_[i];
    return r;
  }
  friend Matrix operator-(const Matrix& x, const Matrix& y) {
    check_same(x, y);
    Matrix r(x.rows_, x.cols_);
    for (std::size_t i = 0; i < x.a_.size(); ++i) r.a_[i] = x.a_[i] - y.a_[i];
    return r;
  }
  friend Matrix operator*(const Matrix& x, const Matrix& y) {
    if (x.cols_ != y.rows_) throw std::invalid_argument("Matrix: size mismatch in product");
    Matrix r(x.rows_, y.cols_);
    for (std::size_t i = 0; i < x.rows_; ++i)
      for (std::size_t k = 0; k < x.cols_; ++k) {
        const K& xv = x(i, k);
        if (xv.is_zero()) continue;
        for (std::size_t j = 0; j < y.cols_; ++j) r(i, j) = r(i, j) + xv * y(k, j);
      }
    return r;
  }
  friend Matrix operator*(const Matrix& x, const K& s) {
    Matrix r(x.rows_, x.cols_);
    for (std::size_t i = 0; i < x.a_.size(); ++i) r.a_[i] = x.a_[i] * s;
    return r;
  }
  friend Matrix operator*(const K& s, const Matrix& x) { return x * s; }
  Matrix operator-() const {
    Matrix r(rows_, cols_);
    for (std::size_t i = 0; i < a_.size(); ++i) r.a_[i] = K() - a_[i];
    return r;
  }
  friend bool operator==(const Matrix& x, const Matrix& y) {
    return x.rows_ == y.rows_ && x.cols_ == y.cols_ && x.a_ == y.a_;
  }
  friend bool operator!=(const Matrix& x, const Matrix& y) { return !(x == y); }

  std::vector<K> apply(const std::vector<K>& v) const {
    if (v.size() != cols_) throw std::invalid_argument("Matrix: size mismatch in apply");
    std::vector<K> r(rows_);
    for (std::size_t i = 0; i < rows_; ++i)
      for (std::size_t j = 0; j < cols_; ++j)
        if (!(*this)(i, j).is_zero()) r[i] = r[i] + (*this)(i, j) * v[j];
    return r;
  }

  K trace() const {
    require_square();
    K t{};
    for (std::size_t i = 0; i < rows_; ++i) t = t + (*this)(i, i);
    return t;
  }

  // Exact row-reduction rank.  Successive eliminations re-reduce entries on
  // the fly (coefficients stay gcd-reduced in K), which keeps intermediate
  // growth under control.
  std::size_t rank() const {
    Matrix m = *this;
    std::size_t r = 0;
    for (std::size_t col = 0; col < cols_ && r < rows_; ++col) {
      std::size_t piv = r;
      while (piv < rows_ && m(piv, col).is_zero()) ++piv;
      if (piv == rows_) continue;
      m.swap_rows(piv, r);
      K inv = K(1) / m(r, col);
      for (std::size_t i = r + 1; i < rows_; ++i) {
        if (m(i, col).is_zero()) continue;
        K f = m(i, col) * inv;
        for (std::size_t j = col; j < cols_; ++j) m(i, j) = m(i, j) - f * m(r, j);
      }
      ++r;
    }
    return r;
  }

  // Solves A x = b exactly; throws SingularMatrix when A is not invertible.
  std::vector<K> solve(const std::vector<K>& b) const {
    require_square();
    if (b.size() != rows_) throw std::invalid_argument("Matrix::solve: size mismatch");
    Matrix m = *this;
    std::vector<K> rhs = b;
    for (std::size_t col = 0; col < cols_; ++col) {
      std::size_t piv = col;
      while (piv < rows_ && m(piv, col).is_zero()) ++piv;
      if (piv == rows_) throw SingularMatrix("Matrix::solve: singular system");
      m.swap_rows(piv, col);
      std::swap(rhs[piv], rhs[col]);
      K inv = K(1) / m(col, col);
      for (std::size_t j = col; j < cols_; ++j) m(col, j) = m(col, j) * inv;
      rhs[col] = rhs[col] * inv;
      for (std::size_t i = 0; i < rows_; ++i) {
        if (i == col || m(i, col).is_zero()) continue;
        K f = m(i, col);
        for (std::size_t j = col; j < cols_; ++j) m(i, j) = m(i, j) - f * m(col, j);
        rhs[i] = rhs[i] - f * rhs[col];
      }
    }
    return rhs;
  }

  Matrix inverse() const {
    require_square();
    Matrix m = *this, inv = identity(rows_);
    for (std::size_t col = 0; col < cols_; ++col) {
      std::size_t piv = col;
      while (piv < rows_ && m(piv, col).is_zero()) ++piv;
      if (piv == rows_) throw SingularMatrix("Matrix::inverse: singular matrix");
      m.swap_rows(piv, col);
      inv.swap_rows(piv, col);
      K s = K(1) / m(col, col);
      for (std::size_t j = 0; j < cols_; ++j) {
        m(col, j) = m(col, j) * s;
        inv(col, j) = inv(col, j) * s;
      }
      for (std::size_t i = 0; i < rows_; ++i) {
        if (i == col || m(i, col).is_zero()) continue;
        K f = m(i, col);
        for (std::size_t j = 0; j < cols_; ++j) {
          m(i, j) = m(i, j) - f * m(col, j);
          inv(i, j) = inv(i, j) - f * inv(col, j);
        }
      }
    }
    return inv;
  }

  K determinant() const {
    require_square();
    Matrix m = *this;
    K det = K(1);
    for (std::size_t col = 0; col < cols_; ++col) {
      std::size_t piv = col;
      while (piv < rows_ && m(piv, col).is_zero()) ++piv;
      if (piv == rows_) return K();
      if (piv != col) {
        m.swap_rows(piv, col);
        det = K() - det;
      }
      det = det * m(col, col);
      K inv = K(1) / m(col, col);
      for (std::size_t i = col + 1; i < rows_; ++i) {
        if (m(i, col).is_zero()) continue;
        K f = m(i, col) * inv;
        for (std::size_t j = col; j < cols_; ++j) m(i, j) = m(i, j) - f * m(col, j);
      }
    }
    return det;
  }

  // Basis of the null space (columns of the returned vectors).
  std::vector<std::vector<K>> kernel() const {
    Matrix m = *this;
    std::vector<long> pivot_of_col(cols_, -1);
    std::size_t r = 0;
    for (std::size_t col = 0; col < cols_ && r < rows_; ++col) {
      std::size_t piv = r;
      while (piv < rows_ && m(piv, col).is_zero()) ++piv;
      if (piv == rows_) continue;
      m.swap_rows(piv, r);
      K inv = K(1) / m(r, col);
      for (std::size_t j = 0; j < cols_; ++j) m(r, j) = m(r, j) * inv;
      for (std::size_t i = 0; i < rows_; ++i) {
        if (i == r || m(i, col).is_zero()) continue;
        K f = m(i, col);
        for (std::size_t j = 0; j < cols_; ++j) m(i, j) = m(i, j) - f * m(r, j);
      }
      pivot_of_col[col] = static_cast<long>(r);
      ++r;
    }
    std::vector<std::vector<K>> basis;
    for (std::size_t free_col = 0; free_col < cols_; ++free_col) {
      if (pivot_of_col[free_col] >= 0) continue;
      std::vector<K> v(cols_);
      v[free_col] = K(1);
      for (std::size_t col = 0; col < cols_; ++col)
        if (pivot_of_col[col] >= 0)
          v[col] = K() - m(static_cast<std::size_t>(pivot_of_col[col]), free_col);
      basis.push_back(std::move(v));
    }
    return basis;
  }

  // Characteristic polynomial det(lambda*I - A) by the trace recursion
  // (Faddeev-LeVerrier); exact over any field of characteristic zero.
  Poly<K> charpoly() const {
    require_square();
    const std::size_t n = rows_;
    std::vector<K> c(n + 1);
    c[n] = K(1);
    Matrix m(n, n); // running auxiliary matrix, starts at zero
    for (std::size_t k = 1; k <= n; ++k) {
      for (std::size_t i = 0; i < n; ++i) m(i, i) = m(i, i) + c[n - k + 1];
      m = (*this) * m;
      c[n - k] = (K() - m.trace()) / K(static_cast<long>(k));
    }
    return Poly<K>(std::move(c));
  }

 private:
  static void check_same(const Matrix& x, const Matrix& y) {
    if (x.rows_ != y.rows_ || x.cols_ != y.cols_) throw std::invalid_argument("Matrix: size mismatch");
  }
  void require_square() const {
    if (rows_ != cols_) throw std::invalid_argument("Matrix: square matrix required");
  }
  void swap_rows(std::size_t i, std::size_t j) {
    if (i == j) return;
    for (std::size_t k = 0; k < cols_; ++k) std::swap((*this)(i, k), (*this)(j, k));
  }
  std::size_t rows_, cols_;
  std::vector<K> a_;
};

} // namespace qh
