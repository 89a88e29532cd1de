#pragma once

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <utility>
#include <vector>

#include "fedo/core/scalar.hpp"

namespace fedo {

/// Dense row-major matrix over a field.
template <class S>
class Matrix {
 public:
  Matrix() = default;
  Matrix(int rows, int cols) : rows_(rows), cols_(cols), data_(static_cast<size_t>(rows) * static_cast<size_t>(cols), S(0L)) {}

  static Matrix identity(int n) {
    Matrix m(n, n);
    for (int i = 0; i < n; ++i) m(i, i) = S(1L);
    return m;
  }

  int rows() const { return rows_; }
  int cols() const { return cols_; }
  S& operator()(int r, int c) { return data_[static_cast<size_t>(r) * static_cast<size_t>(cols_) + static_cast<size_t>(c)]; }
  const S& operator()(int r, int c) const {
    return data_[static_cast<size_t>(r) * static_cast<size_t>(cols_) + static_cast<size_t>(c)];
  }
  std::vector<S> row(int r) const {
    auto b = data_.begin() + static_cast<long>(r) * cols_;
    return std::vector<S>(b, b + cols_);
  }

  Matrix transpose() const {
    Matrix t(cols_, rows_);
    for (int i = 0; i < rows_; ++i)
      for (int j = 0; j < cols_; ++j) t(j, i) = (*this)(i, j);
    return t;
  }

  friend Matrix operator*(const Matrix& a, const Matrix& b) {
    if (a.cols_ != b.rows_) throw std::invalid_argument("matrix product shape mismatch");
    Matrix r(a.rows_, b.cols_);
    for (int i = 0; i < a.rows_; ++i)
      for (int k = 0; k < a.cols_; ++k) {
        const S& aik = a(i, k);
        if (is_zero(aik)) continue;
        for (int j = 0; j < b.cols_; ++j) r(i, j) += aik * b(k, j);
      }
    return r;
  }
  friend Matrix operator+(Matrix a, const Matrix& b) {
    for (size_t i = 0; i < a.data_.size(); ++i) a.data_[i] += b.data_[i];
    return a;
  }
  friend Matrix operator-(Matrix a, const Matrix& b) {
    for (size_t i = 0; i < a.data_.size(); ++i) a.data_[i] -= b.data_[i];
    return a;
  }
  friend bool operator==(const Matrix& a, const Matrix& b) {
    return a.rows_ == b.rows_ && a.cols_ == b.cols_ && a.data_ == b.data_;
  }

 private:
  int rows_ = 0;
  int cols_ = 0;
  std::vector<S> data_;
};

/// Reduced row echelon form in place; returns pivot columns.
template <class S>
std::vector<int> rref(Matrix<S>& m) {
  std::vector<int> pivots;
  int r = 0;
  for (int c = 0; c < m.cols() && r < m.rows(); ++c) {
    int p = -1;
    for (int i = r; i < m.rows(); ++i)
      if (!is_zero(m(i, c))) {
        p = i;
        break;
      }
    if (p < 0) continue;
    if (p != r)
      for (int j = 0; j < m.cols(); ++j) std::swap(m(p, j), m(r, j));
    const S inv = S(1L) / m(r, c);
    for (int j = c; j < m.cols(); ++j) m(r, j) *= inv;
    for (int i = 0; i < m.rows(); ++i) {
      if (i == r || is_zero(m(i, c))) continue;
      const S f = m(i, c);
      for (int j = c; j < m.cols(); ++j) m(i, j) -= f * m(r, j);
    }
    pivots.push_back(c);
    ++r;
  }
  return pivots;
}

template <class S>
int rank(Matrix<S> m) {
  return static_cast<int>(rref(m).size());
}

/// Basis of {x : m x = 0}, one vector per free column.
template <class S>
std::vector<std::vector<S>> nullspace(Matrix<S> m) {
  const auto piv = rref(m);
  std::vector<char> is_pivot(static_cast<size_t>(m.cols()), 0);
  for (int c : piv) is_pivot[static_cast<size_t>(c)] = 1;
  std::vector<std::vector<S>> basis;
  for (int f = 0; f < m.cols(); ++f) {
    if (is_pivot[static_cast<size_t>(f)]) continue;
    std::vector<S> v(static_cast<size_t>(m.cols()), S(0L));
    v[static_cast<size_t>(f)] = S(1L);
    for (size_t r = 0; r < piv.size(); ++r) v[static_cast<size_t>(piv[r])] = -m(static_cast<int>(r), f);
    basis.push_back(std::move(v));
  }
  return basis;
}

template <class S>
std::optional<Matrix<S>> inverse(const Matrix<S>& a) {
  const int n = a.rows();
  if (a.cols() != n) throw std::invalid_argument("inverse of non-square matrix");
  Matrix<S> aug(n, 2 * n);
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) aug(i, j) = a(i, j);
    aug(i, n + i) = S(1L);
  }
  const auto piv = rref(aug);
  if (static_cast<int>(piv.size()) < n || piv[static_cast<size_t>(n - 1)] != n - 1) return std::nullopt;
  Matrix<S> inv(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) inv(i, j) = aug(i, n + j);
  return inv;
}

template <class S>
S determinant(Matrix<S> m) {
  const int n = m.rows();
  if (m.cols() != n) throw std::invalid_argument("determinant of non-square matrix");
  S det(1L);
  for (int c = 0; c < n; ++c) {
    int p = -1;
    for (int i = c; i < n; ++i)
      if (!is_zero(m(i, c))) {
        p = i;
        break;
      }
    if (p < 0) return S(0L);
    if (p != c) {
      for (int j = 0; j < n; ++j) std::swap(m(p, j), m(c, j));
      det = -det;
    }
    det *= m(c, c);
    const S inv = S(1L) / m(c, c);
    for (int i = c + 1; i < n; ++i) {
      if (is_zero(m(i, c))) continue;
      const S f = m(i, c) * inv;
      for (int j = c; j < n; ++j) m(i, j) -= f * m(c, j);
    }
  }
  return det;
}

/// Row space tracked incrementally in echelon form. Adding a vector reports
/// whether it enlarged the span.
template <class S>
class IncrementalRank {
 public:
  explicit IncrementalRank(int cols) : cols_(cols) {}

  bool add(std::vector<S> v) {
    if (static_cast<int>(v.size()) != cols_) throw std::invalid_argument("row length mismatch");
    for (size_t r = 0; r < rows_.size(); ++r) {
      const S& f = v[static_cast<size_t>(pivots_[r])];
      if (is_zero(f)) continue;
      const S coef = f;
      const auto& row = rows_[r];
      for (int j = pivots_[r]; j < cols_; ++j) v[static_cast<size_t>(j)] -= coef * row[static_cast<size_t>(j)];
    }
    int p = -1;
    for (int j = 0; j < cols_; ++j)
      if (!is_zero(v[static_cast<size_t>(j)])) {
        p = j;
        break;
      }
    if (p < 0) return false;
    const S inv = S(1L) / v[static_cast<size_t>(p)];
    for (int j = p; j < cols_; ++j) v[static_cast<size_t>(j)] *= inv;
    rows_.push_back(std::move(v));
    pivots_.push_back(p);
    return true;
  }

  int rank() const { return static_cast<int>(rows_.size()); }
  int cols() const { return cols_; }
  bool full() const { return rank() == cols_; }
  const std::vector<int>& pivots() const { return pivots_; }

 private:
  int cols_;
  std::vector<std::vector<S>> rows_;
  std::vector<int> pivots_;
};

/// Rational with |num|, den <= sqrt(P/2) congruent to `residue` mod P, if any.
std::optional<Rational> rational_reconstruct(std::uint64_t residue, std::uint64_t prime);

template <std::uint64_t P>
std::optional<Rational> rational_reconstruct(ModP<P> v) {
  return rational_reconstruct(v.value(), P);
}

}  // namespace fedo
