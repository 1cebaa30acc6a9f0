#ifndef HILBERT_MATRIX_HPP
#define HILBERT_MATRIX_HPP

#include <cstddef>
#include <optional>
#include <utility>
#include <vector>

#include "hilbert/rational.hpp"

namespace hilbert {

/// Dense row-major matrix over the rationals.
class Matrix {
 public:
  Matrix() = default;
  Matrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), data_(rows * cols) {}

  static Matrix identity(std::size_t n) {
    Matrix m(n, n);
    for (std::size_t i = 0; i < n; ++i) m(i, i) = 1;
    return m;
  }

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }

  Rational& operator()(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }
  const Rational& operator()(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }

  Matrix transpose() const {
    Matrix t(cols_, rows_);
    for (std::size_t r = 0; r < rows_; ++r)
      for (std::size_t c = 0; c < cols_; ++c) t(c, r) = (*this)(r, c);
    return t;
  }

  friend Matrix operator*(const Matrix& a, const Matrix& b) {
    Matrix p(a.rows_, b.cols_);
    for (std::size_t i = 0; i < a.rows_; ++i)
      for (std::size_t k = 0; k < a.cols_; ++k) {
        const Rational& x = a(i, k);
        if (x.is_zero()) continue;
        for (std::size_t j = 0; j < b.cols_; ++j)
          if (!b(k, j).is_zero()) p(i, j) += x * b(k, j);
      }
    return p;
  }

  friend bool operator==(const Matrix& a, const Matrix& b) {
    return a.rows_ == b.rows_ && a.cols_ == b.cols_ && a.data_ == b.data_;
  }

  /// Gauss-Jordan inverse; nullopt when singular.
  std::optional<Matrix> inverse() const {
    if (rows_ != cols_) return std::nullopt;
    const std::size_t n = rows_;
    Matrix a = *this;
    Matrix inv = identity(n);
    for (std::size_t col = 0; col < n; ++col) {
      std::size_t pivot = col;
      while (pivot < n && a(pivot, col).is_zero()) ++pivot;
      if (pivot == n) return std::nullopt;
      if (pivot != col) {
        a.swap_rows(pivot, col);
        inv.swap_rows(pivot, col);
      }
      const Rational scale = Rational(1) / a(col, col);
      a.scale_row(col, scale);
      inv.scale_row(col, scale);
      for (std::size_t r = 0; r < n; ++r) {
        if (r == col || a(r, col).is_zero()) continue;
        const Rational f = a(r, col);
        a.add_row_multiple(r, col, -f);
        inv.add_row_multiple(r, col, -f);
      }
    }
    return inv;
  }

  std::size_t rank() const {
    Matrix a = *this;
    std::size_t rank = 0;
    for (std::size_t col = 0; col < cols_ && rank < rows_; ++col) {
      std::size_t pivot = rank;
      while (pivot < rows_ && a(pivot, col).is_zero()) ++pivot;
      if (pivot == rows_) continue;
      a.swap_rows(pivot, rank);
      for (std::size_t r = rank + 1; r < rows_; ++r) {
        if (a(r, col).is_zero()) continue;
        a.add_row_multiple(r, rank, -(a(r, col) / a(rank, col)));
      }
      ++rank;
    }
    return rank;
  }

 private:
  void swap_rows(std::size_t a, std::size_t b) {
    for (std::size_t c = 0; c < cols_; ++c) std::swap((*this)(a, c), (*this)(b, c));
  }
  void scale_row(std::size_t r, const Rational& s) {
    for (std::size_t c = 0; c < cols_; ++c)
      if (!(*this)(r, c).is_zero()) (*this)(r, c) *= s;
  }
  void add_row_multiple(std::size_t dst, std::size_t src, const Rational& f) {
    for (std::size_t c = 0; c < cols_; ++c)
      if (!(*this)(src, c).is_zero()) (*this)(dst, c) += f * (*this)(src, c);
  }

  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<Rational> data_;
};

/// Incrementally maintained reduced row-echelon basis of a subspace of Q^dim.
/// Pivots are chosen as the first nonzero column, so results are
/// deterministic for a given insertion order.
class EchelonBasis {
 public:
  explicit EchelonBasis(std::size_t dim) : dim_(dim) {}

  std::size_t dim() const { return dim_; }
  std::size_t rank() const { return rows_.size(); }
  const std::vector<std::vector<Rational>>& rows() const { return rows_; }

  /// Reduces v against the basis; returns the residual.
  std::vector<Rational> reduce(std::vector<Rational> v) const {
    for (std::size_t i = 0; i < rows_.size(); ++i) {
      const Rational f = v[pivots_[i]];
      if (f.is_zero()) continue;
      for (std::size_t c = 0; c < dim_; ++c)
        if (!rows_[i][c].is_zero()) v[c] -= f * rows_[i][c];
    }
    return v;
  }

  /// Adds v if it is independent of the current span. Returns true if added.
  bool insert(std::vector<Rational> v) {
    v = reduce(std::move(v));
    std::size_t pivot = 0;
    while (pivot < dim_ && v[pivot].is_zero()) ++pivot;
    if (pivot == dim_) return false;
    const Rational inv = Rational(1) / v[pivot];
    for (auto& x : v)
      if (!x.is_zero()) x *= inv;
    // keep the basis fully reduced
    for (auto& row : rows_) {
      const Rational f = row[pivot];
      if (f.is_zero()) continue;
      for (std::size_t c = 0; c < dim_; ++c)
        if (!v[c].is_zero()) row[c] -= f * v[c];
    }
    rows_.push_back(std::move(v));
    pivots_.push_back(pivot);
    return true;
  }

  bool contains(const std::vector<Rational>& v) const {
    for (const auto& x : reduce(v))
      if (!x.is_zero()) return false;
    return true;
  }

 private:
  std::size_t dim_;
  std::vector<std::vector<Rational>> rows_;
  std::vector<std::size_t> pivots_;
};

}  // namespace hilbert

#endif  // HILBERT_MATRIX_HPP
