#pragma once

#include <cstddef>
#include <vector>

#include "cobcalc/rational.hpp"

namespace cobcalc {

// Dense exact matrix over Q, row-major.
class QMatrix {
 public:
  QMatrix() = default;
  QMatrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), data_(rows * cols) {}

  static QMatrix identity(std::size_t n);

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }

  Rational& operator()(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }
  const Rational& operator()(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }

  friend QMatrix operator*(const QMatrix& a, const QMatrix& b);
  friend bool operator==(const QMatrix& a, const QMatrix& b) = default;

  /// Appends the rows of other (same column count) below this matrix.
  void stack_below(const QMatrix& other);
  /// Columns of a followed by columns of b.
  static QMatrix hconcat(const QMatrix& a, const QMatrix& b);

  /// Reduced row echelon form in place; returns pivot columns.
  std::vector<std::size_t> rref();

  std::size_t rank() const;

  /// Basis of the right null space, one vector per free column, read off
  /// the reduced echelon form (free entry = 1, other free entries = 0).
  std::vector<std::vector<Rational>> kernel() const;

  /// Exact inverse; throws InvalidInput if singular or non-square.
  QMatrix inverse() const;

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<Rational> data_;
};

/// True iff the column spaces of a and b (same row count) coincide.
bool same_column_space(const QMatrix& a, const QMatrix& b);

}  // namespace cobcalc
