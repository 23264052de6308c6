#include "cobcalc/linalg.hpp"

#include <utility>

#include "cobcalc/error.hpp"

namespace cobcalc {

QMatrix QMatrix::identity(std::size_t n) {
  QMatrix m(n, n);
  for (std::size_t i = 0; i < n; ++i) m(i, i) = 1;
  return m;
}

QMatrix operator*(const QMatrix& a, const QMatrix& b) {
  if (a.cols_ != b.rows_) throw InvalidInput("matrix product: shape mismatch");
  QMatrix out(a.rows_, b.cols_);
  for (std::size_t i = 0; i < a.rows_; ++i)
    for (std::size_t k = 0; k < a.cols_; ++k) {
      const Rational& aik = a(i, k);
      if (aik == 0) continue;
      for (std::size_t j = 0; j < b.cols_; ++j) out(i, j) += aik * b(k, j);
    }
  return out;
}

void QMatrix::stack_below(const QMatrix& other) {
  if (rows_ == 0 && cols_ == 0) {
    *this = other;
    return;
  }
  if (other.cols_ != cols_) throw InvalidInput("stack_below: column count mismatch");
  data_.insert(data_.end(), other.data_.begin(), other.data_.end());
  rows_ += other.rows_;
}

QMatrix QMatrix::hconcat(const QMatrix& a, const QMatrix& b) {
  if (a.rows_ != b.rows_) throw InvalidInput("hconcat: row count mismatch");
  QMatrix out(a.rows_, a.cols_ + b.cols_);
  for (std::size_t i = 0; i < a.rows_; ++i) {
    for (std::size_t j = 0; j < a.cols_; ++j) out(i, j) = a(i, j);
    for (std::size_t j = 0; j < b.cols_; ++j) out(i, a.cols_ + j) = b(i, j);
  }
  return out;
}

std::vector<std::size_t> QMatrix::rref() {
  std::vector<std::size_t> pivots;
  std::size_t r = 0;
  for (std::size_t c = 0; c < cols_ && r < rows_; ++c) {
    std::size_t p = r;
    while (p < rows_ && (*this)(p, c) == 0) ++p;
    if (p == rows_) continue;
    if (p != r)
      for (std::size_t j = 0; j < cols_; ++j) std::swap((*this)(p, j), (*this)(r, j));
    const Rational inv = 1 / Rational((*this)(r, c));
    for (std::size_t j = c; j < cols_; ++j) (*this)(r, j) *= inv;
    for (std::size_t i = 0; i < rows_; ++i) {
      if (i == r || (*this)(i, c) == 0) continue;
      const Rational f = (*this)(i, c);
      for (std::size_t j = c; j < cols_; ++j) (*this)(i, j) -= f * (*this)(r, j);
    }
    pivots.push_back(c);
    ++r;
  }
  return pivots;
}

std::size_t QMatrix::rank() const {
  QMatrix copy = *this;
  return copy.rref().size();
}

std::vector<std::vector<Rational>> QMatrix::kernel() const {
  QMatrix red = *this;
  const auto pivots = red.rref();
  std::vector<bool> is_pivot(cols_, false);
  for (auto p : pivots) is_pivot[p] = true;
  std::vector<std::vector<Rational>> basis;
  for (std::size_t free = 0; free < cols_; ++free) {
    if (is_pivot[free]) continue;
    std::vector<Rational> v(cols_);
    v[free] = 1;
    for (std::size_t i = 0; i < pivots.size(); ++i) v[pivots[i]] = -red(i, free);
    basis.push_back(std::move(v));
  }
  return basis;
}

QMatrix QMatrix::inverse() const {
  if (rows_ != cols_) throw InvalidInput("inverse: matrix is not square");
  QMatrix aug = hconcat(*this, identity(rows_));
  const auto pivots = aug.rref();
  if (pivots.size() < rows_ || (rows_ > 0 && pivots[rows_ - 1] >= cols_))
    throw InvalidInput("inverse: matrix is singular");
  QMatrix out(rows_, rows_);
  for (std::size_t i = 0; i < rows_; ++i)
    for (std::size_t j = 0; j < rows_; ++j) out(i, j) = aug(i, cols_ + j);
  return out;
}

bool same_column_space(const QMatrix& a, const QMatrix& b) {
  if (a.rows() != b.rows()) throw InvalidInput("same_column_space: row count mismatch");
  const std::size_t ra = a.rank();
  if (ra != b.rank()) return false;
  return QMatrix::hconcat(a, b).rank() == ra;
}

}  // namespace cobcalc
