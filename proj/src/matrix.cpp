#include "rlab/matrix.hpp"

#include <utility>

#include "rlab/error.hpp"

namespace rlab {

Matrix::Matrix(std::size_t rows, std::size_t cols, std::vector<Scalar> entries)
    : rows_(rows), cols_(cols), e_(std::move(entries)) {
  if (e_.size() != rows_ * cols_)
    throw DefectError("Matrix: entry count does not match shape");
}

Matrix Matrix::identity(std::size_t n) {
  Matrix m(n, n);
  for (std::size_t i = 0; i < n; ++i) m.at(i, i) = 1;
  return m;
}

Matrix Matrix::row(std::vector<Scalar> v) {
  std::size_t n = v.size();
  return Matrix(1, n, std::move(v));
}

Matrix Matrix::column(std::vector<Scalar> v) {
  std::size_t n = v.size();
  return Matrix(n, 1, std::move(v));
}

Matrix Matrix::transpose() const {
  Matrix t(cols_, rows_);
  for (std::size_t i = 0; i < rows_; ++i)
    for (std::size_t j = 0; j < cols_; ++j) t.at(j, i) = at(i, j);
  return t;
}

Matrix Matrix::conjugate() const {
  Matrix c(rows_, cols_);
  for (std::size_t i = 0; i < rows_; ++i)
    for (std::size_t j = 0; j < cols_; ++j) c.at(i, j) = at(i, j).conj();
  return c;
}

Matrix Matrix::operator*(const Matrix& rhs) const {
  if (cols_ != rhs.rows_) throw DefectError("Matrix::*: shape mismatch");
  Matrix p(rows_, rhs.cols_);
  for (std::size_t i = 0; i < rows_; ++i)
    for (std::size_t k = 0; k < cols_; ++k) {
      const Scalar& a = at(i, k);
      if (a.is_zero()) continue;
      for (std::size_t j = 0; j < rhs.cols_; ++j)
        p.at(i, j) += a * rhs.at(k, j);
    }
  return p;
}

Matrix Matrix::operator+(const Matrix& rhs) const {
  if (rows_ != rhs.rows_ || cols_ != rhs.cols_)
    throw DefectError("Matrix::+: shape mismatch");
  Matrix s(rows_, cols_);
  for (std::size_t k = 0; k < e_.size(); ++k) s.e_[k] = e_[k] + rhs.e_[k];
  return s;
}

Matrix Matrix::operator-(const Matrix& rhs) const {
  if (rows_ != rhs.rows_ || cols_ != rhs.cols_)
    throw DefectError("Matrix::-: shape mismatch");
  Matrix s(rows_, cols_);
  for (std::size_t k = 0; k < e_.size(); ++k) s.e_[k] = e_[k] - rhs.e_[k];
  return s;
}

Matrix Matrix::operator-() const {
  Matrix s(rows_, cols_);
  for (std::size_t k = 0; k < e_.size(); ++k) s.e_[k] = -e_[k];
  return s;
}

Matrix Matrix::scaled(const Scalar& c) const {
  Matrix s(rows_, cols_);
  for (std::size_t k = 0; k < e_.size(); ++k) s.e_[k] = c * e_[k];
  return s;
}

bool Matrix::is_zero() const {
  for (const auto& x : e_)
    if (!x.is_zero()) return false;
  return true;
}

bool Matrix::is_identity() const {
  if (rows_ != cols_) return false;
  return *this == identity(rows_);
}

Matrix Matrix::rows_slice(std::size_t first, std::size_t count) const {
  if (first + count > rows_) throw DefectError("rows_slice out of range");
  Matrix s(count, cols_);
  for (std::size_t i = 0; i < count; ++i)
    for (std::size_t j = 0; j < cols_; ++j) s.at(i, j) = at(first + i, j);
  return s;
}

Matrix vstack(const Matrix& top, const Matrix& bottom) {
  if (top.rows() == 0) return bottom;
  if (bottom.rows() == 0) return top;
  if (top.cols() != bottom.cols()) throw DefectError("vstack: width mismatch");
  Matrix s(top.rows() + bottom.rows(), top.cols());
  for (std::size_t i = 0; i < top.rows(); ++i)
    for (std::size_t j = 0; j < top.cols(); ++j) s.at(i, j) = top.at(i, j);
  for (std::size_t i = 0; i < bottom.rows(); ++i)
    for (std::size_t j = 0; j < top.cols(); ++j)
      s.at(top.rows() + i, j) = bottom.at(i, j);
  return s;
}

Matrix hstack(const Matrix& left, const Matrix& right) {
  if (left.cols() == 0) return right;
  if (right.cols() == 0) return left;
  if (left.rows() != right.rows()) throw DefectError("hstack: height mismatch");
  Matrix s(left.rows(), left.cols() + right.cols());
  for (std::size_t i = 0; i < left.rows(); ++i) {
    for (std::size_t j = 0; j < left.cols(); ++j) s.at(i, j) = left.at(i, j);
    for (std::size_t j = 0; j < right.cols(); ++j)
      s.at(i, left.cols() + j) = right.at(i, j);
  }
  return s;
}

Matrix kronecker(const Matrix& a, const Matrix& b) {
  Matrix k(a.rows() * b.rows(), a.cols() * b.cols());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j) {
      if (a.at(i, j).is_zero()) continue;
      for (std::size_t p = 0; p < b.rows(); ++p)
        for (std::size_t q = 0; q < b.cols(); ++q)
          k.at(i * b.rows() + p, j * b.cols() + q) = a.at(i, j) * b.at(p, q);
    }
  return k;
}

Rref rref(Matrix m) {
  Rref out;
  std::size_t r = 0;
  for (std::size_t col = 0; col < m.cols() && r < m.rows(); ++col) {
    std::size_t piv = r;
    while (piv < m.rows() && m.at(piv, col).is_zero()) ++piv;
    if (piv == m.rows()) continue;
    if (piv != r)
      for (std::size_t j = 0; j < m.cols(); ++j)
        std::swap(m.at(piv, j), m.at(r, j));
    Scalar inv = m.at(r, col).inverse();
    for (std::size_t j = col; j < m.cols(); ++j) m.at(r, j) *= inv;
    for (std::size_t i = 0; i < m.rows(); ++i) {
      if (i == r || m.at(i, col).is_zero()) continue;
      Scalar f = m.at(i, col);
      for (std::size_t j = col; j < m.cols(); ++j)
        m.at(i, j) -= f * m.at(r, j);
    }
    out.pivots.push_back(col);
    ++r;
  }
  out.rank = r;
  out.reduced = std::move(m);
  return out;
}

Matrix kernel_basis(const Matrix& m) {
  Rref r = rref(m);
  std::size_t n = m.cols();
  std::vector<bool> is_pivot(n, false);
  for (std::size_t c : r.pivots) is_pivot[c] = true;
  Matrix basis(n - r.rank, n);
  std::size_t row = 0;
  for (std::size_t f = 0; f < n; ++f) {
    if (is_pivot[f]) continue;
    basis.at(row, f) = 1;
    for (std::size_t k = 0; k < r.rank; ++k)
      basis.at(row, r.pivots[k]) = -r.reduced.at(k, f);
    ++row;
  }
  return rref(std::move(basis)).reduced.rows_slice(0, basis.rows());
}

std::optional<Matrix> solve(const Matrix& a, const Matrix& b) {
  if (a.rows() != b.rows()) throw DefectError("solve: height mismatch");
  Rref r = rref(hstack(a, b));
  for (std::size_t c : r.pivots)
    if (c >= a.cols()) return std::nullopt;
  Matrix x(a.cols(), b.cols());
  for (std::size_t k = 0; k < r.rank; ++k)
    for (std::size_t j = 0; j < b.cols(); ++j)
      x.at(r.pivots[k], j) = r.reduced.at(k, a.cols() + j);
  return x;
}

std::optional<Matrix> inverse(const Matrix& a) {
  if (a.rows() != a.cols()) throw DefectError("inverse: not square");
  Rref r = rref(hstack(a, Matrix::identity(a.rows())));
  if (r.rank != a.rows()) return std::nullopt;
  for (std::size_t c : r.pivots)
    if (c >= a.cols()) return std::nullopt;
  Matrix x(a.rows(), a.rows());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.rows(); ++j)
      x.at(i, j) = r.reduced.at(i, a.cols() + j);
  return x;
}

std::size_t rank_of(const Matrix& m) { return rref(m).rank; }

}  // namespace rlab
