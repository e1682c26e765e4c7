#pragma once

#include <cstddef>
#include <optional>
#include <vector>

#include "rlab/scalar.hpp"

namespace rlab {

// Dense matrix over Q(i), row major.  Zero-row and zero-column shapes are
// legal and behave like the corresponding empty linear maps.
class Matrix {
public:
  Matrix() = default;
  Matrix(std::size_t rows, std::size_t cols)
      : rows_(rows), cols_(cols), e_(rows * cols) {}
  Matrix(std::size_t rows, std::size_t cols, std::vector<Scalar> entries);

  static Matrix identity(std::size_t n);
  static Matrix row(std::vector<Scalar> v);
  static Matrix column(std::vector<Scalar> v);

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }

  Scalar& at(std::size_t i, std::size_t j) { return e_[i * cols_ + j]; }
  const Scalar& at(std::size_t i, std::size_t j) const {
    return e_[i * cols_ + j];
  }

  Matrix transpose() const;
  Matrix conjugate() const;
  Matrix operator*(const Matrix& rhs) const;
  Matrix operator+(const Matrix& rhs) const;
  Matrix operator-(const Matrix& rhs) const;
  Matrix operator-() const;
  Matrix scaled(const Scalar& c) const;
  bool is_zero() const;
  bool is_identity() const;

  Matrix rows_slice(std::size_t first, std::size_t count) const;

  bool operator==(const Matrix&) const = default;

private:
  std::size_t rows_ = 0, cols_ = 0;
  std::vector<Scalar> e_;
};

Matrix vstack(const Matrix& top, const Matrix& bottom);
Matrix hstack(const Matrix& left, const Matrix& right);
Matrix kronecker(const Matrix& a, const Matrix& b);

struct Rref {
  std::size_t rank = 0;
  Matrix reduced;
  std::vector<std::size_t> pivots;  // pivot column of each nonzero row
};

// Gauss-Jordan reduced row echelon form; fully canonical.
Rref rref(Matrix m);

// Rows span {x : m x = 0}, returned in reduced row echelon form.
Matrix kernel_basis(const Matrix& m);

// X with a*X = b and free variables set to zero; nullopt if inconsistent.
std::optional<Matrix> solve(const Matrix& a, const Matrix& b);

std::optional<Matrix> inverse(const Matrix& a);

std::size_t rank_of(const Matrix& m);

}  // namespace rlab
