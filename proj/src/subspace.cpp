#include "rlab/subspace.hpp"

#include "rlab/error.hpp"

namespace rlab {

Subspace Subspace::zero(std::size_t ambient) {
  Subspace s;
  s.ambient_ = ambient;
  s.basis_ = Matrix(0, ambient);
  return s;
}

Subspace Subspace::full(std::size_t ambient) {
  Subspace s;
  s.ambient_ = ambient;
  s.basis_ = Matrix::identity(ambient);
  return s;
}

Subspace Subspace::span(std::size_t ambient, const Matrix& rows) {
  if (rows.rows() > 0 && rows.cols() != ambient)
    throw DefectError("Subspace::span: ambient mismatch");
  Rref r = rref(rows.rows() ? rows : Matrix(0, ambient));
  Subspace s;
  s.ambient_ = ambient;
  s.basis_ = r.reduced.rows_slice(0, r.rank);
  return s;
}

namespace {

std::vector<std::size_t> pivot_columns(const Matrix& rref_basis) {
  std::vector<std::size_t> piv;
  for (std::size_t i = 0; i < rref_basis.rows(); ++i) {
    std::size_t j = 0;
    while (j < rref_basis.cols() && rref_basis.at(i, j).is_zero()) ++j;
    piv.push_back(j);
  }
  return piv;
}

}  // namespace

std::optional<Matrix> Subspace::coords(const Matrix& rows) const {
  if (rows.cols() != ambient_ && rows.rows() > 0)
    throw DefectError("Subspace::coords: ambient mismatch");
  auto piv = pivot_columns(basis_);
  Matrix c(rows.rows(), dim());
  // in RREF coordinates membership is decided by reading pivot entries and
  // checking the reconstruction
  for (std::size_t i = 0; i < rows.rows(); ++i)
    for (std::size_t k = 0; k < piv.size(); ++k) c.at(i, k) = rows.at(i, piv[k]);
  if (c * basis_ != rows && rows.rows() > 0) return std::nullopt;
  return c;
}

bool Subspace::contains(const Matrix& row_vector) const {
  return coords(row_vector).has_value();
}

bool Subspace::contains(const Subspace& other) const {
  if (other.is_zero()) return true;
  return coords(other.basis_).has_value();
}

Subspace sum(const Subspace& a, const Subspace& b) {
  if (a.ambient_dim() != b.ambient_dim())
    throw DefectError("sum: ambient mismatch");
  return Subspace::span(a.ambient_dim(), vstack(a.basis(), b.basis()));
}

Subspace intersect(const Subspace& a, const Subspace& b) {
  if (a.ambient_dim() != b.ambient_dim())
    throw DefectError("intersect: ambient mismatch");
  if (a.is_zero() || b.is_zero()) return Subspace::zero(a.ambient_dim());
  // x in both spans iff x = u^T a = w^T b; solve for the coefficient pair
  Matrix glued = hstack(a.basis().transpose(), -b.basis().transpose());
  Matrix ker = kernel_basis(glued);  // rows (u | w)
  Matrix reps(ker.rows(), a.ambient_dim());
  for (std::size_t i = 0; i < ker.rows(); ++i)
    for (std::size_t j = 0; j < a.ambient_dim(); ++j) {
      Scalar acc = 0;
      for (std::size_t k = 0; k < a.dim(); ++k)
        acc += ker.at(i, k) * a.basis().at(k, j);
      reps.at(i, j) = acc;
    }
  return Subspace::span(a.ambient_dim(), reps);
}

Matrix complement_in(const Subspace& whole, const Subspace& sub) {
  if (!whole.contains(sub))
    throw DefectError("complement_in: sub not inside whole");
  Matrix acc = sub.basis();
  std::size_t rank = sub.dim();
  Matrix out(0, whole.ambient_dim());
  for (std::size_t i = 0; i < whole.dim(); ++i) {
    Matrix row = whole.basis().rows_slice(i, 1);
    Matrix cand = vstack(acc, row);
    if (rref(cand).rank > rank) {
      out = vstack(out, row);
      acc = cand;
      ++rank;
    }
  }
  return out;
}

QuotientMaps quotient(const Subspace& whole, const Subspace& sub) {
  if (!whole.contains(sub)) throw DefectError("quotient: sub not inside whole");
  std::size_t n = whole.ambient_dim();
  Matrix comp = complement_in(whole, sub);
  // extend [sub; comp] to a full basis of the ambient space by standard
  // basis vectors, then invert to get coordinate functionals
  Matrix frame = vstack(sub.basis(), comp);
  std::size_t rank = frame.rows();
  for (std::size_t j = 0; j < n && rank < n; ++j) {
    Matrix e(1, n);
    e.at(0, j) = 1;
    Matrix cand = vstack(frame, e);
    if (rref(cand).rank > rank) {
      frame = cand;
      ++rank;
    }
  }
  auto inv = inverse(frame.transpose());
  if (!inv) throw DefectError("quotient: frame not invertible");
  QuotientMaps q;
  q.dim = comp.rows();
  q.projection = inv->rows_slice(sub.dim(), comp.rows());
  q.lift = comp.transpose();
  return q;
}

Subspace image(const Matrix& a, const Subspace& s) {
  if (s.is_zero()) return Subspace::zero(a.rows());
  return Subspace::span(a.rows(), s.basis() * a.transpose());
}

Subspace preimage(const Matrix& a, const Subspace& target) {
  if (target.ambient_dim() != a.rows())
    throw DefectError("preimage: ambient mismatch");
  if (target.is_full()) return Subspace::full(a.cols());
  QuotientMaps q = quotient(Subspace::full(a.rows()), target);
  return Subspace::span(a.cols(), kernel_basis(q.projection * a));
}

}  // namespace rlab
