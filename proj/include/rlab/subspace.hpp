#pragma once

#include <cstddef>
#include <optional>

#include "rlab/matrix.hpp"

namespace rlab {

// Linear subspace of k^n held by its reduced-row-echelon basis.  The RREF
// is a canonical form, so two Subspace values are equal exactly when their
// stored bases are identical; all higher layers lean on this.
class Subspace {
public:
  Subspace() = default;

  static Subspace zero(std::size_t ambient);
  static Subspace full(std::size_t ambient);
  // Span of the rows; any spanning set is accepted.
  static Subspace span(std::size_t ambient, const Matrix& rows);

  std::size_t ambient_dim() const { return ambient_; }
  std::size_t dim() const { return basis_.rows(); }
  const Matrix& basis() const { return basis_; }
  bool is_zero() const { return dim() == 0; }
  bool is_full() const { return dim() == ambient_; }

  bool contains(const Matrix& row_vector) const;
  bool contains(const Subspace& other) const;

  // Coordinates of each row w.r.t. the stored basis (rows x dim), or
  // nullopt if some row is not a member.
  std::optional<Matrix> coords(const Matrix& rows) const;

  bool operator==(const Subspace&) const = default;

private:
  std::size_t ambient_ = 0;
  Matrix basis_;  // dim x ambient, RREF
};

Subspace sum(const Subspace& a, const Subspace& b);
Subspace intersect(const Subspace& a, const Subspace& b);

// Rows extending sub's basis to a basis of whole, drawn greedily from
// whole's RREF basis; deterministic.
Matrix complement_in(const Subspace& whole, const Subspace& sub);

// Quotient whole/sub presented by explicit maps.  projection (dim x n) reads
// off quotient coordinates; it kills sub and a fixed complement of whole in
// the ambient space, so on whole its kernel is exactly sub.  lift (n x dim)
// selects representatives; projection * lift = identity.
struct QuotientMaps {
  std::size_t dim = 0;
  Matrix projection;
  Matrix lift;
};
QuotientMaps quotient(const Subspace& whole, const Subspace& sub);

// {a x : x in s} for a linear map a acting on columns.
Subspace image(const Matrix& a, const Subspace& s);

// {x : a x in target}.
Subspace preimage(const Matrix& a, const Subspace& target);

}  // namespace rlab
