#pragma once

#include <cstddef>
#include <map>

#include "rlab/filtration.hpp"

namespace rlab {

// Intersection of the filtration steps F_i^{p_i}; the full space when
// there are no filtrations.
Subspace multi_step(const MultiFilteredSpace& v, const Deg& p);

// Per-axis range [first_jump - 1, last_jump + 1]; every graded piece is
// supported inside this box and the boundary slices are flat.
Box jump_window(const MultiFilteredSpace& v);

// dim of D^p = F^p / sum_i F^{p + e_i}.
std::size_t graded_piece_dim(const MultiFilteredSpace& v, const Deg& p);

// Nonzero graded piece dimensions over the jump window.
std::map<Deg, std::size_t> graded_dims(const MultiFilteredSpace& v);

// The graded pieces always total at least dim; equality says the
// filtrations admit a common splitting.
bool is_splittable(const MultiFilteredSpace& v);

// Greedy construction: walk degrees lexicographically downward and pick
// a complement of sum_i F^{p+e_i} inside F^p.  Verifies the result and
// throws MathError("not_splittable") when the axioms fail.
Splitting compute_splitting(const MultiFilteredSpace& v);

// Strictness in r directions at once: for every size-r subset of axes
// and every tuple of indices, f(^ F^{p_j}) = (^ G^{p_j}) ^ im f.
bool is_r_strict(const FilteredMap& f, std::size_t r);

MultiFilteredSpace tensor(const MultiFilteredSpace& a,
                          const MultiFilteredSpace& b);
MultiFilteredSpace direct_sum(const MultiFilteredSpace& a,
                              const MultiFilteredSpace& b);

// Kernel with the restricted filtrations; embed maps kernel coordinates
// into the source.
struct SubObject {
  MultiFilteredSpace space;
  Matrix embed;
};
SubObject kernel_object(const FilteredMap& f);

// Cokernel with the image filtrations; projection maps the target onto
// cokernel coordinates.
struct QuotObject {
  MultiFilteredSpace space;
  Matrix projection;
};
QuotObject cokernel_object(const FilteredMap& f);

}  // namespace rlab
