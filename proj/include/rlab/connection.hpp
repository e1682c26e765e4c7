#pragma once

#include <cstddef>
#include <map>
#include <string>
#include <tuple>
#include <utility>
#include <vector>

#include "rlab/degree.hpp"
#include "rlab/matrix.hpp"

namespace rlab {

// Graded fiber of a split equivariant bundle: one multidegree tag per
// basis vector.
struct GradedFiber {
  std::size_t arity = 0;
  std::vector<Deg> tags;

  std::size_t dim() const { return tags.size(); }
  std::map<Deg, std::size_t> component_dims() const;
};

// d + sum_{p,i} A_{p,i} z^p dz_i/z_i on the trivialized bundle.  Every
// coefficient must be a pure degree -p endomorphism and vanish when
// p_i = 0 (it would carry a pole otherwise).
struct EquivariantConnection {
  GradedFiber fiber;
  std::map<std::pair<Deg, std::size_t>, Matrix> coeffs;

  Matrix coeff(const Deg& p, std::size_t axis) const;
};

// Empty iff the connection data satisfies all the invariants.
std::vector<std::string> connection_violations(
    const EquivariantConnection& c);

// K_{p,ij} = p_i A_{p,j} - p_j A_{p,i} + sum_{q+r=p} [A_{q,i}, A_{r,j}]
// for i < j; only nonzero coefficients are returned.
std::map<std::tuple<Deg, std::size_t, std::size_t>, Matrix> curvature(
    const EquivariantConnection& c);

bool is_flat(const EquivariantConnection& c);

// Polynomial gauge g = sum_p g_p z^p with g_0 invertible and each g_p of
// pure degree -p.
struct Gauge {
  std::map<Deg, Matrix> terms;

  Matrix term(const Deg& p, std::size_t dim) const;
};

std::vector<std::string> gauge_violations(const GradedFiber& f,
                                          const Gauge& g);

// Series inverse; exact, supported inside the grading spread.
Gauge gauge_inverse(const GradedFiber& f, const Gauge& g);

// Omega' = g^{-1} Omega g + g^{-1} dg.
EquivariantConnection gauge_transform(const EquivariantConnection& c,
                                      const Gauge& g);

// Gauge with unit constant term taking a flat connection to d, built by
// the residue recursion p_i g_p = -sum_{q+r=p, q>0} A_{q,i} g_r.
Gauge trivialize_flat(const EquivariantConnection& c);

}  // namespace rlab
