#pragma once

#include <cstddef>
#include <map>
#include <optional>
#include <tuple>
#include <utility>
#include <vector>

#include "rlab/filtration.hpp"
#include "rlab/matrix.hpp"
#include "rlab/subspace.hpp"

namespace rlab {

// Bounded bigraded double complex: terms C^{p,q} for 0 <= p,q <= bound,
// del: C^{p,q} -> C^{p+1,q} and delbar: C^{p,q} -> C^{p,q+1} with
// del^2 = delbar^2 = del delbar + delbar del = 0, optionally equipped with
// an antilinear involution sigma(C^{p,q}) = C^{q,p} intertwining del and
// delbar.  sigma acts as x |-> S conj(x).  All of this is validated on
// construction.
class BigradedComplex {
public:
  using Key = std::pair<int, int>;

  BigradedComplex(std::size_t bound, std::map<Key, std::size_t> dims,
                  std::map<Key, Matrix> del, std::map<Key, Matrix> delbar,
                  std::optional<std::map<Key, Matrix>> sigma = std::nullopt);

  std::size_t bound() const { return bound_; }
  std::size_t dim(int p, int q) const;
  // zero-filled to the right shapes outside the stored support
  Matrix del(int p, int q) const;
  Matrix delbar(int p, int q) const;
  bool has_real_structure() const { return sigma_.has_value(); }
  Matrix sigma(int p, int q) const;  // matrix part of the involution

  // (p, q) with p + q = k inside the support square, p ascending, plus
  // the offset of each block inside the total term
  std::vector<std::pair<Key, std::size_t>> total_layout(int k) const;
  std::size_t total_dim(int k) const;
  // h del + delbar : T^k -> T^{k+1}; h = 1 is the de Rham differential
  Matrix total_differential(int k, const Scalar& h = Scalar(1)) const;
  // span of the blocks with first index >= p
  Subspace filtration_block(int k, int p) const;

private:
  std::size_t bound_ = 0;
  std::map<Key, std::size_t> dims_;
  std::map<Key, Matrix> del_, delbar_;
  std::optional<std::map<Key, Matrix>> sigma_;
};

struct TotalCohomology {
  std::size_t dim = 0;
  // rows are cocycles in T^k coordinates whose classes form a basis
  Matrix representatives;
  // class coordinates of an arbitrary cocycle; kills exact cocycles
  Matrix projection;
  Subspace cocycles, boundaries;
};

TotalCohomology total_cohomology(const BigradedComplex& x, int k);

// F^p H^k = image(H^k(F^p C) -> H^k) in the coordinates fixed by
// total_cohomology(x, k).
Filtration hodge_filtration(const BigradedComplex& x, int k);

// sigma-image of the Hodge filtration on H^k.
Filtration conjugate_filtration(const BigradedComplex& x, int k);

// sigma-image of any filtration given in the coordinates fixed by
// total_cohomology(x, k); applying it twice is the identity.
Filtration sigma_image(const BigradedComplex& x, int k, const Filtration& f);

struct SpectralSequenceTable {
  // pages.at(r) maps (p,q) to dim E_r^{p,q}, nonzero entries only
  std::map<int, std::map<std::pair<int, int>, std::size_t>> pages;
  // d_r : E_r^{p,q} -> E_r^{p+r,q-r+1}, stored when both ends are nonzero
  std::map<std::tuple<int, int, int>, Matrix> differentials;
  std::size_t degeneration_page = 1;
  // stabilized dims (the page at degeneration_page)
  std::map<std::pair<int, int>, std::size_t> infinity;
};

SpectralSequenceTable spectral_sequence(const BigradedComplex& x,
                                        std::size_t r_max);

// E_infinity dims against the graded dims of the Hodge filtration; false
// would signal a defect, never a property of the input.
bool check_convergence(const BigradedComplex& x, int k);

// Cohomology of h del + delbar in total degree k.
TotalCohomology twisted_cohomology(const BigradedComplex& x, const Scalar& h,
                                   int k);

// theta_h = h^p blockwise; checks theta d = d_h theta on every term.
bool theta_intertwine_check(const BigradedComplex& x, const Scalar& h);

}  // namespace rlab
