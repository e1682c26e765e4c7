#pragma once

#include <cstddef>
#include <map>
#include <vector>

#include "rlab/graded_module.hpp"
#include "rlab/multifilt.hpp"

namespace rlab {

// Rees module of a multifiltered space: degree-m piece is F^{-m}V, the z_i
// act by the step inclusions.  pieces keeps the realized subspaces of the
// underlying space, window-indexed alongside module.box().
struct ReesModule {
  MultiFilteredSpace source;
  GradedModule module;
  std::vector<Subspace> pieces;
};

ReesModule rees_module(const MultiFilteredSpace& v);
// Same, realized on any window containing the natural one.
ReesModule rees_module(const MultiFilteredSpace& v, const Box& window);

// Invert the variables in `inverted`; the result is the Rees module of
// the remaining filtrations.
ReesModule restrict_to_subtorus(const MultiFilteredSpace& v,
                                const std::vector<std::size_t>& inverted);

// Fiber-dimension constancy of the Rees module (generic point vs origin);
// agrees with is_splittable.
bool is_vector_bundle(const MultiFilteredSpace& v);

// Degreewise isomorphism between the Rees module and the free model
// sum_p V^p (x) O(p) carved out by a splitting.  change[k] converts model
// coordinates (splitting components with p >= -m, in degree order) into
// piece coordinates at the k-th window degree; every matrix is square
// invertible and commutes with the z-actions.
struct SplitIso {
  Box window;
  std::map<Deg, std::size_t> type;  // p -> multiplicity dim V^p
  std::vector<Matrix> change;
};
SplitIso split_iso(const MultiFilteredSpace& v, const Splitting& s);

// A filtered map realized degreewise on a common window.
struct ReesMap {
  Box window;
  ReesModule source, target;
  std::vector<Matrix> maps;  // window-indexed, pieces(source) -> pieces(target)
};
ReesMap rees_map(const FilteredMap& f);

GradedModule rees_kernel(const FilteredMap& f);

struct TorsionReport {
  std::map<Deg, std::size_t> torsion_pieces;
  std::size_t support_codim = 0;  // n+1 when empty
  bool is_zero = true;
  GradedModule submodule;
};

// Cokernel pieces F_W^{-m} / f(F_V^{-m}); phi_target carries the projected
// multi-steps pi(F_W^{-m}) of the cokernel object (for one filtration this
// is its Rees module, for n >= 2 the induced filtrations may intersect to
// something larger), and the torsion T is the kernel of the degreewise
// comparison maps onto it.
struct ReesCokernel {
  GradedModule coker;
  TorsionReport torsion;
  GradedModule phi_target;
};
ReesCokernel rees_cokernel(const FilteredMap& f);

// Smallest |S| such that the module survives inverting the variables
// outside S; axes()+1 when the module is zero everywhere.
std::size_t support_codim(const GradedModule& t);

// Charts of the projective bundle carried by n+1 filtrations: chart i
// drops filtration i.  Every chart subset must be splittable.
struct OverlapCheck {
  std::size_t i = 0, j = 0;
  bool ok = false;
};
struct ProjectiveCharts {
  std::vector<ReesModule> charts;
  std::vector<std::map<Deg, std::size_t>> chart_types;
  std::vector<OverlapCheck> overlaps;
  bool all_overlaps_ok() const;
};
ProjectiveCharts projective_charts(const MultiFilteredSpace& v);

// Splitting type {a_1 >= ... >= a_r} of the rank-r bundle on P^1 built
// from a pair of filtrations, recovered from the twisted section counts
// h0(m) = sum_j dim(F^{-j} ^ G^{j-m}).
std::vector<int> p1_splitting_type(const MultiFilteredSpace& v);

// Inverse of rees_module for n in {1,2}: the underlying space is the
// stable corner piece and F_i^p is the image of the chain from the degree
// with m_i = -p, other coordinates at their stable face.
MultiFilteredSpace recover_multifiltration(const GradedModule& m);

}  // namespace rlab
