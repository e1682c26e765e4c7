#pragma once

#include <cstddef>
#include <map>
#include <utility>
#include <vector>

#include "rlab/bigraded.hpp"
#include "rlab/graded_module.hpp"
#include "rlab/rees.hpp"

namespace rlab {

// One-variable Rees realization of the column-filtered total complex:
// the degree-m piece of A_k is F^{-m}T^k.  As a free module A_k is
// generated by the (p,q) blocks of T^k, the block C^{p,q} sitting in
// degree -p, and the total differential becomes
//   d_z = z (del x Id) + (delbar x Id)
// in those generator coordinates.
struct ReesComplex {
  int k_lo = 0, k_hi = 0;  // terms k_lo .. k_hi inclusive
  // per term (offset k - k_lo): module degree -p of each generator of
  // T^k, in total_layout order
  std::vector<std::vector<int>> generator_degrees;
  // per differential A_k -> A_{k+1} (offset k - k_lo, defined for
  // k < k_hi): monomial coefficients, shape total_dim(k+1) x total_dim(k)
  std::vector<Matrix> delbar_part;  // z^0 coefficient
  std::vector<Matrix> del_part;     // z^1 coefficient
};

ReesComplex rees_complex(const BigradedComplex& x, int k_lo, int k_hi);

// Degreewise H^k of the rees complex: the piece at m is H^k(F^{-m}T^*)
// and z acts by the inclusion-induced maps.  module is the torsion-free
// quotient; cohomology keeps the pieces before stripping.
struct ReesCohomology {
  GradedModule module;
  TorsionReport torsion;
  GradedModule cohomology;
};
ReesCohomology rees_complex_cohomology_mod_torsion(const BigradedComplex& x,
                                                   int k);

struct GenericFiberReport {
  std::size_t dim = 0;
  // basis of the stable piece written in H^k class coordinates
  Matrix identification;
  bool matches = false;  // fibers at 1, 2, i all have dim b_k
};

struct GradedFiberReport {
  std::map<int, std::size_t> graded;  // p -> dim, nonzero entries
  std::size_t total = 0;
  bool matches = false;  // graded dims equal the stabilized E_r page
};

struct BaseChangeReport {
  std::map<int, std::size_t> cohomology_dims;  // m -> dim H^k(F^{-m}T^*)
  std::map<int, std::size_t> torsion_dims;     // m -> torsion piece dim
  bool iso_verified = false;  // quotient dims = Rees module dims, all m
};

// The approximating bundle in degree k: the Rees module of the induced
// filtration on H^k, with its fibers and the base-change comparison.
struct FAVBReport {
  int k = 0;
  GradedModule module;
  GenericFiberReport fiber_generic;
  GradedFiberReport fiber_zero;
  BaseChangeReport base_change;
};

FAVBReport favb(const BigradedComplex& x, int k);

// Piece dims of mod-torsion rees-complex cohomology against the Rees
// module of the induced filtration, over the common stabilized window.
bool verify_base_change(const BigradedComplex& x, int k);

// D^{p,q} = (F^p ^ Fbar^q) / (F^{p+1} ^ Fbar^q + F^p ^ Fbar^{q+1}) on
// H^k.  Pure means total = b_k with support on p+q = k.
struct PurityReport {
  std::map<std::pair<int, int>, std::size_t> dims;  // nonzero entries
  std::size_t total = 0;
  bool pure = false;
};

// Two-variable Rees module of (H^k; F, Fbar) plus its fiber checks.
struct Favb2Report {
  int k = 0;
  GradedModule module;
  PurityReport purity;
  bool fiber_origin_matches = false;     // fiber at (0,0) = purity dims
  bool hodge_slice_matches = false;      // inverting z2 gives the favb module
  bool conjugate_slice_matches = false;  // inverting z1 gives its conjugate
};

Favb2Report favb2(const BigradedComplex& x, int k);

// Splitting type of the bundle on P^1 glued from (H^k; F, Fbar).
std::vector<int> twistor_type(const BigradedComplex& x, int k);

}  // namespace rlab
