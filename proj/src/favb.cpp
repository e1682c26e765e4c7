#include "rlab/favb.hpp"

#include <algorithm>
#include <utility>

#include "rlab/error.hpp"
#include "rlab/multifilt.hpp"

namespace rlab {

namespace {

// Window in m for everything indexed by H^k.  The filtration on T^k
// jumps inside [1, k+1] and the rees complex also touches T^{k+1}, so
// [-k-2, +1] is stabilized on both faces; the -1 guard keeps the box
// nonempty (and covering the degenerate natural window) for k < 0.
Box favb_window(int k) {
  return Box{Deg{std::min(-k - 2, -1)}, Deg{1}};
}

TorsionReport torsion_report_of(const GradedModule& t) {
  TorsionReport rep;
  rep.submodule = t;
  const Box& box = t.box();
  for (std::size_t idx = 0; idx < box.size(); ++idx) {
    std::size_t d = t.piece_dim(box.at(idx));
    if (d > 0) {
      rep.torsion_pieces.emplace(box.at(idx), d);
      rep.is_zero = false;
    }
  }
  rep.support_codim = support_codim(t);
  return rep;
}

// H^k(F^{-m}T^*) over the window, z acting through the inclusions.
GradedModule rees_cohomology_module(const BigradedComplex& x, int k,
                                    const Box& box) {
  const std::size_t n_k = x.total_dim(k);
  const Matrix d_k = x.total_differential(k);
  const Matrix d_km1 = x.total_differential(k - 1);
  const Subspace cocycles = Subspace::span(n_k, kernel_basis(d_k));

  std::vector<QuotientMaps> qs(box.size());
  std::vector<std::size_t> dims(box.size());
  for (std::size_t idx = 0; idx < box.size(); ++idx) {
    const int p = -box.at(idx)[0];
    Subspace z = intersect(cocycles, x.filtration_block(k, p));
    Subspace b = image(d_km1, x.filtration_block(k - 1, p));
    qs[idx] = quotient(z, b);
    dims[idx] = qs[idx].dim;
  }
  std::vector<std::vector<Matrix>> mult(1, std::vector<Matrix>(box.size()));
  for (std::size_t idx = 0; idx < box.size(); ++idx) {
    Deg up = deg_shift(box.at(idx), 0, 1);
    if (!box.contains(up)) continue;
    // lift lands in cocycles of the bigger piece, so this is the map
    // induced by F^{-m} c F^{-m-1}
    mult[0][idx] = qs[box.index(up)].projection * qs[idx].lift;
  }
  return GradedModule(box, std::move(dims), std::move(mult));
}

std::map<int, std::size_t> one_var_dims(const GradedModule& m) {
  std::map<int, std::size_t> out;
  const Box& box = m.box();
  for (std::size_t idx = 0; idx < box.size(); ++idx) {
    std::size_t d = m.piece_dim(box.at(idx));
    if (d > 0) out[box.at(idx)[0]] = d;
  }
  return out;
}

// Degreewise equality read through the stabilized faces.
bool same_pieces(const GradedModule& a, const GradedModule& b,
                 const Box& window) {
  for (std::size_t idx = 0; idx < window.size(); ++idx) {
    Deg m = window.at(idx);
    if (a.dim_at(m) != b.dim_at(m)) return false;
  }
  return true;
}

}  // namespace

ReesComplex rees_complex(const BigradedComplex& x, int k_lo, int k_hi) {
  if (k_hi < k_lo) throw InputError("empty total-degree range");
  ReesComplex out;
  out.k_lo = k_lo;
  out.k_hi = k_hi;
  for (int k = k_lo; k <= k_hi; ++k) {
    std::vector<int> degs;
    degs.reserve(x.total_dim(k));
    for (const auto& [key, offset] : x.total_layout(k)) {
      (void)offset;
      degs.insert(degs.end(), x.dim(key.first, key.second), -key.first);
    }
    out.generator_degrees.push_back(std::move(degs));
    if (k == k_hi) continue;

    std::map<BigradedComplex::Key, std::size_t> target;
    for (const auto& [key, offset] : x.total_layout(k + 1))
      target[key] = offset;
    Matrix del_m(x.total_dim(k + 1), x.total_dim(k));
    Matrix delbar_m = del_m;
    for (const auto& [key, offset] : x.total_layout(k)) {
      auto [p, q] = key;
      if (auto it = target.find({p + 1, q}); it != target.end()) {
        const Matrix& blk = x.del(p, q);
        for (std::size_t r = 0; r < blk.rows(); ++r)
          for (std::size_t c = 0; c < blk.cols(); ++c)
            del_m.at(it->second + r, offset + c) = blk.at(r, c);
      }
      if (auto it = target.find({p, q + 1}); it != target.end()) {
        const Matrix& blk = x.delbar(p, q);
        for (std::size_t r = 0; r < blk.rows(); ++r)
          for (std::size_t c = 0; c < blk.cols(); ++c)
            delbar_m.at(it->second + r, offset + c) = blk.at(r, c);
      }
    }
    out.del_part.push_back(std::move(del_m));
    out.delbar_part.push_back(std::move(delbar_m));
  }
  return out;
}

ReesCohomology rees_complex_cohomology_mod_torsion(const BigradedComplex& x,
                                                   int k) {
  GradedModule h = rees_cohomology_module(x, k, favb_window(k));
  ReesCohomology out;
  out.torsion = torsion_report_of(torsion_submodule(h));
  out.module = mod_torsion(h);
  out.cohomology = std::move(h);
  return out;
}

FAVBReport favb(const BigradedComplex& x, int k) {
  FAVBReport rep;
  rep.k = k;
  TotalCohomology tc = total_cohomology(x, k);
  MultiFilteredSpace v(tc.dim, {hodge_filtration(x, k)});
  ReesModule rm = rees_module(v, favb_window(k));
  const Box& box = rm.module.box();
  rep.module = rm.module;

  rep.fiber_generic.dim = fiber(rm.module, {Scalar(1)}).total;
  rep.fiber_generic.identification = rm.pieces.back().basis();
  rep.fiber_generic.matches =
      rep.fiber_generic.dim == tc.dim &&
      fiber(rm.module, {Scalar(2)}).total == tc.dim &&
      fiber(rm.module, {Scalar::i()}).total == tc.dim;

  Fiber zero = fiber(rm.module, {Scalar(0)});
  rep.fiber_zero.total = zero.total;
  for (const auto& [m, d] : zero.graded) rep.fiber_zero.graded[-m[0]] = d;
  SpectralSequenceTable ss = spectral_sequence(x, x.bound() + 2);
  std::map<int, std::size_t> stable;
  for (const auto& [pq, d] : ss.infinity)
    if (pq.first + pq.second == k && d > 0) stable[pq.first] = d;
  rep.fiber_zero.matches =
      rep.fiber_zero.graded == stable && zero.total == tc.dim;

  ReesCohomology rc = rees_complex_cohomology_mod_torsion(x, k);
  rep.base_change.cohomology_dims = one_var_dims(rc.cohomology);
  rep.base_change.torsion_dims = one_var_dims(rc.torsion.submodule);
  rep.base_change.iso_verified = same_pieces(rc.module, rm.module, box);
  return rep;
}

bool verify_base_change(const BigradedComplex& x, int k) {
  return favb(x, k).base_change.iso_verified;
}

Favb2Report favb2(const BigradedComplex& x, int k) {
  if (!x.has_real_structure())
    throw MathError("no_real_structure",
                    "the two-variable bundle needs the involution");
  Favb2Report rep;
  rep.k = k;
  TotalCohomology tc = total_cohomology(x, k);
  Filtration f = hodge_filtration(x, k);
  Filtration fbar = conjugate_filtration(x, k);
  MultiFilteredSpace v(tc.dim, {f, fbar});

  const int lo = favb_window(k).lo[0];
  ReesModule rm = rees_module(v, Box{Deg{lo, lo}, Deg{1, 1}});
  rep.module = rm.module;

  for (const auto& [p, d] : graded_dims(v)) {
    rep.purity.dims[{p[0], p[1]}] = d;
    rep.purity.total += d;
  }
  rep.purity.pure = rep.purity.total == tc.dim;
  for (const auto& [pq, d] : rep.purity.dims) {
    (void)d;
    if (pq.first + pq.second != k) rep.purity.pure = false;
  }

  Fiber origin = fiber(rm.module, {Scalar(0), Scalar(0)});
  std::map<std::pair<int, int>, std::size_t> origin_dims;
  for (const auto& [m, d] : origin.graded) origin_dims[{-m[0], -m[1]}] = d;
  rep.fiber_origin_matches = origin_dims == rep.purity.dims;

  // slices along either axis against the one-filtration modules; the
  // localized module must agree as well
  Box window = favb_window(k);
  GradedModule hodge_side =
      rees_module(MultiFilteredSpace(tc.dim, {f}), window).module;
  GradedModule conj_side =
      rees_module(MultiFilteredSpace(tc.dim, {fbar}), window).module;
  rep.hodge_slice_matches =
      same_pieces(restrict_to_subtorus(v, {1}).module, hodge_side, window) &&
      same_pieces(rm.module.localize({1}), hodge_side, window);
  rep.conjugate_slice_matches =
      same_pieces(restrict_to_subtorus(v, {0}).module, conj_side, window) &&
      same_pieces(rm.module.localize({0}), conj_side, window);
  return rep;
}

std::vector<int> twistor_type(const BigradedComplex& x, int k) {
  if (!x.has_real_structure())
    throw MathError("no_real_structure",
                    "the twistor bundle needs the involution");
  TotalCohomology tc = total_cohomology(x, k);
  MultiFilteredSpace v(
      tc.dim, {hodge_filtration(x, k), conjugate_filtration(x, k)});
  return p1_splitting_type(v);
}

}  // namespace rlab
