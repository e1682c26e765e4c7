#include "rlab/rees.hpp"

#include <algorithm>
#include <functional>
#include <string>
#include <utility>

#include "rlab/error.hpp"

namespace rlab {

namespace {

Box natural_window(const MultiFilteredSpace& v) {
  Deg lo(v.n()), hi(v.n());
  for (std::size_t i = 0; i < v.n(); ++i) {
    lo[i] = -v.filtration(i).last_jump() - 1;
    hi[i] = -v.filtration(i).first_jump() + 1;
  }
  return Box{lo, hi};
}

// Pieces nested as subspaces of one ambient space; mult maps are the
// inclusion matrices in the canonical bases.
GradedModule nested_module(const Box& box,
                           const std::vector<Subspace>& pieces) {
  std::vector<std::size_t> dims(box.size());
  for (std::size_t k = 0; k < box.size(); ++k) dims[k] = pieces[k].dim();
  std::vector<std::vector<Matrix>> mult(box.axes(),
                                        std::vector<Matrix>(box.size()));
  for (std::size_t k = 0; k < box.size(); ++k) {
    Deg m = box.at(k);
    for (std::size_t i = 0; i < box.axes(); ++i) {
      Deg up = deg_shift(m, i, 1);
      if (!box.contains(up)) continue;
      auto co = pieces[box.index(up)].coords(pieces[k].basis());
      if (!co) throw DefectError("pieces are not nested");
      mult[i][k] = co->transpose();
    }
  }
  return GradedModule(box, std::move(dims), std::move(mult));
}

// Subspaces of the pieces of `big`, stable under its mult maps.
GradedModule restricted_module(const GradedModule& big,
                               const std::vector<Subspace>& subs) {
  const Box& box = big.box();
  std::vector<std::size_t> dims(box.size());
  for (std::size_t k = 0; k < box.size(); ++k) dims[k] = subs[k].dim();
  std::vector<std::vector<Matrix>> mult(box.axes(),
                                        std::vector<Matrix>(box.size()));
  for (std::size_t k = 0; k < box.size(); ++k) {
    Deg m = box.at(k);
    for (std::size_t i = 0; i < box.axes(); ++i) {
      Deg up = deg_shift(m, i, 1);
      if (!box.contains(up)) continue;
      Matrix moved = subs[k].basis() * big.mult(i, m).transpose();
      auto co = subs[box.index(up)].coords(moved);
      if (!co) throw DefectError("subspaces are not stable under z");
      mult[i][k] = co->transpose();
    }
  }
  return GradedModule(box, std::move(dims), std::move(mult));
}

}  // namespace

ReesModule rees_module(const MultiFilteredSpace& v) {
  return rees_module(v, natural_window(v));
}

ReesModule rees_module(const MultiFilteredSpace& v, const Box& window) {
  Box box = Box::hull(window, natural_window(v));
  std::vector<Subspace> pieces(box.size());
  for (std::size_t k = 0; k < box.size(); ++k)
    pieces[k] = multi_step(v, deg_neg(box.at(k)));
  GradedModule mod = nested_module(box, pieces);
  return ReesModule{v, std::move(mod), std::move(pieces)};
}

ReesModule restrict_to_subtorus(const MultiFilteredSpace& v,
                                const std::vector<std::size_t>& inverted) {
  std::vector<bool> drop(v.n(), false);
  for (std::size_t i : inverted) {
    if (i >= v.n()) throw InputError("axis out of range");
    drop[i] = true;
  }
  std::vector<Filtration> kept;
  for (std::size_t i = 0; i < v.n(); ++i)
    if (!drop[i]) kept.push_back(v.filtration(i));
  return rees_module(MultiFilteredSpace(v.dim(), std::move(kept)));
}

bool is_vector_bundle(const MultiFilteredSpace& v) {
  ReesModule r = rees_module(v);
  Fiber zero = fiber(r.module, std::vector<Scalar>(v.n(), Scalar(0)));
  Fiber generic = fiber(r.module, std::vector<Scalar>(v.n(), Scalar(1)));
  return zero.total == generic.total;
}

SplitIso split_iso(const MultiFilteredSpace& v, const Splitting& s) {
  auto bad = s.violations(v);
  if (!bad.empty()) throw InputError("invalid splitting: " + bad.front());
  ReesModule r = rees_module(v);
  const Box& box = r.module.box();

  // model basis at degree m: components with p >= -m, in degree order
  auto members = [&](const Deg& m) {
    std::vector<std::pair<Deg, std::size_t>> out;  // (p, row within V^p)
    for (const auto& [p, comp] : s.components())
      if (deg_leq(deg_neg(m), p))
        for (std::size_t j = 0; j < comp.dim(); ++j) out.emplace_back(p, j);
    return out;
  };

  std::vector<Matrix> change(box.size());
  for (std::size_t k = 0; k < box.size(); ++k) {
    Deg m = box.at(k);
    Matrix rows(0, v.dim());
    for (const auto& [p, comp] : s.components())
      if (deg_leq(deg_neg(m), p)) rows = vstack(rows, comp.basis());
    auto co = r.pieces[k].coords(rows);
    if (!co) throw DefectError("splitting component escapes its step");
    Matrix c = co->transpose();
    if (c.rows() != c.cols() || rank_of(c) != c.rows())
      throw DefectError("splitting does not span a window piece");
    change[k] = std::move(c);
  }

  // the z-actions must match the canonical injections of the model
  for (std::size_t k = 0; k < box.size(); ++k) {
    Deg m = box.at(k);
    auto small = members(m);
    for (std::size_t i = 0; i < box.axes(); ++i) {
      Deg up = deg_shift(m, i, 1);
      if (!box.contains(up)) continue;
      auto big = members(up);
      Matrix inj(big.size(), small.size());
      for (std::size_t c = 0; c < small.size(); ++c) {
        auto it = std::find(big.begin(), big.end(), small[c]);
        if (it == big.end()) throw DefectError("model member lost");
        inj.at(static_cast<std::size_t>(it - big.begin()), c) = Scalar(1);
      }
      if (!(r.module.mult(i, m) * change[k] ==
            change[box.index(up)] * inj))
        throw DefectError("model injection does not match the z-action");
    }
  }

  SplitIso out;
  out.window = box;
  out.type = s.dims();
  out.change = std::move(change);
  return out;
}

ReesMap rees_map(const FilteredMap& f) {
  Box box = Box::hull(natural_window(f.source()),
                      natural_window(f.target()));
  ReesModule src = rees_module(f.source(), box);
  ReesModule tgt = rees_module(f.target(), box);
  std::vector<Matrix> maps(box.size());
  for (std::size_t k = 0; k < box.size(); ++k) {
    Matrix moved = src.pieces[k].basis() * f.matrix().transpose();
    auto co = tgt.pieces[k].coords(moved);
    if (!co) throw DefectError("map leaves the target step");
    maps[k] = co->transpose();
  }
  return ReesMap{std::move(box), std::move(src), std::move(tgt),
                 std::move(maps)};
}

GradedModule rees_kernel(const FilteredMap& f) {
  ReesMap rm = rees_map(f);
  std::vector<Subspace> kers(rm.window.size());
  for (std::size_t k = 0; k < rm.window.size(); ++k)
    kers[k] = Subspace::span(rm.maps[k].cols(), kernel_basis(rm.maps[k]));
  return restricted_module(rm.source.module, kers);
}

ReesCokernel rees_cokernel(const FilteredMap& f) {
  ReesMap rm = rees_map(f);
  const Box& box = rm.window;

  std::vector<QuotientMaps> qs(box.size());
  std::vector<std::size_t> dims(box.size());
  for (std::size_t k = 0; k < box.size(); ++k) {
    Subspace img = image(f.matrix(), rm.source.pieces[k]);
    qs[k] = quotient(rm.target.pieces[k], img);
    dims[k] = qs[k].dim;
  }
  std::vector<std::vector<Matrix>> mult(box.axes(),
                                        std::vector<Matrix>(box.size()));
  for (std::size_t k = 0; k < box.size(); ++k) {
    Deg m = box.at(k);
    for (std::size_t i = 0; i < box.axes(); ++i) {
      Deg up = deg_shift(m, i, 1);
      if (!box.contains(up)) continue;
      mult[i][k] = qs[box.index(up)].projection * qs[k].lift;
    }
  }
  GradedModule coker(box, std::move(dims), std::move(mult));

  QuotObject co = cokernel_object(f);
  // the comparison target has pieces pi(F_W^{-m}).  Taking multi-steps of
  // the induced filtrations instead would intersect the projections, which
  // is strictly larger for some n >= 2 maps; the comparison surjects onto
  // the projected pieces, so exactness holds degree by degree.
  std::vector<Subspace> proj(box.size());
  for (std::size_t k = 0; k < box.size(); ++k)
    proj[k] = image(co.projection, rm.target.pieces[k]);
  GradedModule phi = nested_module(box, proj);

  // kernel of the comparison is the torsion
  std::vector<Subspace> tors(box.size());
  for (std::size_t k = 0; k < box.size(); ++k) {
    Matrix rows = (co.projection * qs[k].lift).transpose();
    auto cps = proj[k].coords(rows);
    if (!cps) throw DefectError("comparison leaves the target piece");
    tors[k] = Subspace::span(qs[k].dim, kernel_basis(cps->transpose()));
  }
  GradedModule t = restricted_module(coker, tors);

  TorsionReport report;
  report.submodule = t;
  for (std::size_t k = 0; k < box.size(); ++k) {
    std::size_t d = t.piece_dim(box.at(k));
    if (d > 0) {
      report.torsion_pieces.emplace(box.at(k), d);
      report.is_zero = false;
    }
  }
  report.support_codim = support_codim(t);
  return ReesCokernel{std::move(coker), std::move(report),
                      std::move(phi)};
}

std::size_t support_codim(const GradedModule& t) {
  std::size_t n = t.axes();
  const Box& box = t.box();
  for (std::size_t s = 0; s <= n; ++s) {
    // all size-s subsets S of the axes; survival means some piece with
    // every coordinate outside S pinned at the stable face is nonzero
    std::vector<std::size_t> axes(s);
    for (std::size_t i = 0; i < s; ++i) axes[i] = i;
    for (;;) {
      bool survives = false;
      std::function<void(std::size_t, Deg&)> scan = [&](std::size_t j,
                                                        Deg& m) {
        if (survives) return;
        if (j == s) {
          if (t.dim_at(m) > 0) survives = true;
          return;
        }
        for (int val = box.lo[axes[j]]; val <= box.hi[axes[j]]; ++val) {
          m[axes[j]] = val;
          scan(j + 1, m);
        }
      };
      Deg m = box.hi;
      scan(0, m);
      if (survives) return s;

      std::size_t j = s;
      bool advanced = false;
      while (j-- > 0) {
        if (axes[j] < n - (s - j)) {
          ++axes[j];
          for (std::size_t l = j + 1; l < s; ++l) axes[l] = axes[l - 1] + 1;
          advanced = true;
          break;
        }
      }
      if (!advanced) break;
    }
  }
  return n + 1;
}

bool ProjectiveCharts::all_overlaps_ok() const {
  for (const auto& o : overlaps)
    if (!o.ok) return false;
  return true;
}

namespace {

bool same_piece_dims(const GradedModule& a, const GradedModule& b) {
  if (a.axes() != b.axes()) return false;
  Box h = Box::hull(a.box(), b.box());
  for (std::size_t k = 0; k < h.size(); ++k)
    if (a.dim_at(h.at(k)) != b.dim_at(h.at(k))) return false;
  return true;
}

}  // namespace

ProjectiveCharts projective_charts(const MultiFilteredSpace& v) {
  std::size_t count = v.n();
  if (count < 2)
    throw InputError("projective charts need at least two filtrations");

  auto drop = [&](std::vector<std::size_t> out_axes) {
    std::sort(out_axes.begin(), out_axes.end());
    std::vector<Filtration> kept;
    for (std::size_t i = 0; i < count; ++i)
      if (!std::binary_search(out_axes.begin(), out_axes.end(), i))
        kept.push_back(v.filtration(i));
    return MultiFilteredSpace(v.dim(), std::move(kept));
  };

  ProjectiveCharts out;
  for (std::size_t i = 0; i < count; ++i) {
    MultiFilteredSpace chart = drop({i});
    if (!is_splittable(chart)) {
      std::string names;
      for (std::size_t j = 0; j < count; ++j)
        if (j != i) names += (names.empty() ? "" : ",") + std::to_string(j);
      throw MathError("not_chart_splittable",
                      "filtrations {" + names +
                          "} admit no common splitting");
    }
    out.chart_types.push_back(compute_splitting(chart).dims());
    out.charts.push_back(rees_module(chart));
  }

  for (std::size_t i = 0; i < count; ++i)
    for (std::size_t j = i + 1; j < count; ++j) {
      // chart axes are the original ones minus the dropped index
      auto pos = [count](std::size_t dropped, std::size_t axis) {
        std::size_t p = 0;
        for (std::size_t a = 0; a < count; ++a) {
          if (a == dropped) continue;
          if (a == axis) return p;
          ++p;
        }
        throw DefectError("axis lookup failed");
      };
      GradedModule a = out.charts[i].module.localize({pos(i, j)});
      GradedModule b = out.charts[j].module.localize({pos(j, i)});
      GradedModule c = rees_module(drop({i, j})).module;
      bool ok = same_piece_dims(a, b) && same_piece_dims(a, c);
      out.overlaps.push_back(OverlapCheck{i, j, ok});
    }
  return out;
}

std::vector<int> p1_splitting_type(const MultiFilteredSpace& v) {
  if (v.n() != 2)
    throw InputError("splitting type needs exactly two filtrations");
  std::size_t r = v.dim();
  if (r == 0) return {};
  const Filtration& f = v.filtration(0);
  const Filtration& g = v.filtration(1);
  int zf = f.zero_from(), zg = g.zero_from();

  auto h0 = [&](int m) {
    std::size_t total = 0;
    for (int j = -zf + 1; j <= m + zg - 1; ++j)
      total += intersect(f.at(-j), g.at(j - m)).dim();
    return total;
  };

  int m = -(zf + zg);
  if (h0(m) != 0) throw DefectError("section count does not vanish below");
  std::vector<int> type;
  std::vector<std::pair<int, std::size_t>> table;  // (m, h0(m))
  std::size_t prev_h0 = 0, prev_delta = 0;
  int guard = (zf + zg) - (f.first_jump() + g.first_jump()) +
              2 * static_cast<int>(r) + 16;
  for (int steps = 0; steps < guard; ++steps) {
    ++m;
    std::size_t h = h0(m);
    table.emplace_back(m, h);
    std::size_t delta = h - prev_h0;
    if (h < prev_h0 || delta < prev_delta)
      throw DefectError("section counts are not concave");
    for (std::size_t c = 0; c < delta - prev_delta; ++c) type.push_back(-m);
    prev_h0 = h;
    prev_delta = delta;
    if (type.size() == r && delta == r) {
      std::sort(type.rbegin(), type.rend());
      for (const auto& [mm, hh] : table) {
        long expect = 0;
        for (int a : type) expect += std::max(0L, static_cast<long>(a) + mm + 1);
        if (expect != static_cast<long>(hh))
          throw DefectError("splitting type does not reproduce the "
                            "section counts");
      }
      return type;
    }
  }
  throw DefectError("section counts failed to stabilize");
}

MultiFilteredSpace recover_multifiltration(const GradedModule& m) {
  std::size_t n = m.axes();
  if (n < 1 || n > 2)
    throw InputError("recovery is implemented for one or two variables");
  if (!is_torsion_free(m))
    throw MathError("torsion_present",
                    "module has torsion; no filtration produces it");
  const Box& box = m.box();
  std::size_t d = m.piece_dim(box.hi);
  std::vector<Filtration> filts;
  for (std::size_t i = 0; i < n; ++i) {
    std::vector<std::pair<int, Subspace>> steps;
    for (int p = -box.hi[i]; p <= -box.lo[i]; ++p) {
      Deg from = box.hi;
      from[i] = -p;
      Matrix chain = m.chain(from, box.hi);
      steps.emplace_back(p, Subspace::span(d, chain.transpose()));
    }
    filts.push_back(Filtration::from_steps(d, std::move(steps)));
  }
  return MultiFilteredSpace(d, std::move(filts));
}

}  // namespace rlab
