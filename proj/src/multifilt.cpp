#include "rlab/multifilt.hpp"

#include <algorithm>
#include <string>
#include <vector>

#include "rlab/error.hpp"

namespace rlab {

Subspace multi_step(const MultiFilteredSpace& v, const Deg& p) {
  if (p.size() != v.n()) throw InputError("degree arity mismatch");
  Subspace s = Subspace::full(v.dim());
  for (std::size_t i = 0; i < v.n(); ++i)
    s = intersect(s, v.filtration(i).at(p[i]));
  return s;
}

Box jump_window(const MultiFilteredSpace& v) {
  Deg lo(v.n()), hi(v.n());
  for (std::size_t i = 0; i < v.n(); ++i) {
    lo[i] = v.filtration(i).first_jump() - 1;
    hi[i] = v.filtration(i).last_jump() + 1;
  }
  return Box{lo, hi};
}

namespace {

Subspace higher_sum(const MultiFilteredSpace& v, const Deg& p) {
  Subspace s = Subspace::zero(v.dim());
  for (std::size_t i = 0; i < v.n(); ++i)
    s = sum(s, multi_step(v, deg_shift(p, i, 1)));
  return s;
}

}  // namespace

std::size_t graded_piece_dim(const MultiFilteredSpace& v, const Deg& p) {
  return multi_step(v, p).dim() - higher_sum(v, p).dim();
}

std::map<Deg, std::size_t> graded_dims(const MultiFilteredSpace& v) {
  std::map<Deg, std::size_t> out;
  Box w = jump_window(v);
  for (std::size_t k = 0; k < w.size(); ++k) {
    Deg p = w.at(k);
    std::size_t d = graded_piece_dim(v, p);
    if (d > 0) out.emplace(std::move(p), d);
  }
  return out;
}

bool is_splittable(const MultiFilteredSpace& v) {
  std::size_t total = 0;
  for (const auto& [p, d] : graded_dims(v)) total += d;
  return total == v.dim();
}

Splitting compute_splitting(const MultiFilteredSpace& v) {
  Box w = jump_window(v);
  std::map<Deg, Subspace> comps;
  for (std::size_t k = w.size(); k-- > 0;) {
    Deg p = w.at(k);
    Subspace piece = Subspace::span(
        v.dim(), complement_in(multi_step(v, p), higher_sum(v, p)));
    if (piece.dim() > 0) comps.emplace(std::move(p), std::move(piece));
  }
  Splitting s(std::move(comps));
  auto bad = s.violations(v);
  if (!bad.empty())
    throw MathError("not_splittable",
                    "no common splitting exists: " + bad.front());
  return s;
}

bool is_r_strict(const FilteredMap& f, std::size_t r) {
  std::size_t n = f.source().n();
  if (r < 1 || r > n)
    throw InputError("strictness order must lie between 1 and the "
                     "filtration count");
  Subspace im_f = image(f.matrix(), Subspace::full(f.source().dim()));

  std::vector<std::size_t> axes(r);
  // Grids of candidate indices per chosen axis, with a sentinel below
  // every jump so the full-space region is exercised too.
  auto grid_for = [&](std::size_t i) {
    std::vector<int> g = f.source().filtration(i).jumps();
    auto t = f.target().filtration(i).jumps();
    g.insert(g.end(), t.begin(), t.end());
    int lo = 0;
    if (!g.empty()) lo = *std::min_element(g.begin(), g.end());
    g.push_back(lo - 1);
    std::sort(g.begin(), g.end());
    g.erase(std::unique(g.begin(), g.end()), g.end());
    return g;
  };

  // Enumerate size-r subsets of the axes.
  for (std::size_t i = 0; i < r; ++i) axes[i] = i;
  while (true) {
    std::vector<std::vector<int>> grids;
    for (std::size_t j = 0; j < r; ++j) grids.push_back(grid_for(axes[j]));
    std::vector<std::size_t> pick(r, 0);
    while (true) {
      Subspace src = Subspace::full(f.source().dim());
      Subspace tgt = Subspace::full(f.target().dim());
      for (std::size_t j = 0; j < r; ++j) {
        int p = grids[j][pick[j]];
        src = intersect(src, f.source().filtration(axes[j]).at(p));
        tgt = intersect(tgt, f.target().filtration(axes[j]).at(p));
      }
      if (!(image(f.matrix(), src) == intersect(tgt, im_f))) return false;
      std::size_t j = 0;
      for (; j < r; ++j) {
        if (++pick[j] < grids[j].size()) break;
        pick[j] = 0;
      }
      if (j == r) break;
    }
    // Next subset in lexicographic order.
    std::size_t j = r;
    while (j-- > 0) {
      if (axes[j] < n - (r - j)) {
        ++axes[j];
        for (std::size_t l = j + 1; l < r; ++l) axes[l] = axes[l - 1] + 1;
        break;
      }
      if (j == 0) return true;
    }
  }
}

MultiFilteredSpace tensor(const MultiFilteredSpace& a,
                          const MultiFilteredSpace& b) {
  if (a.n() != b.n())
    throw InputError("tensor factors carry different filtration counts");
  std::size_t dim = a.dim() * b.dim();
  std::vector<Filtration> filts;
  for (std::size_t i = 0; i < a.n(); ++i) {
    const Filtration& fa = a.filtration(i);
    const Filtration& fb = b.filtration(i);
    std::vector<std::pair<int, Subspace>> steps;
    int lo = fa.first_jump() + fb.first_jump() - 2;
    int hi = fa.zero_from() + fb.zero_from() - 1;
    for (int c = lo; c <= hi; ++c) {
      Subspace s = Subspace::zero(dim);
      for (int p = fa.first_jump() - 1; p <= fa.zero_from(); ++p) {
        Subspace sa = fa.at(p);
        Subspace sb = fb.at(c - p);
        if (sa.dim() == 0 || sb.dim() == 0) continue;
        s = sum(s, Subspace::span(dim, kronecker(sa.basis(), sb.basis())));
      }
      steps.emplace_back(c, std::move(s));
    }
    filts.push_back(Filtration::from_steps(dim, std::move(steps)));
  }
  return MultiFilteredSpace(dim, std::move(filts));
}

MultiFilteredSpace direct_sum(const MultiFilteredSpace& a,
                              const MultiFilteredSpace& b) {
  if (a.n() != b.n())
    throw InputError("summands carry different filtration counts");
  std::size_t dim = a.dim() + b.dim();
  auto embed = [&](const Subspace& sa, const Subspace& sb) {
    Matrix left = hstack(sa.basis(), Matrix(sa.dim(), b.dim()));
    Matrix right = hstack(Matrix(sb.dim(), a.dim()), sb.basis());
    return Subspace::span(dim, vstack(left, right));
  };
  std::vector<Filtration> filts;
  for (std::size_t i = 0; i < a.n(); ++i) {
    const Filtration& fa = a.filtration(i);
    const Filtration& fb = b.filtration(i);
    std::vector<int> grid = fa.jumps();
    auto jb = fb.jumps();
    grid.insert(grid.end(), jb.begin(), jb.end());
    int lo = grid.empty() ? 0 : *std::min_element(grid.begin(), grid.end());
    grid.push_back(lo - 1);
    std::sort(grid.begin(), grid.end());
    grid.erase(std::unique(grid.begin(), grid.end()), grid.end());
    std::vector<std::pair<int, Subspace>> steps;
    for (int p : grid) steps.emplace_back(p, embed(fa.at(p), fb.at(p)));
    filts.push_back(Filtration::from_steps(dim, std::move(steps)));
  }
  return MultiFilteredSpace(dim, std::move(filts));
}

SubObject kernel_object(const FilteredMap& f) {
  std::size_t sd = f.source().dim();
  Subspace ker = Subspace::span(sd, kernel_basis(f.matrix()));
  std::size_t kd = ker.dim();
  std::vector<Filtration> filts;
  for (std::size_t i = 0; i < f.source().n(); ++i) {
    const Filtration& fi = f.source().filtration(i);
    std::vector<int> grid = fi.jumps();
    grid.push_back(fi.first_jump() - 1);
    std::vector<std::pair<int, Subspace>> steps;
    for (int p : grid) {
      Subspace cut = intersect(fi.at(p), ker);
      auto co = ker.coords(cut.basis());
      if (!co) throw DefectError("kernel step escaped the kernel");
      steps.emplace_back(p, Subspace::span(kd, *co));
    }
    filts.push_back(Filtration::from_steps(kd, std::move(steps)));
  }
  return SubObject{MultiFilteredSpace(kd, std::move(filts)),
                   ker.basis().transpose()};
}

QuotObject cokernel_object(const FilteredMap& f) {
  Subspace im_f = image(f.matrix(), Subspace::full(f.source().dim()));
  QuotientMaps q = quotient(Subspace::full(f.target().dim()), im_f);
  std::vector<Filtration> filts;
  for (std::size_t i = 0; i < f.target().n(); ++i) {
    const Filtration& gi = f.target().filtration(i);
    std::vector<int> grid = gi.jumps();
    grid.push_back(gi.first_jump() - 1);
    std::vector<std::pair<int, Subspace>> steps;
    for (int p : grid)
      steps.emplace_back(p, image(q.projection, gi.at(p)));
    filts.push_back(Filtration::from_steps(q.dim, std::move(steps)));
  }
  return QuotObject{MultiFilteredSpace(q.dim, std::move(filts)),
                    q.projection};
}

}  // namespace rlab
