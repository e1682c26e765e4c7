#include <algorithm>
#include <map>
#include <utility>

#include "rlab/error.hpp"
#include "rlab/models.hpp"

namespace rlab {

std::uint64_t Rng::next() {
  std::uint64_t z = (state_ += 0x9e3779b97f4a7c15ULL);
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

long Rng::range(long lo, long hi) {
  return lo + static_cast<long>(next() %
                                static_cast<std::uint64_t>(hi - lo + 1));
}

Scalar Rng::scalar() {
  Scalar s(range(-3, 3));
  if (range(0, 3) == 0) s += Scalar::i() * Scalar(range(-2, 2));
  return s;
}

Matrix Rng::matrix(std::size_t rows, std::size_t cols) {
  Matrix m(rows, cols);
  for (std::size_t i = 0; i < rows; ++i)
    for (std::size_t j = 0; j < cols; ++j) m.at(i, j) = scalar();
  return m;
}

Matrix Rng::invertible(std::size_t n) {
  for (;;) {
    Matrix m = matrix(n, n);
    if (rank_of(m) == n) return m;
  }
}

MultiFilteredSpace random_multifiltration(std::uint64_t seed, std::size_t n,
                                          std::size_t dim, int first,
                                          int last) {
  if (first > last) throw InputError("empty jump range");
  Rng rng(seed);
  std::vector<Filtration> filts;
  for (std::size_t i = 0; i < n; ++i) {
    Matrix frame = rng.invertible(dim);
    long max_steps = std::min<long>(static_cast<long>(dim),
                                    last - first + 1);
    long k = dim == 0 ? 0 : rng.range(1, max_steps);
    // k distinct ascending positions, strictly dropping dims.
    std::vector<int> pos;
    while (static_cast<long>(pos.size()) < k) {
      int p = static_cast<int>(rng.range(first, last));
      if (std::find(pos.begin(), pos.end(), p) == pos.end()) pos.push_back(p);
    }
    std::sort(pos.begin(), pos.end());
    std::vector<std::size_t> dims;
    {
      // choose k distinct dims in [1, dim], used in descending order
      std::vector<std::size_t> pool;
      while (static_cast<long>(pool.size()) < k) {
        auto d = static_cast<std::size_t>(rng.range(1, static_cast<long>(dim)));
        if (std::find(pool.begin(), pool.end(), d) == pool.end())
          pool.push_back(d);
      }
      std::sort(pool.rbegin(), pool.rend());
      dims = std::move(pool);
    }
    std::vector<std::pair<int, Subspace>> steps;
    for (long t = 0; t < k; ++t)
      steps.emplace_back(pos[static_cast<std::size_t>(t)],
                         Subspace::span(dim, frame.rows_slice(
                             0, dims[static_cast<std::size_t>(t)])));
    // sometimes stretch the last region before it hits zero
    if (k > 0 && rng.range(0, 2) == 0)
      steps.emplace_back(pos.back() + static_cast<int>(rng.range(2, 3)),
                         Subspace::zero(dim));
    if (dim == 0) steps.clear();
    filts.push_back(Filtration::from_steps(dim, std::move(steps)));
  }
  return MultiFilteredSpace(dim, std::move(filts));
}

SplitSpace random_split_space(std::uint64_t seed, std::size_t n,
                              std::size_t dim, int deg_lo, int deg_hi) {
  if (deg_lo > deg_hi) throw InputError("empty degree range");
  Rng rng(seed);
  Matrix frame = rng.invertible(dim);
  std::vector<Deg> degs(dim);
  for (auto& d : degs) {
    d.resize(n);
    for (std::size_t i = 0; i < n; ++i)
      d[i] = static_cast<int>(rng.range(deg_lo, deg_hi));
  }
  std::map<Deg, Subspace> comps;
  {
    std::map<Deg, Matrix> rows;
    for (std::size_t a = 0; a < dim; ++a) {
      auto it = rows.find(degs[a]);
      Matrix r = frame.rows_slice(a, 1);
      if (it == rows.end())
        rows.emplace(degs[a], std::move(r));
      else
        it->second = vstack(it->second, r);
    }
    for (auto& [p, m] : rows) comps.emplace(p, Subspace::span(dim, m));
  }
  std::vector<Filtration> filts;
  for (std::size_t i = 0; i < n; ++i) {
    std::vector<std::pair<int, Subspace>> steps;
    for (int r = deg_lo; r <= deg_hi + 1; ++r) {
      Matrix picked(0, dim);
      for (std::size_t a = 0; a < dim; ++a)
        if (degs[a][i] >= r) picked = vstack(picked, frame.rows_slice(a, 1));
      steps.emplace_back(r, Subspace::span(dim, picked));
    }
    filts.push_back(Filtration::from_steps(dim, std::move(steps)));
  }
  return SplitSpace{MultiFilteredSpace(dim, std::move(filts)),
                    Splitting(std::move(comps)), std::move(frame),
                    std::move(degs)};
}

FilteredMap random_filtered_map(std::uint64_t seed, std::size_t n,
                                std::size_t dim_v, std::size_t dim_w,
                                int deg_lo, int deg_hi) {
  Rng rng(seed);
  SplitSpace sv = random_split_space(rng.next(), n, dim_v, deg_lo, deg_hi);
  SplitSpace sw = random_split_space(rng.next(), n, dim_w, deg_lo, deg_hi);

  auto coord_rows = [](const Matrix& frame) {
    auto inv = inverse(frame.transpose());
    if (!inv) throw DefectError("frame not invertible");
    return *inv;
  };
  Matrix pv = coord_rows(sv.frame);

  auto rows_at = [](const std::vector<Deg>& degs, const Deg& p) {
    std::vector<std::size_t> out;
    for (std::size_t a = 0; a < degs.size(); ++a)
      if (degs[a] == p) out.push_back(a);
    return out;
  };

  Matrix f(dim_w, dim_v);
  for (const auto& [p, vp] : sv.splitting.components()) {
    auto vrows = rows_at(sv.row_degrees, p);
    for (const auto& [q, wq] : sw.splitting.components()) {
      if (!deg_leq(p, q)) continue;
      auto wrows = rows_at(sw.row_degrees, q);
      Matrix block = rng.matrix(wrows.size(), vrows.size());
      // embed column a of block at frame row wrows[a], project with the
      // dual rows of the source frame
      for (std::size_t a = 0; a < wrows.size(); ++a)
        for (std::size_t b = 0; b < vrows.size(); ++b)
          for (std::size_t c = 0; c < dim_w; ++c)
            for (std::size_t d = 0; d < dim_v; ++d)
              f.at(c, d) += sw.frame.at(wrows[a], c) * block.at(a, b) *
                            pv.at(vrows[b], d);
    }
  }
  return FilteredMap(sv.space, sw.space, std::move(f));
}

}  // namespace rlab
