#include "rlab/bigraded.hpp"

#include <algorithm>
#include <string>

#include "rlab/error.hpp"

namespace rlab {
namespace {

std::string at_pq(int p, int q) {
  return "(" + std::to_string(p) + "," + std::to_string(q) + ")";
}

}  // namespace

BigradedComplex::BigradedComplex(std::size_t bound,
                                 std::map<Key, std::size_t> dims,
                                 std::map<Key, Matrix> del,
                                 std::map<Key, Matrix> delbar,
                                 std::optional<std::map<Key, Matrix>> sigma)
    : bound_(bound),
      dims_(std::move(dims)),
      del_(std::move(del)),
      delbar_(std::move(delbar)),
      sigma_(std::move(sigma)) {
  auto in_square = [&](const Key& k) {
    return k.first >= 0 && k.second >= 0 &&
           k.first <= static_cast<int>(bound_) &&
           k.second <= static_cast<int>(bound_);
  };
  for (auto it = dims_.begin(); it != dims_.end();) {
    if (!in_square(it->first))
      throw InputError("term " + at_pq(it->first.first, it->first.second) +
                       " lies outside the bidegree square");
    it = it->second == 0 ? dims_.erase(it) : std::next(it);
  }
  auto check_shapes = [&](const std::map<Key, Matrix>& maps, int dp, int dq,
                          const char* name) {
    for (const auto& [key, m] : maps) {
      const auto& [p, q] = key;
      if (!in_square(key))
        throw InputError(std::string(name) + " at " + at_pq(p, q) +
                         " lies outside the bidegree square");
      if (m.rows() != dim(p + dp, q + dq) || m.cols() != dim(p, q))
        throw InputError(std::string(name) + " at " + at_pq(p, q) +
                         " has the wrong shape");
    }
  };
  check_shapes(del_, 1, 0, "del");
  check_shapes(delbar_, 0, 1, "delbar");
  int n = static_cast<int>(bound_);
  for (int p = 0; p <= n; ++p)
    for (int q = 0; q <= n; ++q) {
      if (!(this->del(p + 1, q) * this->del(p, q)).is_zero())
        throw InputError("del^2 is nonzero at " + at_pq(p, q));
      if (!(this->delbar(p, q + 1) * this->delbar(p, q)).is_zero())
        throw InputError("delbar^2 is nonzero at " + at_pq(p, q));
      if (!(this->del(p, q + 1) * this->delbar(p, q) +
            this->delbar(p + 1, q) * this->del(p, q))
               .is_zero())
        throw InputError("del and delbar do not anticommute at " + at_pq(p, q));
    }
  if (!sigma_) return;
  for (const auto& [key, m] : *sigma_) {
    const auto& [p, q] = key;
    if (!in_square(key))
      throw InputError("sigma at " + at_pq(p, q) +
                       " lies outside the bidegree square");
    if (m.rows() != dim(q, p) || m.cols() != dim(p, q))
      throw InputError("sigma at " + at_pq(p, q) + " has the wrong shape");
  }
  for (int p = 0; p <= n; ++p)
    for (int q = 0; q <= n; ++q) {
      if (dim(p, q) > 0 &&
          !(this->sigma(q, p) * this->sigma(p, q).conjugate()).is_identity())
        throw InputError("sigma is not an involution at " + at_pq(p, q));
      if (this->sigma(p + 1, q) * this->del(p, q).conjugate() !=
          this->delbar(q, p) * this->sigma(p, q))
        throw InputError("sigma does not intertwine del and delbar at " +
                         at_pq(p, q));
    }
}

std::size_t BigradedComplex::dim(int p, int q) const {
  auto it = dims_.find({p, q});
  return it == dims_.end() ? 0 : it->second;
}

Matrix BigradedComplex::del(int p, int q) const {
  auto it = del_.find({p, q});
  if (it != del_.end()) return it->second;
  return Matrix(dim(p + 1, q), dim(p, q));
}

Matrix BigradedComplex::delbar(int p, int q) const {
  auto it = delbar_.find({p, q});
  if (it != delbar_.end()) return it->second;
  return Matrix(dim(p, q + 1), dim(p, q));
}

Matrix BigradedComplex::sigma(int p, int q) const {
  if (sigma_) {
    auto it = sigma_->find({p, q});
    if (it != sigma_->end()) return it->second;
  }
  return Matrix(dim(q, p), dim(p, q));
}

std::vector<std::pair<BigradedComplex::Key, std::size_t>>
BigradedComplex::total_layout(int k) const {
  std::vector<std::pair<Key, std::size_t>> out;
  int n = static_cast<int>(bound_);
  std::size_t offset = 0;
  for (int p = std::max(0, k - n); p <= std::min(k, n); ++p) {
    out.push_back({{p, k - p}, offset});
    offset += dim(p, k - p);
  }
  return out;
}

std::size_t BigradedComplex::total_dim(int k) const {
  auto layout = total_layout(k);
  if (layout.empty()) return 0;
  const auto& [key, off] = layout.back();
  return off + dim(key.first, key.second);
}

Matrix BigradedComplex::total_differential(int k, const Scalar& h) const {
  auto src = total_layout(k);
  auto dst = total_layout(k + 1);
  auto dst_offset = [&](int p, int q) -> long {
    for (const auto& [key, off] : dst)
      if (key.first == p && key.second == q) return static_cast<long>(off);
    return -1;
  };
  Matrix out(total_dim(k + 1), total_dim(k));
  auto paste = [&](const Matrix& block, long row0, std::size_t col0,
                   const Scalar& scale) {
    for (std::size_t i = 0; i < block.rows(); ++i)
      for (std::size_t j = 0; j < block.cols(); ++j)
        out.at(static_cast<std::size_t>(row0) + i, col0 + j) =
            block.at(i, j) * scale;
  };
  for (const auto& [key, off] : src) {
    const auto& [p, q] = key;
    long up = dst_offset(p + 1, q);
    if (up >= 0) paste(del(p, q), up, off, h);
    long right = dst_offset(p, q + 1);
    if (right >= 0) paste(delbar(p, q), right, off, Scalar(1));
  }
  return out;
}

Subspace BigradedComplex::filtration_block(int k, int p) const {
  std::size_t n = total_dim(k);
  Matrix rows(0, n);
  for (const auto& [key, off] : total_layout(k)) {
    if (key.first < p) continue;
    std::size_t d = dim(key.first, key.second);
    Matrix unit(d, n);
    for (std::size_t i = 0; i < d; ++i) unit.at(i, off + i) = Scalar(1);
    rows = vstack(rows, unit);
  }
  return Subspace::span(n, rows);
}

TotalCohomology total_cohomology(const BigradedComplex& x, int k) {
  std::size_t n = x.total_dim(k);
  Subspace cocycles = Subspace::span(n, kernel_basis(x.total_differential(k)));
  Subspace boundaries =
      image(x.total_differential(k - 1), Subspace::full(x.total_dim(k - 1)));
  QuotientMaps qm = quotient(cocycles, boundaries);
  return {qm.dim, qm.lift.transpose(), qm.projection, cocycles, boundaries};
}

Filtration hodge_filtration(const BigradedComplex& x, int k) {
  TotalCohomology h = total_cohomology(x, k);
  std::vector<std::pair<int, Subspace>> steps;
  for (int p = 0; p <= static_cast<int>(x.bound()) + 1; ++p)
    steps.push_back(
        {p, image(h.projection, intersect(h.cocycles,
                                          x.filtration_block(k, p)))});
  return Filtration::from_steps(h.dim, steps);
}

Filtration conjugate_filtration(const BigradedComplex& x, int k) {
  return sigma_image(x, k, hodge_filtration(x, k));
}

Filtration sigma_image(const BigradedComplex& x, int k, const Filtration& f) {
  if (!x.has_real_structure())
    throw MathError("no_real_structure",
                    "the complex has no real structure to conjugate with");
  TotalCohomology h = total_cohomology(x, k);
  if (f.ambient_dim() != h.dim)
    throw InputError("filtration does not live on H^" + std::to_string(k));
  std::size_t n = x.total_dim(k);
  Matrix st(n, n);
  auto layout = x.total_layout(k);
  auto offset_of = [&](int p, int q) {
    for (const auto& [key, off] : layout)
      if (key.first == p && key.second == q) return off;
    throw DefectError("sigma block leaves the total degree");
  };
  for (const auto& [key, off] : layout) {
    const auto& [p, q] = key;
    Matrix block = x.sigma(p, q);
    std::size_t dst = offset_of(q, p);
    for (std::size_t i = 0; i < block.rows(); ++i)
      for (std::size_t j = 0; j < block.cols(); ++j)
        st.at(dst + i, off + j) = block.at(i, j);
  }
  // induced antilinear map on H^k: c |-> M conj(c)
  Matrix m =
      h.projection * st * h.representatives.transpose().conjugate();
  std::vector<std::pair<int, Subspace>> steps;
  for (const auto& [start, space] : f.regions())
    steps.push_back(
        {start, image(m, Subspace::span(f.ambient_dim(),
                                        space.basis().conjugate()))});
  steps.push_back({f.zero_from(), Subspace::zero(f.ambient_dim())});
  return Filtration::from_steps(f.ambient_dim(), steps);
}

namespace {

// Z_r^{p,q} = {x in F^p T^{p+q} : dx in F^{p+r} T^{p+q+1}}, r >= 0
Subspace z_space(const BigradedComplex& x, int r, int p, int q) {
  int k = p + q;
  return intersect(x.filtration_block(k, p),
                   preimage(x.total_differential(k),
                            x.filtration_block(k + 1, p + r)));
}

}  // namespace

SpectralSequenceTable spectral_sequence(const BigradedComplex& x,
                                        std::size_t r_max) {
  if (r_max < 1) throw InputError("r_max must be at least 1");
  int n = static_cast<int>(x.bound());
  // pages beyond bound+1 cannot carry differentials, so computing to
  // bound+2 certifies degeneration
  int r_cap = std::max(static_cast<int>(r_max), n + 2);
  SpectralSequenceTable table;
  int last_nonzero_d = 0;
  for (int r = 1; r <= r_cap; ++r) {
    std::map<std::pair<int, int>, QuotientMaps> quotients;
    std::map<std::pair<int, int>, std::size_t> page;
    for (int k = 0; k <= 2 * n; ++k)
      for (int p = std::max(0, k - n); p <= std::min(k, n); ++p) {
        int q = k - p;
        Subspace znum = z_space(x, r, p, q);
        Subspace den = sum(
            image(x.total_differential(k - 1),
                  z_space(x, r - 1, p - r + 1, q + r - 2)),
            x.filtration_block(k, p + 1));
        QuotientMaps qm = quotient(znum, intersect(znum, den));
        if (qm.dim > 0) {
          page[{p, q}] = qm.dim;
          quotients[{p, q}] = qm;
        }
      }
    for (const auto& [key, qm] : quotients) {
      const auto& [p, q] = key;
      auto target = quotients.find({p + r, q - r + 1});
      if (target == quotients.end()) continue;
      Matrix dr = target->second.projection *
                  x.total_differential(p + q) * qm.lift;
      table.differentials[{r, p, q}] = dr;
      if (!dr.is_zero()) last_nonzero_d = r;
    }
    if (r <= static_cast<int>(r_max)) table.pages[r] = page;
    if (r == last_nonzero_d + 1 || r == r_cap)
      table.infinity = page;  // refreshed until the pages stop moving
  }
  table.degeneration_page = static_cast<std::size_t>(last_nonzero_d + 1);
  // drop differentials past the requested range
  for (auto it = table.differentials.begin();
       it != table.differentials.end();)
    it = std::get<0>(it->first) > static_cast<int>(r_max)
             ? table.differentials.erase(it)
             : std::next(it);
  return table;
}

bool check_convergence(const BigradedComplex& x, int k) {
  SpectralSequenceTable table = spectral_sequence(x, 1);
  Filtration f = hodge_filtration(x, k);
  int n = static_cast<int>(x.bound());
  for (int p = std::max(0, k - n); p <= std::min(k, n) + 1; ++p) {
    std::size_t graded = f.at(p).dim() - f.at(p + 1).dim();
    auto it = table.infinity.find({p, k - p});
    std::size_t stable = it == table.infinity.end() ? 0 : it->second;
    if (graded != stable) return false;
  }
  return true;
}

TotalCohomology twisted_cohomology(const BigradedComplex& x, const Scalar& h,
                                   int k) {
  std::size_t n = x.total_dim(k);
  Subspace cocycles =
      Subspace::span(n, kernel_basis(x.total_differential(k, h)));
  Subspace boundaries = image(x.total_differential(k - 1, h),
                              Subspace::full(x.total_dim(k - 1)));
  QuotientMaps qm = quotient(cocycles, boundaries);
  return {qm.dim, qm.lift.transpose(), qm.projection, cocycles, boundaries};
}

bool theta_intertwine_check(const BigradedComplex& x, const Scalar& h) {
  if (h.is_zero()) throw InputError("theta_h needs h != 0");
  int n = static_cast<int>(x.bound());
  auto theta = [&](int k) {
    Matrix t(x.total_dim(k), x.total_dim(k));
    for (const auto& [key, off] : x.total_layout(k)) {
      Scalar hp = h.pow(key.first);
      for (std::size_t i = 0; i < x.dim(key.first, key.second); ++i)
        t.at(off + i, off + i) = hp;
    }
    return t;
  };
  for (int k = 0; k <= 2 * n; ++k)
    if (theta(k + 1) * x.total_differential(k) !=
        x.total_differential(k, h) * theta(k))
      return false;
  return true;
}

}  // namespace rlab
