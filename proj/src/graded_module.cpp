#include "rlab/graded_module.hpp"

#include <algorithm>

#include "rlab/error.hpp"

namespace rlab {

GradedModule::GradedModule(Box box, std::vector<std::size_t> dims,
                           std::vector<std::vector<Matrix>> mult)
    : box_(std::move(box)), dims_(std::move(dims)), mult_(std::move(mult)) {
  if (dims_.size() != box_.size())
    throw InputError("piece table does not match the window");
  if (mult_.size() != box_.axes())
    throw InputError("one multiplication table per axis expected");
  for (std::size_t i = 0; i < mult_.size(); ++i) {
    if (mult_[i].size() != box_.size())
      throw InputError("multiplication table does not match the window");
    for (std::size_t k = 0; k < box_.size(); ++k) {
      Deg m = box_.at(k);
      Deg up = deg_shift(m, i, 1);
      if (!box_.contains(up)) continue;
      const Matrix& a = mult_[i][k];
      if (a.rows() != dims_[box_.index(up)] || a.cols() != dims_[k])
        throw InputError("multiplication matrix shape mismatch at axis " +
                         std::to_string(i));
    }
  }
}

std::size_t GradedModule::piece_dim(const Deg& m) const {
  if (!box_.contains(m)) throw InputError("degree outside the window");
  return dims_[box_.index(m)];
}

std::size_t GradedModule::dim_at(const Deg& m) const {
  if (m.size() != axes()) throw InputError("degree arity mismatch");
  Deg c = m;
  for (std::size_t i = 0; i < c.size(); ++i) {
    if (c[i] < box_.lo[i]) return 0;
    c[i] = std::min(c[i], box_.hi[i]);
  }
  return dims_[box_.index(c)];
}

const Matrix& GradedModule::mult(std::size_t axis, const Deg& m) const {
  if (!box_.contains(m) || !box_.contains(deg_shift(m, axis, 1)))
    throw InputError("multiplication queried outside the window");
  return mult_[axis][box_.index(m)];
}

Matrix GradedModule::chain(const Deg& from, const Deg& to) const {
  if (from.size() != axes() || to.size() != axes())
    throw InputError("degree arity mismatch");
  for (std::size_t i = 0; i < axes(); ++i)
    if (to[i] < from[i]) throw InputError("chain must not descend");
  std::size_t dto = dim_at(to);
  if (dim_at(from) == 0) return Matrix(dto, 0);
  Deg c = from, t = to;
  for (std::size_t i = 0; i < axes(); ++i) {
    c[i] = std::min(c[i], box_.hi[i]);
    t[i] = std::min(t[i], box_.hi[i]);
  }
  Matrix acc = Matrix::identity(dims_[box_.index(c)]);
  for (std::size_t i = 0; i < axes(); ++i)
    while (c[i] < t[i]) {
      acc = mult_[i][box_.index(c)] * acc;
      ++c[i];
    }
  return acc;
}

std::vector<std::string> GradedModule::violations() const {
  std::vector<std::string> bad;
  for (std::size_t k = 0; k < box_.size(); ++k) {
    Deg m = box_.at(k);
    bool on_lo_face = false;
    for (std::size_t i = 0; i < axes(); ++i)
      if (m[i] == box_.lo[i]) on_lo_face = true;
    if (on_lo_face && dims_[k] != 0)
      bad.push_back("nonzero piece on the vanishing face");
    for (std::size_t i = 0; i < axes(); ++i)
      for (std::size_t j = i + 1; j < axes(); ++j) {
        Deg mi = deg_shift(m, i, 1), mj = deg_shift(m, j, 1);
        Deg mij = deg_shift(mi, j, 1);
        if (!box_.contains(mij)) continue;
        Matrix lhs = mult_[j][box_.index(mi)] * mult_[i][k];
        Matrix rhs = mult_[i][box_.index(mj)] * mult_[j][k];
        if (!(lhs == rhs))
          bad.push_back("multiplications do not commute at a degree");
      }
  }
  return bad;
}

GradedModule GradedModule::localize(
    const std::vector<std::size_t>& inverted) const {
  std::vector<bool> drop(axes(), false);
  for (std::size_t i : inverted) {
    if (i >= axes()) throw InputError("axis out of range");
    drop[i] = true;
  }
  std::vector<std::size_t> kept;
  for (std::size_t i = 0; i < axes(); ++i)
    if (!drop[i]) kept.push_back(i);

  Deg lo(kept.size()), hi(kept.size());
  for (std::size_t t = 0; t < kept.size(); ++t) {
    lo[t] = box_.lo[kept[t]];
    hi[t] = box_.hi[kept[t]];
  }
  Box nb{lo, hi};
  auto lift = [&](const Deg& sub) {
    Deg m = box_.hi;
    for (std::size_t t = 0; t < kept.size(); ++t) m[kept[t]] = sub[t];
    return m;
  };
  std::vector<std::size_t> dims(nb.size());
  std::vector<std::vector<Matrix>> mult(kept.size(),
                                        std::vector<Matrix>(nb.size()));
  for (std::size_t k = 0; k < nb.size(); ++k) {
    Deg sub = nb.at(k);
    Deg m = lift(sub);
    dims[k] = dims_[box_.index(m)];
    for (std::size_t t = 0; t < kept.size(); ++t)
      if (nb.contains(deg_shift(sub, t, 1)))
        mult[t][k] = mult_[kept[t]][box_.index(m)];
  }
  return GradedModule(std::move(nb), std::move(dims), std::move(mult));
}

Fiber fiber(const GradedModule& m, const std::vector<Scalar>& point) {
  if (point.size() != m.axes()) throw InputError("point arity mismatch");
  std::vector<std::size_t> inverted;
  for (std::size_t i = 0; i < point.size(); ++i)
    if (!point[i].is_zero()) inverted.push_back(i);
  GradedModule loc = m.localize(inverted);

  Fiber out;
  const Box& b = loc.box();
  for (std::size_t k = 0; k < b.size(); ++k) {
    Deg deg = b.at(k);
    std::size_t d = loc.piece_dim(deg);
    if (d == 0) continue;
    Subspace img = Subspace::zero(d);
    for (std::size_t i = 0; i < loc.axes(); ++i) {
      Deg below = deg_shift(deg, i, -1);
      if (loc.dim_at(below) == 0) continue;
      img = sum(img, image(loc.mult(i, below),
                           Subspace::full(loc.dim_at(below))));
    }
    std::size_t q = d - img.dim();
    if (q > 0) {
      out.graded.emplace(std::move(deg), q);
      out.total += q;
    }
  }
  return out;
}

GradedModule torsion_submodule(const GradedModule& m) {
  const Box& b = m.box();
  std::vector<Subspace> kers(b.size());
  std::vector<std::size_t> dims(b.size());
  for (std::size_t k = 0; k < b.size(); ++k) {
    Deg deg = b.at(k);
    kers[k] = Subspace::span(m.piece_dim(deg),
                             kernel_basis(m.chain(deg, b.hi)));
    dims[k] = kers[k].dim();
  }
  std::vector<std::vector<Matrix>> mult(m.axes(),
                                        std::vector<Matrix>(b.size()));
  for (std::size_t k = 0; k < b.size(); ++k) {
    Deg deg = b.at(k);
    for (std::size_t i = 0; i < m.axes(); ++i) {
      Deg up = deg_shift(deg, i, 1);
      if (!b.contains(up)) continue;
      Matrix moved = kers[k].basis() * m.mult(i, deg).transpose();
      auto co = kers[b.index(up)].coords(moved);
      if (!co) throw DefectError("torsion is not stable under z");
      mult[i][k] = co->transpose();
    }
  }
  return GradedModule(b, std::move(dims), std::move(mult));
}

GradedModule mod_torsion(const GradedModule& m) {
  const Box& b = m.box();
  std::vector<QuotientMaps> qs(b.size());
  std::vector<std::size_t> dims(b.size());
  for (std::size_t k = 0; k < b.size(); ++k) {
    Deg deg = b.at(k);
    std::size_t d = m.piece_dim(deg);
    Subspace ker = Subspace::span(d, kernel_basis(m.chain(deg, b.hi)));
    qs[k] = quotient(Subspace::full(d), ker);
    dims[k] = qs[k].dim;
  }
  std::vector<std::vector<Matrix>> mult(m.axes(),
                                        std::vector<Matrix>(b.size()));
  for (std::size_t k = 0; k < b.size(); ++k) {
    Deg deg = b.at(k);
    for (std::size_t i = 0; i < m.axes(); ++i) {
      Deg up = deg_shift(deg, i, 1);
      if (!b.contains(up)) continue;
      mult[i][k] = qs[b.index(up)].projection * m.mult(i, deg) * qs[k].lift;
    }
  }
  return GradedModule(b, std::move(dims), std::move(mult));
}

bool is_torsion_free(const GradedModule& m) {
  const Box& b = m.box();
  for (std::size_t k = 0; k < b.size(); ++k) {
    Deg deg = b.at(k);
    for (std::size_t i = 0; i < m.axes(); ++i) {
      if (!b.contains(deg_shift(deg, i, 1))) continue;
      const Matrix& a = m.mult(i, deg);
      if (rank_of(a) != a.cols()) return false;
    }
  }
  return true;
}

std::size_t invariant_sections(const GradedModule& m) {
  return m.dim_at(Deg(m.axes(), 0));
}

}  // namespace rlab
