#include "rlab/degree.hpp"

#include <algorithm>

#include "rlab/error.hpp"

namespace rlab {

Deg deg_add(Deg a, const Deg& b) {
  for (std::size_t i = 0; i < a.size(); ++i) a[i] += b[i];
  return a;
}

Deg deg_sub(Deg a, const Deg& b) {
  for (std::size_t i = 0; i < a.size(); ++i) a[i] -= b[i];
  return a;
}

Deg deg_shift(Deg a, std::size_t axis, int delta) {
  a[axis] += delta;
  return a;
}

Deg deg_neg(Deg a) {
  for (auto& x : a) x = -x;
  return a;
}

bool deg_leq(const Deg& a, const Deg& b) {
  for (std::size_t i = 0; i < a.size(); ++i)
    if (a[i] > b[i]) return false;
  return true;
}

std::size_t Box::size() const {
  std::size_t s = 1;
  for (std::size_t i = 0; i < lo.size(); ++i) {
    if (hi[i] < lo[i]) return 0;
    s *= static_cast<std::size_t>(hi[i] - lo[i] + 1);
  }
  return s;
}

bool Box::contains(const Deg& d) const {
  if (d.size() != lo.size()) return false;
  for (std::size_t i = 0; i < lo.size(); ++i)
    if (d[i] < lo[i] || d[i] > hi[i]) return false;
  return true;
}

std::size_t Box::index(const Deg& d) const {
  if (!contains(d)) throw DefectError("Box::index: degree outside box");
  std::size_t idx = 0;
  for (std::size_t i = 0; i < lo.size(); ++i)
    idx = idx * static_cast<std::size_t>(hi[i] - lo[i] + 1) +
          static_cast<std::size_t>(d[i] - lo[i]);
  return idx;
}

Deg Box::at(std::size_t idx) const {
  Deg d(lo.size());
  for (std::size_t i = lo.size(); i-- > 0;) {
    std::size_t w = static_cast<std::size_t>(hi[i] - lo[i] + 1);
    d[i] = lo[i] + static_cast<int>(idx % w);
    idx /= w;
  }
  return d;
}

Box Box::extended(int margin) const {
  Box b = *this;
  for (std::size_t i = 0; i < lo.size(); ++i) {
    b.lo[i] -= margin;
    b.hi[i] += margin;
  }
  return b;
}

Box Box::hull(const Box& a, const Box& b) {
  if (a.axes() != b.axes()) throw DefectError("Box::hull: axis mismatch");
  Box h = a;
  for (std::size_t i = 0; i < a.axes(); ++i) {
    h.lo[i] = std::min(a.lo[i], b.lo[i]);
    h.hi[i] = std::max(a.hi[i], b.hi[i]);
  }
  return h;
}

}  // namespace rlab
