#pragma once

#include <cstddef>
#include <vector>

namespace rlab {

// Multi-index in Z^n.  std::vector's lexicographic operator< is the order
// used wherever a deterministic traversal of degrees is required.
using Deg = std::vector<int>;

Deg deg_add(Deg a, const Deg& b);
Deg deg_sub(Deg a, const Deg& b);
Deg deg_shift(Deg a, std::size_t axis, int delta);
Deg deg_neg(Deg a);
bool deg_leq(const Deg& a, const Deg& b);  // componentwise

// Integer box [lo, hi] (inclusive) in Z^n with row-major indexing.  n = 0
// is the single-point box, which keeps modules over zero variables uniform.
struct Box {
  Deg lo, hi;

  std::size_t axes() const { return lo.size(); }
  std::size_t size() const;
  bool contains(const Deg& d) const;
  std::size_t index(const Deg& d) const;
  Deg at(std::size_t idx) const;
  Box extended(int margin) const;
  static Box hull(const Box& a, const Box& b);

  bool operator==(const Box&) const = default;
};

}  // namespace rlab
