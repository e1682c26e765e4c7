#pragma once

#include <cstddef>
#include <map>
#include <utility>
#include <vector>

#include "rlab/degree.hpp"
#include "rlab/subspace.hpp"

namespace rlab {

// Descending, separated, exhaustive Z-filtration on k^ambient, stored at
// its constancy regions.  Canonical storage: region start indices with
// strictly descending nonzero spaces, the first region being the full
// space, plus the first index at which the filtration has dropped to zero.
// Two filtrations are equal exactly when they agree as functions of p.
class Filtration {
public:
  // Accepts any step list (index, space); steps must be descending.  The
  // value at p is the space stored at the largest index <= p, the full
  // space below all steps, and zero above the last nonzero step.
  static Filtration from_steps(std::size_t ambient,
                               std::vector<std::pair<int, Subspace>> steps);
  // Full space through index last_full, zero afterwards.
  static Filtration trivial(std::size_t ambient, int last_full = 0);

  std::size_t ambient_dim() const { return ambient_; }
  Subspace at(int p) const;
  int zero_from() const { return zero_from_; }

  // Region starts; first entry is the full space.  Empty only for
  // ambient dimension zero.
  const std::vector<std::pair<int, Subspace>>& regions() const {
    return starts_;
  }

  // Indices p with at(p) != at(p-1); empty iff ambient_dim() == 0.
  std::vector<int> jumps() const;
  // Smallest/largest jump; ambient 0 reports the degenerate range [0, 0].
  int first_jump() const;
  int last_jump() const;

  bool operator==(const Filtration&) const = default;

private:
  std::size_t ambient_ = 0;
  std::vector<std::pair<int, Subspace>> starts_;
  int zero_from_ = 0;
};

// k^dim carrying n filtrations.  n = 0 is allowed (a bare vector space).
class MultiFilteredSpace {
public:
  MultiFilteredSpace(std::size_t dim, std::vector<Filtration> filtrations);

  std::size_t n() const { return filts_.size(); }
  std::size_t dim() const { return dim_; }
  const Filtration& filtration(std::size_t i) const { return filts_[i]; }
  const std::vector<Filtration>& filtrations() const { return filts_; }

  bool operator==(const MultiFilteredSpace&) const = default;

private:
  std::size_t dim_;
  std::vector<Filtration> filts_;
};

// Linear map compatible with the filtrations: matrix * F_i^p lands in
// G_i^p for every i and p.  Compatibility is validated on construction.
class FilteredMap {
public:
  FilteredMap(MultiFilteredSpace source, MultiFilteredSpace target,
              Matrix matrix);

  const MultiFilteredSpace& source() const { return source_; }
  const MultiFilteredSpace& target() const { return target_; }
  const Matrix& matrix() const { return matrix_; }

private:
  MultiFilteredSpace source_, target_;
  Matrix matrix_;
};

// Finite collection of subspaces V^p indexed by multidegree.  A valid
// splitting of (V, F_1..F_n) has the V^p independent, spanning, and
// recovering every filtration step as F_i^r = sum over p_i >= r of V^p.
class Splitting {
public:
  explicit Splitting(std::map<Deg, Subspace> components);

  const std::map<Deg, Subspace>& components() const { return components_; }
  std::map<Deg, std::size_t> dims() const;

  // Empty result means the splitting axioms hold for v.
  std::vector<std::string> violations(const MultiFilteredSpace& v) const;

private:
  std::map<Deg, Subspace> components_;
};

}  // namespace rlab
