#pragma once

#include <cstddef>
#include <map>
#include <string>
#include <vector>

#include "rlab/degree.hpp"
#include "rlab/matrix.hpp"
#include "rlab/scalar.hpp"
#include "rlab/subspace.hpp"

namespace rlab {

// Z^n-graded module over k[z_1..z_n] held on a finite degree window.
// Outside the window the module is read through the stabilized faces:
// pieces vanish once any coordinate drops below lo, and every mult map
// is an isomorphism (taken as the identity on the stored piece) once a
// coordinate passes hi.  All constructions in this library produce
// windows stabilized in that sense; violations() checks what is
// checkable from the stored data.
class GradedModule {
public:
  GradedModule() = default;
  // dims indexed by box.index; mult[axis][box.index(m)] has shape
  // dims(m+e_axis) x dims(m) and is only read when both ends lie in the
  // box.
  GradedModule(Box box, std::vector<std::size_t> dims,
               std::vector<std::vector<Matrix>> mult);

  const Box& box() const { return box_; }
  std::size_t axes() const { return box_.axes(); }

  // Stored dimension; m must lie in the box.
  std::size_t piece_dim(const Deg& m) const;
  // Dimension anywhere in Z^n via the stabilized reading.
  std::size_t dim_at(const Deg& m) const;

  const Matrix& mult(std::size_t axis, const Deg& m) const;

  // Composite multiplication from..to (componentwise from <= to), walked
  // axis by axis; commutativity makes the order immaterial.  Degrees are
  // read through the stabilized faces like dim_at.
  Matrix chain(const Deg& from, const Deg& to) const;

  // Structural defects: lo faces not zero, squares not commuting.
  std::vector<std::string> violations() const;

  // Invert the variables in `inverted`: clamp those axes at the stable
  // face and return the module over the remaining axes (in order).
  GradedModule localize(const std::vector<std::size_t>& inverted) const;

  bool operator==(const GradedModule&) const = default;

private:
  Box box_;
  std::vector<std::size_t> dims_;
  std::vector<std::vector<Matrix>> mult_;
};

// M ⊗ residue field at the point: only the zero pattern of the point
// matters.  graded is indexed by the degrees of the non-inverted axes.
struct Fiber {
  std::map<Deg, std::size_t> graded;
  std::size_t total = 0;
};
Fiber fiber(const GradedModule& m, const std::vector<Scalar>& point);

// Kernel of the chain maps into the all-hi corner, with restricted mult.
GradedModule torsion_submodule(const GradedModule& m);
GradedModule mod_torsion(const GradedModule& m);
bool is_torsion_free(const GradedModule& m);

// Degree-0 piece under the stabilized reading.
std::size_t invariant_sections(const GradedModule& m);

}  // namespace rlab
