#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <map>
#include <vector>

#include "doctest.h"
#include "rlab/error.hpp"
#include "rlab/favb.hpp"
#include "rlab/models.hpp"
#include "test_util.hpp"

using namespace rlab;

namespace {

std::vector<std::size_t> piece_vec(const GradedModule& m) {
  std::vector<std::size_t> out;
  for (std::size_t k = 0; k < m.box().size(); ++k)
    out.push_back(m.piece_dim(m.box().at(k)));
  return out;
}

std::size_t betti(const BigradedComplex& x, int k) {
  return total_cohomology(x, k).dim;
}

// rank-based recomputation of dim H^k(F^p T^*), bypassing the quotient
// machinery: dim (Z ^ F^p) - rank(d restricted to F^p T^{k-1})
std::size_t piece_oracle(const BigradedComplex& x, int k, int m) {
  Subspace fk = x.filtration_block(k, -m);
  Subspace fk1 = x.filtration_block(k - 1, -m);
  std::size_t cut = rank_of(x.total_differential(k) * fk.basis().transpose());
  std::size_t bnd =
      rank_of(x.total_differential(k - 1) * fk1.basis().transpose());
  return fk.dim() - cut - bnd;
}

// is some d_r, r >= 1, leaving total degree k-1 nonzero
bool differential_into(const BigradedComplex& x, int k) {
  SpectralSequenceTable ss = spectral_sequence(x, x.bound() + 2);
  for (const auto& [key, mat] : ss.differentials) {
    auto [r, p, q] = key;
    if (r >= 1 && p + q == k - 1 && !mat.is_zero()) return true;
  }
  return false;
}

}  // namespace

TEST_CASE("torus favb goldens") {
  BigradedComplex x = torus_model(1);

  FAVBReport r1 = favb(x, 1);
  CHECK(r1.module.box() == Box{Deg{-3}, Deg{1}});
  CHECK(piece_vec(r1.module) == std::vector<std::size_t>{0, 0, 1, 2, 2});
  CHECK(r1.fiber_generic.dim == 2);
  CHECK(r1.fiber_generic.identification == Matrix::identity(2));
  CHECK(r1.fiber_generic.matches);
  CHECK(r1.fiber_zero.graded == std::map<int, std::size_t>{{0, 1}, {1, 1}});
  CHECK(r1.fiber_zero.total == 2);
  CHECK(r1.fiber_zero.matches);
  CHECK(r1.base_change.torsion_dims.empty());
  CHECK(r1.base_change.cohomology_dims ==
        std::map<int, std::size_t>{{-1, 1}, {0, 2}, {1, 2}});
  CHECK(r1.base_change.iso_verified);

  FAVBReport r0 = favb(x, 0);
  CHECK(piece_vec(r0.module) == std::vector<std::size_t>{0, 0, 1, 1});
  CHECK(r0.fiber_zero.graded == std::map<int, std::size_t>{{0, 1}});

  FAVBReport r2 = favb(x, 2);
  CHECK(piece_vec(r2.module) == std::vector<std::size_t>{0, 0, 0, 1, 1, 1});
  CHECK(r2.fiber_zero.graded == std::map<int, std::size_t>{{1, 1}});

  for (int k = 0; k <= 3; ++k) CHECK(verify_base_change(x, k));

  // d = 0, so no torsion anywhere
  for (int k = 0; k <= 3; ++k)
    CHECK(rees_complex_cohomology_mod_torsion(x, k).torsion.is_zero);
}

TEST_CASE("iwasawa favb and the torsion location") {
  BigradedComplex x = iwasawa_model();

  FAVBReport r1 = favb(x, 1);
  CHECK(piece_vec(r1.module) == std::vector<std::size_t>{0, 0, 2, 4, 4});
  CHECK(r1.fiber_generic.dim == 4);
  CHECK(r1.fiber_generic.matches);
  CHECK(r1.fiber_zero.graded == std::map<int, std::size_t>{{0, 2}, {1, 2}});
  CHECK(r1.fiber_zero.matches);
  CHECK(r1.base_change.iso_verified);
  // fibers away from the origin, spelled out
  CHECK(fiber(r1.module, {Scalar(2)}).total == 4);
  CHECK(fiber(r1.module, {Scalar::i()}).total == 4);

  // d(T^0) = 0, so H^1 of the rees complex is torsion free; the d_1
  // differential leaving degree 1 shows up as torsion one degree up
  ReesCohomology c1 = rees_complex_cohomology_mod_torsion(x, 1);
  CHECK(c1.torsion.is_zero);

  ReesCohomology c2 = rees_complex_cohomology_mod_torsion(x, 2);
  CHECK_FALSE(c2.torsion.is_zero);
  CHECK(c2.torsion.torsion_pieces == std::map<Deg, std::size_t>{{{-2}, 1}});
  CHECK(c2.torsion.support_codim == 1);
  CHECK(c2.torsion.submodule.piece_dim({-2}) == 1);

  FAVBReport r2 = favb(x, 2);
  CHECK(r2.fiber_zero.total == 8);
  CHECK(r2.fiber_zero.matches);
  CHECK(r2.fiber_generic.dim == 8);
  CHECK(r2.base_change.iso_verified);

  for (int k = 0; k <= 6; ++k) CHECK(verify_base_change(x, k));
}

TEST_CASE("synthetic d2 favb is pure torsion") {
  BigradedComplex x = synthetic_d2_model();

  FAVBReport r1 = favb(x, 1);
  for (std::size_t i = 0; i < r1.module.box().size(); ++i)
    CHECK(r1.module.piece_dim(r1.module.box().at(i)) == 0);
  CHECK(r1.fiber_generic.dim == 0);
  CHECK(r1.base_change.iso_verified);

  ReesCohomology c1 = rees_complex_cohomology_mod_torsion(x, 1);
  CHECK(c1.torsion.is_zero);  // H^1 of the rees complex already vanishes
  CHECK(c1.cohomology.piece_dim({-1}) == 0);

  // the d_2 differential makes H^2 of the rees complex k[z]/(z^2)
  ReesCohomology c2 = rees_complex_cohomology_mod_torsion(x, 2);
  CHECK(c2.cohomology.piece_dim({-2}) == 1);
  CHECK(c2.cohomology.piece_dim({-1}) == 1);
  CHECK(c2.cohomology.piece_dim({0}) == 0);
  CHECK_FALSE(c2.cohomology.mult(0, {-2}).is_zero());
  CHECK(c2.torsion.torsion_pieces ==
        std::map<Deg, std::size_t>{{{-2}, 1}, {{-1}, 1}});
  for (std::size_t i = 0; i < c2.module.box().size(); ++i)
    CHECK(c2.module.piece_dim(c2.module.box().at(i)) == 0);

  for (int k = 0; k <= 4; ++k) {
    FAVBReport r = favb(x, k);
    CHECK(r.fiber_generic.dim == 0);
    CHECK(r.base_change.iso_verified);
  }
}

TEST_CASE("rees complex split monomial form") {
  BigradedComplex x = iwasawa_model();
  ReesComplex rc = rees_complex(x, 0, 3);
  REQUIRE(rc.del_part.size() == 3);

  // T^1 layout: conjugate block first, so generator degrees 0,0,0,-1,-1,-1
  CHECK(rc.generator_degrees[1] ==
        std::vector<int>{0, 0, 0, -1, -1, -1});

  // d omega^3 = -omega^1 omega^2 is the z-part; column 5 is omega^3,
  // row 12 opens the (2,0) block of T^2
  CHECK(rc.del_part[1].at(12, 5) == Scalar(-1));
  for (std::size_t r = 0; r < 15; ++r)
    if (r != 12) CHECK(rc.del_part[1].at(r, 5).is_zero());
  for (std::size_t r = 0; r < 15; ++r)
    CHECK(rc.delbar_part[1].at(r, 5).is_zero());
  // conjugate generator lands in the z^0 part
  CHECK(rc.delbar_part[1].at(0, 2) == Scalar(-1));
  for (std::size_t r = 1; r < 15; ++r)
    CHECK(rc.delbar_part[1].at(r, 2).is_zero());

  CHECK_THROWS_AS(rees_complex(x, 2, 1), InputError);
}

TEST_CASE("split form reconstitutes the differential") {
  auto check_model = [](const BigradedComplex& x) {
    int top = 2 * static_cast<int>(x.bound());
    ReesComplex rc = rees_complex(x, 0, top + 1);
    for (int k = 0; k <= top; ++k) {
      std::size_t i = static_cast<std::size_t>(k);
      // blockwise sum equals the plain total differential
      CHECK(rc.del_part[i] + rc.delbar_part[i] == x.total_differential(k));
      // monomial purity: del drops the generator degree by one, delbar
      // keeps it
      const auto& src = rc.generator_degrees[i];
      const auto& tgt = rc.generator_degrees[i + 1];
      for (std::size_t r = 0; r < tgt.size(); ++r)
        for (std::size_t c = 0; c < src.size(); ++c) {
          if (!rc.del_part[i].at(r, c).is_zero())
            CHECK(tgt[r] == src[c] - 1);
          if (!rc.delbar_part[i].at(r, c).is_zero()) CHECK(tgt[r] == src[c]);
        }
    }
    // d_z^2 = 0 coefficientwise in z
    for (int k = 0; k + 1 <= top; ++k) {
      std::size_t i = static_cast<std::size_t>(k);
      CHECK((rc.del_part[i + 1] * rc.del_part[i]).is_zero());
      CHECK((rc.delbar_part[i + 1] * rc.delbar_part[i]).is_zero());
      CHECK((rc.del_part[i + 1] * rc.delbar_part[i] +
             rc.delbar_part[i + 1] * rc.del_part[i])
                .is_zero());
    }
  };
  check_model(torus_model(1));
  check_model(iwasawa_model());
  check_model(synthetic_d2_model());
  for (unsigned seed = 0; seed < 10; ++seed)
    check_model(random_bigraded_complex(seed, 2, 6));
}

TEST_CASE("torsion appears exactly under differentials") {
  auto scan = [](const BigradedComplex& x) {
    int top = 2 * static_cast<int>(x.bound()) + 1;
    bool any_torsion = false;
    for (int k = 0; k <= top; ++k) {
      ReesCohomology c = rees_complex_cohomology_mod_torsion(x, k);
      CHECK(c.torsion.is_zero == !differential_into(x, k));
      any_torsion = any_torsion || !c.torsion.is_zero;
    }
    SpectralSequenceTable ss = spectral_sequence(x, x.bound() + 2);
    CHECK(any_torsion == (ss.degeneration_page > 1));
  };
  scan(torus_model(1));
  scan(torus_model(2));
  scan(iwasawa_model());
  scan(synthetic_d2_model());
  for (unsigned seed = 0; seed < 30; ++seed)
    scan(random_bigraded_complex(seed, 2, 6));
}

TEST_CASE("base change on random complexes") {
  for (unsigned seed = 0; seed < 50; ++seed) {
    BigradedComplex x = random_bigraded_complex(seed, 2, 6);
    for (int k = 0; k <= 5; ++k) {
      FAVBReport r = favb(x, k);
      CHECK(r.fiber_generic.matches);
      CHECK(r.fiber_zero.matches);
      CHECK(r.base_change.iso_verified);
      // cohomology pieces against the rank oracle
      ReesCohomology c = rees_complex_cohomology_mod_torsion(x, k);
      const Box& box = c.cohomology.box();
      for (std::size_t i = 0; i < box.size(); ++i)
        CHECK(c.cohomology.piece_dim(box.at(i)) ==
              piece_oracle(x, k, box.at(i)[0]));
      CHECK(c.cohomology.violations().empty());
    }
  }
}

TEST_CASE("favb2 and twistor type on the torus") {
  BigradedComplex x = torus_model(1);

  Favb2Report r1 = favb2(x, 1);
  CHECK(r1.purity.dims ==
        std::map<std::pair<int, int>, std::size_t>{{{1, 0}, 1}, {{0, 1}, 1}});
  CHECK(r1.purity.total == 2);
  CHECK(r1.purity.pure);
  CHECK(r1.fiber_origin_matches);
  CHECK(r1.hodge_slice_matches);
  CHECK(r1.conjugate_slice_matches);
  CHECK(r1.module.dim_at({0, 0}) == 2);
  CHECK(r1.module.dim_at({-1, 0}) == 1);
  CHECK(r1.module.dim_at({-1, -1}) == 0);

  Favb2Report r0 = favb2(x, 0);
  CHECK(r0.purity.dims ==
        std::map<std::pair<int, int>, std::size_t>{{{0, 0}, 1}});
  CHECK(r0.purity.pure);

  Favb2Report r2 = favb2(x, 2);
  CHECK(r2.purity.dims ==
        std::map<std::pair<int, int>, std::size_t>{{{1, 1}, 1}});
  CHECK(r2.purity.pure);

  CHECK(twistor_type(x, 0) == std::vector<int>{0});
  CHECK(twistor_type(x, 1) == std::vector<int>{1, 1});
  CHECK(twistor_type(x, 2) == std::vector<int>{2});
  CHECK(twistor_type(x, 3).empty());
}

TEST_CASE("favb2 on the iwasawa manifold") {
  BigradedComplex x = iwasawa_model();
  Favb2Report r = favb2(x, 1);
  CHECK(r.purity.dims ==
        std::map<std::pair<int, int>, std::size_t>{{{1, 0}, 2}, {{0, 1}, 2}});
  CHECK(r.purity.total == 4);
  CHECK(r.purity.pure);
  CHECK(r.fiber_origin_matches);
  CHECK(r.hodge_slice_matches);
  CHECK(r.conjugate_slice_matches);
  CHECK(twistor_type(x, 1) == std::vector<int>{1, 1, 1, 1});

  Favb2Report r2 = favb2(x, 2);
  CHECK(r2.purity.total == 8);
  CHECK(r2.fiber_origin_matches);
  CHECK(r2.hodge_slice_matches);
  CHECK(r2.conjugate_slice_matches);
}

TEST_CASE("favb2 needs the involution") {
  BigradedComplex x = synthetic_d2_model();
  CHECK_THROWS_WITH_AS(favb2(x, 1),
                       "the two-variable bundle needs the involution",
                       MathError);
  CHECK_THROWS_AS(twistor_type(x, 1), MathError);
  try {
    twistor_type(x, 2);
    CHECK(false);
  } catch (const MathError& e) {
    CHECK(e.code() == "no_real_structure");
  }
}

TEST_CASE("favb2 on doubled random complexes") {
  for (unsigned seed = 0; seed < 20; ++seed) {
    BigradedComplex x = real_double(random_bigraded_complex(seed, 2, 5));
    for (int k = 0; k <= 5; ++k) {
      Favb2Report r = favb2(x, k);
      CHECK(r.fiber_origin_matches);
      CHECK(r.hodge_slice_matches);
      CHECK(r.conjugate_slice_matches);
      // two filtrations always split jointly, so the defect total is b_k
      CHECK(r.purity.total == betti(x, k));
      CHECK(twistor_type(x, k).size() == betti(x, k));
    }
  }
}

TEST_CASE("degenerate degrees stay consistent") {
  BigradedComplex x = torus_model(1);
  FAVBReport r = favb(x, -1);
  CHECK(r.fiber_generic.dim == 0);
  CHECK(r.base_change.iso_verified);
  CHECK(verify_base_change(x, 5));
  CHECK(verify_base_change(synthetic_d2_model(), -2));
  FAVBReport high = favb(iwasawa_model(), 7);
  CHECK(high.fiber_generic.dim == 0);
  CHECK(high.fiber_zero.total == 0);
  CHECK(high.fiber_zero.matches);
}
