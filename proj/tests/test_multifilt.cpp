#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <map>

#include "doctest.h"
#include "rlab/error.hpp"
#include "rlab/models.hpp"
#include "rlab/multifilt.hpp"
#include "test_util.hpp"

using namespace rlab;

namespace {

Subspace line2(const char* x, const char* y) {
  return Subspace::span(2, mat({{x, y}}));
}

// k^2 with the coordinate lines at index 1 on two axes, plus optionally the
// diagonal on a third; the three-line arrangement is the smallest
// non-splittable example.
MultiFilteredSpace lines_space(bool third) {
  std::vector<Filtration> f;
  f.push_back(Filtration::from_steps(2, {{0, Subspace::full(2)},
                                         {1, line2("1", "0")}}));
  f.push_back(Filtration::from_steps(2, {{0, Subspace::full(2)},
                                         {1, line2("0", "1")}}));
  if (third)
    f.push_back(Filtration::from_steps(2, {{0, Subspace::full(2)},
                                           {1, line2("1", "1")}}));
  return MultiFilteredSpace(2, std::move(f));
}

std::map<Deg, std::size_t> convolve(const std::map<Deg, std::size_t>& a,
                                    const std::map<Deg, std::size_t>& b) {
  std::map<Deg, std::size_t> out;
  for (const auto& [p, x] : a)
    for (const auto& [q, y] : b) out[deg_add(p, q)] += x * y;
  return out;
}

MultiFilteredSpace change_basis(const MultiFilteredSpace& v, const Matrix& g) {
  std::vector<Filtration> filts;
  for (std::size_t i = 0; i < v.n(); ++i) {
    const Filtration& f = v.filtration(i);
    std::vector<std::pair<int, Subspace>> steps;
    std::vector<int> grid = f.jumps();
    grid.push_back(f.first_jump() - 1);
    for (int p : grid) steps.emplace_back(p, image(g, f.at(p)));
    filts.push_back(Filtration::from_steps(v.dim(), std::move(steps)));
  }
  return MultiFilteredSpace(v.dim(), std::move(filts));
}

}  // namespace

TEST_CASE("filtration canonical form is input independent") {
  Subspace l = line2("1", "0");
  auto a = Filtration::from_steps(2, {{0, Subspace::full(2)}, {1, l}});
  auto b = Filtration::from_steps(
      2, {{1, l}, {-5, Subspace::full(2)}, {-2, Subspace::full(2)}});
  CHECK(a == b);
  CHECK(a.at(-100) == Subspace::full(2));
  CHECK(a.at(0) == Subspace::full(2));
  CHECK(a.at(1) == l);
  CHECK(a.at(2) == Subspace::zero(2));
  CHECK(a.jumps() == std::vector<int>{1, 2});

  auto c = Filtration::from_steps(2, {{1, l}, {4, Subspace::zero(2)}});
  CHECK(c.at(3) == l);
  CHECK(c.at(4) == Subspace::zero(2));
  CHECK(c.jumps() == std::vector<int>{1, 4});
  CHECK(c != a);

  // explicit step inside a constant region collapses away
  auto d = Filtration::from_steps(2, {{1, l}, {3, l}, {4, Subspace::zero(2)}});
  CHECK(d == c);
}

TEST_CASE("filtration input validation") {
  Subspace l = line2("1", "0");
  CHECK_THROWS_AS(Filtration::from_steps(2, {{1, l}, {1, l}}), InputError);
  try {
    Filtration::from_steps(2, {{0, l}, {1, Subspace::full(2)}});
    CHECK(false);
  } catch (const InputError& e) {
    std::string msg = e.what();
    CHECK(msg.find("index 1") != std::string::npos);
    CHECK(msg.find("index 0") != std::string::npos);
  }
  CHECK_THROWS_AS(Filtration::from_steps(2, {}), InputError);
  CHECK_THROWS_AS(Filtration::from_steps(2, {{0, Subspace::full(3)}}),
                  InputError);

  auto t = Filtration::trivial(0);
  CHECK(t.jumps().empty());
  CHECK(t.at(7) == Subspace::zero(0));
}

TEST_CASE("three coordinate-ish lines do not split, two do") {
  auto three = lines_space(true);
  auto want = std::map<Deg, std::size_t>{
      {{1, 0, 0}, 1}, {{0, 1, 0}, 1}, {{0, 0, 1}, 1}};
  CHECK(graded_dims(three) == want);
  CHECK_FALSE(is_splittable(three));
  try {
    compute_splitting(three);
    CHECK(false);
  } catch (const MathError& e) {
    CHECK(std::string(e.code()) == "not_splittable");
  }

  auto two = lines_space(false);
  CHECK(is_splittable(two));
  Splitting s = compute_splitting(two);
  CHECK(s.violations(two).empty());
  auto comps = s.components();
  CHECK(comps.size() == 2);
  CHECK(comps.at({1, 0}) == line2("1", "0"));
  CHECK(comps.at({0, 1}) == line2("0", "1"));
}

TEST_CASE("no filtrations means a single graded piece") {
  MultiFilteredSpace v(3, {});
  auto dims = graded_dims(v);
  CHECK(dims == std::map<Deg, std::size_t>{{Deg{}, 3}});
  CHECK(is_splittable(v));
  auto s = compute_splitting(v);
  CHECK(s.components().at(Deg{}) == Subspace::full(3));
}

TEST_CASE("single flag graded dims sit below the jumps") {
  Subspace plane = Subspace::span(3, mat({{"1", "0", "0"}, {"0", "1", "0"}}));
  Subspace line = Subspace::span(3, mat({{"0", "1", "0"}}));
  auto f = Filtration::from_steps(3, {{1, plane}, {3, line}});
  MultiFilteredSpace v(3, {f});
  auto want = std::map<Deg, std::size_t>{{{0}, 1}, {{2}, 1}, {{3}, 1}};
  CHECK(graded_dims(v) == want);
}

TEST_CASE("split spaces are recognised and re-split with equal dims") {
  for (std::uint64_t seed = 0; seed < 50; ++seed) {
    auto n = static_cast<std::size_t>(1 + seed % 3);
    auto dim = static_cast<std::size_t>(1 + (seed * 7) % 5);
    SplitSpace ss = random_split_space(900 + seed, n, dim, 0, 2);
    CAPTURE(seed);
    CHECK(ss.splitting.violations(ss.space).empty());
    CHECK(is_splittable(ss.space));
    Splitting re = compute_splitting(ss.space);
    CHECK(re.dims() == ss.splitting.dims());
    CHECK(graded_dims(ss.space) == ss.splitting.dims());
  }
}

TEST_CASE("any two flags split; three flags match the piece count test") {
  for (std::uint64_t seed = 0; seed < 60; ++seed) {
    auto dim = static_cast<std::size_t>(1 + seed % 4);
    auto v2 = random_multifiltration(1700 + seed, 2, dim, 0, 3);
    CAPTURE(seed);
    CHECK(is_splittable(v2));
    Splitting s = compute_splitting(v2);
    CHECK(s.violations(v2).empty());

    auto v3 = random_multifiltration(2900 + seed, 3, dim, 0, 2);
    bool greedy_ok = true;
    try {
      compute_splitting(v3);
    } catch (const MathError&) {
      greedy_ok = false;
    }
    CHECK(is_splittable(v3) == greedy_ok);
  }
}

TEST_CASE("strictness on the pullback example") {
  auto v = lines_space(false);
  auto g1 = Filtration::trivial(1, 1);
  MultiFilteredSpace w(1, {g1, g1});
  FilteredMap f(v, w, mat({{"1", "1"}}));
  CHECK(is_r_strict(f, 1));
  CHECK_FALSE(is_r_strict(f, 2));
  CHECK_THROWS_AS(is_r_strict(f, 3), InputError);
  CHECK_THROWS_AS(is_r_strict(f, 0), InputError);
}

TEST_CASE("identity maps are strict in every order") {
  for (std::uint64_t seed = 0; seed < 10; ++seed) {
    auto n = static_cast<std::size_t>(1 + seed % 3);
    SplitSpace ss = random_split_space(3100 + seed, n, 3, 0, 2);
    FilteredMap id(ss.space, ss.space, Matrix::identity(3));
    for (std::size_t r = 1; r <= n; ++r) CHECK(is_r_strict(id, r));
  }
}

TEST_CASE("incompatible matrices are rejected") {
  auto v = lines_space(false);
  CHECK_THROWS_AS(FilteredMap(v, v, mat({{"0", "1"}, {"1", "0"}})),
                  InputError);
  CHECK_THROWS_AS(FilteredMap(v, v, mat({{"1", "0"}})), InputError);
}

TEST_CASE("tensor products convolve the graded dims") {
  // one-dimensional factors first: jump positions add
  auto o = [](int a) {
    return MultiFilteredSpace(1, {Filtration::trivial(1, a)});
  };
  auto t = tensor(o(0), o(2));
  CHECK(graded_dims(t) == std::map<Deg, std::size_t>{{{2}, 1}});

  Subspace e1 = line2("1", "0");
  MultiFilteredSpace v(
      2, {Filtration::from_steps(2, {{0, Subspace::full(2)}, {1, e1}})});
  auto tv = tensor(v, o(2));
  CHECK(graded_dims(tv) ==
        std::map<Deg, std::size_t>{{{2}, 1}, {{3}, 1}});

  for (std::uint64_t seed = 0; seed < 25; ++seed) {
    auto n = static_cast<std::size_t>(1 + seed % 2);
    SplitSpace a = random_split_space(4300 + seed, n, 1 + seed % 3, 0, 2);
    SplitSpace b = random_split_space(5200 + seed, n, 1 + (seed / 2) % 3, 0, 2);
    auto prod = tensor(a.space, b.space);
    CAPTURE(seed);
    CHECK(prod.dim() == a.space.dim() * b.space.dim());
    CHECK(graded_dims(prod) ==
          convolve(graded_dims(a.space), graded_dims(b.space)));
  }
}

TEST_CASE("direct sums add the graded dims") {
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    auto n = static_cast<std::size_t>(1 + seed % 2);
    SplitSpace a = random_split_space(6100 + seed, n, 1 + seed % 3, 0, 2);
    SplitSpace b = random_split_space(7700 + seed, n, 1 + (seed / 3) % 3, 0, 2);
    auto s = direct_sum(a.space, b.space);
    CHECK(s.dim() == a.space.dim() + b.space.dim());
    std::map<Deg, std::size_t> want = graded_dims(a.space);
    for (const auto& [p, d] : graded_dims(b.space)) want[p] += d;
    CHECK(graded_dims(s) == want);
  }
}

TEST_CASE("kernel and cokernel carry the induced filtrations") {
  auto v = lines_space(false);
  auto g1 = Filtration::trivial(1, 1);
  MultiFilteredSpace w(1, {g1, g1});
  FilteredMap f(v, w, mat({{"1", "1"}}));

  SubObject k = kernel_object(f);
  CHECK(k.space.dim() == 1);
  CHECK(k.embed == mat({{"1"}, {"-1"}}));
  CHECK(graded_dims(k.space) == std::map<Deg, std::size_t>{{{0, 0}, 1}});

  QuotObject q = cokernel_object(f);
  CHECK(q.space.dim() == 0);

  // inclusion of a line: cokernel keeps the low degree
  MultiFilteredSpace src(1, {Filtration::trivial(1, 1)});
  Subspace e1 = line2("1", "0");
  MultiFilteredSpace tgt(
      2, {Filtration::from_steps(2, {{0, Subspace::full(2)}, {1, e1}})});
  FilteredMap inc(src, tgt, mat({{"1"}, {"0"}}));
  QuotObject q2 = cokernel_object(inc);
  CHECK(q2.space.dim() == 1);
  CHECK(graded_dims(q2.space) == std::map<Deg, std::size_t>{{{0}, 1}});
  CHECK((q2.projection * inc.matrix()).is_zero());
}

TEST_CASE("kernel embedding reproduces the step intersections") {
  for (std::uint64_t seed = 0; seed < 30; ++seed) {
    auto n = static_cast<std::size_t>(1 + seed % 2);
    auto f = random_filtered_map(8400 + seed, n, 2 + seed % 4, 1 + seed % 3,
                                 0, 2);
    SubObject k = kernel_object(f);
    QuotObject q = cokernel_object(f);
    std::size_t rank = rank_of(f.matrix());
    CAPTURE(seed);
    CHECK(k.space.dim() + rank == f.source().dim());
    CHECK(q.space.dim() + rank == f.target().dim());
    CHECK((f.matrix() * k.embed).is_zero());
    CHECK((q.projection * f.matrix()).is_zero());
    Subspace ker = Subspace::span(f.source().dim(),
                                  kernel_basis(f.matrix()));
    for (std::size_t i = 0; i < n; ++i)
      for (int p : f.source().filtration(i).jumps())
        CHECK(image(k.embed, k.space.filtration(i).at(p)) ==
              intersect(f.source().filtration(i).at(p), ker));
  }
}

TEST_CASE("graded dims are basis invariant") {
  Matrix g = mat({{"1", "i"}, {"1/2", "-3"}});
  auto three = change_basis(lines_space(true), g);
  CHECK_FALSE(is_splittable(three));
  CHECK(graded_dims(three) == graded_dims(lines_space(true)));

  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    auto n = static_cast<std::size_t>(1 + seed % 3);
    auto dim = static_cast<std::size_t>(1 + seed % 4);
    auto v = random_multifiltration(9900 + seed, n, dim, 0, 3);
    TestRng rng(seed);
    auto moved = change_basis(v, rng.invertible(dim));
    CHECK(graded_dims(moved) == graded_dims(v));
    CHECK(is_splittable(moved) == is_splittable(v));
  }
}
