#pragma once

// Shared helpers for the test suites: literal matrix construction from
// scalar strings and a deterministic random source that is independent of
// std::uniform_int_distribution (whose output is implementation defined).

#include <cstdint>
#include <initializer_list>
#include <string>
#include <vector>

#include "rlab/matrix.hpp"
#include "rlab/subspace.hpp"

inline rlab::Matrix mat(
    std::initializer_list<std::initializer_list<const char*>> rows) {
  std::size_t r = rows.size();
  std::size_t c = r ? rows.begin()->size() : 0;
  rlab::Matrix m(r, c);
  std::size_t i = 0;
  for (const auto& row : rows) {
    std::size_t j = 0;
    for (const char* cell : row) m.at(i, j++) = rlab::Scalar::parse(cell);
    ++i;
  }
  return m;
}

class TestRng {
public:
  explicit TestRng(std::uint64_t seed) : state_(seed + 0x9e3779b97f4a7c15ULL) {}

  std::uint64_t next() {
    // splitmix64
    std::uint64_t z = (state_ += 0x9e3779b97f4a7c15ULL);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
  }

  // uniform-ish integer in [lo, hi]
  long range(long lo, long hi) {
    return lo + static_cast<long>(next() % static_cast<std::uint64_t>(hi - lo + 1));
  }

  rlab::Scalar scalar(bool complex_ok = true) {
    rlab::Scalar s(range(-3, 3));
    if (complex_ok && range(0, 3) == 0)
      s += rlab::Scalar::i() * rlab::Scalar(range(-2, 2));
    return s;
  }

  rlab::Matrix matrix(std::size_t rows, std::size_t cols) {
    rlab::Matrix m(rows, cols);
    for (std::size_t i = 0; i < rows; ++i)
      for (std::size_t j = 0; j < cols; ++j) m.at(i, j) = scalar();
    return m;
  }

  rlab::Matrix invertible(std::size_t n) {
    for (;;) {
      rlab::Matrix m = matrix(n, n);
      if (rlab::rank_of(m) == n) return m;
    }
  }

  rlab::Subspace subspace(std::size_t ambient) {
    std::size_t k = static_cast<std::size_t>(range(0, static_cast<long>(ambient)));
    return rlab::Subspace::span(ambient, matrix(k, ambient));
  }

  rlab::Subspace subspace_of(const rlab::Subspace& whole) {
    std::size_t k =
        static_cast<std::size_t>(range(0, static_cast<long>(whole.dim())));
    return rlab::Subspace::span(whole.ambient_dim(),
                                matrix(k, whole.dim()) * whole.basis());
  }

private:
  std::uint64_t state_;
};
