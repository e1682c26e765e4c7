#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "rlab/bigraded.hpp"
#include "rlab/multifilt.hpp"

namespace rlab {

// Deterministic generator used by the seeded example families; splitmix64
// underneath, so streams are identical across platforms.
class Rng {
public:
  explicit Rng(std::uint64_t seed) : state_(seed) {}

  std::uint64_t next();
  long range(long lo, long hi);
  Scalar scalar();
  Matrix matrix(std::size_t rows, std::size_t cols);
  Matrix invertible(std::size_t n);

private:
  std::uint64_t state_;
};

// Independent full flags with random jump positions inside [first, last];
// each filtration gets its own frame, so nothing ties the axes together.
MultiFilteredSpace random_multifiltration(std::uint64_t seed, std::size_t n,
                                          std::size_t dim, int first,
                                          int last);

// A space built from an explicit splitting: frame rows carry degrees in
// [deg_lo, deg_hi]^n and each filtration step is the span of the rows
// sitting at or above the cut.
struct SplitSpace {
  MultiFilteredSpace space;
  Splitting splitting;
  Matrix frame;                // rows are the chosen basis
  std::vector<Deg> row_degrees;
};
SplitSpace random_split_space(std::uint64_t seed, std::size_t n,
                              std::size_t dim, int deg_lo, int deg_hi);

// Compatible map between two split spaces, assembled blockwise from the
// degree components with blocks only where the degree rises or stays.
// Compatible by construction; strictness is not forced.
FilteredMap random_filtered_map(std::uint64_t seed, std::size_t n,
                                std::size_t dim_v, std::size_t dim_w,
                                int deg_lo, int deg_hi);

// Exterior algebra on g holomorphic and g antiholomorphic generators,
// d = 0, conjugation as the real structure: invariant forms of a torus.
BigradedComplex torus_model(std::size_t g);

// Left-invariant forms of the Iwasawa threefold: generators w1,w2,w3 and
// conjugates, del w3 = -w1^w2, delbar conj(w3) = -conj(w1)^conj(w2);
// 64-dimensional with bound 3.
BigradedComplex iwasawa_model();

// Four lines a (0,1), e (1,0), b (1,1), c (2,0) with del a = delbar e = b
// and del e = c: every total cohomology vanishes yet the second-page
// differential does not.
BigradedComplex synthetic_d2_model();

// Direct sum of small cells (dots, edges, anticommuting squares, zigzags)
// at random positions, conjugated by random changes of basis on every term.
BigradedComplex random_bigraded_complex(std::uint64_t seed, std::size_t bound,
                                        std::size_t cells);

// x plus its mirrored conjugate copy, with the swap as real structure.
BigradedComplex real_double(const BigradedComplex& x);

struct ModelDescriptor {
  std::string name;
  std::map<std::string, long> parameters;  // defaults
  std::string note;
};

std::vector<ModelDescriptor> builtin_models();

// "iwasawa", "torus:g=2", "random:seed=7,bound=2,cells=6", ...
BigradedComplex instantiate_model(const std::string& spec);

}  // namespace rlab
