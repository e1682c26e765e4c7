#include <algorithm>
#include <optional>
#include <sstream>

#include "rlab/error.hpp"
#include "rlab/models.hpp"

namespace rlab {
namespace {

// Exterior algebra on 1-form generators of bidegree (1,0) or (0,1) with a
// differential given on generators and extended by Leibniz.  Monomials are
// bitmasks; the written order of a wedge word is ascending bit order.
struct ExteriorModel {
  std::vector<std::pair<int, int>> gen_deg;
  // d(gen i) = sum of coeff * (two-generator monomial)
  std::vector<std::vector<std::pair<Scalar, unsigned>>> dgen;
  // sigma sends generator i to generator pairing[i] (conjugation partner)
  std::optional<std::vector<std::size_t>> pairing;
};

int merge_sign(unsigned left, unsigned right) {
  int sign = 1;
  for (unsigned i = 0; i < 32; ++i)
    if (left >> i & 1)
      for (unsigned j = 0; j < i; ++j)
        if (right >> j & 1) sign = -sign;
  return sign;
}

std::pair<int, int> mask_degree(const ExteriorModel& em, unsigned mask) {
  int p = 0, q = 0;
  for (std::size_t i = 0; i < em.gen_deg.size(); ++i)
    if (mask >> i & 1) {
      p += em.gen_deg[i].first;
      q += em.gen_deg[i].second;
    }
  return {p, q};
}

BigradedComplex build_exterior(const ExteriorModel& em) {
  std::size_t gens = em.gen_deg.size();
  // basis of each term: monomial masks ascending
  std::map<BigradedComplex::Key, std::vector<unsigned>> basis;
  std::map<unsigned, std::size_t> position;
  for (unsigned mask = 0; mask < (1u << gens); ++mask) {
    auto& list = basis[mask_degree(em, mask)];
    position[mask] = list.size();
    list.push_back(mask);
  }
  int bound = 0;
  std::map<BigradedComplex::Key, std::size_t> dims;
  for (const auto& [key, list] : basis) {
    dims[key] = list.size();
    bound = std::max({bound, key.first, key.second});
  }
  std::map<BigradedComplex::Key, Matrix> del, delbar;
  for (const auto& [key, list] : basis) {
    Matrix d_up(dims.count({key.first + 1, key.second})
                    ? dims[{key.first + 1, key.second}]
                    : 0,
                list.size());
    Matrix d_right(dims.count({key.first, key.second + 1})
                       ? dims[{key.first, key.second + 1}]
                       : 0,
                   list.size());
    for (std::size_t col = 0; col < list.size(); ++col) {
      unsigned mask = list[col];
      int rank = 0;
      for (std::size_t i = 0; i < gens; ++i) {
        if (!(mask >> i & 1)) continue;
        for (const auto& [coeff, two] : em.dgen[i]) {
          unsigned rest = mask & ~(1u << i);
          if (rest & two) continue;
          Scalar c = coeff * Scalar(rank % 2 ? -1 : 1) *
                     Scalar(merge_sign(two, rest));
          unsigned target = rest | two;
          auto tdeg = mask_degree(em, target);
          if (tdeg.first == key.first + 1)
            d_up.at(position[target], col) += c;
          else
            d_right.at(position[target], col) += c;
        }
        ++rank;
      }
    }
    if (!d_up.is_zero()) del[key] = d_up;
    if (!d_right.is_zero()) delbar[key] = d_right;
  }
  std::optional<std::map<BigradedComplex::Key, Matrix>> sigma;
  if (em.pairing) {
    sigma.emplace();
    for (const auto& [key, list] : basis) {
      BigradedComplex::Key flipped{key.second, key.first};
      Matrix s(dims[flipped], list.size());
      for (std::size_t col = 0; col < list.size(); ++col) {
        unsigned mask = list[col], target = 0;
        std::vector<std::size_t> seq;
        for (std::size_t i = 0; i < gens; ++i)
          if (mask >> i & 1) {
            seq.push_back((*em.pairing)[i]);
            target |= 1u << (*em.pairing)[i];
          }
        int sign = 1;
        for (std::size_t a = 0; a < seq.size(); ++a)
          for (std::size_t b = a + 1; b < seq.size(); ++b)
            if (seq[a] > seq[b]) sign = -sign;
        s.at(position[target], col) = Scalar(sign);
      }
      (*sigma)[key] = s;
    }
  }
  return BigradedComplex(static_cast<std::size_t>(bound), dims, del, delbar,
                         sigma);
}

}  // namespace

BigradedComplex torus_model(std::size_t g) {
  ExteriorModel em;
  for (std::size_t i = 0; i < g; ++i) em.gen_deg.push_back({1, 0});
  for (std::size_t i = 0; i < g; ++i) em.gen_deg.push_back({0, 1});
  em.dgen.assign(2 * g, {});
  std::vector<std::size_t> pairing(2 * g);
  for (std::size_t i = 0; i < g; ++i) {
    pairing[i] = g + i;
    pairing[g + i] = i;
  }
  em.pairing = pairing;
  return build_exterior(em);
}

BigradedComplex iwasawa_model() {
  ExteriorModel em;
  em.gen_deg = {{1, 0}, {1, 0}, {1, 0}, {0, 1}, {0, 1}, {0, 1}};
  em.dgen.assign(6, {});
  em.dgen[2] = {{Scalar(-1), 0b000011u}};  // del w3 = -w1^w2
  em.dgen[5] = {{Scalar(-1), 0b011000u}};
  em.pairing = std::vector<std::size_t>{3, 4, 5, 0, 1, 2};
  return build_exterior(em);
}

BigradedComplex synthetic_d2_model() {
  std::map<BigradedComplex::Key, std::size_t> dims{
      {{0, 1}, 1}, {{1, 0}, 1}, {{1, 1}, 1}, {{2, 0}, 1}};
  std::map<BigradedComplex::Key, Matrix> del, delbar;
  del[{0, 1}] = Matrix::identity(1);     // a -> b
  delbar[{1, 0}] = Matrix::identity(1);  // e -> b
  del[{1, 0}] = Matrix::identity(1);     // e -> c
  return BigradedComplex(2, dims, del, delbar);
}

BigradedComplex random_bigraded_complex(std::uint64_t seed, std::size_t bound,
                                        std::size_t cells) {
  Rng rng(seed);
  int n = static_cast<int>(bound);
  std::map<BigradedComplex::Key, std::size_t> dims;
  struct Arrow {
    BigradedComplex::Key from;
    bool up;  // true: del, false: delbar
    std::size_t row, col;
    Scalar c;
  };
  std::vector<Arrow> arrows;
  auto put = [&](int p, int q) {
    return dims[{p, q}]++;  // index of the new basis vector at (p,q)
  };
  for (std::size_t cell = 0; cell < cells; ++cell) {
    switch (rng.range(0, 5)) {
      case 0: {  // dot
        put(static_cast<int>(rng.range(0, n)),
            static_cast<int>(rng.range(0, n)));
        break;
      }
      case 1: {  // del edge
        if (n == 0) break;
        int p = static_cast<int>(rng.range(0, n - 1));
        int q = static_cast<int>(rng.range(0, n));
        std::size_t x = put(p, q), u = put(p + 1, q);
        arrows.push_back({{p, q}, true, u, x, Scalar(1)});
        break;
      }
      case 2: {  // delbar edge
        if (n == 0) break;
        int p = static_cast<int>(rng.range(0, n));
        int q = static_cast<int>(rng.range(0, n - 1));
        std::size_t x = put(p, q), v = put(p, q + 1);
        arrows.push_back({{p, q}, false, v, x, Scalar(1)});
        break;
      }
      case 3: {  // anticommuting square, acyclic
        if (n == 0) break;
        int p = static_cast<int>(rng.range(0, n - 1));
        int q = static_cast<int>(rng.range(0, n - 1));
        std::size_t x = put(p, q), u = put(p + 1, q), v = put(p, q + 1),
                    w = put(p + 1, q + 1);
        arrows.push_back({{p, q}, true, u, x, Scalar(1)});
        arrows.push_back({{p, q}, false, v, x, Scalar(1)});
        arrows.push_back({{p, q + 1}, true, w, v, Scalar(1)});
        arrows.push_back({{p + 1, q}, false, w, u, Scalar(-1)});
        break;
      }
      case 4: {  // length-3 zigzag a -> b <- c
        if (n == 0) break;
        int p = static_cast<int>(rng.range(0, n - 1));
        int q = static_cast<int>(rng.range(0, n - 1));
        std::size_t a = put(p, q + 1), b = put(p + 1, q + 1),
                    c = put(p + 1, q);
        arrows.push_back({{p, q + 1}, true, b, a, Scalar(1)});
        arrows.push_back({{p + 1, q}, false, b, c, Scalar(1)});
        break;
      }
      default: {  // the d_2 cell
        if (n < 2) break;
        int p = static_cast<int>(rng.range(0, n - 2));
        int q = static_cast<int>(rng.range(0, n - 1));
        std::size_t a = put(p, q + 1), e = put(p + 1, q),
                    b = put(p + 1, q + 1), c = put(p + 2, q);
        arrows.push_back({{p, q + 1}, true, b, a, Scalar(1)});
        arrows.push_back({{p + 1, q}, false, b, e, Scalar(1)});
        arrows.push_back({{p + 1, q}, true, c, e, Scalar(1)});
        break;
      }
    }
  }
  auto dim_of = [&](int p, int q) -> std::size_t {
    auto it = dims.find({p, q});
    return it == dims.end() ? 0 : it->second;
  };
  std::map<BigradedComplex::Key, Matrix> del, delbar;
  for (const auto& a : arrows) {
    auto& slot = a.up ? del : delbar;
    auto key = a.from;
    if (!slot.count(key))
      slot[key] = Matrix(dim_of(key.first + (a.up ? 1 : 0),
                                key.second + (a.up ? 0 : 1)),
                         dim_of(key.first, key.second));
    slot[key].at(a.row, a.col) = a.c;
  }
  // mix every term by a random change of basis; all the identities are
  // conjugation invariant
  std::map<BigradedComplex::Key, Matrix> t, tinv;
  for (const auto& [key, d] : dims) {
    t[key] = rng.invertible(d);
    tinv[key] = *inverse(t[key]);
  }
  auto mixed = [&](std::map<BigradedComplex::Key, Matrix>& maps, int dp,
                   int dq) {
    for (auto& [key, m] : maps) {
      BigradedComplex::Key to{key.first + dp, key.second + dq};
      if (t.count(to)) m = t[to] * m;
      if (t.count(key)) m = m * tinv[key];
    }
  };
  mixed(del, 1, 0);
  mixed(delbar, 0, 1);
  return BigradedComplex(bound, dims, del, delbar);
}

BigradedComplex real_double(const BigradedComplex& x) {
  int n = static_cast<int>(x.bound());
  std::map<BigradedComplex::Key, std::size_t> dims;
  std::map<BigradedComplex::Key, Matrix> del, delbar, sigma;
  auto block2 = [](const Matrix& a, const Matrix& b) {
    // diag(a, b)
    Matrix m(a.rows() + b.rows(), a.cols() + b.cols());
    for (std::size_t i = 0; i < a.rows(); ++i)
      for (std::size_t j = 0; j < a.cols(); ++j) m.at(i, j) = a.at(i, j);
    for (std::size_t i = 0; i < b.rows(); ++i)
      for (std::size_t j = 0; j < b.cols(); ++j)
        m.at(a.rows() + i, a.cols() + j) = b.at(i, j);
    return m;
  };
  for (int p = 0; p <= n; ++p)
    for (int q = 0; q <= n; ++q) {
      std::size_t d = x.dim(p, q) + x.dim(q, p);
      if (d) dims[{p, q}] = d;
      Matrix up = block2(x.del(p, q), x.delbar(q, p).conjugate());
      if (!up.is_zero()) del[{p, q}] = up;
      Matrix right = block2(x.delbar(p, q), x.del(q, p).conjugate());
      if (!right.is_zero()) delbar[{p, q}] = right;
      // swap of the two summands
      Matrix s(x.dim(q, p) + x.dim(p, q), d);
      for (std::size_t i = 0; i < x.dim(q, p); ++i)
        s.at(i, x.dim(p, q) + i) = Scalar(1);
      for (std::size_t i = 0; i < x.dim(p, q); ++i)
        s.at(x.dim(q, p) + i, i) = Scalar(1);
      if (d) sigma[{p, q}] = s;
    }
  return BigradedComplex(x.bound(), dims, del, delbar, sigma);
}

std::vector<ModelDescriptor> builtin_models() {
  return {
      {"torus", {{"g", 1}}, "exterior algebra of a g-torus, d = 0"},
      {"iwasawa", {}, "invariant forms of the Iwasawa threefold"},
      {"d2", {}, "acyclic complex with a nonzero second-page differential"},
      {"random",
       {{"seed", 0}, {"bound", 2}, {"cells", 6}},
       "seeded sum of standard cells, mixed bases"},
      {"random-real",
       {{"seed", 0}, {"bound", 2}, {"cells", 6}},
       "doubled random complex carrying the swap real structure"},
  };
}

BigradedComplex instantiate_model(const std::string& spec) {
  std::string name = spec;
  std::map<std::string, long> params;
  if (auto colon = spec.find(':'); colon != std::string::npos) {
    name = spec.substr(0, colon);
    std::stringstream rest(spec.substr(colon + 1));
    std::string item;
    while (std::getline(rest, item, ',')) {
      auto eq = item.find('=');
      if (eq == std::string::npos)
        throw InputError("model parameter '" + item + "' is not key=value");
      try {
        params[item.substr(0, eq)] = std::stol(item.substr(eq + 1));
      } catch (const std::exception&) {
        throw InputError("model parameter '" + item +
                         "' has a non-integer value");
      }
    }
  }
  std::map<std::string, long> defaults;
  bool known = false;
  for (const auto& d : builtin_models())
    if (d.name == name) {
      defaults = d.parameters;
      known = true;
    }
  if (!known) throw InputError("unknown model '" + name + "'");
  auto value = [&](const std::string& key) {
    auto it = params.find(key);
    if (it != params.end()) return it->second;
    auto dt = defaults.find(key);
    if (dt == defaults.end())
      throw InputError("model '" + name + "' has no parameter '" + key + "'");
    return dt->second;
  };
  for (const auto& [key, v] : params)
    if (!defaults.count(key))
      throw InputError("model '" + name + "' has no parameter '" + key + "'");
  if (name == "torus") {
    long g = value("g");
    if (g < 0 || g > 4) throw InputError("torus genus must be in [0, 4]");
    return torus_model(static_cast<std::size_t>(g));
  }
  if (name == "iwasawa") return iwasawa_model();
  if (name == "d2") return synthetic_d2_model();
  if (name == "random" || name == "random-real") {
    long bound = value("bound"), cells = value("cells");
    if (bound < 0 || bound > 6 || cells < 0 || cells > 64)
      throw InputError("random model needs 0 <= bound <= 6, 0 <= cells <= 64");
    BigradedComplex x = random_bigraded_complex(
        static_cast<std::uint64_t>(value("seed")),
        static_cast<std::size_t>(bound), static_cast<std::size_t>(cells));
    return name == "random" ? x : real_double(x);
  }
  throw DefectError("model '" + name + "' is listed but not buildable");
}

}  // namespace rlab
