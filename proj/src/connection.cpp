#include "rlab/connection.hpp"

#include <algorithm>
#include <sstream>

#include "rlab/error.hpp"

namespace rlab {
namespace {

std::string deg_str(const Deg& p) {
  std::ostringstream os;
  os << '(';
  for (std::size_t k = 0; k < p.size(); ++k) {
    if (k) os << ',';
    os << p[k];
  }
  os << ')';
  return os.str();
}

// All degrees p > 0 where a pure degree -p endomorphism of the fiber can
// be nonzero, ascending by total degree then lexicographically.  The
// recursions below only ever need these: products of pure maps are pure,
// so everything outside the spread of the grading vanishes identically.
std::vector<Deg> positive_spread(const GradedFiber& f) {
  if (f.arity == 0 || f.tags.empty()) return {};
  Deg lo = f.tags.front(), hi = f.tags.front();
  for (const Deg& t : f.tags)
    for (std::size_t k = 0; k < f.arity; ++k) {
      lo[k] = std::min(lo[k], t[k]);
      hi[k] = std::max(hi[k], t[k]);
    }
  Box box{Deg(f.arity, 0), deg_sub(hi, lo)};
  std::vector<Deg> out;
  for (std::size_t idx = 0; idx < box.size(); ++idx) {
    Deg p = box.at(idx);
    if (p != Deg(f.arity, 0)) out.push_back(p);
  }
  auto total = [](const Deg& p) {
    long t = 0;
    for (int v : p) t += v;
    return t;
  };
  std::stable_sort(out.begin(), out.end(), [&](const Deg& a, const Deg& b) {
    return total(a) < total(b);
  });
  return out;
}

bool pure_degree(const GradedFiber& f, const Matrix& m, const Deg& p) {
  for (std::size_t a = 0; a < m.rows(); ++a)
    for (std::size_t b = 0; b < m.cols(); ++b)
      if (!m.at(a, b).is_zero() && deg_add(f.tags[a], p) != f.tags[b])
        return false;
  return true;
}

void require_wellformed(const EquivariantConnection& c) {
  auto bad = connection_violations(c);
  if (!bad.empty())
    throw InputError("connection is not well-formed: " + bad.front());
}

void require_gauge(const GradedFiber& f, const Gauge& g) {
  auto bad = gauge_violations(f, g);
  if (!bad.empty()) throw InputError("invalid gauge: " + bad.front());
}

// z^p dz_i/z_i coefficient of Omega g + dg.
Matrix omega_g_plus_dg(const EquivariantConnection& c, const Gauge& g,
                       const Deg& p, std::size_t axis) {
  std::size_t d = c.fiber.dim();
  Matrix out(d, d);
  for (const auto& [key, a] : c.coeffs) {
    if (key.second != axis || !deg_leq(key.first, p)) continue;
    Deg r = deg_sub(p, key.first);
    auto it = g.terms.find(r);
    if (it != g.terms.end()) out = out + a * it->second;
  }
  if (p[axis] != 0) {
    auto it = g.terms.find(p);
    if (it != g.terms.end()) out = out + it->second.scaled(p[axis]);
  }
  return out;
}

}  // namespace

std::map<Deg, std::size_t> GradedFiber::component_dims() const {
  std::map<Deg, std::size_t> out;
  for (const Deg& t : tags) ++out[t];
  return out;
}

Matrix EquivariantConnection::coeff(const Deg& p, std::size_t axis) const {
  auto it = coeffs.find({p, axis});
  if (it != coeffs.end()) return it->second;
  return Matrix(fiber.dim(), fiber.dim());
}

std::vector<std::string> connection_violations(
    const EquivariantConnection& c) {
  std::vector<std::string> out;
  for (const Deg& t : c.fiber.tags)
    if (t.size() != c.fiber.arity) {
      out.push_back("fiber degree tag arity mismatch");
      return out;
    }
  for (const auto& [key, a] : c.coeffs) {
    const auto& [p, axis] = key;
    std::string where = "A_{" + deg_str(p) + "," + std::to_string(axis) + "}";
    if (p.size() != c.fiber.arity || axis >= c.fiber.arity) {
      out.push_back(where + " is indexed outside the torus rank");
      continue;
    }
    if (a.rows() != c.fiber.dim() || a.cols() != c.fiber.dim()) {
      out.push_back(where + " has the wrong shape");
      continue;
    }
    if (*std::min_element(p.begin(), p.end()) < 0) {
      out.push_back(where + " has a negative degree");
      continue;
    }
    if (p[axis] == 0 && !a.is_zero()) {
      out.push_back(where + " must vanish because p_" +
                    std::to_string(axis) + " = 0");
      continue;
    }
    if (!pure_degree(c.fiber, a, p))
      out.push_back(where + " is not of pure degree " + deg_str(deg_neg(p)));
  }
  return out;
}

std::map<std::tuple<Deg, std::size_t, std::size_t>, Matrix> curvature(
    const EquivariantConnection& c) {
  require_wellformed(c);
  std::map<std::tuple<Deg, std::size_t, std::size_t>, Matrix> out;
  std::size_t n = c.fiber.arity;
  for (const Deg& p : positive_spread(c.fiber)) {
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t j = i + 1; j < n; ++j) {
        Matrix k = c.coeff(p, j).scaled(p[i]) - c.coeff(p, i).scaled(p[j]);
        for (const auto& [key, aq] : c.coeffs) {
          if (key.second != i || !deg_leq(key.first, p)) continue;
          auto it = c.coeffs.find({deg_sub(p, key.first), j});
          if (it == c.coeffs.end()) continue;
          k = k + aq * it->second - it->second * aq;
        }
        if (!k.is_zero()) out.emplace(std::make_tuple(p, i, j), k);
      }
    }
  }
  return out;
}

bool is_flat(const EquivariantConnection& c) { return curvature(c).empty(); }

Matrix Gauge::term(const Deg& p, std::size_t dim) const {
  auto it = terms.find(p);
  if (it != terms.end()) return it->second;
  bool zero = true;
  for (int v : p) zero = zero && v == 0;
  return zero ? Matrix::identity(dim) : Matrix(dim, dim);
}

std::vector<std::string> gauge_violations(const GradedFiber& f,
                                          const Gauge& g) {
  std::vector<std::string> out;
  Deg origin(f.arity, 0);
  auto g0 = g.terms.find(origin);
  if (g0 == g.terms.end()) {
    out.push_back("missing constant term");
    return out;
  }
  for (const auto& [p, m] : g.terms) {
    std::string where = "g_" + deg_str(p);
    if (p.size() != f.arity) {
      out.push_back(where + " has the wrong arity");
      continue;
    }
    if (m.rows() != f.dim() || m.cols() != f.dim()) {
      out.push_back(where + " has the wrong shape");
      continue;
    }
    if (*std::min_element(p.begin(), p.end()) < 0) {
      out.push_back(where + " has a negative degree");
      continue;
    }
    if (!pure_degree(f, m, p))
      out.push_back(where + " is not of pure degree " + deg_str(deg_neg(p)));
  }
  if (out.empty() && !inverse(g0->second))
    out.push_back("constant term is not invertible");
  return out;
}

Gauge gauge_inverse(const GradedFiber& f, const Gauge& g) {
  require_gauge(f, g);
  Deg origin(f.arity, 0);
  Matrix inv0 = *inverse(g.terms.at(origin));
  Gauge h;
  h.terms[origin] = inv0;
  for (const Deg& p : positive_spread(f)) {
    Matrix acc(f.dim(), f.dim());
    for (const auto& [q, gq] : g.terms) {
      if (q == origin || !deg_leq(q, p)) continue;
      auto it = h.terms.find(deg_sub(p, q));
      if (it != h.terms.end()) acc = acc + gq * it->second;
    }
    if (!acc.is_zero()) h.terms[p] = -(inv0 * acc);
  }
  return h;
}

EquivariantConnection gauge_transform(const EquivariantConnection& c,
                                      const Gauge& g) {
  require_wellformed(c);
  require_gauge(c.fiber, g);
  Gauge h = gauge_inverse(c.fiber, g);
  EquivariantConnection out;
  out.fiber = c.fiber;
  std::vector<Deg> degs = positive_spread(c.fiber);
  degs.insert(degs.begin(), Deg(c.fiber.arity, 0));
  for (std::size_t i = 0; i < c.fiber.arity; ++i) {
    // B_{b,i} = (Omega g + dg) coefficient, then A' = h * B degreewise.
    std::map<Deg, Matrix> b;
    for (const Deg& p : degs) {
      Matrix m = omega_g_plus_dg(c, g, p, i);
      if (!m.is_zero()) b.emplace(p, m);
    }
    for (const Deg& p : degs) {
      Matrix acc(c.fiber.dim(), c.fiber.dim());
      for (const auto& [q, bq] : b) {
        if (!deg_leq(q, p)) continue;
        auto it = h.terms.find(deg_sub(p, q));
        if (it != h.terms.end()) acc = acc + it->second * bq;
      }
      if (!acc.is_zero()) out.coeffs.emplace(std::make_pair(p, i), acc);
    }
  }
  return out;
}

Gauge trivialize_flat(const EquivariantConnection& c) {
  require_wellformed(c);
  if (!is_flat(c)) throw MathError("not_flat", "the connection has curvature");
  std::size_t d = c.fiber.dim();
  Deg origin(c.fiber.arity, 0);
  Gauge g;
  g.terms[origin] = Matrix::identity(d);
  for (const Deg& p : positive_spread(c.fiber)) {
    // p_i g_p = -sum_{q+r=p, q>0} A_{q,i} g_r, any axis with p_i > 0; the
    // answers must agree across axes or the input was not flat after all.
    auto residue = [&](std::size_t i) {
      Matrix acc(d, d);
      for (const auto& [key, a] : c.coeffs) {
        if (key.second != i || !deg_leq(key.first, p)) continue;
        auto it = g.terms.find(deg_sub(p, key.first));
        if (it != g.terms.end()) acc = acc + a * it->second;
      }
      return -acc;
    };
    bool have = false;
    Matrix gp;
    for (std::size_t i = 0; i < c.fiber.arity; ++i) {
      if (p[i] == 0) continue;
      Matrix candidate = residue(i).scaled(Scalar::of(1, p[i]));
      if (!have) {
        gp = candidate;
        have = true;
      } else if (gp != candidate) {
        throw DefectError("inconsistent residue recursion at degree " +
                          deg_str(p));
      }
    }
    if (have && !gp.is_zero()) g.terms[p] = gp;
  }
  if (!gauge_transform(c, g).coeffs.empty())
    throw DefectError("trivializing gauge failed to flatten the connection");
  return g;
}

}  // namespace rlab
