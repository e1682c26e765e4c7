#include "rlab/io.hpp"

#include <fstream>
#include <sstream>
#include <utility>

#include "rlab/error.hpp"

namespace rlab {

namespace {

[[noreturn]] void fail(const std::string& msg) { throw InputError(msg); }

const Json& field(const Json& j, const char* key, const char* where) {
  if (!j.is_object())
    fail(std::string(where) + " must be a JSON object");
  auto it = j.find(key);
  if (it == j.end())
    fail(std::string(where) + ": missing field '" + key + "'");
  return *it;
}

std::size_t size_field(const Json& j, const char* key, const char* where) {
  const Json& v = field(j, key, where);
  if (!v.is_number_unsigned())
    fail(std::string(where) + ": '" + key +
         "' must be a non-negative integer");
  return v.get<std::size_t>();
}

int int_of(const Json& v, const std::string& where) {
  if (!v.is_number_integer())
    fail(where + " must be an integer");
  return v.get<int>();
}

Deg deg_of(const Json& v, const std::string& where) {
  if (!v.is_array()) fail(where + " must be an array of integers");
  Deg d;
  for (const Json& entry : v) d.push_back(int_of(entry, where));
  return d;
}

void expect_kind(const Json& j, const char* kind) {
  std::string got = kind_of(j);
  if (got != kind)
    fail("expected kind '" + std::string(kind) + "', got '" + got + "'");
}

Json deg_json(const Deg& d) { return Json(d); }

Subspace subspace_of(const Json& v, std::size_t ambient,
                     const std::string& where) {
  if (!v.is_array()) fail(where + ": basis must be an array of rows");
  Matrix rows(v.size(), ambient);
  std::size_t r = 0;
  for (const Json& row : v) {
    if (!row.is_array() || row.size() != ambient)
      fail(where + ": basis row " + std::to_string(r) + " must have " +
           std::to_string(ambient) + " entries");
    for (std::size_t c = 0; c < ambient; ++c) {
      if (!row[c].is_string())
        fail(where + ": scalar entries must be strings");
      rows.at(r, c) = Scalar::parse(row[c].get<std::string>());
    }
    ++r;
  }
  return Subspace::span(ambient, rows);
}

Json basis_json(const Subspace& s) {
  Json rows = Json::array();
  const Matrix& b = s.basis();
  for (std::size_t r = 0; r < b.rows(); ++r) {
    Json row = Json::array();
    for (std::size_t c = 0; c < b.cols(); ++c) row.push_back(b.at(r, c).str());
    rows.push_back(std::move(row));
  }
  return rows;
}

Json filtration_json(const Filtration& f) {
  Json steps = Json::array();
  for (const auto& [p, s] : f.regions())
    steps.push_back(Json{{"index", p}, {"basis", basis_json(s)}});
  if (!f.regions().empty())
    steps.push_back(Json{{"index", f.zero_from()},
                         {"basis", basis_json(Subspace::zero(f.ambient_dim()))}});
  return Json{{"steps", std::move(steps)}};
}

Filtration filtration_of(const Json& j, std::size_t ambient,
                         const std::string& where) {
  const Json& steps = field(j, "steps", where.c_str());
  if (!steps.is_array()) fail(where + ": 'steps' must be an array");
  std::vector<std::pair<int, Subspace>> parsed;
  std::size_t n = 0;
  for (const Json& step : steps) {
    std::string swhere = where + " step " + std::to_string(n++);
    int index = int_of(field(step, "index", swhere.c_str()), swhere + ": index");
    parsed.emplace_back(
        index, subspace_of(field(step, "basis", swhere.c_str()), ambient, swhere));
  }
  return Filtration::from_steps(ambient, std::move(parsed));
}

}  // namespace

std::string kind_of(const Json& j) {
  if (!j.is_object()) fail("top-level value must be a JSON object");
  const Json& version = field(j, "schema_version", "document");
  if (!version.is_number_integer() || version.get<int>() != kSchemaVersion)
    fail("unsupported schema_version (expected " +
         std::to_string(kSchemaVersion) + ")");
  const Json& kind = field(j, "kind", "document");
  if (!kind.is_string()) fail("'kind' must be a string");
  return kind.get<std::string>();
}

Json matrix_to_json(const Matrix& m) {
  Json entries = Json::array();
  for (std::size_t r = 0; r < m.rows(); ++r) {
    Json row = Json::array();
    for (std::size_t c = 0; c < m.cols(); ++c) row.push_back(m.at(r, c).str());
    entries.push_back(std::move(row));
  }
  return Json{{"shape", {m.rows(), m.cols()}}, {"entries", std::move(entries)}};
}

Matrix matrix_from_json(const Json& j) {
  const Json& shape = field(j, "shape", "matrix");
  if (!shape.is_array() || shape.size() != 2 ||
      !shape[0].is_number_unsigned() || !shape[1].is_number_unsigned())
    fail("matrix: 'shape' must be [rows, cols]");
  std::size_t rows = shape[0].get<std::size_t>();
  std::size_t cols = shape[1].get<std::size_t>();
  const Json& entries = field(j, "entries", "matrix");
  if (!entries.is_array() || entries.size() != rows)
    fail("matrix: 'entries' must hold " + std::to_string(rows) + " rows");
  Matrix m(rows, cols);
  for (std::size_t r = 0; r < rows; ++r) {
    const Json& row = entries[r];
    if (!row.is_array() || row.size() != cols)
      fail("matrix: row " + std::to_string(r) + " must have " +
           std::to_string(cols) + " entries");
    for (std::size_t c = 0; c < cols; ++c) {
      if (!row[c].is_string()) fail("matrix: scalar entries must be strings");
      m.at(r, c) = Scalar::parse(row[c].get<std::string>());
    }
  }
  return m;
}

Json multifiltration_to_json(const MultiFilteredSpace& v) {
  Json filts = Json::array();
  for (const Filtration& f : v.filtrations())
    filts.push_back(filtration_json(f));
  return Json{{"kind", "multifiltration"},
              {"schema_version", kSchemaVersion},
              {"dim", v.dim()},
              {"filtrations", std::move(filts)}};
}

MultiFilteredSpace multifiltration_from_json(const Json& j) {
  expect_kind(j, "multifiltration");
  std::size_t dim = size_field(j, "dim", "multifiltration");
  const Json& filts = field(j, "filtrations", "multifiltration");
  if (!filts.is_array())
    fail("multifiltration: 'filtrations' must be an array");
  std::vector<Filtration> parsed;
  std::size_t i = 0;
  for (const Json& f : filts)
    parsed.push_back(
        filtration_of(f, dim, "filtration " + std::to_string(i++)));
  return MultiFilteredSpace(dim, std::move(parsed));
}

Json filtered_map_to_json(const FilteredMap& f) {
  return Json{{"kind", "filtered_map"},
              {"schema_version", kSchemaVersion},
              {"source", multifiltration_to_json(f.source())},
              {"target", multifiltration_to_json(f.target())},
              {"matrix", matrix_to_json(f.matrix())}};
}

FilteredMap filtered_map_from_json(const Json& j) {
  expect_kind(j, "filtered_map");
  MultiFilteredSpace source =
      multifiltration_from_json(field(j, "source", "filtered_map"));
  MultiFilteredSpace target =
      multifiltration_from_json(field(j, "target", "filtered_map"));
  Matrix m = matrix_from_json(field(j, "matrix", "filtered_map"));
  return FilteredMap(std::move(source), std::move(target), std::move(m));
}

Json bigraded_complex_to_json(const BigradedComplex& x) {
  const int bound = static_cast<int>(x.bound());
  Json terms = Json::array();
  for (int p = 0; p <= bound; ++p)
    for (int q = 0; q <= bound; ++q)
      if (x.dim(p, q) > 0)
        terms.push_back(Json{{"p", p}, {"q", q}, {"dim", x.dim(p, q)}});
  auto matrices = [&](auto get, int dp, int dq) {
    Json out = Json::array();
    for (int p = 0; p <= bound; ++p)
      for (int q = 0; q <= bound; ++q) {
        if (x.dim(p, q) == 0) continue;
        if (p + dp > bound || q + dq > bound) continue;
        Matrix m = get(p, q);
        if (m.rows() == 0 || m.is_zero()) continue;
        out.push_back(
            Json{{"p", p}, {"q", q}, {"matrix", matrix_to_json(m)}});
      }
    return out;
  };
  Json doc{{"kind", "bigraded_complex"},
           {"schema_version", kSchemaVersion},
           {"bound", x.bound()},
           {"terms", std::move(terms)},
           {"del", matrices([&](int p, int q) { return x.del(p, q); }, 1, 0)},
           {"delbar",
            matrices([&](int p, int q) { return x.delbar(p, q); }, 0, 1)}};
  if (x.has_real_structure()) {
    Json sig = Json::array();
    for (int p = 0; p <= bound; ++p)
      for (int q = 0; q <= bound; ++q)
        if (x.dim(p, q) > 0 && x.dim(q, p) > 0)
          sig.push_back(Json{
              {"p", p}, {"q", q}, {"matrix", matrix_to_json(x.sigma(p, q))}});
    doc["sigma"] = std::move(sig);
  }
  return doc;
}

BigradedComplex bigraded_complex_from_json(const Json& j) {
  expect_kind(j, "bigraded_complex");
  std::size_t bound = size_field(j, "bound", "bigraded_complex");
  const int b = static_cast<int>(bound);

  auto key_of = [&](const Json& entry, const char* where) {
    int p = int_of(field(entry, "p", where), std::string(where) + ": p");
    int q = int_of(field(entry, "q", where), std::string(where) + ": q");
    if (p < 0 || p > b || q < 0 || q > b)
      fail(std::string(where) + ": (" + std::to_string(p) + "," +
           std::to_string(q) + ") lies outside the bidegree square");
    return BigradedComplex::Key{p, q};
  };

  std::map<BigradedComplex::Key, std::size_t> dims;
  const Json& terms = field(j, "terms", "bigraded_complex");
  if (!terms.is_array()) fail("bigraded_complex: 'terms' must be an array");
  for (const Json& t : terms)
    dims[key_of(t, "term")] = size_field(t, "dim", "term");

  auto matrices = [&](const char* name, bool required) {
    std::map<BigradedComplex::Key, Matrix> out;
    if (!required && !j.contains(name)) return out;
    const Json& list = field(j, name, "bigraded_complex");
    if (!list.is_array())
      fail("bigraded_complex: '" + std::string(name) + "' must be an array");
    for (const Json& entry : list)
      out[key_of(entry, name)] =
          matrix_from_json(field(entry, "matrix", name));
    return out;
  };
  std::map<BigradedComplex::Key, Matrix> del = matrices("del", true);
  std::map<BigradedComplex::Key, Matrix> delbar = matrices("delbar", true);
  std::optional<std::map<BigradedComplex::Key, Matrix>> sigma;
  if (j.contains("sigma")) sigma = matrices("sigma", true);
  return BigradedComplex(bound, std::move(dims), std::move(del),
                         std::move(delbar), std::move(sigma));
}

Json connection_to_json(const EquivariantConnection& c) {
  Json tags = Json::array();
  for (const Deg& t : c.fiber.tags) tags.push_back(deg_json(t));
  Json coeffs = Json::array();
  for (const auto& [key, m] : c.coeffs)
    coeffs.push_back(Json{{"degree", deg_json(key.first)},
                          {"axis", key.second},
                          {"matrix", matrix_to_json(m)}});
  return Json{{"kind", "connection"},
              {"schema_version", kSchemaVersion},
              {"arity", c.fiber.arity},
              {"tags", std::move(tags)},
              {"coefficients", std::move(coeffs)}};
}

EquivariantConnection connection_from_json(const Json& j) {
  expect_kind(j, "connection");
  EquivariantConnection c;
  c.fiber.arity = size_field(j, "arity", "connection");
  const Json& tags = field(j, "tags", "connection");
  if (!tags.is_array()) fail("connection: 'tags' must be an array");
  for (const Json& t : tags) {
    Deg d = deg_of(t, "connection tag");
    if (d.size() != c.fiber.arity)
      fail("connection: every tag needs one entry per torus variable");
    c.fiber.tags.push_back(std::move(d));
  }
  const Json& coeffs = field(j, "coefficients", "connection");
  if (!coeffs.is_array()) fail("connection: 'coefficients' must be an array");
  std::size_t n = 0;
  for (const Json& entry : coeffs) {
    std::string where = "coefficient " + std::to_string(n++);
    Deg p = deg_of(field(entry, "degree", where.c_str()), where + ": degree");
    if (p.size() != c.fiber.arity)
      fail(where + ": degree needs one entry per torus variable");
    std::size_t axis = size_field(entry, "axis", where.c_str());
    if (axis >= c.fiber.arity) fail(where + ": axis out of range");
    Matrix m = matrix_from_json(field(entry, "matrix", where.c_str()));
    if (m.rows() != c.fiber.dim() || m.cols() != c.fiber.dim())
      fail(where + ": matrix must be " + std::to_string(c.fiber.dim()) + "x" +
           std::to_string(c.fiber.dim()));
    if (!c.coeffs.emplace(std::make_pair(std::move(p), axis), std::move(m))
             .second)
      fail(where + ": duplicate (degree, axis) pair");
  }
  return c;
}

Json graded_module_to_json(const GradedModule& m) {
  const Box& box = m.box();
  Json pieces = Json::array();
  for (std::size_t k = 0; k < box.size(); ++k) {
    Deg deg = box.at(k);
    if (m.piece_dim(deg) > 0)
      pieces.push_back(
          Json{{"degree", deg_json(deg)}, {"dim", m.piece_dim(deg)}});
  }
  Json mult = Json::array();
  for (std::size_t axis = 0; axis < m.axes(); ++axis)
    for (std::size_t k = 0; k < box.size(); ++k) {
      Deg deg = box.at(k);
      Deg up = deg_shift(deg, axis, 1);
      if (!box.contains(up)) continue;
      if (m.piece_dim(deg) == 0 || m.piece_dim(up) == 0) continue;
      mult.push_back(Json{{"axis", axis},
                          {"degree", deg_json(deg)},
                          {"matrix", matrix_to_json(m.mult(axis, deg))}});
    }
  return Json{{"kind", "graded_module_dump"},
              {"schema_version", kSchemaVersion},
              {"box", Json{{"lo", deg_json(box.lo)}, {"hi", deg_json(box.hi)}}},
              {"pieces", std::move(pieces)},
              {"mult", std::move(mult)}};
}

GradedModule graded_module_from_json(const Json& j) {
  expect_kind(j, "graded_module_dump");
  const Json& boxj = field(j, "box", "graded_module_dump");
  Deg lo = deg_of(field(boxj, "lo", "box"), "box lo");
  Deg hi = deg_of(field(boxj, "hi", "box"), "box hi");
  if (lo.size() != hi.size()) fail("box: lo and hi must have equal arity");
  for (std::size_t i = 0; i < lo.size(); ++i)
    if (lo[i] > hi[i]) fail("box: lo must be componentwise at most hi");
  Box box{std::move(lo), std::move(hi)};

  std::vector<std::size_t> dims(box.size(), 0);
  const Json& pieces = field(j, "pieces", "graded_module_dump");
  if (!pieces.is_array()) fail("graded_module_dump: 'pieces' must be an array");
  for (const Json& piece : pieces) {
    Deg deg = deg_of(field(piece, "degree", "piece"), "piece degree");
    if (deg.size() != box.axes() || !box.contains(deg))
      fail("piece degree lies outside the box");
    dims[box.index(deg)] = size_field(piece, "dim", "piece");
  }

  std::vector<std::vector<Matrix>> mult(box.axes(),
                                        std::vector<Matrix>(box.size()));
  for (std::size_t axis = 0; axis < box.axes(); ++axis)
    for (std::size_t k = 0; k < box.size(); ++k) {
      Deg up = deg_shift(box.at(k), axis, 1);
      if (box.contains(up))
        mult[axis][k] = Matrix(dims[box.index(up)], dims[k]);
    }
  const Json& multj = field(j, "mult", "graded_module_dump");
  if (!multj.is_array()) fail("graded_module_dump: 'mult' must be an array");
  for (const Json& entry : multj) {
    std::size_t axis = size_field(entry, "axis", "mult entry");
    if (axis >= box.axes()) fail("mult entry: axis out of range");
    Deg deg = deg_of(field(entry, "degree", "mult entry"), "mult degree");
    Deg up = deg.size() == box.axes() ? deg_shift(deg, axis, 1) : Deg{};
    if (deg.size() != box.axes() || !box.contains(deg) || !box.contains(up))
      fail("mult entry degree lies outside the box");
    Matrix m = matrix_from_json(field(entry, "matrix", "mult entry"));
    if (m.rows() != dims[box.index(up)] || m.cols() != dims[box.index(deg)])
      fail("mult entry at degree " + Json(deg).dump() + " has the wrong shape");
    mult[axis][box.index(deg)] = std::move(m);
  }
  return GradedModule(std::move(box), std::move(dims), std::move(mult));
}

Json report_envelope(const std::string& command) {
  return Json{{"kind", "report"},
              {"schema_version", kSchemaVersion},
              {"command", command}};
}

Json parse_json_text(const std::string& text) {
  try {
    return Json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    fail(std::string("invalid JSON: ") + e.what());
  }
}

Json load_json_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) fail("cannot read file: " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_json_text(buf.str());
}

void save_json_file(const std::string& path, const Json& j) {
  std::ofstream out(path, std::ios::binary);
  if (!out) fail("cannot write file: " + path);
  out << dump_json(j);
  if (!out) fail("cannot write file: " + path);
}

std::string dump_json(const Json& j) { return j.dump(2) + "\n"; }

}  // namespace rlab
