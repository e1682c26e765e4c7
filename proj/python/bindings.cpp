// Python bindings.  Documents cross the boundary as plain dicts through
// the io layer; the structured objects stay opaque handles.  Degrees are
// tuples of ints, scalars are exact strings.

#include <pybind11/operators.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <string>
#include <vector>

#include "rlab/bigraded.hpp"
#include "rlab/connection.hpp"
#include "rlab/error.hpp"
#include "rlab/favb.hpp"
#include "rlab/io.hpp"
#include "rlab/models.hpp"
#include "rlab/multifilt.hpp"
#include "rlab/rees.hpp"
#include "rlab/verify.hpp"

namespace py = pybind11;
using namespace rlab;

namespace {

py::object to_py(const Json& j) {
  switch (j.type()) {
    case Json::value_t::object: {
      py::dict d;
      for (const auto& [k, v] : j.items()) d[py::str(k)] = to_py(v);
      return d;
    }
    case Json::value_t::array: {
      py::list l;
      for (const auto& v : j) l.append(to_py(v));
      return l;
    }
    case Json::value_t::string:
      return py::str(j.get<std::string>());
    case Json::value_t::boolean:
      return py::bool_(j.get<bool>());
    case Json::value_t::number_unsigned:
      return py::int_(j.get<unsigned long long>());
    case Json::value_t::number_integer:
      return py::int_(j.get<long long>());
    case Json::value_t::number_float:
      return py::float_(j.get<double>());
    default:
      return py::none();
  }
}

Json from_py(py::handle h) {
  if (h.is_none()) return nullptr;
  if (py::isinstance<py::bool_>(h)) return h.cast<bool>();
  if (py::isinstance<py::int_>(h)) {
    long long v = h.cast<long long>();
    // the schema readers expect counts as unsigned numbers
    if (v >= 0) return static_cast<std::uint64_t>(v);
    return v;
  }
  if (py::isinstance<py::float_>(h)) return h.cast<double>();
  if (py::isinstance<py::str>(h)) return h.cast<std::string>();
  if (py::isinstance<py::dict>(h)) {
    Json o = Json::object();
    for (auto item : py::reinterpret_borrow<py::dict>(h))
      o[item.first.cast<std::string>()] = from_py(item.second);
    return o;
  }
  if (py::isinstance<py::sequence>(h)) {
    Json a = Json::array();
    for (auto item : py::reinterpret_borrow<py::sequence>(h))
      a.push_back(from_py(item));
    return a;
  }
  throw InputError("cannot convert python value to a document");
}

py::tuple deg_py(const Deg& d) {
  py::tuple t(d.size());
  for (std::size_t i = 0; i < d.size(); ++i) t[i] = d[i];
  return t;
}

Deg deg_of(py::handle h) {
  Deg d;
  for (auto item : py::reinterpret_borrow<py::sequence>(h))
    d.push_back(item.cast<int>());
  return d;
}

py::dict dims_py(const std::map<Deg, std::size_t>& m) {
  py::dict d;
  for (const auto& [p, k] : m) d[deg_py(p)] = k;
  return d;
}

py::dict box_py(const Box& b) {
  py::dict d;
  d["lo"] = deg_py(b.lo);
  d["hi"] = deg_py(b.hi);
  return d;
}

py::list matrix_py(const Matrix& m) {
  py::list rows;
  for (std::size_t r = 0; r < m.rows(); ++r) {
    py::list row;
    for (std::size_t c = 0; c < m.cols(); ++c) row.append(m.at(r, c).str());
    rows.append(row);
  }
  return rows;
}

Scalar scalar_of(py::handle h) {
  if (py::isinstance<py::str>(h)) return Scalar::parse(h.cast<std::string>());
  return Scalar(h.cast<long long>());
}

Matrix matrix_of(py::handle h) {
  auto rows = py::reinterpret_borrow<py::sequence>(h);
  std::size_t nr = rows.size();
  std::size_t nc = nr ? py::reinterpret_borrow<py::sequence>(rows[0]).size() : 0;
  Matrix m(nr, nc);
  for (std::size_t r = 0; r < nr; ++r) {
    auto row = py::reinterpret_borrow<py::sequence>(rows[r]);
    if (row.size() != nc) throw InputError("matrix rows have uneven lengths");
    for (std::size_t c = 0; c < nc; ++c) m.at(r, c) = scalar_of(row[c]);
  }
  return m;
}

py::dict torsion_py(const TorsionReport& t) {
  py::dict d;
  d["pieces"] = dims_py(t.torsion_pieces);
  d["support_codim"] = t.support_codim;
  d["is_zero"] = t.is_zero;
  d["submodule"] = py::cast(t.submodule);
  return d;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "exact Rees-bundle calculus for multifiltered vector spaces";

  py::register_exception<DefectError>(m, "DefectError");
  py::register_exception<InputError>(m, "InputError", PyExc_ValueError);
  static py::exception<MathError> math_exc(m, "MathError");
  py::register_exception_translator([](std::exception_ptr p) {
    try {
      if (p) std::rethrow_exception(p);
    } catch (const MathError& e) {
      py::set_error(math_exc,
                    ("[" + e.code() + "] " + std::string(e.what())).c_str());
    }
  });

  py::class_<MultiFilteredSpace>(m, "MultiFilteredSpace")
      .def_static("from_doc",
                  [](py::handle h) {
                    return multifiltration_from_json(from_py(h));
                  })
      .def("doc",
           [](const MultiFilteredSpace& v) {
             return to_py(multifiltration_to_json(v));
           })
      .def_property_readonly("n", &MultiFilteredSpace::n)
      .def_property_readonly("dim", &MultiFilteredSpace::dim)
      .def(py::self == py::self)
      .def("__repr__", [](const MultiFilteredSpace& v) {
        return "MultiFilteredSpace(n=" + std::to_string(v.n()) +
               ", dim=" + std::to_string(v.dim()) + ")";
      });

  py::class_<FilteredMap>(m, "FilteredMap")
      .def(py::init([](const MultiFilteredSpace& s, const MultiFilteredSpace& t,
                       py::handle entries) {
             return FilteredMap(s, t, matrix_of(entries));
           }),
           py::arg("source"), py::arg("target"), py::arg("entries"))
      .def_static("from_doc",
                  [](py::handle h) { return filtered_map_from_json(from_py(h)); })
      .def("doc",
           [](const FilteredMap& f) { return to_py(filtered_map_to_json(f)); })
      .def_property_readonly("source", &FilteredMap::source)
      .def_property_readonly("target", &FilteredMap::target)
      .def("matrix", [](const FilteredMap& f) { return matrix_py(f.matrix()); });

  py::class_<BigradedComplex>(m, "BigradedComplex")
      .def_static("from_doc",
                  [](py::handle h) {
                    return bigraded_complex_from_json(from_py(h));
                  })
      .def("doc",
           [](const BigradedComplex& x) {
             return to_py(bigraded_complex_to_json(x));
           })
      .def_property_readonly("bound", &BigradedComplex::bound)
      .def_property_readonly("has_real_structure",
                             &BigradedComplex::has_real_structure)
      .def("dim", &BigradedComplex::dim, py::arg("p"), py::arg("q"))
      .def("total_dim", &BigradedComplex::total_dim, py::arg("k"))
      .def("__repr__", [](const BigradedComplex& x) {
        return "BigradedComplex(bound=" + std::to_string(x.bound()) + ")";
      });

  py::class_<GradedModule>(m, "GradedModule")
      .def_static("from_doc",
                  [](py::handle h) { return graded_module_from_json(from_py(h)); })
      .def("doc",
           [](const GradedModule& g) { return to_py(graded_module_to_json(g)); })
      .def_property_readonly("axes", &GradedModule::axes)
      .def_property_readonly("box",
                             [](const GradedModule& g) { return box_py(g.box()); })
      .def("dim_at",
           [](const GradedModule& g, py::handle p) { return g.dim_at(deg_of(p)); },
           py::arg("degree"))
      .def("violations", &GradedModule::violations);

  py::class_<EquivariantConnection>(m, "Connection")
      .def_static("from_doc",
                  [](py::handle h) { return connection_from_json(from_py(h)); })
      .def("doc",
           [](const EquivariantConnection& c) {
             return to_py(connection_to_json(c));
           })
      .def_property_readonly(
          "arity", [](const EquivariantConnection& c) { return c.fiber.arity; })
      .def_property_readonly(
          "fiber_dim",
          [](const EquivariantConnection& c) { return c.fiber.dim(); })
      .def("violations", [](const EquivariantConnection& c) {
        return connection_violations(c);
      });

  // document plumbing
  m.def("read_doc",
        [](const std::string& path) { return to_py(load_json_file(path)); },
        py::arg("path"));
  m.def("write_doc",
        [](const std::string& path, py::handle doc) {
          save_json_file(path, from_py(doc));
        },
        py::arg("path"), py::arg("doc"));
  m.def("kind", [](py::handle doc) { return kind_of(from_py(doc)); },
        py::arg("doc"));
  m.def("dumps", [](py::handle doc) { return dump_json(from_py(doc)); },
        py::arg("doc"));

  // splitting analysis
  m.def("graded_dims",
        [](const MultiFilteredSpace& v) { return dims_py(graded_dims(v)); });
  m.def("is_splittable", &is_splittable);
  m.def("splitting_type", [](const MultiFilteredSpace& v) {
    return dims_py(compute_splitting(v).dims());
  });

  // Rees modules and their fibers
  m.def("rees",
        [](const MultiFilteredSpace& v, py::object window) {
          if (window.is_none()) return rees_module(v).module;
          auto pair = py::reinterpret_borrow<py::sequence>(window);
          return rees_module(v, Box{deg_of(pair[0]), deg_of(pair[1])}).module;
        },
        py::arg("v"), py::arg("window") = py::none());
  m.def("is_vector_bundle", &is_vector_bundle);
  m.def("split_iso", [](const MultiFilteredSpace& v) {
    SplitIso iso = split_iso(v, compute_splitting(v));
    py::dict d;
    d["window"] = box_py(iso.window);
    d["type"] = dims_py(iso.type);
    py::list change;
    for (const Matrix& c : iso.change) change.append(matrix_py(c));
    d["change"] = change;
    return d;
  });
  m.def("fiber",
        [](const GradedModule& g, py::handle point) {
          std::vector<Scalar> pt;
          for (auto item : py::reinterpret_borrow<py::sequence>(point))
            pt.push_back(scalar_of(item));
          Fiber f = fiber(g, pt);
          py::dict d;
          d["total"] = f.total;
          d["graded"] = dims_py(f.graded);
          return d;
        },
        py::arg("module"), py::arg("point"));

  // strictness, kernels, cokernels
  m.def("is_r_strict", &is_r_strict, py::arg("f"), py::arg("r"));
  m.def("kernel", &rees_kernel);
  m.def("cokernel", [](const FilteredMap& f) {
    ReesCokernel rc = rees_cokernel(f);
    py::dict d;
    d["module"] = py::cast(rc.coker);
    d["torsion"] = torsion_py(rc.torsion);
    d["target"] = py::cast(rc.phi_target);
    return d;
  });

  // charts and recovery
  m.def("charts", [](const MultiFilteredSpace& v) {
    ProjectiveCharts pc = projective_charts(v);
    py::dict d;
    py::list types;
    for (const auto& t : pc.chart_types) types.append(dims_py(t));
    d["types"] = types;
    py::list overlaps;
    for (const OverlapCheck& o : pc.overlaps) {
      py::dict e;
      e["i"] = o.i;
      e["j"] = o.j;
      e["ok"] = o.ok;
      overlaps.append(e);
    }
    d["overlaps"] = overlaps;
    d["all_overlaps_ok"] = pc.all_overlaps_ok();
    return d;
  });
  m.def("p1_type", &p1_splitting_type);
  m.def("recover", &recover_multifiltration);

  // cohomology of bigraded complexes
  m.def("betti",
        [](const BigradedComplex& x, int k) { return total_cohomology(x, k).dim; },
        py::arg("x"), py::arg("k"));
  m.def("spectral_sequence",
        [](const BigradedComplex& x, std::size_t r_max) {
          SpectralSequenceTable t = spectral_sequence(x, r_max);
          py::dict d;
          py::dict pages;
          for (const auto& [r, page] : t.pages) {
            py::dict pd;
            for (const auto& [pq, dim] : page)
              pd[py::make_tuple(pq.first, pq.second)] = dim;
            pages[py::int_(r)] = pd;
          }
          d["pages"] = pages;
          d["degeneration_page"] = t.degeneration_page;
          py::dict inf;
          for (const auto& [pq, dim] : t.infinity)
            inf[py::make_tuple(pq.first, pq.second)] = dim;
          d["infinity"] = inf;
          return d;
        },
        py::arg("x"), py::arg("r_max") = 3);

  // approximating bundles
  m.def("favb",
        [](const BigradedComplex& x, int k) {
          FAVBReport r = favb(x, k);
          py::dict d;
          d["k"] = r.k;
          d["module"] = py::cast(r.module);
          py::dict fg;
          fg["dim"] = r.fiber_generic.dim;
          fg["matches"] = r.fiber_generic.matches;
          d["fiber_generic"] = fg;
          py::dict fz;
          py::dict zg;
          for (const auto& [p, dim] : r.fiber_zero.graded)
            zg[py::int_(p)] = dim;
          fz["graded"] = zg;
          fz["total"] = r.fiber_zero.total;
          fz["matches"] = r.fiber_zero.matches;
          d["fiber_zero"] = fz;
          py::dict bc;
          py::dict cd, td;
          for (const auto& [mm, dim] : r.base_change.cohomology_dims)
            cd[py::int_(mm)] = dim;
          for (const auto& [mm, dim] : r.base_change.torsion_dims)
            td[py::int_(mm)] = dim;
          bc["cohomology_dims"] = cd;
          bc["torsion_dims"] = td;
          bc["iso_verified"] = r.base_change.iso_verified;
          d["base_change"] = bc;
          return d;
        },
        py::arg("x"), py::arg("k"));
  m.def("verify_base_change", &verify_base_change, py::arg("x"), py::arg("k"));
  m.def("favb2",
        [](const BigradedComplex& x, int k) {
          Favb2Report r = favb2(x, k);
          py::dict d;
          d["k"] = r.k;
          d["module"] = py::cast(r.module);
          py::dict pu;
          py::dict pd;
          for (const auto& [pq, dim] : r.purity.dims)
            pd[py::make_tuple(pq.first, pq.second)] = dim;
          pu["dims"] = pd;
          pu["total"] = r.purity.total;
          pu["pure"] = r.purity.pure;
          d["purity"] = pu;
          d["fiber_origin_matches"] = r.fiber_origin_matches;
          d["hodge_slice_matches"] = r.hodge_slice_matches;
          d["conjugate_slice_matches"] = r.conjugate_slice_matches;
          return d;
        },
        py::arg("x"), py::arg("k"));
  m.def("twistor_type", &twistor_type, py::arg("x"), py::arg("k"));

  // connections
  m.def("curvature", [](const EquivariantConnection& c) {
    py::dict d;
    for (const auto& [key, mtx] : curvature(c)) {
      const auto& [p, i, j] = key;
      d[py::make_tuple(deg_py(p), i, j)] = matrix_py(mtx);
    }
    return d;
  });
  m.def("is_flat", &is_flat);
  m.def("flatten", [](const EquivariantConnection& c) {
    Gauge g = trivialize_flat(c);
    py::dict d;
    for (const auto& [p, mtx] : g.terms) d[deg_py(p)] = matrix_py(mtx);
    return d;
  });
  m.def("gauge_transform",
        [](const EquivariantConnection& c, py::dict terms) {
          Gauge g;
          for (auto item : terms)
            g.terms[deg_of(item.first)] = matrix_of(item.second);
          return gauge_transform(c, g);
        },
        py::arg("c"), py::arg("terms"));

  // models and seeded families
  m.def("models", [] {
    py::list out;
    for (const ModelDescriptor& d : builtin_models()) {
      py::dict e;
      e["name"] = d.name;
      e["parameters"] = py::cast(d.parameters);
      e["note"] = d.note;
      out.append(e);
    }
    return out;
  });
  m.def("model", &instantiate_model, py::arg("spec"));
  m.def("random_multifiltration", &random_multifiltration, py::arg("seed"),
        py::arg("n"), py::arg("dim"), py::arg("first"), py::arg("last"));
  m.def("random_filtered_map", &random_filtered_map, py::arg("seed"),
        py::arg("n"), py::arg("dim_v"), py::arg("dim_w"), py::arg("deg_lo"),
        py::arg("deg_hi"));
  m.def("random_complex", &random_bigraded_complex, py::arg("seed"),
        py::arg("bound"), py::arg("cells"));

  // acceptance suite
  m.def("acceptance",
        [](std::uint64_t seed, const std::string& only_model) {
          AcceptanceOptions opts;
          opts.seed = seed;
          opts.only_model = only_model;
          py::list out;
          for (const CriterionResult& r : run_acceptance(opts)) {
            py::dict e;
            e["number"] = r.number;
            e["name"] = r.name;
            e["passed"] = r.passed;
            e["detail"] = r.detail;
            out.append(e);
          }
          return out;
        },
        py::arg("seed") = 0, py::arg("only_model") = std::string());
}
