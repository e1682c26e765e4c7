// command line front end: every computation is exact, reports are JSON
// plus a short human table, and exit codes are 0 (ok), 1 (mathematical
// rejection), 2 (input error)
#include <cstdio>
#include <cstdlib>
#include <map>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "rlab/bigraded.hpp"
#include "rlab/connection.hpp"
#include "rlab/error.hpp"
#include "rlab/favb.hpp"
#include "rlab/io.hpp"
#include "rlab/models.hpp"
#include "rlab/multifilt.hpp"
#include "rlab/rees.hpp"
#include "rlab/verify.hpp"

using namespace rlab;

namespace {

struct Output {
  std::string path;
  bool json_stdout = false;

  // human lines go to stdout unless --json replaced them with the report
  void line(const std::string& s) const {
    if (!json_stdout) std::printf("%s\n", s.c_str());
  }
  void finish(const Json& report) const {
    if (!path.empty()) save_json_file(path, report);
    if (json_stdout) std::fputs(dump_json(report).c_str(), stdout);
  }
};

void add_output_flags(CLI::App* cmd, Output& out) {
  cmd->add_flag("--json", out.json_stdout,
                "print the JSON report on stdout instead of the table");
  cmd->add_option("-o,--output", out.path, "write the JSON report to a file");
}

std::string deg_str(const Deg& d) {
  std::string s = "(";
  for (std::size_t i = 0; i < d.size(); ++i)
    s += (i ? "," : "") + std::to_string(d[i]);
  return s + ")";
}

Json deg_dim_array(const std::map<Deg, std::size_t>& dims) {
  Json a = Json::array();
  for (const auto& [p, d] : dims) a.push_back({{"degree", p}, {"dim", d}});
  return a;
}

BigradedComplex load_complex(const std::string& file,
                             const std::string& model) {
  if (!model.empty() && !file.empty())
    throw InputError("give either an input file or --model, not both");
  if (!model.empty()) return instantiate_model(model);
  if (file.empty()) throw InputError("need an input file or --model");
  return bigraded_complex_from_json(load_json_file(file));
}

int cmd_split(const std::string& file, const Output& out) {
  MultiFilteredSpace v = multifiltration_from_json(load_json_file(file));
  auto dims = graded_dims(v);
  std::size_t total = 0;
  for (const auto& [p, d] : dims) total += d;
  bool ok = is_splittable(v);

  Json rep = report_envelope("split");
  rep["dim"] = v.dim();
  rep["graded_total"] = total;
  rep["graded_dims"] = deg_dim_array(dims);
  rep["splittable"] = ok;
  if (ok) {
    SplitIso iso = split_iso(v, compute_splitting(v));
    rep["splitting_type"] = deg_dim_array(iso.type);
  }

  if (ok) {
    out.line("splittable: yes");
    for (const auto& [p, d] : dims)
      out.line("  " + deg_str(p) + "  dim " + std::to_string(d));
  } else {
    out.line("splittable: no (graded total " + std::to_string(total) +
             " != dim " + std::to_string(v.dim()) + ")");
    for (const auto& [p, d] : dims)
      out.line("  " + deg_str(p) + "  dim " + std::to_string(d));
  }
  out.finish(rep);
  return ok ? 0 : 1;
}

int cmd_rees(const std::string& file, const std::string& fiber_csv,
             const std::string& window_str, const Output& out) {
  MultiFilteredSpace v = multifiltration_from_json(load_json_file(file));
  ReesModule r = [&] {
    if (window_str.empty()) return rees_module(v);
    auto dots = window_str.find("..");
    if (dots == std::string::npos)
      throw InputError("window must be lo..hi, e.g. -3..1");
    int lo = 0, hi = 0;
    try {
      lo = std::stoi(window_str.substr(0, dots));
      hi = std::stoi(window_str.substr(dots + 2));
    } catch (const std::exception&) {
      throw InputError("window must be lo..hi, e.g. -3..1");
    }
    if (lo > hi) throw InputError("window lo exceeds hi");
    return rees_module(v, Box{Deg(v.n(), lo), Deg(v.n(), hi)});
  }();

  Json rep = report_envelope("rees");
  rep["window"] = {{"lo", r.module.box().lo}, {"hi", r.module.box().hi}};
  rep["vector_bundle"] = is_vector_bundle(v);
  rep["module"] = graded_module_to_json(r.module);

  out.line("window " + deg_str(r.module.box().lo) + " .. " +
           deg_str(r.module.box().hi));
  for (std::size_t k = 0; k < r.module.box().size(); ++k) {
    Deg m = r.module.box().at(k);
    if (r.module.piece_dim(m) > 0)
      out.line("  " + deg_str(m) + "  dim " +
               std::to_string(r.module.piece_dim(m)));
  }

  if (!fiber_csv.empty()) {
    std::vector<Scalar> point;
    std::size_t start = 0;
    while (start <= fiber_csv.size()) {
      auto comma = fiber_csv.find(',', start);
      if (comma == std::string::npos) comma = fiber_csv.size();
      point.push_back(Scalar::parse(fiber_csv.substr(start, comma - start)));
      start = comma + 1;
    }
    if (point.size() != v.n())
      throw InputError("fiber point needs " + std::to_string(v.n()) +
                       " coordinates");
    Fiber fb = fiber(r.module, point);
    Json ja = Json::array();
    for (const Scalar& s : point) ja.push_back(s.str());
    rep["fiber"] = {{"point", ja},
                    {"total", fb.total},
                    {"graded", deg_dim_array(fb.graded)}};
    out.line("fiber total " + std::to_string(fb.total));
    for (const auto& [p, d] : fb.graded)
      out.line("  " + deg_str(p) + "  dim " + std::to_string(d));
  }
  out.finish(rep);
  return 0;
}

int cmd_strict(const std::string& file, std::size_t r, const Output& out) {
  FilteredMap f = filtered_map_from_json(load_json_file(file));
  if (r < 1 || r > f.source().n())
    throw InputError("r must be between 1 and the filtration count");
  bool strict = is_r_strict(f, r);
  ReesCokernel rc = rees_cokernel(f);

  Json rep = report_envelope("strict");
  rep["r"] = r;
  rep["strict"] = strict;
  rep["torsion_is_zero"] = rc.torsion.is_zero;
  rep["torsion_support_codim"] = rc.torsion.support_codim;

  out.line(std::string("r-strict: ") + (strict ? "yes" : "no") + " (r = " +
           std::to_string(r) + ")");
  out.line("torsion support codimension: " +
           std::to_string(rc.torsion.support_codim));
  out.finish(rep);
  return 0;
}

int cmd_coker(const std::string& file, const Output& out) {
  FilteredMap f = filtered_map_from_json(load_json_file(file));
  ReesCokernel rc = rees_cokernel(f);

  Json rep = report_envelope("coker");
  rep["coker"] = graded_module_to_json(rc.coker);
  rep["torsion"] = {{"is_zero", rc.torsion.is_zero},
                    {"support_codim", rc.torsion.support_codim},
                    {"pieces", deg_dim_array(rc.torsion.torsion_pieces)}};
  rep["target"] = graded_module_to_json(rc.phi_target);

  out.line(std::string("torsion: ") +
           (rc.torsion.is_zero ? "zero" : "nonzero"));
  for (const auto& [p, d] : rc.torsion.torsion_pieces)
    out.line("  " + deg_str(p) + "  dim " + std::to_string(d));
  out.line("support codimension: " +
           std::to_string(rc.torsion.support_codim));
  out.finish(rep);
  return 0;
}

int cmd_charts(const std::string& file, const Output& out) {
  MultiFilteredSpace v = multifiltration_from_json(load_json_file(file));
  ProjectiveCharts pc = projective_charts(v);

  Json rep = report_envelope("charts");
  Json charts = Json::array();
  for (std::size_t i = 0; i < pc.charts.size(); ++i)
    charts.push_back(
        {{"dropped", i}, {"type", deg_dim_array(pc.chart_types[i])}});
  rep["charts"] = charts;
  Json overlaps = Json::array();
  for (const OverlapCheck& o : pc.overlaps)
    overlaps.push_back({{"i", o.i}, {"j", o.j}, {"ok", o.ok}});
  rep["overlaps"] = overlaps;
  rep["all_overlaps_ok"] = pc.all_overlaps_ok();

  for (std::size_t i = 0; i < pc.charts.size(); ++i) {
    std::string row = "chart " + std::to_string(i) + " (drops filtration " +
                      std::to_string(i) + "):";
    for (const auto& [p, d] : pc.chart_types[i])
      row += " " + deg_str(p) + "x" + std::to_string(d);
    out.line(row);
  }
  out.line(std::string("overlaps: ") +
           (pc.all_overlaps_ok() ? "all match" : "MISMATCH"));
  out.finish(rep);
  return pc.all_overlaps_ok() ? 0 : 1;
}

int cmd_p1type(const std::string& file, const Output& out) {
  MultiFilteredSpace v = multifiltration_from_json(load_json_file(file));
  std::vector<int> type = p1_splitting_type(v);

  Json rep = report_envelope("p1type");
  rep["type"] = type;

  std::string s = "splitting type:";
  for (int a : type) s += " O(" + std::to_string(a) + ")";
  out.line(type.empty() ? "splitting type: zero bundle" : s);
  out.finish(rep);
  return 0;
}

int cmd_connection(const std::string& file, bool flatten, const Output& out) {
  EquivariantConnection c = connection_from_json(load_json_file(file));
  auto viol = connection_violations(c);
  if (!viol.empty()) throw InputError("invalid connection: " + viol.front());

  Json rep = report_envelope("connection");
  rep["arity"] = c.fiber.arity;
  rep["fiber_dim"] = c.fiber.dim();
  bool flat = is_flat(c);
  rep["flat"] = flat;
  std::size_t nz = 0;
  for (const auto& [key, m] : curvature(c))
    if (!m.is_zero()) ++nz;
  rep["curvature_components"] = nz;

  out.line(std::string("flat: ") + (flat ? "yes" : "no"));
  out.line("nonzero curvature components: " + std::to_string(nz));

  if (flatten) {
    Gauge g = trivialize_flat(c);
    Json terms = Json::array();
    for (const auto& [p, m] : g.terms)
      terms.push_back({{"degree", p}, {"matrix", matrix_to_json(m)}});
    rep["gauge"] = terms;
    out.line("trivializing gauge with " + std::to_string(g.terms.size()) +
             " terms");
  }
  out.finish(rep);
  return 0;
}

int cmd_specseq(const std::string& file, const std::string& model,
                std::size_t rmax, const Output& out) {
  BigradedComplex x = load_complex(file, model);
  SpectralSequenceTable ss = spectral_sequence(x, rmax < 1 ? 1 : rmax);

  Json rep = report_envelope("specseq");
  Json betti = Json::array();
  for (int k = 0; k <= 2 * static_cast<int>(x.bound()); ++k)
    betti.push_back(total_cohomology(x, k).dim);
  rep["betti"] = betti;
  rep["degeneration_page"] = ss.degeneration_page;
  Json pages = Json::object();
  for (const auto& [r, page] : ss.pages) {
    Json entries = Json::array();
    for (const auto& [pq, d] : page)
      entries.push_back({{"p", pq.first}, {"q", pq.second}, {"dim", d}});
    pages[std::to_string(r)] = entries;
  }
  rep["pages"] = pages;
  Json inf = Json::array();
  for (const auto& [pq, d] : ss.infinity)
    inf.push_back({{"p", pq.first}, {"q", pq.second}, {"dim", d}});
  rep["infinity"] = inf;

  std::string brow = "betti:";
  for (const auto& b : betti) brow += " " + b.dump();
  out.line(brow);
  out.line("degenerates at page " + std::to_string(ss.degeneration_page));
  for (const auto& [r, page] : ss.pages) {
    std::string row = "E_" + std::to_string(r) + ":";
    for (const auto& [pq, d] : page)
      row += " (" + std::to_string(pq.first) + "," +
             std::to_string(pq.second) + ")=" + std::to_string(d);
    out.line(row);
  }
  out.finish(rep);
  return 0;
}

Json int_dim_array(const std::map<int, std::size_t>& dims) {
  Json a = Json::array();
  for (const auto& [p, d] : dims) a.push_back({{"degree", p}, {"dim", d}});
  return a;
}

int cmd_favb(const std::string& file, const std::string& model, int k,
             const Output& out) {
  BigradedComplex x = load_complex(file, model);
  FAVBReport r = favb(x, k);

  Json rep = report_envelope("favb");
  rep["k"] = k;
  rep["module"] = graded_module_to_json(r.module);
  rep["fiber_generic"] = {{"dim", r.fiber_generic.dim},
                          {"matches", r.fiber_generic.matches}};
  rep["fiber_zero"] = {{"graded", int_dim_array(r.fiber_zero.graded)},
                       {"total", r.fiber_zero.total},
                       {"matches", r.fiber_zero.matches}};
  rep["base_change"] = {
      {"cohomology_dims", int_dim_array(r.base_change.cohomology_dims)},
      {"torsion_dims", int_dim_array(r.base_change.torsion_dims)},
      {"iso_verified", r.base_change.iso_verified}};

  out.line("fiber at h != 0: " + std::to_string(r.fiber_generic.dim) +
           (r.fiber_generic.matches ? "" : "  (MISMATCH)"));
  std::string zrow = "fiber at h = 0:";
  for (const auto& [p, d] : r.fiber_zero.graded)
    zrow += " " + std::to_string(p) + ":" + std::to_string(d);
  out.line(zrow + (r.fiber_zero.matches ? "" : "  (MISMATCH)"));
  out.line(std::string("base change: ") +
           (r.base_change.iso_verified ? "verified" : "FAILED"));
  out.finish(rep);
  return r.fiber_generic.matches && r.fiber_zero.matches &&
                 r.base_change.iso_verified
             ? 0
             : 1;
}

int cmd_favb2(const std::string& file, const std::string& model, int k,
              const Output& out) {
  BigradedComplex x = load_complex(file, model);
  Favb2Report r = favb2(x, k);
  std::vector<int> tw = twistor_type(x, k);

  Json rep = report_envelope("favb2");
  rep["k"] = k;
  Json dims = Json::array();
  for (const auto& [pq, d] : r.purity.dims)
    dims.push_back({{"p", pq.first}, {"q", pq.second}, {"dim", d}});
  rep["purity"] = {
      {"dims", dims}, {"total", r.purity.total}, {"pure", r.purity.pure}};
  rep["fiber_origin_matches"] = r.fiber_origin_matches;
  rep["hodge_slice_matches"] = r.hodge_slice_matches;
  rep["conjugate_slice_matches"] = r.conjugate_slice_matches;
  rep["twistor_type"] = tw;

  std::string prow = "purity defect:";
  for (const auto& [pq, d] : r.purity.dims)
    prow += " (" + std::to_string(pq.first) + "," +
            std::to_string(pq.second) + ")=" + std::to_string(d);
  out.line(prow + "  total " + std::to_string(r.purity.total) +
           (r.purity.pure ? " (pure)" : ""));
  std::string trow = "twistor type:";
  for (int a : tw) trow += " O(" + std::to_string(a) + ")";
  out.line(tw.empty() ? "twistor type: zero bundle" : trow);
  bool ok = r.fiber_origin_matches && r.hodge_slice_matches &&
            r.conjugate_slice_matches;
  out.line(std::string("slice checks: ") + (ok ? "verified" : "FAILED"));
  out.finish(rep);
  return ok ? 0 : 1;
}

int cmd_models_list(const Output& out) {
  Json rep = report_envelope("models");
  Json list = Json::array();
  for (const ModelDescriptor& d : builtin_models()) {
    Json params = Json::object();
    for (const auto& [key, value] : d.parameters) params[key] = value;
    list.push_back({{"name", d.name}, {"parameters", params},
                    {"note", d.note}});
    std::string row = d.name;
    for (const auto& [key, value] : d.parameters)
      row += " " + key + "=" + std::to_string(value);
    out.line(row + "  " + d.note);
  }
  rep["models"] = list;
  out.finish(rep);
  return 0;
}

int cmd_models_export(const std::string& name, const Output& out) {
  Json doc = bigraded_complex_to_json(instantiate_model(name));
  if (!out.path.empty())
    save_json_file(out.path, doc);
  else
    std::fputs(dump_json(doc).c_str(), stdout);
  return 0;
}

int cmd_verify_all(const std::string& model, const Output& out) {
  AcceptanceOptions opts;
  if (const char* env = std::getenv("RLAB_SEED"))
    opts.seed = std::strtoull(env, nullptr, 10);
  opts.only_model = model;

  Json rep = report_envelope("verify-all");
  rep["seed"] = opts.seed;
  Json criteria = Json::array();
  bool all = true;
  for (const CriterionResult& r : run_acceptance(opts)) {
    out.line(std::string("[") + (r.passed ? "PASS" : "FAIL") + "] " +
             std::to_string(r.number) + ". " + r.name + " (" + r.detail +
             ")");
    criteria.push_back({{"number", r.number},
                        {"name", r.name},
                        {"passed", r.passed},
                        {"detail", r.detail}});
    all = all && r.passed;
  }
  rep["criteria"] = criteria;
  rep["all_passed"] = all;
  out.finish(rep);
  return all ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"exact Rees-bundle calculus for multifiltered vector spaces"};
  app.require_subcommand(1);
  int code = 0;
  Output out;

  std::string in_file, model, fiber_csv, window_str, export_name;
  std::size_t strict_r = 1, rmax = 1;
  int k = 0;
  bool flatten = false;

  auto* split = app.add_subcommand("split", "splitting type of a space");
  split->add_option("file", in_file)->required();
  add_output_flags(split, out);
  split->callback([&] { code = cmd_split(in_file, out); });

  auto* rees = app.add_subcommand("rees", "Rees module of a space");
  rees->add_option("file", in_file)->required();
  rees->add_option("--fiber", fiber_csv, "evaluate the fiber at a1,..,an");
  rees->add_option("--window", window_str, "degree window lo..hi");
  add_output_flags(rees, out);
  rees->callback([&] { code = cmd_rees(in_file, fiber_csv, window_str, out); });

  auto* strict = app.add_subcommand("strict", "r-strictness of a map");
  strict->add_option("file", in_file)->required();
  strict->add_option("--r", strict_r, "strictness level")->required();
  add_output_flags(strict, out);
  strict->callback([&] { code = cmd_strict(in_file, strict_r, out); });

  auto* coker = app.add_subcommand("coker", "cokernel module and torsion");
  coker->add_option("file", in_file)->required();
  add_output_flags(coker, out);
  coker->callback([&] { code = cmd_coker(in_file, out); });

  auto* charts = app.add_subcommand("charts", "projective bundle charts");
  charts->add_option("file", in_file)->required();
  add_output_flags(charts, out);
  charts->callback([&] { code = cmd_charts(in_file, out); });

  auto* p1type = app.add_subcommand("p1type", "splitting type on P^1");
  p1type->add_option("file", in_file)->required();
  add_output_flags(p1type, out);
  p1type->callback([&] { code = cmd_p1type(in_file, out); });

  auto* conn = app.add_subcommand("connection", "flatness and curvature");
  conn->add_option("file", in_file)->required();
  conn->add_flag("--flatten", flatten, "compute a trivializing gauge");
  add_output_flags(conn, out);
  conn->callback([&] { code = cmd_connection(in_file, flatten, out); });

  auto* specseq = app.add_subcommand("specseq", "spectral sequence table");
  specseq->add_option("file", in_file);
  specseq->add_option("--model", model, "built-in model spec");
  specseq->add_option("--rmax", rmax, "pages to tabulate");
  add_output_flags(specseq, out);
  specseq->callback([&] { code = cmd_specseq(in_file, model, rmax, out); });

  auto* favb_cmd = app.add_subcommand("favb", "approximating bundle at k");
  favb_cmd->add_option("file", in_file);
  favb_cmd->add_option("--model", model, "built-in model spec");
  favb_cmd->add_option("--k", k, "total degree")->required();
  add_output_flags(favb_cmd, out);
  favb_cmd->callback([&] { code = cmd_favb(in_file, model, k, out); });

  auto* favb2_cmd = app.add_subcommand("favb2", "two-variable bundle at k");
  favb2_cmd->add_option("file", in_file);
  favb2_cmd->add_option("--model", model, "built-in model spec");
  favb2_cmd->add_option("--k", k, "total degree")->required();
  add_output_flags(favb2_cmd, out);
  favb2_cmd->callback([&] { code = cmd_favb2(in_file, model, k, out); });

  auto* models = app.add_subcommand("models", "built-in model registry");
  models->require_subcommand(1);
  auto* mlist = models->add_subcommand("list", "list model descriptors");
  add_output_flags(mlist, out);
  mlist->callback([&] { code = cmd_models_list(out); });
  auto* mexport = models->add_subcommand("export", "emit a model as a file");
  mexport->add_option("name", export_name)->required();
  add_output_flags(mexport, out);
  mexport->callback([&] { code = cmd_models_export(export_name, out); });

  auto* verify = app.add_subcommand("verify-all", "run the acceptance suite");
  verify->add_option("--model", model, "restrict model sweeps");
  add_output_flags(verify, out);
  verify->callback([&] { code = cmd_verify_all(model, out); });

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int c = app.exit(e);
    return c == 0 ? 0 : 2;
  } catch (const MathError& e) {
    std::fprintf(stderr, "error [%s]: %s\n", e.code().c_str(), e.what());
    return 1;
  } catch (const InputError& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 2;
  }
  return code;
}
