#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <sys/wait.h>

#include "rlab/connection.hpp"
#include "rlab/error.hpp"
#include "rlab/io.hpp"
#include "rlab/models.hpp"
#include "rlab/multifilt.hpp"
#include "rlab/rees.hpp"
#include "test_util.hpp"

#ifndef RLAB_CLI_PATH
#define RLAB_CLI_PATH ""
#endif

using namespace rlab;

namespace {

MultiFilteredSpace three_lines() {
  auto line = [](const char* x, const char* y) {
    return Filtration::from_steps(
        2, {{0, Subspace::full(2)}, {1, Subspace::span(2, mat({{x, y}}))}});
  };
  return MultiFilteredSpace(2,
                            {line("1", "0"), line("0", "1"), line("1", "1")});
}

std::filesystem::path tmp_dir() {
  auto dir = std::filesystem::temp_directory_path() / "rlab_io_cli";
  std::filesystem::create_directories(dir);
  return dir;
}

std::string write_doc(const std::string& name, const Json& j) {
  auto path = (tmp_dir() / name).string();
  save_json_file(path, j);
  return path;
}

struct RunResult {
  int code = -1;
  std::string out;
};

RunResult run_cli(const std::string& args) {
  static int counter = 0;
  auto capture = (tmp_dir() / ("stdout" + std::to_string(counter++))).string();
  std::string cmd =
      std::string(RLAB_CLI_PATH) + " " + args + " > " + capture +
      " 2>/dev/null";
  int rc = std::system(cmd.c_str());
  std::ifstream in(capture);
  std::stringstream ss;
  ss << in.rdbuf();
  return {WEXITSTATUS(rc), ss.str()};
}

bool modules_agree(const GradedModule& a, const GradedModule& b) {
  if (a.box() != b.box()) return false;
  const Box& box = a.box();
  for (std::size_t k = 0; k < box.size(); ++k) {
    Deg m = box.at(k);
    if (a.piece_dim(m) != b.piece_dim(m)) return false;
    for (std::size_t axis = 0; axis < box.axes(); ++axis) {
      if (!box.contains(deg_shift(m, axis, 1))) continue;
      if (!(a.mult(axis, m) == b.mult(axis, m))) return false;
    }
  }
  return true;
}

}  // namespace

TEST_CASE("multifiltration files round-trip exactly") {
  std::vector<MultiFilteredSpace> samples{three_lines()};
  for (std::uint64_t s = 0; s < 12; ++s)
    samples.push_back(random_multifiltration(7100 + s, 1 + s % 3, 1 + s % 4,
                                             -2, 2));
  for (const MultiFilteredSpace& v : samples) {
    Json j = multifiltration_to_json(v);
    CHECK(kind_of(j) == "multifiltration");
    CHECK(multifiltration_from_json(j) == v);
    CHECK(dump_json(multifiltration_to_json(multifiltration_from_json(j))) ==
          dump_json(j));
  }
}

TEST_CASE("filtered map files round-trip exactly") {
  for (std::uint64_t s = 0; s < 10; ++s) {
    FilteredMap f =
        random_filtered_map(7200 + s, 1 + s % 2, 1 + s % 4, 1 + s % 3, -1, 2);
    Json j = filtered_map_to_json(f);
    CHECK(kind_of(j) == "filtered_map");
    FilteredMap g = filtered_map_from_json(j);
    CHECK(g.source() == f.source());
    CHECK(g.target() == f.target());
    CHECK(g.matrix() == f.matrix());
    CHECK(dump_json(filtered_map_to_json(g)) == dump_json(j));
  }
}

TEST_CASE("bigraded complex files round-trip exactly") {
  for (const ModelDescriptor& d : builtin_models()) {
    BigradedComplex x = instantiate_model(d.name);
    Json j = bigraded_complex_to_json(x);
    CHECK(kind_of(j) == "bigraded_complex");
    BigradedComplex y = bigraded_complex_from_json(j);
    CHECK(y.bound() == x.bound());
    CHECK(y.has_real_structure() == x.has_real_structure());
    int top = 2 * static_cast<int>(x.bound());
    for (int k = 0; k <= top; ++k) {
      CHECK(y.total_dim(k) == x.total_dim(k));
      CHECK(y.total_differential(k) == x.total_differential(k));
    }
    CHECK(dump_json(bigraded_complex_to_json(y)) == dump_json(j));
  }
}

TEST_CASE("connection files round-trip exactly") {
  EquivariantConnection c;
  c.fiber = GradedFiber{2, {{0, 0}, {1, 1}, {1, 1}}};
  c.coeffs[{{1, 1}, 0}] = mat({{"0", "1", "2"}, {"0", "0", "0"},
                               {"0", "0", "0"}});
  c.coeffs[{{1, 1}, 1}] = mat({{"0", "-1", "1/2"}, {"0", "0", "0"},
                               {"0", "0", "0"}});
  Json j = connection_to_json(c);
  CHECK(kind_of(j) == "connection");
  EquivariantConnection d = connection_from_json(j);
  CHECK(d.fiber.arity == c.fiber.arity);
  CHECK(d.fiber.tags == c.fiber.tags);
  CHECK(d.coeffs == c.coeffs);
  CHECK(dump_json(connection_to_json(d)) == dump_json(j));
}

TEST_CASE("graded module dumps round-trip exactly") {
  for (std::uint64_t s = 0; s < 8; ++s) {
    GradedModule m =
        rees_module(random_multifiltration(7300 + s, 1 + s % 2, 1 + s % 4,
                                           -2, 2))
            .module;
    Json j = graded_module_to_json(m);
    CHECK(kind_of(j) == "graded_module_dump");
    GradedModule m2 = graded_module_from_json(j);
    CHECK(modules_agree(m, m2));
    CHECK(m2.violations().empty());
    CHECK(dump_json(graded_module_to_json(m2)) == dump_json(j));
  }
}

TEST_CASE("parse errors are typed and name the problem") {
  CHECK_THROWS_AS(parse_json_text("{ not json"), InputError);

  Json complex_doc = bigraded_complex_to_json(synthetic_d2_model());
  CHECK_THROWS_WITH_AS(multifiltration_from_json(complex_doc),
                       "expected kind 'multifiltration', got "
                       "'bigraded_complex'",
                       InputError);

  Json versioned = multifiltration_to_json(three_lines());
  versioned["schema_version"] = 2;
  CHECK_THROWS_WITH_AS(kind_of(versioned),
                       "unsupported schema_version (expected 1)", InputError);

  Json no_kind = Json{{"schema_version", 1}};
  CHECK_THROWS_WITH_AS(kind_of(no_kind),
                       "document: missing field 'kind'", InputError);

  // ascending steps: the violated pair is named
  Json bad = multifiltration_to_json(three_lines());
  std::swap(bad["filtrations"][0]["steps"][0]["basis"],
            bad["filtrations"][0]["steps"][1]["basis"]);
  CHECK_THROWS_WITH_AS(multifiltration_from_json(bad),
                       "filtration steps must descend: step at index 1 is "
                       "not contained in step at index 0",
                       InputError);

  Json ragged = Json{{"kind", "filtered_map"}, {"schema_version", 1}};
  ragged["source"] = multifiltration_to_json(three_lines());
  ragged["target"] = multifiltration_to_json(three_lines());
  Json rm = Json::object();
  rm["shape"] = Json::array({2u, 2u});
  rm["entries"] = Json::array({Json::array({"1", "0"}), Json::array({"1"})});
  ragged["matrix"] = rm;
  CHECK_THROWS_WITH_AS(filtered_map_from_json(ragged),
                       "matrix: row 1 must have 2 entries", InputError);

  EquivariantConnection c;
  c.fiber = GradedFiber{1, {{0}, {1}}};
  c.coeffs[{{1}, 0}] = mat({{"0", "1"}, {"0", "0"}});
  Json dup = connection_to_json(c);
  dup["coefficients"].push_back(dup["coefficients"][0]);
  CHECK_THROWS_WITH_AS(connection_from_json(dup),
                       "coefficient 1: duplicate (degree, axis) pair",
                       InputError);

  GradedModule m = rees_module(three_lines()).module;
  Json escaped = graded_module_to_json(m);
  escaped["pieces"][0]["degree"] = {9, 9, 9};
  CHECK_THROWS_WITH_AS(graded_module_from_json(escaped),
                       "piece degree lies outside the box", InputError);

  Json upside = graded_module_to_json(m);
  upside["box"] = Json{{"lo", {1, 1, 1}}, {"hi", {0, 0, 0}}};
  CHECK_THROWS_WITH_AS(graded_module_from_json(upside),
                       "box: lo must be componentwise at most hi", InputError);

  CHECK_THROWS_WITH_AS(load_json_file("/nonexistent/rlab.json"),
                       "cannot read file: /nonexistent/rlab.json", InputError);
}

TEST_CASE("cli splits, rejects, and reports") {
  if (!*RLAB_CLI_PATH) return;
  std::string lines = write_doc("three_lines.json",
                                multifiltration_to_json(three_lines()));

  RunResult r = run_cli("split " + lines);
  CHECK(r.code == 1);
  CHECK(r.out.find("splittable: no (graded total 3 != dim 2)") !=
        std::string::npos);

  RunResult j = run_cli("split " + lines + " --json");
  CHECK(j.code == 1);
  Json rep = parse_json_text(j.out);
  CHECK(rep.at("kind") == "report");
  CHECK(rep.at("command") == "split");
  CHECK(rep.at("splittable") == false);
  CHECK(rep.at("graded_total") == 3);
  CHECK(rep.at("dim") == 2);

  std::string good = write_doc(
      "splittable.json",
      multifiltration_to_json(random_multifiltration(7400, 2, 3, -1, 1)));
  RunResult ok = run_cli("split " + good + " --json");
  CHECK(ok.code == 0);
  CHECK(parse_json_text(ok.out).at("splittable") == true);
}

TEST_CASE("cli rees command evaluates fibers") {
  if (!*RLAB_CLI_PATH) return;
  std::string lines = write_doc("three_lines.json",
                                multifiltration_to_json(three_lines()));

  RunResult r = run_cli("rees " + lines + " --fiber 0,0,0 --json");
  CHECK(r.code == 0);
  Json rep = parse_json_text(r.out);
  CHECK(rep.at("vector_bundle") == false);
  CHECK(rep.at("fiber").at("total") == 3);
  CHECK(rep.at("module").at("kind") == "graded_module_dump");

  CHECK(run_cli("rees " + lines + " --fiber 1,1").code == 2);
  CHECK(run_cli("rees " + lines + " --window nope").code == 2);
  RunResult w = run_cli("rees " + lines + " --window -4..1 --json");
  CHECK(w.code == 0);
  CHECK(parse_json_text(w.out).at("window").at("lo") == Json({-4, -4, -4}));
}

TEST_CASE("cli strictness and cokernel commands") {
  if (!*RLAB_CLI_PATH) return;
  // jump shift: k at level 0 into k at level 1, identity map
  MultiFilteredSpace src(1, {Filtration::trivial(1, 0)});
  MultiFilteredSpace tgt(1, {Filtration::trivial(1, 1)});
  FilteredMap f(src, tgt, Matrix::identity(1));
  std::string file = write_doc("jump_shift.json", filtered_map_to_json(f));

  RunResult s = run_cli("strict " + file + " --r 1 --json");
  CHECK(s.code == 0);
  Json srep = parse_json_text(s.out);
  CHECK(srep.at("strict") == false);
  CHECK(srep.at("torsion_support_codim") == 1);

  CHECK(run_cli("strict " + file + " --r 2").code == 2);

  RunResult c = run_cli("coker " + file + " --json");
  CHECK(c.code == 0);
  Json crep = parse_json_text(c.out);
  CHECK(crep.at("torsion").at("is_zero") == false);
  CHECK(crep.at("torsion").at("pieces") ==
        Json::array({{{"degree", {-1}}, {"dim", 1}}}));
}

TEST_CASE("cli chart and p1 commands") {
  if (!*RLAB_CLI_PATH) return;
  std::string lines = write_doc("three_lines.json",
                                multifiltration_to_json(three_lines()));
  RunResult ch = run_cli("charts " + lines + " --json");
  CHECK(ch.code == 0);
  Json rep = parse_json_text(ch.out);
  CHECK(rep.at("all_overlaps_ok") == true);
  CHECK(rep.at("charts").size() == 3);

  // two of the lines form a P^1 pair with splitting type O(1) + O(1)
  MultiFilteredSpace pair(
      2, {three_lines().filtration(0), three_lines().filtration(1)});
  std::string pfile = write_doc("pair.json", multifiltration_to_json(pair));
  RunResult p1 = run_cli("p1type " + pfile + " --json");
  CHECK(p1.code == 0);
  CHECK(parse_json_text(p1.out).at("type") == Json({1, 1}));

  CHECK(run_cli("p1type " + lines).code == 2);
}

TEST_CASE("cli connection command flattens gauged connections") {
  if (!*RLAB_CLI_PATH) return;
  GradedFiber fib{1, {{0}, {1}}};
  EquivariantConnection trivial;
  trivial.fiber = fib;
  Gauge u;
  u.terms[{0}] = mat({{"1", "0"}, {"0", "2"}});
  u.terms[{1}] = mat({{"0", "3"}, {"0", "0"}});
  EquivariantConnection flat = gauge_transform(trivial, u);
  REQUIRE(!flat.coeffs.empty());
  std::string ffile = write_doc("flat.json", connection_to_json(flat));

  RunResult r = run_cli("connection " + ffile + " --json");
  CHECK(r.code == 0);
  CHECK(parse_json_text(r.out).at("flat") == true);

  RunResult g = run_cli("connection " + ffile + " --flatten --json");
  CHECK(g.code == 0);
  CHECK(parse_json_text(g.out).at("gauge").size() >= 1);

  EquivariantConnection curved;
  curved.fiber = GradedFiber{2, {{0, 0}, {1, 1}}};
  curved.coeffs[{{1, 1}, 0}] = mat({{"0", "1"}, {"0", "0"}});
  std::string cfile = write_doc("curved.json", connection_to_json(curved));
  RunResult flt = run_cli("connection " + cfile + " --flatten");
  CHECK(flt.code == 1);
  CHECK(run_cli("connection " + cfile).code == 0);
}

TEST_CASE("cli model commands and determinism") {
  if (!*RLAB_CLI_PATH) return;
  RunResult list = run_cli("models list --json");
  CHECK(list.code == 0);
  CHECK(parse_json_text(list.out).at("models").size() == 5);

  RunResult exp = run_cli("models export iwasawa");
  CHECK(exp.code == 0);
  Json doc = parse_json_text(exp.out);
  CHECK(kind_of(doc) == "bigraded_complex");
  std::string xfile = write_doc("iwasawa.json", doc);

  // a file input and the model spec give byte-identical reports
  RunResult a = run_cli("specseq --model iwasawa --json");
  RunResult b = run_cli("specseq " + xfile + " --json");
  CHECK(a.code == 0);
  CHECK(a.out == b.out);
  CHECK(parse_json_text(a.out).at("degeneration_page") == 2);

  RunResult d1 = run_cli("favb --model iwasawa --k 1 --json");
  RunResult d2 = run_cli("favb --model iwasawa --k 1 --json");
  CHECK(d1.code == 0);
  CHECK(d1.out == d2.out);
  Json favb_rep = parse_json_text(d1.out);
  CHECK(favb_rep.at("fiber_generic").at("dim") == 4);
  CHECK(favb_rep.at("fiber_zero").at("graded") ==
        Json::array({{{"degree", 0}, {"dim", 2}},
                     {{"degree", 1}, {"dim", 2}}}));
  CHECK(favb_rep.at("base_change").at("iso_verified") == true);

  CHECK(run_cli("specseq --model iwasawa " + xfile).code == 2);
  CHECK(run_cli("favb --model nosuch --k 1").code == 2);
  CHECK(run_cli("specseq --model d2 --rmax 4 --json").code == 0);
}

TEST_CASE("cli favb2 command and real structure rejection") {
  if (!*RLAB_CLI_PATH) return;
  RunResult t = run_cli("favb2 --model torus:g=1 --k 1 --json");
  CHECK(t.code == 0);
  Json rep = parse_json_text(t.out);
  CHECK(rep.at("purity").at("total") == 2);
  CHECK(rep.at("purity").at("pure") == true);
  CHECK(rep.at("twistor_type") == Json({1, 1}));

  CHECK(run_cli("favb2 --model d2 --k 1").code == 1);
}

TEST_CASE("cli input failures exit with code 2") {
  if (!*RLAB_CLI_PATH) return;
  CHECK(run_cli("split /nonexistent/v.json").code == 2);
  CHECK(run_cli("frobnicate").code == 2);
  CHECK(run_cli("").code == 2);
  auto garbled = (tmp_dir() / "garbled.json").string();
  std::ofstream(garbled) << "{ not json";
  CHECK(run_cli("split " + garbled).code == 2);
  std::string lines = write_doc("three_lines.json",
                                multifiltration_to_json(three_lines()));
  CHECK(run_cli("strict " + lines + " --r 1").code == 2);
}
