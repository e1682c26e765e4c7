"""Smoke tests for the python module: exercises each operation once and
checks a few known values exactly."""

import sys
import tempfile
import os

import rlab


def check(cond, what):
    if not cond:
        raise AssertionError(what)


def main():
    # models and documents
    names = [m["name"] for m in rlab.models()]
    check(names == ["torus", "iwasawa", "d2", "random", "random-real"],
          "model roster")
    x = rlab.model("torus:g=1")
    check(rlab.kind(x.doc()) == "bigraded_complex", "document kind")
    check(x.bound == 1 and x.total_dim(1) == 2, "torus shape")

    y = rlab.BigradedComplex.from_doc(x.doc())
    check(y.doc() == x.doc(), "complex doc round-trip")
    with tempfile.TemporaryDirectory() as d:
        path = os.path.join(d, "torus.json")
        rlab.write_doc(path, x.doc())
        check(rlab.read_doc(path) == x.doc(), "file round-trip")

    # torus goldens: betti, degeneration, bundle type, twistor type
    check([rlab.betti(x, k) for k in range(3)] == [1, 2, 1], "torus betti")
    ss = rlab.spectral_sequence(x)
    check(ss["degeneration_page"] == 1, "torus degeneration page")
    check(ss["pages"][1] == {(0, 0): 1, (0, 1): 1, (1, 0): 1, (1, 1): 1},
          "torus first page")
    f1 = rlab.favb(x, 1)
    check(f1["fiber_generic"]["dim"] == 2, "torus generic fiber")
    check(f1["fiber_zero"]["graded"] == {0: 1, 1: 1}, "torus fiber at 0")
    check(f1["fiber_generic"]["matches"] and f1["fiber_zero"]["matches"],
          "torus fiber checks")
    check(f1["base_change"]["iso_verified"], "torus base change")
    check(rlab.verify_base_change(x, 1), "torus base change recheck")
    p = rlab.favb2(x, 1)
    check(p["purity"]["dims"] == {(0, 1): 1, (1, 0): 1}, "torus purity")
    check(p["purity"]["pure"], "torus pure")
    check(rlab.twistor_type(x, 1) == [1, 1], "torus twistor type")

    # iwasawa carries torsion in degree 2
    iw = rlab.model("iwasawa")
    check(rlab.betti(iw, 1) == 4, "iwasawa b1")
    f2 = rlab.favb(iw, 2)
    check(any(v > 0 for v in f2["base_change"]["torsion_dims"].values()),
          "iwasawa torsion")

    # splitting dichotomy on a seeded multifiltration
    v = rlab.random_multifiltration(11, 2, 4, -2, 2)
    check(v.n == 2 and v.dim == 4, "seeded space shape")
    gd = rlab.graded_dims(v)
    if rlab.is_splittable(v):
        check(sum(gd.values()) == v.dim, "graded total")
        iso = rlab.split_iso(v)
        check({k: n for k, n in iso["type"].items() if n}
              == {k: n for k, n in gd.items() if n}, "iso type")
        check(rlab.is_vector_bundle(v), "bundle when splittable")
    mf = rlab.MultiFilteredSpace.from_doc(v.doc())
    check(mf == v, "multifiltration doc round-trip")

    # Rees module, fibers, recovery
    r = rlab.rees(v)
    check(not r.violations(), "rees module axioms")
    generic = rlab.fiber(r, ["1"] * v.n)
    origin = rlab.fiber(r, [0] * v.n)
    check(generic["total"] == v.dim, "generic fiber dim")
    check(origin["total"] == sum(gd.values()), "origin fiber dim")
    back = rlab.recover(r)
    check(back == v, "recovery round-trip")
    m2 = rlab.GradedModule.from_doc(r.doc())
    check(m2.box == r.box and not m2.violations(), "module doc round-trip")

    # a non-strict map has cokernel torsion
    w1 = rlab.MultiFilteredSpace.from_doc({
        "kind": "multifiltration", "schema_version": 1, "dim": 1,
        "filtrations": [{"steps": [
            {"index": 0, "basis": [["1"]]}]}]})
    w2 = rlab.MultiFilteredSpace.from_doc({
        "kind": "multifiltration", "schema_version": 1, "dim": 1,
        "filtrations": [{"steps": [
            {"index": 2, "basis": [["1"]]}]}]})
    shift = rlab.FilteredMap(w1, w2, [["1"]])
    check(not rlab.is_r_strict(shift, 1), "jump shift is not strict")
    co = rlab.cokernel(shift)
    check(not co["torsion"]["is_zero"], "jump shift has torsion")
    check(co["torsion"]["support_codim"] == 1, "torsion support")
    check(rlab.kernel(shift).dim_at((0,)) == 0, "injective, no kernel")

    # charts and the P^1 splitting type
    pair = rlab.random_multifiltration(3, 2, 3, -1, 1)
    ch = rlab.charts(pair)
    check(len(ch["types"]) == 2 and ch["all_overlaps_ok"], "charts")
    check(sorted(rlab.p1_type(pair), reverse=True) == rlab.p1_type(pair),
          "p1 type sorted")

    # gauge a flat connection, then flatten it back
    c = rlab.Connection.from_doc({
        "kind": "connection", "schema_version": 1, "arity": 1,
        "tags": [[0], [1]], "coefficients": []})
    check(not c.violations() and rlab.is_flat(c), "trivial connection")
    g = rlab.gauge_transform(c, {(0,): [["1", "0"], ["0", "2"]],
                                 (1,): [["0", "3"], ["0", "0"]]})
    check(rlab.is_flat(g) and g.doc()["coefficients"], "gauged flat")
    back = rlab.flatten(g)
    check(back[(0,)] == [["1", "0"], ["0", "1"]], "unit constant term")
    flat2 = rlab.gauge_transform(g, back).doc()
    check(all(e == "0" for c in flat2["coefficients"]
              for row in c["matrix"]["entries"] for e in row),
          "flattened back to d")
    check(rlab.curvature(g) == {}, "flat curvature")

    # error taxonomy
    try:
        rlab.model("nope")
        check(False, "unknown model accepted")
    except ValueError:
        pass
    check(issubclass(rlab.InputError, ValueError), "InputError is a ValueError")
    lines = rlab.MultiFilteredSpace.from_doc({
        "kind": "multifiltration", "schema_version": 1, "dim": 2,
        "filtrations": [
            {"steps": [{"index": 0, "basis": [["1", "0"]]}]},
            {"steps": [{"index": 0, "basis": [["0", "1"]]}]},
            {"steps": [{"index": 0, "basis": [["1", "1"]]}]}]})
    check(not rlab.is_splittable(lines), "three lines do not split")
    try:
        rlab.splitting_type(lines)
        check(False, "splitting of three lines accepted")
    except rlab.MathError as e:
        check("not_splittable" in str(e), "error names its code")

    print("ok")


if __name__ == "__main__":
    sys.exit(main())
