"""Smoke test for the dcoset Python bindings.

Build and install first:
    pip install --no-build-isolation -e crates/python
"""

import json
from fractions import Fraction

import dcoset


def test_polynomials():
    r = dcoset.Ring(["x", "y"], order="lex")
    x, y = r.var("x"), r.var("y")
    f = (x + 1) ** 2 - r.parse("x^2 + 2*x")
    assert f == 1 and str(f) == "1"
    assert (x * y - 2 * y).total_degree() == 2
    assert x.eval([Fraction(1, 2), 3]) == Fraction(1, 2)
    assert r.parse("x*y - 1/3").eval(["2", "1/2"]) == Fraction(2, 3)


def test_ideals():
    r = dcoset.Ring(["x", "y"], order="lex")
    i = r.ideal(["x^2 - y", "x*y - 1"])
    assert [str(g) for g in i.groebner_basis()] == ["y^3 - 1", "x - y^2"]
    assert i.contains("y^3 - 1")
    assert not i.contains("y - 1")
    assert str(i.reduce("x^3")) == "1"

    r3 = dcoset.Ring(["x", "y", "t"])
    cubic = r3.ideal(["x - t^2", "y - t^3"])
    assert str(cubic.eliminate(["t"])) == "(x^3 - y^2)"

    s = dcoset.Ring(["x", "y"])
    assert s.ideal(["x^2"]).radical_contains("x")
    assert s.ideal(["x*y", "x^2"]).saturate("x").is_unit()
    meet = s.ideal(["x"]).intersect(s.ideal(["y"]))
    assert meet == s.ideal(["x*y"])


def test_image_and_actions():
    mat = dcoset.Ring(["a11", "a12", "a21", "a22"])
    det_map = ["a21", "a22", "a11*a22 - a12*a21"]
    assert dcoset.image_closure(mat, det_map, ["b21", "b22", "d"]).is_zero()

    left_u = dcoset.GroupAction(mat, ["l"], ["a11 + l*a21", "a12 + l*a22", "a21", "a22"], [0])
    assert left_u.is_invariant("a11*a22 - a12*a21")
    assert not left_u.is_invariant("a11")
    assert left_u.same_orbit([0, 0, 1, 0], [5, 0, 1, 0])
    assert not left_u.same_orbit([1, 0, 0, 0], [2, 0, 0, 0])
    assert str(left_u.orbit_closure([1, 0, 0, 0])) == "(a22, a21, a12, a11 - 1)"


def test_scenarios():
    names = [name for name, _ in dcoset.catalog()]
    assert names == ["background", "example1", "example2", "example3"]
    for name in names:
        report = dcoset.verify(name)
        assert report.passed, str(report)
        assert report.failed_checks() == []
        assert json.loads(report.to_json())["verdict"] == "pass"
        assert not dcoset.verify(name, mutated=True).passed

    good = dcoset.oracle("example1", 3)
    assert good.passed and any("27/27 points agree" in d for _, _, d in good.checks)
    bad = dcoset.oracle("example1", 3, mutated=True)
    assert not bad.passed


def test_errors():
    r = dcoset.Ring(["x"])
    for bad in (lambda: r.parse("x^-1"), lambda: dcoset.verify("example9"), lambda: dcoset.oracle("example1", 4)):
        try:
            bad()
        except dcoset.DcosetError:
            pass
        else:
            raise AssertionError("expected DcosetError")


if __name__ == "__main__":
    for name, fn in sorted(globals().items()):
        if name.startswith("test_") and callable(fn):
            fn()
            print(f"ok {name}")
    print("all smoke tests passed")
