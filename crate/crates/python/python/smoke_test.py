"""Smoke test for the tropcon extension module.

Build and run from the workspace root:

    cargo build --release -p tropcon-python --features extension-module
    cp target/release/libtropcon_py.so crates/python/python/tropcon.so
    python3 crates/python/python/smoke_test.py
"""

from fractions import Fraction

import tropcon


def main():
    f = tropcon.Polynomial("min(0, x1)")
    g = tropcon.Polynomial("min(0, x1, 1 + 2*x1)")
    assert f.n == 1 and len(g) == 3
    assert g.terms[2] == (Fraction(1), [2])
    assert g.breakpoints() == (Fraction(-1), Fraction(0))

    report = tropcon.check_containment(f, g)
    assert report.contained and report.verdict == "contained"
    assert [c.t_max for c in report.certificates] == [1, 1, 2]
    assert report.t0 == 1
    assert tropcon.oracle_check(f, g) is None

    shifted = tropcon.Polynomial("min(0, 1 + x1)")
    report = tropcon.check_containment(shifted, f)
    assert not report
    assert report.failing_vertex == (1, 0)
    assert report.witness == (Fraction(-1),)
    assert report.witness_status == "found"

    line = tropcon.Polynomial("min(0, x1, x2)")
    square = tropcon.Polynomial("min(0, x1, x2, x1 + x2)")
    report = tropcon.check_containment(line, square, all_failing=True)
    assert report.witness == (-1, -1)
    assert len(report.failing_vertices) == 1
    assert line.on_hypersurface([-1, -1]) and not square.on_hypersurface(["-1", Fraction(-1)])
    assert square.evaluate([Fraction(1, 2), 3]) == 0

    newton = g.newton()
    assert newton.vertices == [(0, 0), (1, 0), (2, 1)]
    assert [(x.normal, x.offset, x.kind) for x in newton.facets] == [
        ([-1, 0], -2, "ineq"),
        ([-1, 1], -1, "ineq"),
        ([0, 1], 0, "ineq"),
        ([1, 0], 0, "ineq"),
    ]
    assert newton.contains([1, 5]) and not newton.contains([3, 5])

    same = tropcon.Polynomial.from_terms(1, [(Fraction(0), [0]), (0, [1])])
    assert same == f
    assert tropcon.Polynomial(f.to_json()) == f
    assert f.translate("1/2", [3]).terms[0] == (Fraction(1, 2), [3])

    for bad in ["min(0, x1 +)", "min(inf)"]:
        try:
            tropcon.Polynomial(bad)
        except tropcon.TropconError:
            pass
        else:
            raise AssertionError(f"accepted {bad!r}")
    try:
        f.evaluate([0.5])
    except TypeError:
        pass
    else:
        raise AssertionError("accepted a float")

    print("smoke test passed")


if __name__ == "__main__":
    main()
