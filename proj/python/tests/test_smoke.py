"""Smoke tests for the conecalc python module (plain asserts, no test deps)."""

import sys

import conecalc


def test_classify():
    s = conecalc.scenario("flat:3,2")
    assert s.dim == 3
    assert s.index == 2
    assert conecalc.classify(s, [0, 0, 0], [1, 0, 0]) == "FutureBoundary"
    assert conecalc.classify(s, [0, 0, 0], [1, 1, 0]) == "FutureTimelike"
    assert conecalc.classify(s, [0, 0, 0], [0, 0, 1]) == "Spacelike"


def test_interior_vector():
    s = conecalc.flat(3, 2)
    v = conecalc.interior_vector(s, [0, 0, 0])
    assert conecalc.classify(s, [0, 0, 0], v, 0.0) == "FutureTimelike"
    assert conecalc.strict_witness(s, [0, 0, 0], [1, 0, 0]) == 1


def test_flat_order():
    assert conecalc.leq(3, 2, [0, 0, 0], [1, 1, 1])
    assert not conecalc.leq(3, 2, [0, 0, 0], [1, 0, 2])
    assert conecalc.time_T([1, 2, 3], 2) == 3


def test_estimate():
    res = conecalc.estimate("flat:2,1", [0, 0], [0, 1], tau="T", h=0.25, r=2)
    assert abs(res["value"] - 1.0) <= 1e-12
    assert res["exact"] is False
    assert len(res["witness"]) >= 2

    oracle = conecalc.product_oracle([0, 0, 0], [1, 3, 4])
    assert oracle == 5.0


def test_domain():
    s = conecalc.scenario("notgh")
    assert not s.in_domain([0, 0, 0])
    assert s.in_domain([0, -0.5, -0.5])


def test_reach_and_diamond():
    box = [(-1.0, 1.0), (-1.0, 1.0)]
    fut = conecalc.reach("flat:2,1", [0, 0], direction="future", h=1.0, r=1, box=box)
    assert sorted(fut) == [[0.0, 0.0], [1.0, -1.0], [1.0, 0.0], [1.0, 1.0]]
    dia = conecalc.diamond("flat:2,1", [0, 0], [2, 0], h=1.0, r=1, box=[(0.0, 2.0), (-1.0, 1.0)])
    assert len(dia) == 5


def test_validate():
    assert conecalc.validate(conecalc.flat(3, 2), [[0, 0, 0], [1, -1, 0.5]])
    bad = conecalc.scenario("badframe:2,1")
    assert not conecalc.validate(bad, [[0, 0]])


def test_suite():
    names = conecalc.suite_names()
    assert "degenerate_tau" in names and len(names) == 15
    report = conecalc.run_suite("degenerate_tau", {"seed": 7, "k": 1, "jmax": 20})
    assert report["pass"] is True
    assert any(c["id"] == "j10_value" for c in report["checks"])


def main():
    tests = [v for k, v in sorted(globals().items()) if k.startswith("test_")]
    for test in tests:
        test()
        print(f"ok {test.__name__}")
    print(f"{len(tests)} smoke tests passed")


if __name__ == "__main__":
    sys.exit(main())
