import math

import pytest

import eqgb


def test_normalize_and_compare():
    assert eqgb.normalize("x[1,1] + x[1,2]") == "x[1,2] + x[1,1]"
    assert eqgb.compare("x[2,1]", "x[1,2]") == -1
    assert eqgb.compare("x[1,1]*x[1,2]", "x[1,2]") == 1


def test_pi_divides():
    w = eqgb.pi_divides("x[1,1]*x[1,2]", "x[1,2]*x[1,3]^2")
    assert w == {"shift": [(1, 2), (2, 3)], "cofactor": "x[1,3]"}
    assert eqgb.pi_divides("x[1,3]", "x[1,2]") is None
    assert eqgb.pi_divides("x[1,2]", "x[2,3]", diagonal=True) is not None


def test_errors():
    with pytest.raises(eqgb.ParseError):
        eqgb.normalize("x[1,")
    with pytest.raises(eqgb.RangeError):
        eqgb.reduce("x[3,1]", ["x[1,1]"], ring_width=2)
    with pytest.raises(eqgb.Error):
        eqgb.groebner(["0"])


def test_groebner():
    res = eqgb.groebner(["x[1,1] + x[1,2]"], certify=[3, 4, 5])
    assert res["status"] == "Completed"
    assert res["basis"] == ["x[1,1]"]
    assert res["certificate"] == {3: True, 4: True, 5: True}
    minor = "x[1,1]*x[2,2] - x[1,2]*x[2,1]"
    assert eqgb.groebner([minor], ring_width=2, max_degree=1)["status"] == "LimitExceeded"
    assert eqgb.reduce("x[1,2]*x[2,5] - x[1,5]*x[2,2]", [minor], ring_width=2) == "0"


def test_markov():
    for (r1, r2) in [(2, 2), (3, 3), (3, 4)]:
        moves = eqgb.markov_basis([[1], [2]], [r1, r2])
        assert len(moves) == math.comb(r1, 2) * math.comb(r2, 2)
        assert eqgb.verify_markov_fibers([[1], [2]], [r1, r2], moves, 3)
    n3 = eqgb.markov_basis([[1, 2], [1, 3], [2, 3]], [2, 2, 2])
    assert n3 == [[1, -1, -1, 1, -1, 1, 1, -1]]
    a = eqgb.design_matrix([[1], [2]], [2, 3])
    assert len(a) == 5 and all(len(row) == 6 for row in a)
    assert eqgb.is_decomposable([[1, 2], [2, 3]], 3)
    assert not eqgb.is_decomposable([[1, 2], [1, 3], [2, 3]], 3)


def test_chains():
    rep = eqgb.stabilize_orbit(["x[1,1] + x[1,2]"], n_max=4)
    assert rep["n0"] == 2
    assert [lvl["n"] for lvl in rep["levels"]] == [1, 2, 3, 4]
    ind = eqgb.independent_set([[1], [2]], [2, 0], [2], n_max=4)
    assert ind["n0"] == 2
    assert ind["within_bound"] is True
    assert all(c["kernel"] and c["ideal"] for c in ind["containment"])
