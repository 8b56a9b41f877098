import json
import math

import pytest

fa = pytest.importorskip("fem_accuracy")


def test_basis_json_has_exact_nodes():
    basis = json.loads(fa.basis_json(1, 2))
    assert basis["size"] == 3
    assert basis["functions"][1]["node"] == ["1/2", "1/2"]


def test_default_constant():
    assert fa.script_c_k(1, 0, 1, 2.0) == pytest.approx(8.0 / 3.0)


def test_inadmissible_raises():
    with pytest.raises(fa.AdmissibilityError, match=r"inadmissible \(k=1, m=1, n=2, p=2\)"):
        fa.script_c_k(2, 1, 1, 2.0)
    assert issubclass(fa.AdmissibilityError, ValueError)


def test_law_through_half():
    hs = fa.h_star(1, 2, 3.0, 3.0)
    assert hs == 1.0
    assert fa.prob_law(hs, 1, 1.0) == 0.5
    assert fa.prob_law(hs, 1, 1.0, kind="heaviside") == 0.5


def test_sequence_asymptote():
    rows = fa.h_star_sequence(2, 1, 1, 2.0, 200)
    target = 1.0 / (math.e * math.pi)
    assert abs(rows[-1][2] - target) / target <= 0.05


def test_bounds_and_convergence():
    assert fa.point_bound_check(2, 3, 1)["pass"]
    assert fa.seminorm_bound_check(2, 2, 1, 2.0)["pass"]
    table = fa.convergence_study(2, 1, 2.0)
    assert table["bounds_hold"]
    assert abs(table["slope"] - 2.0) <= 0.15


def test_weak_star_limit_positive():
    limit, rows = fa.weak_star_test(2, 1, 1, 2.0, [30, 60])
    assert limit > 0
    assert rows[-1][3] < 1e-3
