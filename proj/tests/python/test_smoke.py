import math

import pytest

import gtzw

P = gtzw.Params(0.5, 0.3)


def test_dimension_matches_path_count():
    for lam in ([2, 0], [3, 1, -1], [1, 1, 0, -2]):
        assert gtzw.weyl_dimension(lam) == gtzw.count_paths_to(lam)
    assert gtzw.weyl_dimension([40, 20, 0, -20, -40]) > 2**32


def test_params_reject_integers():
    with pytest.raises(ValueError):
        gtzw.Params(1.0, 0.3)


def test_transition_law_sums_to_one():
    tr = gtzw.transition_distribution([1, -1], P, 1e-6)
    total = sum(math.exp(lp) for lp in tr["log_probs"])
    assert abs(total - 1.0) < 1e-12
    assert tr["tail_mass_bound"] <= 1e-6
    assert all(gtzw.interlaces([1, -1], lam) for lam in tr["support"][:50])
    assert gtzw.coherency_residual([2, 0, -1], P) < 1e-8


def test_sampling_is_seeded():
    a = gtzw.sample_path(20, P, seed=4, path_index=3)
    b = gtzw.sample_path(20, P, seed=4, path_index=3)
    assert a == b
    assert [len(s) for s in a] == list(range(1, 21))
    xi = gtzw.xi_indicators(a, 2)
    assert sum(xi) == gtzw.diagonal_length([max(x, 0) for x in a[-1]], 2)


def test_special_functions_and_multiplier():
    g = gtzw.gauss_2f1_at_one(0.5, 0.5, 3.0)
    assert abs(g - gtzw.series_2f1_at_one(0.5, 0.5, 3.0)) < 1e-10
    star = gtzw.multiplier_star(P, gtzw.Params(1.6, 0.3), 2, 10)
    assert star == pytest.approx(abs((1.6 - 2) / (0.5 - 2)) ** 2)
    choice = gtzw.find_separating_k(P, gtzw.Params(1.6, 0.3))
    assert choice["k"] == 2


def test_coupling_example():
    mass = gtzw.build_coupling([0.7, 0.3], [0.5, 0.5])
    table = {(m["a"], m["b"]): m["p"] for m in mass}
    assert table == pytest.approx({("0", "0"): 0.5, ("0", "1"): 0.2, ("1", "1"): 0.3})
    with pytest.raises(ArithmeticError):
        gtzw.build_coupling([0.2, 0.8], [0.5, 0.5])


def test_commands(tmp_path):
    code, summary = gtzw.run_growth({"levels": 50, "paths": 4, "out": str(tmp_path)})
    assert code == 0
    assert summary["tilde_violations"] == 0
    assert (tmp_path / "growth.csv").read_text().startswith("N,quantile_05")
    code, summary = gtzw.run_verify({"out": str(tmp_path)})
    assert code == 0 and summary["passed"]
    with pytest.raises(ValueError):
        gtzw.run_verify({"z": 2.0, "out": str(tmp_path)})
