import numpy as np
import pytest
from scipy.optimize import brentq

from cmompa.benchmarks import TABLE, BenchmarkId, front_residual, make_benchmark, sample_true_pf
from cmompa.core import nondominated_indices

ALL = sorted(TABLE)
A, B, C = 0.98 / 49.98, 0.02, 50.0


def test_table_matches_problem_list():
    expected = {f"zdt{i}" for i in (1, 2, 3, 4, 6)} | {f"dtlz{i}" for i in range(1, 8)} | {f"wfg{i}" for i in range(2, 10)}
    assert set(TABLE) == expected
    for name in ALL:
        p = make_benchmark(name)
        assert (p.n_obj, p.dim) == TABLE[name]


def test_parse_ids():
    assert BenchmarkId.parse("zdt1") == BenchmarkId("ZDT", 1)
    assert BenchmarkId.parse(" WFG4 ").name == "wfg4"
    for bad in ("zdt5", "wfg1", "dtlz8", "foo", ""):
        with pytest.raises(ValueError):
            BenchmarkId.parse(bad)


def test_bounds():
    z4 = make_benchmark("zdt4")
    assert z4.lower[0] == 0 and z4.upper[0] == 1
    assert np.all(z4.lower[1:] == -5) and np.all(z4.upper[1:] == 5)
    w = make_benchmark("wfg4")
    assert np.array_equal(w.upper, 2.0 * np.arange(1, 13)) and np.all(w.lower == 0)
    assert np.all(make_benchmark("dtlz7").upper == 1)


def test_hand_evaluated_points():
    z1 = make_benchmark("zdt1")
    F, _ = z1.evaluate(np.vstack([np.zeros(30), np.r_[1.0, np.zeros(29)]]))
    assert np.allclose(F, [[0, 1], [1, 0]])
    d2 = make_benchmark("dtlz2")
    F, _ = d2.evaluate(np.r_[0.0, 0.0, np.full(10, 0.5)])
    assert np.allclose(F, [[1, 0, 0]], atol=1e-15)


@pytest.mark.parametrize("name", ["zdt1", "zdt2", "zdt4", "zdt6"])
def test_zdt_optimum_on_front(name):
    p = make_benchmark(name)
    X = np.zeros((50, p.dim))
    X[:, 0] = np.linspace(0, 1, 50)
    F, _ = p.evaluate(X)
    assert np.allclose(front_residual(name, F), 0, atol=1e-12)


@pytest.mark.parametrize("name", ["dtlz1", "dtlz2", "dtlz3", "dtlz4", "dtlz5", "dtlz6"])
def test_dtlz_optimum_on_front(name):
    p = make_benchmark(name)
    r = np.random.default_rng(0)
    X = np.full((50, p.dim), 0.0 if name == "dtlz6" else 0.5)
    X[:, :2] = r.random((50, 2))
    F, _ = p.evaluate(X)
    assert np.allclose(front_residual(name, F), 0, atol=1e-12)


@pytest.mark.parametrize("name", ["zdt1", "zdt2", "zdt4", "zdt6", "dtlz1", "dtlz2", "dtlz3", "dtlz4", "dtlz5", "dtlz6"])
def test_random_points_never_beat_front(name):
    p = make_benchmark(name)
    r = np.random.default_rng(1)
    X = p.lower + r.random((2000, p.dim)) * (p.upper - p.lower)
    F, _ = p.evaluate(X)
    assert np.all(front_residual(name, F) >= -1e-9)


def test_dtlz7_optimum_is_on_sampled_front():
    p = make_benchmark("dtlz7")
    x = np.zeros((1, p.dim))
    x[0, :2] = [0.0, 0.0]
    F, _ = p.evaluate(x)
    assert np.allclose(F, [[0, 0, 6]])


def _wfg_distance_optimum(name, pos, k=4, n=12):
    """Normalised optimal distance values, solved numerically one variable at a time."""
    y = np.empty(n)
    y[:k] = pos
    if name == "wfg8":
        for i in range(k, n):
            u = y[:i].mean()
            y[i] = brentq(lambda v: v ** (B + (C - B) * (A - (1 - 2 * u) * abs(np.floor(0.5 - u) + A))) - 0.35, 1e-12, 1.0)
    elif name == "wfg9":
        y[n - 1] = 0.35
        for i in range(n - 2, k - 1, -1):
            u = y[i + 1 :].mean()
            y[i] = brentq(lambda v: v ** (B + (C - B) * (A - (1 - 2 * u) * abs(np.floor(0.5 - u) + A))) - 0.35, 1e-12, 1.0)
    else:
        y[k:] = 0.35
    return y * 2.0 * np.arange(1, n + 1)


@pytest.mark.parametrize("name", [f"wfg{i}" for i in range(4, 10)])
def test_wfg_concave_optima_on_front(name):
    p = make_benchmark(name)
    r = np.random.default_rng(3)
    X = np.array([_wfg_distance_optimum(name, r.random(4)) for _ in range(40)])
    F, _ = p.evaluate(X)
    scaled = F / (2.0 * np.arange(1, 4))
    assert np.allclose(np.sum(scaled**2, axis=1), 1.0, atol=1e-9)


@pytest.mark.parametrize("name", [f"wfg{i}" for i in range(2, 10)])
def test_wfg_random_points_behind_front(name):
    p = make_benchmark(name)
    r = np.random.default_rng(4)
    F, _ = p.evaluate(p.lower + r.random((500, 12)) * (p.upper - p.lower))
    pf = sample_true_pf(name)
    # no evaluated point may dominate a true-front sample point
    for f in F:
        assert not np.any(np.all(f <= pf, axis=1) & np.any(f < pf - 1e-9, axis=1))


@pytest.mark.parametrize("name", ["wfg2", "wfg3"])
def test_wfg_optimum_on_sampled_front(name):
    p = make_benchmark(name)
    X = np.array([_wfg_distance_optimum(name, np.full(4, v)) for v in np.linspace(0, 1, 11)])
    F, _ = p.evaluate(X)
    pf = sample_true_pf(name)
    nd = nondominated_indices(F)
    gap = np.min(np.linalg.norm(F[nd][:, None] - pf[None], axis=2), axis=1)
    assert np.all(gap < 0.05)


def test_sample_sizes_and_identities():
    z1 = sample_true_pf("zdt1")
    assert len(z1) == 1000 and np.array_equal(z1[:, 1], 1 - np.sqrt(z1[:, 0]))
    d1 = sample_true_pf("dtlz1")
    assert np.allclose(d1.sum(axis=1), 0.5, atol=1e-9) and 4000 < len(d1) <= 5000
    d2 = sample_true_pf("dtlz2")
    assert np.allclose(np.sum(d2**2, axis=1), 1.0, atol=1e-9)
    with pytest.raises(ValueError):
        sample_true_pf("zdt1", 5)


@pytest.mark.parametrize("name", ALL)
def test_samples_are_mutually_nondominated(name):
    pf = sample_true_pf(name)
    assert len(pf) >= 10
    assert len(nondominated_indices(pf)) == len(pf)


def test_evaluators_are_pure():
    for name in ALL:
        p = make_benchmark(name)
        X = p.lower + np.random.default_rng(0).random((5, p.dim)) * (p.upper - p.lower)
        assert np.array_equal(p.evaluate(X)[0], p.evaluate(X.copy())[0])
