"""End-to-end acceptance criteria, one test per criterion at its stated tolerance."""

import itertools
import time
from math import comb, erfc, sqrt

import numpy as np
import pytest

from cmompa.benchmarks import TABLE, make_benchmark, sample_true_pf
from cmompa.core import dominates, fast_nondominated_sort, nondominated_indices
from cmompa.metrics import _exact_upper_tail, hv, igd, normalized_hv, wilcoxon_signed_rank
from cmompa.movement import levy_sigma
from cmompa.optimizer import RunConfig, gamma, run
from cmompa.refpoints import das_dennis
from cmompa.wsn import (
    DEFAULT_TYPES,
    comm_probability,
    decode,
    encode,
    evaluate_batch,
    generate_scenario,
    lifetime_simulate,
    make_problem,
    sense_indicator,
)

pytestmark = pytest.mark.slow
RUNS = 10


def igd_runs(name, runs=RUNS, max_iter=300):
    problem = make_benchmark(name)
    pf = sample_true_pf(name)
    scores, hvs, times = [], [], []
    for seed in range(runs):
        res = run(problem, RunConfig(seed=seed, max_iter=max_iter))
        scores.append(igd(res.F, pf))
        hvs.append(normalized_hv(res.F, pf))
        times.append(res.elapsed)
    return np.array(scores), np.array(hvs), max(times)


@pytest.fixture(scope="module")
def zdt1_runs():
    return igd_runs("zdt1")


def test_criterion_1_zdt1_igd(zdt1_runs, acceptance):
    scores, _, slowest = zdt1_runs
    ok = scores.mean() <= 5.0e-3 and slowest <= 120
    acceptance("criterion 1", ok, f"ZDT1 mean IGD {scores.mean():.3e} (<= 5.0e-3), slowest run {slowest:.1f}s")


def test_criterion_2_zdt2_zdt6_igd(acceptance):
    means = {name: igd_runs(name)[0].mean() for name in ("zdt2", "zdt6")}
    ok = all(v <= 5.0e-3 for v in means.values())
    acceptance("criterion 2", ok, " ".join(f"{k} mean IGD {v:.3e}" for k, v in means.items()) + " (<= 5.0e-3)")


def test_criterion_3_multimodal_escape(acceptance):
    med = {name: np.median(igd_runs(name, max_iter=3000)[0]) for name in ("dtlz1", "dtlz3")}
    ok = med["dtlz1"] <= 3.0e-2 and med["dtlz3"] <= 8.0e-2
    acceptance("criterion 3", ok, f"DTLZ1 median IGD {med['dtlz1']:.3e} (<= 3.0e-2), DTLZ3 {med['dtlz3']:.3e} (<= 8.0e-2)")


def test_criterion_4_zdt1_normalized_hv(zdt1_runs, acceptance):
    _, hvs, _ = zdt1_runs
    ceiling = (1.21 - 1.0 / 3.0) / 1.21
    ok = hvs.mean() >= 0.715 and hvs.max() <= ceiling
    acceptance("criterion 4", ok, f"ZDT1 mean HV {hvs.mean():.4f} (>= 0.715), max {hvs.max():.4f} (<= {ceiling:.4f})")


def brute_force_levels(F):
    n = len(F)
    level = np.full(n, -1)
    remaining = set(range(n))
    k = 0
    while remaining:
        front = [i for i in remaining if not any(dominates(F[j], F[i]) for j in remaining if j != i)]
        level[front] = k
        remaining -= set(front)
        k += 1
    return level


def sort_levels(F):
    level = np.full(len(F), -1)
    for k, front in enumerate(fast_nondominated_sort(F)):
        level[front] = k
    return level


def test_criterion_5_oracles(acceptance):
    rng = np.random.default_rng(5)
    sort_ok = 0
    for _ in range(200):
        n, m = int(rng.integers(1, 51)), int(rng.integers(2, 4))
        # integer grid so ties and duplicates occur
        F = rng.integers(0, 6, size=(n, m)).astype(float)
        sort_ok += np.array_equal(sort_levels(F), brute_force_levels(F))

    hv_ok, grid_ok = 0, 0
    samples = 10**6
    mc = np.random.default_rng(2026)
    for _ in range(50):
        P = rng.random((int(rng.integers(1, 30)), 3))
        z = np.ones(3) * 1.1
        exact = hv(P, z)
        grid_ok += abs(exact - grid_hv(P, z)) <= 1e-12
        inside = 0
        for _ in range(10):
            U = mc.random((samples // 10, 3)) * z
            dominated = np.zeros(len(U), dtype=bool)
            for p in P:
                dominated |= np.all(U >= p, axis=1)
            inside += dominated.sum()
        frac = inside / samples
        est, sigma = frac * z.prod(), sqrt(frac * (1 - frac) / samples) * z.prod()
        hv_ok += abs(exact - est) <= 3 * sigma

    worst = max(wilcoxon_gap(n) for n in range(9, 21))
    ok = sort_ok == 200 and hv_ok == 50 and grid_ok == 50 and worst <= 0.02
    acceptance(
        "criterion 5",
        ok,
        f"sort {sort_ok}/200, HV within 3 sigma {hv_ok}/50, HV equals grid oracle {grid_ok}/50, Wilcoxon worst gap {worst:.4f} for 9 <= n <= 20",
    )


def grid_hv(P, z):
    """Exact volume by summing dominated cells of the grid spanned by all coordinates."""
    axes = [np.unique(np.append(P[:, j], z[j])) for j in range(3)]
    lo = np.meshgrid(*[a[:-1] for a in axes], indexing="ij")
    widths = np.meshgrid(*[np.diff(a) for a in axes], indexing="ij")
    corner = np.stack([g.ravel() for g in lo], axis=1)
    covered = np.zeros(len(corner), dtype=bool)
    for p in P:
        covered |= np.all(corner >= p, axis=1)
    return float(np.sum(np.prod([w.ravel() for w in widths], axis=0)[covered]))


def enumerate_p(d):
    """Two-sided exact p by listing all 2^n sign patterns."""
    ranks = np.argsort(np.argsort(np.abs(d))) + 1.0
    w = ranks[d > 0].sum()
    signs = np.array(list(itertools.product((0, 1), repeat=len(d))), dtype=bool)
    totals = signs.astype(float) @ ranks
    return min(1.0, 2 * min(np.mean(totals <= w), np.mean(totals >= w)))


def wilcoxon_gap(n):
    """Largest |normal approximation - exact| over every attainable statistic for n untied pairs."""
    ranks = np.arange(1, n + 1)
    worst = 0.0
    for w in range(n * (n + 1) // 2 + 1):
        # realise statistic w as a concrete sample and push it through the public API
        pos = np.zeros(n, dtype=bool)
        rest = w
        for r in ranks[::-1]:
            if r <= rest:
                pos[r - 1] = True
                rest -= r
        d = np.where(pos, ranks, -ranks).astype(float)
        exact = enumerate_p(d) if n <= 12 else wilcoxon_signed_rank(d, np.zeros(n), method="exact")
        worst = max(worst, abs(wilcoxon_signed_rank(d, np.zeros(n), method="approx") - exact))
    return worst


@pytest.mark.xfail(strict=True, reason="a normal approximation cannot match the exact law within 0.02 for n <= 8")
def test_criterion_5_wilcoxon_small_samples():
    gaps = {n: wilcoxon_gap(n) for n in range(2, 9)}
    assert max(gaps.values()) <= 0.02, gaps


def test_criterion_6_structural_invariants(acceptance):
    counts_ok = all(len(das_dennis(m, p)) == comb(m + p - 1, p) for m in range(2, 6) for p in range(1, 16))
    sizes_ok, det_ok = True, True
    for name in TABLE:
        problem = make_benchmark(name)
        sizes = []
        cfg = RunConfig(seed=11, max_iter=5)
        a = run(problem, cfg, callback=lambda k, arc: sizes.append(len(arc)))
        b = run(problem, cfg)
        capacity = len(a.reference_points)
        sizes_ok &= len(sizes) == 6 and all(s == capacity for s in sizes)
        det_ok &= np.array_equal(a.X, b.X) and np.array_equal(a.F, b.F)
    ok = counts_ok and sizes_ok and det_ok
    acceptance(
        "criterion 6",
        ok,
        f"das_dennis counts {counts_ok}, archive size each iteration {sizes_ok}, bitwise determinism on {len(TABLE)} benchmarks {det_ok}",
    )


def independent_check(assignment, sc):
    """Feasibility from the scalar model primitives, without the batch evaluator."""
    on = np.flatnonzero(assignment >= 0)
    if on.size == 0:
        return False
    cover = np.array(
        [[sense_indicator(i, t, assignment[i], sc) for t in range(len(sc.targets))] for i in on]
    )
    if cover.sum(axis=0).min() < sc.K:
        return False
    link = np.array(
        [[i != j and comm_probability(i, j, sc) >= sc.radio.threshold for j in on] for i in on]
    )
    if link.sum(axis=1).min() < sc.C:
        return False
    reach = np.eye(len(on), dtype=bool) | link
    for _ in range(len(on)):
        reach = (reach.astype(int) @ reach.astype(int)) > 0
    return bool(reach.all())


def test_criterion_7_wsn_brute_force(acceptance):
    start = time.perf_counter()
    sc = generate_scenario(box=(12, 12, 6), n_sites=6, n_targets=12, seed=0, types=DEFAULT_TYPES[:2])
    assert sc.n_sites * sc.n_types <= 12
    every = np.array(list(itertools.product(range(-1, sc.n_types), repeat=sc.n_sites)))
    ev = evaluate_batch(np.array([encode(a, sc) for a in every]), sc)
    feasible = ev.violation == 0
    F_all = np.column_stack([ev.cost, -ev.sigma_cov, -ev.sigma_conn])[feasible]
    pareto = np.unique(F_all[nondominated_indices(F_all)], axis=0)

    problem = make_problem(sc)
    found, verified, dominated, total = set(), True, 0, 0
    for seed in range(5):
        res = run(problem, RunConfig(seed=seed, max_iter=300))
        fe = res.feasible()
        for x in fe.X:
            verified &= independent_check(decode(x, sc), sc)
        G = np.unique(fe.F[nondominated_indices(fe.F)], axis=0)
        total += len(G)
        for g in G:
            dominated += bool(np.any(np.all(F_all <= g, axis=1) & np.any(F_all < g, axis=1)))
            found.update(i for i, p in enumerate(pareto) if np.allclose(p, g))
    recovery = len(found) / len(pareto)
    elapsed = time.perf_counter() - start
    ok = verified and dominated == 0 and recovery >= 0.8 and elapsed <= 300
    acceptance(
        "criterion 7",
        ok,
        f"independent feasibility {verified}, dominated {dominated}/{total}, "
        f"recovered {len(found)}/{len(pareto)} Pareto vectors, {elapsed:.0f}s",
    )


def test_criterion_8_trend(acceptance):
    base = generate_scenario(box=(20, 20, 10), n_sites=45, n_targets=50, seed=0)
    replicates = 100
    votes, rows = 0, []
    for seed in range(5):
        costs, conn = [], []
        for K in (1, 2, 3):
            sc = base.with_constraints(K, K)
            fe = run(make_problem(sc), RunConfig(seed=seed, max_iter=300)).feasible()
            if len(fe) == 0:
                costs.append(np.inf)
                conn.append(-np.inf)
                continue
            i = int(np.argmin(fe.F[:, 0]))
            assignment = decode(fe.X[i], sc)
            # common random numbers: replicate j uses the same stream for every (K, C)
            days = [
                lifetime_simulate(assignment, sc, rng=np.random.default_rng(1000 * seed + j)).connectivity_days
                for j in range(replicates)
            ]
            costs.append(float(fe.F[i, 0]))
            conn.append(float(np.mean(days)))
        good = costs[0] < costs[1] < costs[2] and conn[0] <= conn[1] <= conn[2]
        votes += good
        rows.append(f"seed {seed}: cost {costs} conn {np.round(conn, 1).tolist()}")
    print("\n".join(rows))
    acceptance("criterion 8", votes >= 3, f"ordering holds in {votes}/5 seeds (majority needed)")


def test_criterion_9_constants(acceptance):
    sigma = levy_sigma(1.5)
    g = (gamma(0, 300), gamma(300, 300), gamma(150, 300))
    ok = abs(sigma - 0.696575) <= 1e-5 and g == (1.0, 0.0, 0.5)
    acceptance("criterion 9", ok, f"sigma_c {sigma:.6f}, gamma(0, kmax, kmax/2) = {g}")
