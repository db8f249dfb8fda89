"""Front-quality indicators and the paired significance test."""

from __future__ import annotations

from math import erfc, sqrt

import numpy as np
from scipy.spatial.distance import cdist
from scipy.stats import rankdata

EXACT_WILCOXON_MAX_N = 25


def igd(approx: np.ndarray, reference: np.ndarray) -> float:
    """Mean distance from each reference point to its nearest approximation point."""
    approx = np.atleast_2d(np.asarray(approx, dtype=float))
    reference = np.atleast_2d(np.asarray(reference, dtype=float))
    if approx.size == 0 or reference.size == 0:
        raise ValueError("igd needs non-empty sets")
    if approx.shape[1] != reference.shape[1]:
        raise ValueError("approximation and reference sets differ in objective count")
    return float(cdist(reference, approx).min(axis=1).mean())


def _hv2d(P: np.ndarray, z: np.ndarray) -> float:
    P = P[np.lexsort((P[:, 1], P[:, 0]))]
    area = 0.0
    best = z[1]
    for f1, f2 in P:
        if f2 < best:
            area += (z[0] - f1) * (best - f2)
            best = f2
    return area


def _hv3d(P: np.ndarray, z: np.ndarray) -> float:
    P = P[np.argsort(P[:, 2], kind="stable")]
    levels = np.append(P[:, 2], z[2])
    volume = 0.0
    for i in range(len(P)):
        depth = levels[i + 1] - levels[i]
        if depth > 0:
            volume += depth * _hv2d(P[: i + 1, :2], z[:2])
    return volume


def hv(approx: np.ndarray, z) -> float:
    """Exact hypervolume dominated by ``approx`` and bounded by ``z`` (2 or 3 objectives).

    Points that do not strictly dominate ``z`` contribute nothing and are dropped.
    """
    z = np.asarray(z, dtype=float)
    P = np.asarray(approx, dtype=float).reshape(-1, z.size)
    P = P[np.all(P < z, axis=1)]
    if len(P) == 0:
        return 0.0
    if z.size == 1:
        return float(z[0] - P[:, 0].min())
    if z.size == 2:
        return float(_hv2d(P, z))
    if z.size == 3:
        return float(_hv3d(P, z))
    raise ValueError("exact hypervolume is implemented for up to three objectives")


def hv_reference(true_pf: np.ndarray) -> np.ndarray:
    """Reference point ``1.1 x`` the nadir of the true front."""
    return 1.1 * np.asarray(true_pf, dtype=float).max(axis=0)


def normalized_hv(approx: np.ndarray, true_pf: np.ndarray) -> float:
    """Hypervolume against ``1.1 x nadir`` divided by the volume of the reference box."""
    z = hv_reference(true_pf)
    return hv(approx, z) / float(np.prod(z))


def _exact_upper_tail(ranks2: np.ndarray, w2: int) -> tuple[float, float]:
    """P(W <= w) and P(W >= w) for the signed-rank sum, ranks given doubled (integers)."""
    total = int(ranks2.sum())
    counts = np.zeros(total + 1)
    counts[0] = 1.0
    for r in ranks2:
        shifted = np.zeros_like(counts)
        shifted[r:] = counts[: total + 1 - r]
        counts = counts + shifted
    counts /= counts.sum()
    return float(counts[: w2 + 1].sum()), float(counts[w2:].sum())


def wilcoxon_signed_rank(a, b, method: str = "auto") -> float:
    """Two-sided p-value of the Wilcoxon signed-rank test on paired samples.

    Zero differences are dropped and tied magnitudes share average ranks.
    ``method`` is ``"exact"``, ``"approx"`` (normal with tie and continuity
    correction) or ``"auto"`` (exact up to 25 non-zero pairs).
    """
    a = np.asarray(a, dtype=float)
    b = np.asarray(b, dtype=float)
    if a.shape != b.shape:
        raise ValueError("paired samples must have equal length")
    d = a - b
    d = d[d != 0]
    n = d.size
    if n == 0:
        return 1.0
    ranks = rankdata(np.abs(d))
    w_plus = float(ranks[d > 0].sum())
    if method == "auto":
        method = "exact" if n <= EXACT_WILCOXON_MAX_N else "approx"
    if method == "exact":
        ranks2 = np.rint(2 * ranks).astype(int)
        lower, upper = _exact_upper_tail(ranks2, int(round(2 * w_plus)))
        return min(1.0, 2.0 * min(lower, upper))
    if method != "approx":
        raise ValueError(f"unknown method {method!r}")
    mean = n * (n + 1) / 4.0
    _, tie_counts = np.unique(np.abs(d), return_counts=True)
    var = n * (n + 1) * (2 * n + 1) / 24.0 - np.sum(tie_counts**3 - tie_counts) / 48.0
    if var <= 0:
        return 1.0
    diff = abs(w_plus - mean)
    z = max(diff - 0.5, 0.0) / sqrt(var)
    return min(1.0, erfc(z / sqrt(2.0)))
