"""Structured reference points and reference-point niching.

``das_dennis`` builds the simplex lattice whose size fixes the archive capacity;
``reference_point_select`` is the niching step used to truncate the last
non-domination level that does not fit into the archive.
"""

from __future__ import annotations

from itertools import combinations
from math import comb

import numpy as np

DEFAULT_DIVISIONS = {2: 99, 3: 12}


def default_divisions(n_obj: int) -> int:
    try:
        return DEFAULT_DIVISIONS[n_obj]
    except KeyError:
        raise ValueError(f"no default number of divisions for {n_obj} objectives") from None


def archive_size(n_obj: int, divisions: int) -> int:
    return comb(n_obj + divisions - 1, divisions)


def das_dennis(n_obj: int, divisions: int) -> np.ndarray:
    """All points of the ``divisions``-lattice on the unit simplex in ``n_obj`` dimensions.

    Uses the stars-and-bars bijection: choosing ``n_obj - 1`` bar positions out of
    ``divisions + n_obj - 1`` slots gives one composition of ``divisions``.
    """
    if n_obj < 2:
        raise ValueError("das_dennis needs at least two objectives")
    if divisions < 1:
        raise ValueError("das_dennis needs at least one division")
    slots = divisions + n_obj - 1
    bars = np.array(list(combinations(range(slots), n_obj - 1)), dtype=int)
    padded = np.hstack([np.full((len(bars), 1), -1), bars, np.full((len(bars), 1), slots)])
    counts = np.diff(padded, axis=1) - 1
    return counts / divisions


def _intercepts(T: np.ndarray) -> np.ndarray:
    """Hyperplane intercepts through the extreme points of translated objectives ``T``.

    Falls back to the per-objective range when the extreme points are degenerate.
    """
    m = T.shape[1]
    fallback = T.max(axis=0)
    fallback = np.where(fallback > 1e-12, fallback, 1.0)
    # ASF on range-scaled values so the chosen extremes do not depend on units
    weights = np.full((m, m), 1e-6) + np.eye(m) * (1 - 1e-6)
    asf = np.max((T / fallback)[:, None, :] / weights[None, :, :], axis=2)
    picks = np.argmin(asf, axis=0)
    if len(np.unique(picks)) < m:
        return fallback
    extremes = T[picks]
    try:
        b = np.linalg.solve(extremes, np.ones(m))
    except np.linalg.LinAlgError:
        return fallback
    with np.errstate(divide="ignore", invalid="ignore"):
        a = 1.0 / b
    if not np.all(np.isfinite(a)) or np.any(a <= 1e-12):
        return fallback
    return a


def associate(F: np.ndarray, refs: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
    """Nearest reference line and perpendicular distance for each normalised row of ``F``."""
    unit = refs / np.linalg.norm(refs, axis=1, keepdims=True)
    proj = F @ unit.T
    sq = np.sum(F * F, axis=1, keepdims=True) - proj**2
    dist = np.sqrt(np.maximum(sq, 0.0))
    nearest = np.argmin(dist, axis=1)
    return nearest, dist[np.arange(len(F)), nearest]


def reference_point_select(
    F_selected: np.ndarray,
    F_last: np.ndarray,
    needed: int,
    refs: np.ndarray,
    rng: np.random.Generator,
) -> np.ndarray:
    """Pick ``needed`` rows of ``F_last`` by reference-point niching.

    Objectives of both sets are translated by their ideal point and scaled by
    the extreme-point intercepts, every solution is attached to its closest
    reference line, and reference points are then served least-crowded first.
    Returns indices into ``F_last``.
    """
    F_last = np.atleast_2d(np.asarray(F_last, dtype=float))
    n_last = F_last.shape[0]
    if needed < 0 or needed > n_last:
        raise ValueError(f"cannot select {needed} of {n_last} candidates")
    if needed == 0:
        return np.zeros(0, dtype=int)
    if needed == n_last:
        return np.arange(n_last)

    m = F_last.shape[1]
    F_selected = np.asarray(F_selected, dtype=float).reshape(-1, m)
    n_sel = F_selected.shape[0]
    S = np.vstack([F_selected, F_last])
    T = S - S.min(axis=0)
    Z = T / _intercepts(T)
    nearest, dist = associate(Z, refs)

    niche = np.bincount(nearest[:n_sel], minlength=len(refs))
    cand_ref = nearest[n_sel:]
    cand_dist = dist[n_sel:]
    pools: dict[int, list[int]] = {}
    for i in np.argsort(cand_dist, kind="stable"):
        pools.setdefault(int(cand_ref[i]), []).append(int(i))

    open_refs = np.zeros(len(refs), dtype=bool)
    open_refs[list(pools)] = True
    chosen = []
    while len(chosen) < needed:
        counts = np.where(open_refs, niche, np.iinfo(np.int64).max)
        ties = np.flatnonzero(counts == counts.min())
        j = int(ties[rng.integers(len(ties))]) if len(ties) > 1 else int(ties[0])
        pool = pools[j]
        if niche[j] == 0:
            pick = pool.pop(0)
        else:
            pick = pool.pop(int(rng.integers(len(pool))))
        chosen.append(pick)
        niche[j] += 1
        if not pool:
            open_refs[j] = False
    return np.asarray(chosen, dtype=int)
