"""ZDT, DTLZ and WFG test problems with sampled reference fronts.

>>> problem = make_benchmark("zdt1")
>>> problem.dim, problem.n_obj
(30, 2)
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from functools import partial

import numpy as np

from ..core import Problem, nondominated_indices
from ..refpoints import das_dennis
from . import dtlz, wfg, zdt

# (objectives, dimension) per problem
TABLE = {
    "zdt1": (2, 30),
    "zdt2": (2, 30),
    "zdt3": (2, 30),
    "zdt4": (2, 10),
    "zdt6": (2, 10),
    "dtlz1": (3, 7),
    "dtlz2": (3, 12),
    "dtlz3": (3, 12),
    "dtlz4": (3, 12),
    "dtlz5": (3, 12),
    "dtlz6": (3, 12),
    "dtlz7": (3, 22),
    **{f"wfg{i}": (3, 12) for i in range(2, 10)},
}
WFG_POSITION_VARS = 4


@dataclass(frozen=True)
class BenchmarkId:
    suite: str
    index: int

    def __post_init__(self):
        if self.name not in TABLE:
            raise ValueError(f"unknown benchmark {self.suite}{self.index}")

    @property
    def name(self) -> str:
        return f"{self.suite.lower()}{self.index}"

    @classmethod
    def parse(cls, text: str) -> "BenchmarkId":
        match = re.fullmatch(r"\s*(zdt|dtlz|wfg)(\d+)\s*", text, flags=re.IGNORECASE)
        if not match:
            raise ValueError(f"cannot parse benchmark id {text!r}")
        return cls(match.group(1).upper(), int(match.group(2)))

    def __str__(self) -> str:
        return self.name


def _as_id(bid) -> BenchmarkId:
    return bid if isinstance(bid, BenchmarkId) else BenchmarkId.parse(str(bid))


def make_benchmark(bid) -> Problem:
    bid = _as_id(bid)
    name = bid.name
    m, d = TABLE[name]
    lower = np.zeros(d)
    upper = np.ones(d)
    if bid.suite == "ZDT":
        fn = getattr(zdt, name)
        if name == "zdt4":
            lower[1:] = -5.0
            upper[1:] = 5.0
    elif bid.suite == "DTLZ":
        fn = partial(getattr(dtlz, name), m=m)
    else:
        fn = partial(getattr(wfg, name), m=m, k=WFG_POSITION_VARS)
        upper = 2.0 * np.arange(1, d + 1)
    return Problem(lower, upper, m, fn, name=name)


def _simplex_divisions(n_obj: int, target: int) -> int:
    from math import comb

    p = 1
    while comb(n_obj + p, p + 1) <= target:
        p += 1
    return p


def _grid(n_axis: int, dims: int) -> np.ndarray:
    axes = np.meshgrid(*[np.linspace(0.0, 1.0, n_axis)] * dims, indexing="ij")
    return np.column_stack([a.ravel() for a in axes])


def _filter(F: np.ndarray) -> np.ndarray:
    return F[nondominated_indices(F)]


def sample_true_pf(bid, n: int | None = None) -> np.ndarray:
    """Points on the analytic Pareto front, used as the IGD reference set.

    Defaults to 1000 points for bi-objective problems and about 5000 for
    three objectives. Disconnected fronts are sampled densely and filtered,
    so they return fewer points than requested.
    """
    bid = _as_id(bid)
    name = bid.name
    m, _ = TABLE[name]
    if n is None:
        n = 1000 if m == 2 else 5000
    if n < 10:
        raise ValueError("at least 10 reference points are required")

    if bid.suite == "ZDT":
        if name == "zdt3":
            return _filter(zdt.front(name, 20 * n))
        return zdt.front(name, n)

    if name in ("dtlz1", "dtlz2", "dtlz3", "dtlz4"):
        W = das_dennis(m, _simplex_divisions(m, n))
        if name == "dtlz1":
            return 0.5 * W
        return W / np.linalg.norm(W, axis=1, keepdims=True)
    if name in ("dtlz5", "dtlz6"):
        t = np.linspace(0.0, 1.0, n) * np.pi / 2
        F = np.column_stack([np.cos(t), np.cos(t), np.sqrt(2.0) * np.sin(t)])
        return F / np.linalg.norm(F, axis=1, keepdims=True)
    if name == "dtlz7":
        per_axis = int(np.ceil(np.sqrt(4 * n)))
        G = _grid(per_axis, m - 1)
        h = m - np.sum(G / 2.0 * (1.0 + np.sin(3.0 * np.pi * G)), axis=1)
        return _filter(np.column_stack([G, 2.0 * h]))

    if name in ("wfg2", "wfg3"):
        if name == "wfg3":
            P = np.column_stack([np.linspace(0.0, 1.0, n), np.zeros(n)])
            return wfg.front_from_position(name, P)
        per_axis = int(np.ceil(np.sqrt(4 * n)))
        return _filter(wfg.front_from_position(name, _grid(per_axis, m - 1)))
    W = das_dennis(m, _simplex_divisions(m, n))
    W = W / np.linalg.norm(W, axis=1, keepdims=True)
    return W * 2.0 * np.arange(1, m + 1)


def front_residual(name: str, F: np.ndarray) -> np.ndarray:
    """Signed distance-like residual of ``F`` from a closed-form front.

    Zero on the front, positive behind it (dominated side). Defined for the
    ZDT1/2/4/6 and DTLZ1-6 fronts.
    """
    name = _as_id(name).name
    F = np.atleast_2d(F)
    if name in ("zdt1", "zdt4"):
        return F[:, 1] - (1.0 - np.sqrt(np.clip(F[:, 0], 0, None)))
    if name in ("zdt2", "zdt6"):
        return F[:, 1] - (1.0 - F[:, 0] ** 2)
    if name == "dtlz1":
        return F.sum(axis=1) - 0.5
    if name in ("dtlz2", "dtlz3", "dtlz4", "dtlz5", "dtlz6"):
        return np.sqrt(np.sum(F**2, axis=1)) - 1.0
    raise ValueError(f"no closed-form front residual for {name}")


__all__ = ["BenchmarkId", "TABLE", "make_benchmark", "sample_true_pf", "front_residual"]
