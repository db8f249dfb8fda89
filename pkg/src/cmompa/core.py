"""Shared types, Pareto dominance and non-dominated sorting.

Everything in the package minimises. Problems whose natural objectives are
maximised (the WSN coverage and connection degrees) negate them at evaluation.

Populations are stored column-wise as numpy arrays (positions ``X``, objectives
``F`` and constraint violations ``CV``) because every operator in the optimizer
works on whole populations at once; :class:`Individual` is the per-row view used
by the scalar predicates and by callers that want one solution at a time.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Callable, Optional, Sequence

import numpy as np

ObjectiveFn = Callable[[np.ndarray], np.ndarray]
ViolationFn = Callable[[np.ndarray], np.ndarray]


class EvaluationError(RuntimeError):
    """Raised when a problem evaluator returns non-finite or malformed output."""


@dataclass(frozen=True)
class Problem:
    """A box-constrained multi-objective minimisation problem.

    ``objectives`` maps a batch of positions ``(n, d)`` to objective values
    ``(n, m)``. ``violation`` maps the same batch to non-negative constraint
    violations ``(n,)``; leave it ``None`` for unconstrained problems.
    """

    lower: np.ndarray
    upper: np.ndarray
    n_obj: int
    objectives: ObjectiveFn
    violation: Optional[ViolationFn] = None
    name: str = "problem"

    def __post_init__(self):
        lower = np.asarray(self.lower, dtype=float).ravel()
        upper = np.asarray(self.upper, dtype=float).ravel()
        if lower.shape != upper.shape or lower.size == 0:
            raise ValueError("lower and upper bounds must be non-empty and of equal length")
        if not np.all(lower < upper):
            raise ValueError("every lower bound must be strictly below its upper bound")
        if self.n_obj < 1:
            raise ValueError("n_obj must be positive")
        lower.setflags(write=False)
        upper.setflags(write=False)
        object.__setattr__(self, "lower", lower)
        object.__setattr__(self, "upper", upper)

    @property
    def dim(self) -> int:
        return self.lower.size

    @property
    def constrained(self) -> bool:
        return self.violation is not None

    def evaluate(self, X: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
        """Evaluate a batch of positions, returning ``(F, CV)``.

        Raises :class:`EvaluationError` on NaN/inf or shape mismatches; a broken
        evaluator must never be silently ranked.
        """
        X = np.atleast_2d(np.asarray(X, dtype=float))
        F = np.asarray(self.objectives(X), dtype=float)
        if F.shape != (X.shape[0], self.n_obj):
            raise EvaluationError(
                f"{self.name}: objectives returned shape {F.shape}, expected {(X.shape[0], self.n_obj)}"
            )
        if not np.all(np.isfinite(F)):
            bad = np.flatnonzero(~np.all(np.isfinite(F), axis=1))
            raise EvaluationError(f"{self.name}: non-finite objectives for rows {bad[:5].tolist()}")
        if self.violation is None:
            CV = np.zeros(X.shape[0])
        else:
            CV = np.asarray(self.violation(X), dtype=float).reshape(-1)
            if CV.shape != (X.shape[0],) or not np.all(np.isfinite(CV)) or np.any(CV < 0):
                raise EvaluationError(f"{self.name}: constraint violation must be finite and >= 0")
        return F, CV


@dataclass(frozen=True)
class Individual:
    position: np.ndarray
    objectives: np.ndarray
    violation: float = 0.0

    @property
    def feasible(self) -> bool:
        return self.violation == 0


@dataclass
class Population:
    """Row-aligned positions, objectives and violations of a set of solutions."""

    X: np.ndarray
    F: np.ndarray
    CV: np.ndarray = field(default=None)

    def __post_init__(self):
        self.X = np.atleast_2d(np.asarray(self.X, dtype=float))
        self.F = np.atleast_2d(np.asarray(self.F, dtype=float))
        if self.CV is None:
            self.CV = np.zeros(self.X.shape[0])
        self.CV = np.asarray(self.CV, dtype=float).reshape(-1)
        if not (self.X.shape[0] == self.F.shape[0] == self.CV.shape[0]):
            raise ValueError("X, F and CV must have the same number of rows")

    @classmethod
    def evaluated(cls, X: np.ndarray, problem: Problem) -> "Population":
        F, CV = problem.evaluate(X)
        return cls(X, F, CV)

    @classmethod
    def concat(cls, pops: Sequence["Population"]) -> "Population":
        return cls(
            np.vstack([p.X for p in pops]),
            np.vstack([p.F for p in pops]),
            np.concatenate([p.CV for p in pops]),
        )

    def __len__(self) -> int:
        return self.X.shape[0]

    def __getitem__(self, i: int) -> Individual:
        return Individual(self.X[i].copy(), self.F[i].copy(), float(self.CV[i]))

    def take(self, idx) -> "Population":
        idx = np.asarray(idx, dtype=int)
        return Population(self.X[idx], self.F[idx], self.CV[idx])

    def copy(self) -> "Population":
        return Population(self.X.copy(), self.F.copy(), self.CV.copy())

    @property
    def feasible(self) -> np.ndarray:
        return self.CV == 0


@dataclass
class Archive:
    """The fixed-capacity elite set carried between iterations."""

    members: Population
    capacity: int

    def __post_init__(self):
        if self.capacity < 1:
            raise ValueError("archive capacity must be positive")
        if len(self.members) > self.capacity:
            raise ValueError(f"archive holds {len(self.members)} members, capacity is {self.capacity}")

    def __len__(self) -> int:
        return len(self.members)


def dominates(a, b) -> bool:
    """Pareto dominance for minimisation: ``a`` no worse everywhere, better somewhere."""
    a = np.asarray(a, dtype=float)
    b = np.asarray(b, dtype=float)
    if a.shape != b.shape:
        raise ValueError(f"objective vectors differ in length: {a.shape} vs {b.shape}")
    return bool(np.all(a <= b) and np.any(a < b))


def constrained_dominates(a: Individual, b: Individual) -> bool:
    """Feasibility-first dominance.

    Feasible beats infeasible; two infeasible solutions compare by violation;
    two feasible ones by Pareto dominance.
    """
    if a.violation == 0 and b.violation == 0:
        return dominates(a.objectives, b.objectives)
    if a.violation > 0 and b.violation > 0:
        return a.violation < b.violation
    return a.violation == 0 and b.violation > 0


def dominance_matrix(F: np.ndarray, CV: Optional[np.ndarray] = None) -> np.ndarray:
    """Boolean ``(n, n)`` matrix with ``D[i, j]`` true iff row ``i`` dominates row ``j``.

    With ``CV`` given the relation is constrained domination.
    """
    F = np.asarray(F, dtype=float)
    n = F.shape[0]
    worse = np.zeros((n, n), dtype=bool)
    better = np.zeros((n, n), dtype=bool)
    for col in F.T:
        worse |= col[:, None] > col[None, :]
        better |= col[:, None] < col[None, :]
    D = better & ~worse
    if CV is not None:
        CV = np.asarray(CV, dtype=float)
        feas = CV == 0
        if not feas.all():
            both_feas = feas[:, None] & feas[None, :]
            both_infeas = ~feas[:, None] & ~feas[None, :]
            D = (
                (both_feas & D)
                | (both_infeas & (CV[:, None] < CV[None, :]))
                | (feas[:, None] & ~feas[None, :])
            )
    return D


def fast_nondominated_sort(F: np.ndarray, CV: Optional[np.ndarray] = None) -> list[np.ndarray]:
    """Split rows of ``F`` into non-domination levels.

    Returns a list of index arrays, best level first. Pass ``CV`` to sort under
    constrained domination instead of plain Pareto dominance.
    """
    F = np.atleast_2d(np.asarray(F, dtype=float))
    n = F.shape[0]
    if n == 0:
        return []
    D = dominance_matrix(F, CV)
    dominated_by = D.sum(axis=0)
    assigned = np.zeros(n, dtype=bool)
    levels = []
    current = np.flatnonzero(dominated_by == 0)
    while current.size:
        levels.append(current)
        assigned[current] = True
        dominated_by = dominated_by - D[current].sum(axis=0)
        current = np.flatnonzero((dominated_by == 0) & ~assigned)
    return levels


def nondominated_indices(F: np.ndarray, CV: Optional[np.ndarray] = None) -> np.ndarray:
    """Indices of the first non-domination level."""
    F = np.atleast_2d(np.asarray(F, dtype=float))
    if F.shape[0] == 0:
        return np.zeros(0, dtype=int)
    D = dominance_matrix(F, CV)
    return np.flatnonzero(~D.any(axis=0))


def clamp_to_bounds(X: np.ndarray, problem: Problem) -> np.ndarray:
    """Project positions onto the problem's box (works for one row or a batch)."""
    return np.clip(X, problem.lower, problem.upper)
