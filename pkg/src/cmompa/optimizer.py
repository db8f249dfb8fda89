"""Competitive multi-objective marine predators optimizer.

One iteration, given the archive ``A`` and predator matrix ``E``:

1. prey move (:func:`phase_update`) with Brownian, mixed or Levy steps
   depending on the stage of the run;
2. every moved prey gets one coordinate kicked by a Gaussian
   (:func:`gaussian_elite_perturbation`);
3. the moved and the kicked prey compete pairwise and losers learn from
   winners (:func:`competition_learning`);
4. the union of the archive and all new individuals is cut back to the
   archive capacity (:func:`elite_selection`) and ``E`` is rebuilt.

Random draw order within an iteration is fixed (phase update, perturbation,
competition, selection, predator rebuild) so that a seed reproduces a run
bit for bit.
"""

from __future__ import annotations

import math
import time
from dataclasses import dataclass, field
from typing import Callable, Optional

import numpy as np

from .core import Archive, Population, Problem, clamp_to_bounds, fast_nondominated_sort, nondominated_indices
from .movement import brownian_step, levy_step, make_rng, uniform_init
from .refpoints import das_dennis, default_divisions, reference_point_select


@dataclass(frozen=True)
class RunConfig:
    population_size: int = 100
    divisions: Optional[int] = None
    max_iter: int = 300
    theta: float = 0.5
    eta_m: float = 20.0
    mutation_prob: Optional[float] = None
    seed: int = 0
    record_history: bool = False

    def __post_init__(self):
        if self.population_size < 2:
            raise ValueError("population_size must be at least 2")
        if self.max_iter < 3:
            raise ValueError("max_iter must be at least 3")
        if not self.theta > 0:
            raise ValueError("theta must be positive")
        if self.divisions is not None and self.divisions < 1:
            raise ValueError("divisions must be at least 1")
        if self.mutation_prob is not None and not 0 <= self.mutation_prob <= 1:
            raise ValueError("mutation_prob must lie in [0, 1]")


@dataclass
class RunResult:
    archive: Archive
    reference_points: np.ndarray
    evaluations: int
    elapsed: float
    history: list = field(default_factory=list)

    @property
    def population(self) -> Population:
        return self.archive.members

    @property
    def F(self) -> np.ndarray:
        return self.archive.members.F

    @property
    def X(self) -> np.ndarray:
        return self.archive.members.X

    def feasible(self) -> Population:
        pop = self.archive.members
        return pop.take(np.flatnonzero(pop.feasible))


def stage(k: int, max_iter: int) -> int:
    """Stage (1, 2 or 3) of iteration ``k``; ``k`` counts from 1.

    Stage 1 is ``k < ceil(max_iter/3)``, stage 2 runs through
    ``floor(2*max_iter/3)`` inclusive, stage 3 is the remainder.
    """
    if k < math.ceil(max_iter / 3):
        return 1
    if k <= (2 * max_iter) // 3:
        return 2
    return 3


def gamma(k: float, max_iter: float) -> float:
    """Adaptive step factor ``(1 - k/k_max) ** (2k/k_max)``."""
    r = k / max_iter
    return (1.0 - r) ** (2.0 * r)


def build_predator_matrix(members: Population, rng: np.random.Generator, constrained: bool = False) -> np.ndarray:
    """Positions of the current elites, tiled to the archive size.

    The first non-domination level is repeated ``N_a // |elite|`` times and the
    remainder is filled with random elites (without replacement).
    """
    n = len(members)
    if n == 0:
        raise ValueError("cannot build a predator matrix from an empty archive")
    elite = nondominated_indices(members.F, members.CV if constrained else None)
    reps, rest = divmod(n, len(elite))
    rows = np.tile(elite, reps)
    if rest:
        rows = np.concatenate([rows, rng.choice(elite, size=rest, replace=False)])
    return members.X[rows].copy()


def phase_update(
    A: np.ndarray,
    E: np.ndarray,
    k: int,
    max_iter: int,
    theta: float,
    rng: np.random.Generator,
) -> np.ndarray:
    """New prey positions (unclamped) for iteration ``k``.

    Every random factor that appears twice in a step formula is drawn twice.
    """
    n, d = A.shape
    s = stage(k, max_iter)
    if s == 1:
        RB1 = brownian_step((n, d), rng)
        RB2 = brownian_step((n, d), rng)
        R = rng.random((n, d))
        S = RB1 * (E - RB2 * A)
        return A + theta * R * S
    g = gamma(k, max_iter)
    if s == 2:
        h = n // 2
        P = np.empty_like(A)
        RL1 = levy_step((h, d), rng)
        RL2 = levy_step((h, d), rng)
        R = rng.random((h, d))
        S = RL1 * (E[:h] - RL2 * A[:h])
        P[:h] = A[:h] + theta * R * S
        RB1 = brownian_step((n - h, d), rng)
        RB2 = brownian_step((n - h, d), rng)
        S = RB1 * (RB2 * E[h:] - A[h:])
        P[h:] = E[h:] + theta * g * S
        return P
    RL1 = levy_step((n, d), rng)
    RL2 = levy_step((n, d), rng)
    S = RL1 * (RL2 * E - A)
    return E + theta * g * S


def gaussian_elite_perturbation(X: np.ndarray, problem: Problem, rng: np.random.Generator) -> np.ndarray:
    """Copy of ``X`` with one random coordinate per row shifted by ``(ub - lb) * N(0, 1)``."""
    n, d = X.shape
    j = rng.integers(d, size=n)
    G = rng.standard_normal(n)
    out = X.copy()
    rows = np.arange(n)
    out[rows, j] += (problem.upper[j] - problem.lower[j]) * G
    return clamp_to_bounds(out, problem)


def sde_fitness(x: np.ndarray, pool: np.ndarray) -> float:
    """Shift-based density fitness of objective vector ``x`` within ``pool``.

    ``pool`` must contain ``x``; exactly one copy of it is excluded.
    """
    pool = np.asarray(pool, dtype=float)
    x = np.asarray(x, dtype=float)
    same = np.flatnonzero(np.all(pool == x, axis=1))
    if same.size == 0:
        raise ValueError("pool must contain x")
    others = np.delete(pool, same[0], axis=0)
    if len(others) == 0:
        raise ValueError("pool needs at least two members")
    shifted = np.maximum(0.0, others - x)
    return float(np.sqrt(np.sum(shifted**2, axis=1)).min())


def sde_fitness_all(F: np.ndarray) -> np.ndarray:
    """Shift-based density fitness of every row of ``F`` against all other rows."""
    n = F.shape[0]
    sq = np.zeros((n, n))
    for col in F.T:
        shift = np.maximum(0.0, col[None, :] - col[:, None])
        sq += shift * shift
    dist = np.sqrt(sq)
    np.fill_diagonal(dist, np.inf)
    return dist.min(axis=1)


def polynomial_mutation(
    X: np.ndarray,
    lower: np.ndarray,
    upper: np.ndarray,
    eta: float,
    prob: float,
    rng: np.random.Generator,
) -> np.ndarray:
    """Bounded polynomial mutation; each coordinate mutates with probability ``prob``."""
    n, d = X.shape
    site = rng.random((n, d)) < prob
    mu = rng.random((n, d))
    span = upper - lower
    Y = X.copy()
    delta1 = (Y - lower) / span
    delta2 = (upper - Y) / span
    power = 1.0 / (eta + 1.0)
    lo = site & (mu <= 0.5)
    hi = site & (mu > 0.5)
    xy = 1.0 - delta1[lo]
    val = 2.0 * mu[lo] + (1.0 - 2.0 * mu[lo]) * xy ** (eta + 1.0)
    Y[lo] += (val**power - 1.0) * np.broadcast_to(span, Y.shape)[lo]
    xy = 1.0 - delta2[hi]
    val = 2.0 * (1.0 - mu[hi]) + 2.0 * (mu[hi] - 0.5) * xy ** (eta + 1.0)
    Y[hi] += (1.0 - val**power) * np.broadcast_to(span, Y.shape)[hi]
    return np.clip(Y, lower, upper)


def competition_learning(
    P: Population,
    P_gep: Population,
    problem: Problem,
    config: RunConfig,
    rng: np.random.Generator,
    eta: Optional[np.ndarray] = None,
) -> np.ndarray:
    """Pairwise competition between ``P`` and ``P_gep``; returns ``2*len(P)`` new positions.

    Pairs are formed by random draws without replacement from each side. The
    member with the smaller fitness loses and moves a uniform fraction ``eta``
    of the way to the winner; loser and winner are then both mutated.
    Row ``2i`` of the result is the ``i``-th loser, row ``2i+1`` its winner.
    ``eta`` may be passed to pin the learning rates (one per pair).
    """
    n = len(P)
    if len(P_gep) != n:
        raise ValueError("competing populations must have equal size")
    fitness = sde_fitness_all(np.vstack([P.F, P_gep.F]))
    fit_p, fit_q = fitness[:n], fitness[n:]
    ip = rng.permutation(n)
    iq = rng.permutation(n)
    if eta is None:
        eta = rng.random(n)
    p_loses = fit_p[ip] < fit_q[iq]
    Xp, Xq = P.X[ip], P_gep.X[iq]
    loser = np.where(p_loses[:, None], Xp, Xq)
    winner = np.where(p_loses[:, None], Xq, Xp)
    loser = loser + np.asarray(eta)[:, None] * (winner - loser)
    out = np.empty((2 * n, P.X.shape[1]))
    out[0::2] = loser
    out[1::2] = winner
    prob = config.mutation_prob if config.mutation_prob is not None else 1.0 / problem.dim
    return polynomial_mutation(out, problem.lower, problem.upper, config.eta_m, prob, rng)


def elite_selection(
    Q: Population,
    capacity: int,
    refs: np.ndarray,
    rng: np.random.Generator,
    constrained: bool = False,
) -> Archive:
    """Keep the ``capacity`` best members of ``Q``.

    Whole non-domination levels are admitted while they fit; the level that
    overflows is truncated by reference-point niching.
    """
    if len(Q) < capacity:
        raise ValueError(f"need at least {capacity} candidates, got {len(Q)}")
    levels = fast_nondominated_sort(Q.F, Q.CV if constrained else None)
    chosen: list[np.ndarray] = []
    count = 0
    for level in levels:
        if count + len(level) <= capacity:
            chosen.append(level)
            count += len(level)
            if count == capacity:
                break
            continue
        selected = np.concatenate(chosen) if chosen else np.zeros(0, dtype=int)
        picks = reference_point_select(Q.F[selected], Q.F[level], capacity - count, refs, rng)
        chosen.append(level[picks])
        break
    idx = np.concatenate(chosen)
    return Archive(Q.take(idx), capacity)


def run(
    problem: Problem,
    config: RunConfig = RunConfig(),
    callback: Optional[Callable[[int, Archive], None]] = None,
) -> RunResult:
    """Optimise ``problem`` and return the final archive.

    Problems with a violation function are handled with constrained domination.
    ``callback(k, archive)`` is called after the initial selection (``k = 0``)
    and after every iteration.
    """
    start = time.perf_counter()
    rng = make_rng(config.seed)
    divisions = config.divisions if config.divisions is not None else default_divisions(problem.n_obj)
    refs = das_dennis(problem.n_obj, divisions)
    capacity = len(refs)
    if config.population_size < capacity:
        raise ValueError(
            f"population_size {config.population_size} is smaller than the archive size {capacity}"
        )
    constrained = problem.constrained

    pop = uniform_init(config.population_size, problem, rng)
    evaluations = len(pop)
    archive = elite_selection(pop, capacity, refs, rng, constrained)
    E = build_predator_matrix(archive.members, rng, constrained)
    history = []
    if config.record_history:
        history.append(archive.members.F.copy())
    if callback is not None:
        callback(0, archive)

    for k in range(1, config.max_iter + 1):
        A = archive.members
        X_p = clamp_to_bounds(phase_update(A.X, E, k, config.max_iter, config.theta, rng), problem)
        P = Population.evaluated(X_p, problem)
        P_gep = Population.evaluated(gaussian_elite_perturbation(P.X, problem, rng), problem)
        P_cml = Population.evaluated(competition_learning(P, P_gep, problem, config, rng), problem)
        evaluations += len(P) + len(P_gep) + len(P_cml)
        Q = Population.concat([A, P, P_gep, P_cml])
        archive = elite_selection(Q, capacity, refs, rng, constrained)
        E = build_predator_matrix(archive.members, rng, constrained)
        if config.record_history:
            history.append(archive.members.F.copy())
        if callback is not None:
            callback(k, archive)

    return RunResult(archive, refs, evaluations, time.perf_counter() - start, history)
