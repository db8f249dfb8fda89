"""Coverage, communication and cost models of a heterogeneous 3-D sensor deployment.

A deployment is an integer array with one entry per site: the 0-based sensor
type placed there, or ``EMPTY``. Relaxed solutions are real matrices of shape
``(sites, types)`` (or their row-major flattening) with entries in ``[0, 1]``.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from ..core import Problem
from .scenario import DeploymentScenario, Radio

EMPTY = -1


@dataclass(frozen=True)
class CoverageStats:
    rate: float
    k_cov: np.ndarray
    sigma_cov: float


@dataclass(frozen=True)
class ConnectivityStats:
    sigma_conn: float
    degrees: np.ndarray
    connected: bool


def _relaxed(H, scenario: DeploymentScenario) -> np.ndarray:
    H = np.asarray(H, dtype=float)
    if H.size != scenario.dim:
        raise ValueError(f"relaxed solution has {H.size} entries, scenario needs {scenario.dim}")
    return H.reshape(scenario.n_sites, scenario.n_types)


def decode(H, scenario: DeploymentScenario) -> np.ndarray:
    """Turn a relaxed solution into a deployment.

    A site hosts a node when its row sum rounds (half up) to at least one; the
    node's type is the row's largest entry, lowest index on ties.
    """
    H = _relaxed(H, scenario)
    deployed = np.floor(H.sum(axis=1) + 0.5) >= 1
    return np.where(deployed, H.argmax(axis=1), EMPTY)


def encode(assignment, scenario: DeploymentScenario) -> np.ndarray:
    """Binary relaxed matrix (flattened) representing ``assignment``."""
    assignment = np.asarray(assignment, dtype=int)
    H = np.zeros((scenario.n_sites, scenario.n_types))
    on = assignment != EMPTY
    H[np.flatnonzero(on), assignment[on]] = 1.0
    return H.ravel()


def sense_indicator(site: int, target: int, type_: int, scenario: DeploymentScenario) -> int:
    """1 if a node of ``type_`` at ``site`` senses ``target`` (boundary inclusive)."""
    d = np.linalg.norm(scenario.site_xyz[site] - scenario.targets[target])
    return int(d <= scenario.types[type_].sensing_radius)


def coverage_stats(assignment, scenario: DeploymentScenario) -> CoverageStats:
    assignment = np.asarray(assignment, dtype=int)
    on = np.flatnonzero(assignment != EMPTY)
    k_cov = scenario.sense[on, assignment[on]].sum(axis=0) if on.size else np.zeros(scenario.n_targets, dtype=int)
    k_cov = np.asarray(k_cov, dtype=int)
    return CoverageStats(float(np.mean(k_cov > 0)), k_cov, float(k_cov.mean()))


def comm_probability_at(distance, radio: Radio):
    """Probability of a usable link at ``distance`` (array-friendly)."""
    d = np.asarray(distance, dtype=float)
    sure = radio.comm_range - radio.uncertainty
    b = np.maximum(d - sure, 0.0)
    p = np.where(d <= sure, 1.0, np.exp(-radio.lambda1 * b**radio.lambda2))
    p = np.where(d - radio.comm_range < radio.uncertainty, p, 0.0)
    return p if p.ndim else float(p)


def comm_probability(site_a: int, site_b: int, scenario: DeploymentScenario) -> float:
    if site_a == site_b:
        raise ValueError("communication probability needs two distinct sites")
    return comm_probability_at(scenario.site_distance[site_a, site_b], scenario.radio)


def _dfs_connected(adjacency: np.ndarray) -> bool:
    n = adjacency.shape[0]
    if n <= 1:
        return True
    seen = np.zeros(n, dtype=bool)
    stack = [0]
    seen[0] = True
    while stack:
        v = stack.pop()
        for w in np.flatnonzero(adjacency[v] & ~seen):
            seen[w] = True
            stack.append(w)
    return bool(seen.all())


def connectivity_stats(assignment, scenario: DeploymentScenario) -> ConnectivityStats:
    """Node degrees, mean degree and connectivity of the deployed network.

    Links exist between two deployed nodes whose link probability reaches the
    threshold. ``degrees`` is indexed like the deployed nodes (site order).
    """
    assignment = np.asarray(assignment, dtype=int)
    on = np.flatnonzero(assignment != EMPTY)
    sub = scenario.links[np.ix_(on, on)]
    degrees = sub.sum(axis=1).astype(int)
    sigma = float(degrees.mean()) if on.size else 0.0
    return ConnectivityStats(sigma, degrees, _dfs_connected(sub))


def total_cost(assignment, scenario: DeploymentScenario) -> float:
    assignment = np.asarray(assignment, dtype=int)
    on = np.flatnonzero(assignment != EMPTY)
    return float(scenario.placement_cost[on, assignment[on]].sum())


def _pos(x):
    return np.maximum(x, 0.0)


def constraint_violation(H, scenario: DeploymentScenario) -> float:
    """Total violation of the deployment constraints; zero iff feasible.

    Sums the coverage shortfall, disconnection, the relaxation terms (entries
    above one and entries further than ``epsilon`` from binary) and the
    K-coverage and C-connectivity shortfalls. At most one type per site is
    guaranteed by :func:`decode` and needs no penalty.
    """
    Hm = _relaxed(H, scenario)
    assignment = decode(Hm, scenario)
    cov = coverage_stats(assignment, scenario)
    conn = connectivity_stats(assignment, scenario)
    total = _pos(1.0 - cov.rate) + (0.0 if conn.connected else 1.0)
    total += _pos(Hm - 1.0).sum() + _pos(Hm - Hm**2 - scenario.epsilon).sum()
    total += _pos(scenario.K - cov.k_cov).sum() + _pos(scenario.C - conn.degrees).sum()
    return float(total)


@dataclass(frozen=True)
class BatchEvaluation:
    assignment: np.ndarray
    cost: np.ndarray
    sigma_cov: np.ndarray
    sigma_conn: np.ndarray
    coverage_rate: np.ndarray
    connected: np.ndarray
    violation: np.ndarray


def evaluate_batch(X: np.ndarray, scenario: DeploymentScenario) -> BatchEvaluation:
    """Vectorised evaluation of ``n`` relaxed solutions (rows of ``X``).

    Connectivity is checked by frontier expansion from the first deployed
    node over all rows at once.
    """
    X = np.atleast_2d(np.asarray(X, dtype=float))
    n = X.shape[0]
    S, V = scenario.n_sites, scenario.n_types
    H = X.reshape(n, S, V)
    rowsum = H.sum(axis=2)
    deployed = np.floor(rowsum + 0.5) >= 1
    types = H.argmax(axis=2)
    assignment = np.where(deployed, types, EMPTY)

    onehot = np.zeros((n, S, V), dtype=np.float32)
    rows, sites = np.nonzero(deployed)
    onehot[rows, sites, types[rows, sites]] = 1.0
    k_cov = np.rint(onehot.reshape(n, S * V) @ scenario.sense.reshape(S * V, -1).astype(np.float32)).astype(int)
    rate = np.mean(k_cov > 0, axis=1)
    sigma_cov = k_cov.mean(axis=1)

    links = scenario.links
    dep_f = deployed.astype(np.float32)
    degrees = (dep_f @ links.astype(np.float32)).astype(int) * deployed
    n_dep = deployed.sum(axis=1)
    sigma_conn = np.where(n_dep > 0, degrees.sum(axis=1) / np.maximum(n_dep, 1), 0.0)

    reached = np.zeros((n, S), dtype=bool)
    has = n_dep > 0
    reached[np.flatnonzero(has), np.argmax(deployed[has], axis=1)] = True
    links_f = links.astype(np.float32)
    while True:
        grown = reached | (((reached.astype(np.float32) @ links_f) > 0) & deployed)
        if np.array_equal(grown, reached):
            break
        reached = grown
    connected = np.all(reached == deployed, axis=1) | (n_dep <= 1)

    cost = np.sum(np.where(deployed, scenario.placement_cost[np.arange(S), types], 0.0), axis=1)

    cv = _pos(1.0 - rate) + (~connected).astype(float)
    cv += _pos(H - 1.0).sum(axis=(1, 2)) + _pos(H - H**2 - scenario.epsilon).sum(axis=(1, 2))
    cv += _pos(scenario.K - k_cov).sum(axis=1)
    cv += (_pos(scenario.C - degrees) * deployed).sum(axis=1)
    return BatchEvaluation(assignment, cost, sigma_cov, sigma_conn, rate, connected, cv)


@dataclass(frozen=True)
class WSNProblem(Problem):
    scenario: DeploymentScenario = None

    def evaluate(self, X):
        X = np.atleast_2d(np.asarray(X, dtype=float))
        ev = evaluate_batch(X, self.scenario)
        F = np.column_stack([ev.cost, -ev.sigma_cov, -ev.sigma_conn])
        return F, ev.violation


def make_problem(scenario: DeploymentScenario) -> WSNProblem:
    """Relaxed deployment problem: minimise ``(cost, -sigma_cov, -sigma_conn)`` over ``[0, 1]^(sites*types)``."""

    def objectives(X):
        ev = evaluate_batch(X, scenario)
        return np.column_stack([ev.cost, -ev.sigma_cov, -ev.sigma_conn])

    def violation(X):
        return evaluate_batch(X, scenario).violation

    d = scenario.dim
    return WSNProblem(np.zeros(d), np.ones(d), 3, objectives, violation, name="wsn", scenario=scenario)


def objectives_of(assignment, scenario: DeploymentScenario) -> np.ndarray:
    """``(cost, -sigma_cov, -sigma_conn)`` of a deployment."""
    cov = coverage_stats(assignment, scenario)
    conn = connectivity_stats(assignment, scenario)
    return np.array([total_cost(assignment, scenario), -cov.sigma_cov, -conn.sigma_conn])


def is_feasible(assignment, scenario: DeploymentScenario) -> bool:
    """Direct feasibility check of a deployment (full coverage, connected, K and C met)."""
    cov = coverage_stats(assignment, scenario)
    conn = connectivity_stats(assignment, scenario)
    return bool(
        cov.rate == 1.0
        and conn.connected
        and np.all(cov.k_cov >= scenario.K)
        and np.all(conn.degrees >= scenario.C)
    )
