"""Node-failure simulation and network lifetime.

Every half day each surviving node fails independently with a probability that
depends on the node's age. Uniform draws are taken for every site at every
tick whether or not a node sits there, so two deployments simulated with the
same seed see the same random numbers at shared sites.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .model import EMPTY, _dfs_connected
from .scenario import DeploymentScenario

TICKS_PER_DAY = 2


@dataclass(frozen=True)
class FailureTable:
    """Per-tick failure probabilities by age bracket.

    Bracket ``i`` covers ages in ``(edges[i-1], edges[i]]`` days (the first
    starts at 0). Ages past the last edge reuse the last probability.
    """

    edges: tuple[float, ...]
    probabilities: tuple[float, ...]

    def __post_init__(self):
        e = np.asarray(self.edges, dtype=float)
        p = np.asarray(self.probabilities, dtype=float)
        if e.size == 0 or e.shape != p.shape:
            raise ValueError("need one probability per bracket edge")
        if np.any(np.diff(e) <= 0) or e[0] <= 0:
            raise ValueError("bracket edges must be positive and increasing")
        if np.any((p < 0) | (p > 1)):
            raise ValueError("failure probabilities must lie in [0, 1]")

    def probability_at(self, age_days) -> np.ndarray:
        idx = np.searchsorted(self.edges, age_days, side="left")
        return np.asarray(self.probabilities)[np.minimum(idx, len(self.edges) - 1)]


FAILURE_TABLE = FailureTable((30, 60, 90, 120, 150, 180), (0.018, 0.047, 0.119, 0.5, 0.88, 0.98))


@dataclass(frozen=True)
class LifetimeReport:
    lifetime_days: float
    connectivity_days: float
    coverage_curve: np.ndarray
    total_cost: float

    @property
    def daily_cost(self) -> float:
        return self.total_cost / self.lifetime_days if self.lifetime_days > 0 else float("inf")

    def to_dict(self) -> dict:
        return {
            "lifetime_days": self.lifetime_days,
            "connectivity_days": self.connectivity_days,
            "daily_cost": self.daily_cost,
            "total_cost": self.total_cost,
            "coverage_curve": self.coverage_curve.tolist(),
        }


def _status(alive: np.ndarray, assignment: np.ndarray, scenario: DeploymentScenario) -> tuple[float, bool]:
    on = np.flatnonzero(alive)
    if on.size == 0:
        return 0.0, False
    covered = scenario.sense[on, assignment[on]].any(axis=0)
    return float(covered.mean()), _dfs_connected(scenario.links[np.ix_(on, on)])


def lifetime_simulate(
    assignment,
    scenario: DeploymentScenario,
    failure_table: FailureTable = FAILURE_TABLE,
    rng=None,
    horizon_days: int = 180,
) -> LifetimeReport:
    """Simulate failures of a deployment for ``horizon_days``.

    ``lifetime_days`` is the last check time (in days, half-day resolution)
    before full coverage or connectivity is first lost; ``connectivity_days``
    the same for connectivity alone, where a network with no surviving node
    counts as disconnected. ``coverage_curve[t]`` is the coverage rate at the
    end of day ``t`` for ``t = 0..horizon_days``.
    """
    from .model import total_cost

    assignment = np.asarray(assignment, dtype=int)
    if assignment.shape != (scenario.n_sites,):
        raise ValueError("assignment must have one entry per site")
    alive = assignment != EMPTY
    if not alive.any():
        raise ValueError("cannot simulate an empty deployment")
    if horizon_days < 1:
        raise ValueError("horizon must be at least one day")
    if rng is None or isinstance(rng, (int, np.integer)):
        rng = np.random.default_rng(rng)

    n_ticks = horizon_days * TICKS_PER_DAY
    u = rng.random((n_ticks, scenario.n_sites))
    p = failure_table.probability_at(np.arange(1, n_ticks + 1) / TICKS_PER_DAY)

    rate, connected = _status(alive, assignment, scenario)
    curve = [rate]
    lifetime = None if (rate == 1.0 and connected) else 0.0
    conn_days = None if connected else 0.0
    for tick in range(n_ticks):
        if alive.any():
            alive = alive & ~(u[tick] < p[tick])
            rate, connected = _status(alive, assignment, scenario)
        now = (tick + 1) / TICKS_PER_DAY
        if lifetime is None and not (rate == 1.0 and connected):
            lifetime = now - 1.0 / TICKS_PER_DAY
        if conn_days is None and not connected:
            conn_days = now - 1.0 / TICKS_PER_DAY
        if (tick + 1) % TICKS_PER_DAY == 0:
            curve.append(rate)
    return LifetimeReport(
        float(horizon_days if lifetime is None else lifetime),
        float(horizon_days if conn_days is None else conn_days),
        np.asarray(curve),
        total_cost(assignment, scenario),
    )
