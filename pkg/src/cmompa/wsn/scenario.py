"""Deployment scenarios: candidate sites, targets, sensor types and radio settings.

Scenario files are JSON::

    {
      "box": [55, 55, 20],
      "sites": [{"x": 1.0, "y": 2.0, "z": 0.0, "cost": 3}, ...],
      "targets": [[x, y, z], ...],
      "types": [{"sensing_radius": 5, "cost": 2}, ...],
      "radio": {"comm_range": 10, "uncertainty": 2, "lambda1": 0.5,
                "lambda2": 1, "threshold": 0.8},
      "constraints": {"K": 1, "C": 1},
      "epsilon": 0.1
    }

``radio``, ``constraints`` and ``epsilon`` are optional and default to the
values below.
"""

from __future__ import annotations

import json
from dataclasses import asdict, dataclass, field
from functools import cached_property
from pathlib import Path

import numpy as np
from scipy.spatial.distance import cdist


class ScenarioError(ValueError):
    pass


@dataclass(frozen=True)
class SensorType:
    sensing_radius: float
    cost: float

    def __post_init__(self):
        if not (self.sensing_radius > 0 and self.cost > 0):
            raise ScenarioError("sensor types need a positive sensing radius and cost")


@dataclass(frozen=True)
class Site:
    x: float
    y: float
    z: float
    cost: float = 1.0


@dataclass(frozen=True)
class Radio:
    comm_range: float = 10.0
    uncertainty: float = 2.0
    lambda1: float = 0.5
    lambda2: float = 1.0
    threshold: float = 0.8

    def __post_init__(self):
        if not 0 <= self.uncertainty < self.comm_range:
            raise ScenarioError("need 0 <= uncertainty < comm_range")
        if not 0 <= self.threshold <= 1:
            raise ScenarioError("threshold must lie in [0, 1]")


DEFAULT_TYPES = (SensorType(5.0, 2.0), SensorType(10.0, 5.0), SensorType(15.0, 10.0))


@dataclass(frozen=True, eq=False)
class DeploymentScenario:
    sites: tuple[Site, ...]
    targets: np.ndarray
    types: tuple[SensorType, ...] = DEFAULT_TYPES
    radio: Radio = field(default_factory=Radio)
    K: int = 1
    C: int = 1
    epsilon: float = 0.1
    box: tuple[float, float, float] | None = None

    def __post_init__(self):
        object.__setattr__(self, "sites", tuple(self.sites))
        object.__setattr__(self, "types", tuple(self.types))
        targets = np.atleast_2d(np.asarray(self.targets, dtype=float))
        if targets.ndim != 2 or targets.shape[1] != 3 or len(targets) == 0:
            raise ScenarioError("targets must be a non-empty list of 3-D points")
        targets.setflags(write=False)
        object.__setattr__(self, "targets", targets)
        if not self.sites:
            raise ScenarioError("a scenario needs at least one candidate site")
        if not self.types:
            raise ScenarioError("a scenario needs at least one sensor type")
        if self.K < 1 or self.C < 1:
            raise ScenarioError("K and C must be at least 1")
        if not 0 < self.epsilon < 0.5:
            raise ScenarioError("epsilon must lie in (0, 0.5)")
        if any(s.cost < 1 for s in self.sites):
            raise ScenarioError("site costs must be >= 1")
        if self.box is not None:
            box = np.asarray(self.box, dtype=float)
            pts = np.vstack([self.site_xyz, targets])
            if np.any(pts < -1e-9) or np.any(pts > box + 1e-9):
                raise ScenarioError("sites and targets must lie inside the bounding box")

    @property
    def n_sites(self) -> int:
        return len(self.sites)

    @property
    def n_types(self) -> int:
        return len(self.types)

    @property
    def n_targets(self) -> int:
        return len(self.targets)

    @property
    def dim(self) -> int:
        return self.n_sites * self.n_types

    @cached_property
    def site_xyz(self) -> np.ndarray:
        return np.array([[s.x, s.y, s.z] for s in self.sites], dtype=float)

    @cached_property
    def site_cost(self) -> np.ndarray:
        return np.array([s.cost for s in self.sites], dtype=float)

    @cached_property
    def type_radius(self) -> np.ndarray:
        return np.array([t.sensing_radius for t in self.types], dtype=float)

    @cached_property
    def type_cost(self) -> np.ndarray:
        return np.array([t.cost for t in self.types], dtype=float)

    @cached_property
    def site_target_distance(self) -> np.ndarray:
        return cdist(self.site_xyz, self.targets)

    @cached_property
    def site_distance(self) -> np.ndarray:
        return cdist(self.site_xyz, self.site_xyz)

    @cached_property
    def sense(self) -> np.ndarray:
        """``(sites, types, targets)`` boolean sensing table."""
        return self.site_target_distance[:, None, :] <= self.type_radius[None, :, None]

    @cached_property
    def links(self) -> np.ndarray:
        """``(sites, sites)`` boolean usable-link table (no self links)."""
        from .model import comm_probability_at

        p = comm_probability_at(self.site_distance, self.radio)
        usable = p >= self.radio.threshold
        np.fill_diagonal(usable, False)
        return usable

    @cached_property
    def placement_cost(self) -> np.ndarray:
        """``(sites, types)`` cost of placing each type at each site."""
        return self.site_cost[:, None] * self.type_cost[None, :]

    def with_constraints(self, K: int, C: int) -> "DeploymentScenario":
        return DeploymentScenario(self.sites, self.targets, self.types, self.radio, K, C, self.epsilon, self.box)

    def to_dict(self) -> dict:
        out = {
            "sites": [asdict(s) for s in self.sites],
            "targets": self.targets.tolist(),
            "types": [asdict(t) for t in self.types],
            "radio": asdict(self.radio),
            "constraints": {"K": self.K, "C": self.C},
            "epsilon": self.epsilon,
        }
        if self.box is not None:
            out = {"box": list(self.box), **out}
        return out

    @classmethod
    def from_dict(cls, data: dict) -> "DeploymentScenario":
        try:
            sites = [Site(float(s["x"]), float(s["y"]), float(s["z"]), float(s.get("cost", 1.0))) for s in data["sites"]]
            targets = np.asarray(data["targets"], dtype=float)
            types = [SensorType(float(t["sensing_radius"]), float(t["cost"])) for t in data.get("types", [])] or DEFAULT_TYPES
            radio = Radio(**data.get("radio", {}))
            constraints = data.get("constraints", {})
            box = data.get("box")
            return cls(
                sites,
                targets,
                tuple(types),
                radio,
                int(constraints.get("K", 1)),
                int(constraints.get("C", 1)),
                float(data.get("epsilon", 0.1)),
                tuple(float(v) for v in box) if box is not None else None,
            )
        except (KeyError, TypeError) as exc:
            raise ScenarioError(f"malformed scenario: {exc}") from exc


def load_scenario(path) -> DeploymentScenario:
    try:
        data = json.loads(Path(path).read_text())
    except json.JSONDecodeError as exc:
        raise ScenarioError(f"{path}: not valid JSON ({exc})") from exc
    if not isinstance(data, dict):
        raise ScenarioError(f"{path}: top level must be an object")
    return DeploymentScenario.from_dict(data)


def save_scenario(scenario: DeploymentScenario, path) -> None:
    Path(path).write_text(json.dumps(scenario.to_dict(), indent=1))


def generate_scenario(
    box=(55.0, 55.0, 20.0),
    n_sites: int = 100,
    n_targets: int = 300,
    seed: int = 0,
    K: int = 1,
    C: int = 1,
    types=DEFAULT_TYPES,
    radio: Radio | None = None,
    epsilon: float = 0.1,
) -> DeploymentScenario:
    """Random scenario: uniform sites and targets in ``box``, site costs uniform in 1..5."""
    if n_sites < 1 or n_targets < 1:
        raise ScenarioError("site and target counts must be positive")
    rng = np.random.default_rng(seed)
    box = tuple(float(v) for v in box)
    size = np.asarray(box)
    xyz = rng.random((n_sites, 3)) * size
    costs = rng.integers(1, 6, size=n_sites)
    targets = rng.random((n_targets, 3)) * size
    sites = [Site(*map(float, p), cost=float(c)) for p, c in zip(xyz, costs)]
    return DeploymentScenario(sites, targets, tuple(types), radio or Radio(), K, C, epsilon, box)
