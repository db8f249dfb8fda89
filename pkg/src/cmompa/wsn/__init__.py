"""Constrained 3-D heterogeneous sensor deployment."""

from .lifetime import FAILURE_TABLE, FailureTable, LifetimeReport, lifetime_simulate
from .model import (
    EMPTY,
    BatchEvaluation,
    ConnectivityStats,
    CoverageStats,
    WSNProblem,
    comm_probability,
    comm_probability_at,
    connectivity_stats,
    constraint_violation,
    coverage_stats,
    decode,
    encode,
    evaluate_batch,
    is_feasible,
    make_problem,
    objectives_of,
    sense_indicator,
    total_cost,
)
from .scenario import (
    DEFAULT_TYPES,
    DeploymentScenario,
    Radio,
    ScenarioError,
    SensorType,
    Site,
    generate_scenario,
    load_scenario,
    save_scenario,
)

__all__ = [
    "EMPTY",
    "FAILURE_TABLE",
    "DEFAULT_TYPES",
    "BatchEvaluation",
    "ConnectivityStats",
    "CoverageStats",
    "DeploymentScenario",
    "FailureTable",
    "LifetimeReport",
    "Radio",
    "ScenarioError",
    "SensorType",
    "Site",
    "WSNProblem",
    "comm_probability",
    "comm_probability_at",
    "connectivity_stats",
    "constraint_violation",
    "coverage_stats",
    "decode",
    "encode",
    "evaluate_batch",
    "generate_scenario",
    "is_feasible",
    "lifetime_simulate",
    "load_scenario",
    "make_problem",
    "objectives_of",
    "sense_indicator",
    "save_scenario",
    "total_cost",
]
