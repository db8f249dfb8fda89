"""Competitive multi-objective marine predators optimizer, benchmarks and sensor deployment."""

__version__ = "0.1.0"

from .core import (
    Archive,
    EvaluationError,
    Individual,
    Population,
    Problem,
    constrained_dominates,
    dominates,
    fast_nondominated_sort,
    nondominated_indices,
)
from .metrics import hv, igd, normalized_hv, wilcoxon_signed_rank
from .optimizer import RunConfig, RunResult, run
from .refpoints import das_dennis

__all__ = [
    "Archive",
    "EvaluationError",
    "Individual",
    "Population",
    "Problem",
    "RunConfig",
    "RunResult",
    "constrained_dominates",
    "das_dennis",
    "dominates",
    "fast_nondominated_sort",
    "hv",
    "igd",
    "nondominated_indices",
    "normalized_hv",
    "run",
    "wilcoxon_signed_rank",
]
