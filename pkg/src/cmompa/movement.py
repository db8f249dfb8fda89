"""Random step generators and population initialisation.

All randomness in a run comes from one ``numpy.random.Generator`` (PCG64),
created by :func:`make_rng` from the run seed.
"""

from __future__ import annotations

from math import gamma, pi, sin

import numpy as np

from .core import Population, Problem

LEVY_EXPONENT = 1.5
LEVY_SCALE = 0.05


def levy_sigma(lam: float = LEVY_EXPONENT) -> float:
    """Standard deviation of the numerator draw in Mantegna's Levy step."""
    num = gamma(1 + lam) * sin(pi * lam / 2)
    den = gamma((1 + lam) / 2) * lam * 2 ** ((lam - 1) / 2)
    return (num / den) ** (1 / lam)


SIGMA_C = levy_sigma()


def make_rng(seed) -> np.random.Generator:
    return np.random.Generator(np.random.PCG64(seed))


def levy_step(size, rng: np.random.Generator) -> np.ndarray:
    """Levy-flight step lengths ``0.05 * c / |b|**(1/1.5)``, one per entry of ``size``.

    ``c ~ N(0, SIGMA_C**2)`` and ``b ~ N(0, 1)``; exact zeros of ``b`` are redrawn.
    """
    c = rng.standard_normal(size) * SIGMA_C
    b = rng.standard_normal(size)
    zero = b == 0
    while np.any(zero):
        b[zero] = rng.standard_normal(int(zero.sum()))
        zero = b == 0
    return LEVY_SCALE * c / np.abs(b) ** (1 / LEVY_EXPONENT)


def brownian_step(size, rng: np.random.Generator) -> np.ndarray:
    return rng.standard_normal(size)


def uniform_init(n: int, problem: Problem, rng: np.random.Generator) -> Population:
    """``n`` evaluated individuals drawn uniformly from the problem's box."""
    if n < 1:
        raise ValueError("population size must be positive")
    u = rng.random((n, problem.dim))
    X = problem.lower + u * (problem.upper - problem.lower)
    return Population.evaluated(X, problem)
