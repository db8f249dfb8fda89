"""ZDT bi-objective test problems (batched: ``X`` is ``(n, d)``)."""

import numpy as np

ZDT6_F1_MIN = 0.2807753191


def _g(X):
    return 1.0 + 9.0 * X[:, 1:].sum(axis=1) / (X.shape[1] - 1)


def zdt1(X):
    f1 = X[:, 0]
    g = _g(X)
    return np.column_stack([f1, g * (1.0 - np.sqrt(f1 / g))])


def zdt2(X):
    f1 = X[:, 0]
    g = _g(X)
    return np.column_stack([f1, g * (1.0 - (f1 / g) ** 2)])


def zdt3(X):
    f1 = X[:, 0]
    g = _g(X)
    h = 1.0 - np.sqrt(f1 / g) - (f1 / g) * np.sin(10.0 * np.pi * f1)
    return np.column_stack([f1, g * h])


def zdt4(X):
    f1 = X[:, 0]
    rest = X[:, 1:]
    g = 1.0 + 10.0 * rest.shape[1] + np.sum(rest**2 - 10.0 * np.cos(4.0 * np.pi * rest), axis=1)
    return np.column_stack([f1, g * (1.0 - np.sqrt(f1 / g))])


def zdt6(X):
    x1 = X[:, 0]
    f1 = 1.0 - np.exp(-4.0 * x1) * np.sin(6.0 * np.pi * x1) ** 6
    g = 1.0 + 9.0 * (X[:, 1:].sum(axis=1) / (X.shape[1] - 1)) ** 0.25
    return np.column_stack([f1, g * (1.0 - (f1 / g) ** 2)])


def front(name: str, n: int) -> np.ndarray:
    """Analytic front sampled on a uniform ``f1`` grid (ZDT3 is filtered by the caller)."""
    if name == "zdt6":
        f1 = np.linspace(ZDT6_F1_MIN, 1.0, n)
    else:
        f1 = np.linspace(0.0, 1.0, n)
    if name in ("zdt1", "zdt4"):
        f2 = 1.0 - np.sqrt(f1)
    elif name in ("zdt2", "zdt6"):
        f2 = 1.0 - f1**2
    elif name == "zdt3":
        f2 = 1.0 - np.sqrt(f1) - f1 * np.sin(10.0 * np.pi * f1)
    else:
        raise ValueError(f"unknown ZDT problem {name!r}")
    return np.column_stack([f1, f2])
