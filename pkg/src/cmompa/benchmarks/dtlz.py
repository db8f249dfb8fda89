"""DTLZ scalable test problems (batched, ``m`` objectives, ``d = m - 1 + k``)."""

import numpy as np


def _g_rastrigin(Xm):
    k = Xm.shape[1]
    return 100.0 * (k + np.sum((Xm - 0.5) ** 2 - np.cos(20.0 * np.pi * (Xm - 0.5)), axis=1))


def _g_sphere(Xm):
    return np.sum((Xm - 0.5) ** 2, axis=1)


def _spherical(theta, radius, m):
    """Objectives ``radius * (cos...cos, ..., sin)`` from ``m - 1`` angles per row."""
    n = theta.shape[0]
    F = np.empty((n, m))
    cos = np.cos(theta)
    sin = np.sin(theta)
    for i in range(m):
        f = radius.copy()
        f *= np.prod(cos[:, : m - 1 - i], axis=1)
        if i > 0:
            f *= sin[:, m - 1 - i]
        F[:, i] = f
    return F


def dtlz1(X, m):
    Xm = X[:, m - 1 :]
    g = _g_rastrigin(Xm)
    n = X.shape[0]
    F = np.empty((n, m))
    for i in range(m):
        f = 0.5 * (1.0 + g)
        f = f * np.prod(X[:, : m - 1 - i], axis=1)
        if i > 0:
            f = f * (1.0 - X[:, m - 1 - i])
        F[:, i] = f
    return F


def dtlz2(X, m):
    g = _g_sphere(X[:, m - 1 :])
    return _spherical(X[:, : m - 1] * np.pi / 2, 1.0 + g, m)


def dtlz3(X, m):
    g = _g_rastrigin(X[:, m - 1 :])
    return _spherical(X[:, : m - 1] * np.pi / 2, 1.0 + g, m)


def dtlz4(X, m, alpha=100.0):
    g = _g_sphere(X[:, m - 1 :])
    return _spherical(X[:, : m - 1] ** alpha * np.pi / 2, 1.0 + g, m)


def _degenerate_angles(X, g, m):
    theta = np.empty((X.shape[0], m - 1))
    theta[:, 0] = X[:, 0] * np.pi / 2
    t = np.pi / (4.0 * (1.0 + g[:, None]))
    theta[:, 1:] = t * (1.0 + 2.0 * g[:, None] * X[:, 1 : m - 1])
    return theta


def dtlz5(X, m):
    g = _g_sphere(X[:, m - 1 :])
    return _spherical(_degenerate_angles(X, g, m), 1.0 + g, m)


def dtlz6(X, m):
    g = np.sum(X[:, m - 1 :] ** 0.1, axis=1)
    return _spherical(_degenerate_angles(X, g, m), 1.0 + g, m)


def dtlz7(X, m):
    k = X.shape[1] - m + 1
    g = 1.0 + 9.0 * X[:, m - 1 :].sum(axis=1) / k
    F = np.empty((X.shape[0], m))
    F[:, : m - 1] = X[:, : m - 1]
    f = F[:, : m - 1]
    h = m - np.sum(f / (1.0 + g[:, None]) * (1.0 + np.sin(3.0 * np.pi * f)), axis=1)
    F[:, m - 1] = (1.0 + g) * h
    return F
