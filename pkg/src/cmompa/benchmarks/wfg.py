"""WFG2-WFG9 test problems (batched).

Decision variable ``i`` (1-based) lives in ``[0, 2i]``. The first ``k``
variables are position-related, the remaining ``l`` distance-related.
Objective ``i`` is scaled by ``2i``.
"""

import numpy as np

EPS = 1.0e-10


def _clip01(y):
    return np.clip(y, 0.0, 1.0)


# transformations ---------------------------------------------------------

def b_poly(y, alpha):
    return _clip01(y**alpha)


def b_flat(y, A, B, C):
    out = (
        A
        + np.minimum(0.0, np.floor(y - B)) * A * (B - y) / B
        - np.minimum(0.0, np.floor(C - y)) * (1.0 - A) * (y - C) / (1.0 - C)
    )
    return _clip01(out)


def b_param(y, u, A, B, C):
    v = A - (1.0 - 2.0 * u) * np.abs(np.floor(0.5 - u) + A)
    return _clip01(y ** (B + (C - B) * v))


def s_linear(y, A):
    return _clip01(np.abs(y - A) / np.abs(np.floor(A - y) + A))


def s_decept(y, A, B, C):
    tmp1 = np.floor(y - A + B) * (1.0 - C + (A - B) / B) / (A - B)
    tmp2 = np.floor(A + B - y) * (1.0 - C + (1.0 - A - B) / B) / (1.0 - A - B)
    return _clip01(1.0 + (np.abs(y - A) - B) * (tmp1 + tmp2 + 1.0 / B))


def s_multi(y, A, B, C):
    tmp1 = np.abs(y - C) / (2.0 * (np.floor(C - y) + C))
    tmp2 = (4.0 * A + 2.0) * np.pi * (0.5 - tmp1)
    return _clip01((1.0 + np.cos(tmp2) + 4.0 * B * tmp1**2) / (B + 2.0))


def r_sum(y, w):
    w = np.asarray(w, dtype=float)
    return _clip01(np.sum(y * w, axis=1) / w.sum())


def r_nonsep(y, A):
    n = y.shape[1]
    total = np.zeros(y.shape[0])
    for j in range(n):
        total += y[:, j]
        for k in range(A - 1):
            total += np.abs(y[:, j] - y[:, (1 + j + k) % n])
    denom = n / A * np.ceil(A / 2.0) * (1.0 + 2.0 * A - 2.0 * np.ceil(A / 2.0))
    return _clip01(total / denom)


# shapes ------------------------------------------------------------------

def linear(x, m):
    M = x.shape[1]
    out = np.prod(x[:, : M - m], axis=1)
    if m > 1:
        out = out * (1.0 - x[:, M - m])
    return out


def convex(x, m):
    M = x.shape[1]
    out = np.prod(1.0 - np.cos(x[:, : M - m] * np.pi / 2), axis=1)
    if m > 1:
        out = out * (1.0 - np.sin(x[:, M - m] * np.pi / 2))
    return out


def concave(x, m):
    M = x.shape[1]
    out = np.prod(np.sin(x[:, : M - m] * np.pi / 2), axis=1)
    if m > 1:
        out = out * np.cos(x[:, M - m] * np.pi / 2)
    return out


def disc(x, A=5.0, alpha=1.0, beta=1.0):
    x0 = x[:, 0]
    return 1.0 - x0**alpha * np.cos(A * x0**beta * np.pi) ** 2


# helpers -----------------------------------------------------------------

def _normalise(X):
    return X / (2.0 * np.arange(1, X.shape[1] + 1))


def _reduce_position(y, k, M, fn):
    """Apply a reduction ``fn(group)`` to each of the ``M - 1`` position groups."""
    size = k // (M - 1)
    return [fn(y[:, i * size : (i + 1) * size]) for i in range(M - 1)]


def _to_x(t, A):
    x = np.empty_like(t)
    last = t[:, -1]
    for i in range(t.shape[1] - 1):
        x[:, i] = np.maximum(last, A[i]) * (t[:, i] - 0.5) + 0.5
    x[:, -1] = last
    return x


def _objectives(x, h):
    M = x.shape[1]
    S = 2.0 * np.arange(1, M + 1)
    return x[:, -1][:, None] + S * h


def _concave_h(x):
    M = x.shape[1]
    return np.column_stack([concave(x, m) for m in range(1, M + 1)])


def _sum_reduce(y, k, M):
    t = _reduce_position(y, k, M, lambda g: r_sum(g, np.ones(g.shape[1])))
    d = y[:, k:]
    t.append(r_sum(d, np.ones(d.shape[1])))
    return np.column_stack(t)


def _wfg23_transform(X, k, M):
    y = _normalise(X)
    y = y.copy()
    y[:, k:] = s_linear(y[:, k:], 0.35)
    l = y.shape[1] - k
    pairs = [r_nonsep(y[:, k + 2 * i : k + 2 * i + 2], 2) for i in range(l // 2)]
    y = np.column_stack([y[:, :k]] + pairs)
    t = _reduce_position(y, k, M, lambda g: r_sum(g, np.ones(g.shape[1])))
    d = y[:, k:]
    t.append(r_sum(d, np.ones(d.shape[1])))
    return np.column_stack(t)


def wfg2(X, m, k):
    t = _wfg23_transform(X, k, m)
    x = _to_x(t, np.ones(m - 1))
    h = np.column_stack([convex(x, i) for i in range(1, m)] + [disc(x)])
    return _objectives(x, h)


def wfg3(X, m, k):
    t = _wfg23_transform(X, k, m)
    A = np.zeros(m - 1)
    A[0] = 1.0
    x = _to_x(t, A)
    h = np.column_stack([linear(x, i) for i in range(1, m + 1)])
    return _objectives(x, h)


def wfg4(X, m, k):
    y = s_multi(_normalise(X), 30.0, 10.0, 0.35)
    x = _to_x(_sum_reduce(y, k, m), np.ones(m - 1))
    return _objectives(x, _concave_h(x))


def wfg5(X, m, k):
    y = s_decept(_normalise(X), 0.35, 0.001, 0.05)
    x = _to_x(_sum_reduce(y, k, m), np.ones(m - 1))
    return _objectives(x, _concave_h(x))


def wfg6(X, m, k):
    y = _normalise(X).copy()
    y[:, k:] = s_linear(y[:, k:], 0.35)
    size = k // (m - 1)
    t = _reduce_position(y, k, m, lambda g: r_nonsep(g, size))
    l = y.shape[1] - k
    t.append(r_nonsep(y[:, k:], l))
    x = _to_x(np.column_stack(t), np.ones(m - 1))
    return _objectives(x, _concave_h(x))


def _bias_by_tail(y, cols):
    """``b_param`` on columns ``cols`` with the mean of all later columns as the bias driver."""
    out = y.copy()
    for i in cols:
        u = r_sum(y[:, i + 1 :], np.ones(y.shape[1] - i - 1))
        out[:, i] = b_param(y[:, i], u, 0.98 / 49.98, 0.02, 50.0)
    return out


def wfg7(X, m, k):
    y = _normalise(X)
    y = _bias_by_tail(y, range(k))
    y[:, k:] = s_linear(y[:, k:], 0.35)
    x = _to_x(_sum_reduce(y, k, m), np.ones(m - 1))
    return _objectives(x, _concave_h(x))


def wfg8(X, m, k):
    y = _normalise(X)
    out = y.copy()
    for i in range(k, y.shape[1]):
        u = r_sum(y[:, :i], np.ones(i))
        out[:, i] = b_param(y[:, i], u, 0.98 / 49.98, 0.02, 50.0)
    out[:, k:] = s_linear(out[:, k:], 0.35)
    x = _to_x(_sum_reduce(out, k, m), np.ones(m - 1))
    return _objectives(x, _concave_h(x))


def wfg9(X, m, k):
    y = _normalise(X)
    y = _bias_by_tail(y, range(y.shape[1] - 1))
    y[:, :k] = s_decept(y[:, :k], 0.35, 0.001, 0.05)
    y[:, k:] = s_multi(y[:, k:], 30.0, 95.0, 0.35)
    size = k // (m - 1)
    t = _reduce_position(y, k, m, lambda g: r_nonsep(g, size))
    l = y.shape[1] - k
    t.append(r_nonsep(y[:, k:], l))
    x = _to_x(np.column_stack(t), np.ones(m - 1))
    return _objectives(x, _concave_h(x))


def front_from_position(name: str, P: np.ndarray) -> np.ndarray:
    """Objective vectors of optimal solutions with underlying position parameters ``P``.

    ``P`` has ``m - 1`` columns in ``[0, 1]``; the distance parameter is zero on the front.
    """
    m = P.shape[1] + 1
    x = np.column_stack([P, np.zeros(len(P))])
    if name == "wfg2":
        h = np.column_stack([convex(x, i) for i in range(1, m)] + [disc(x)])
    elif name == "wfg3":
        x[:, 1:m - 1] = 0.5
        h = np.column_stack([linear(x, i) for i in range(1, m + 1)])
    else:
        h = _concave_h(x)
    return 2.0 * np.arange(1, m + 1) * h
