"""Vectorized numpy implementations of the array kernels.

Family codes match the ``code`` property of the algebra enums: t-norm / t-conorm
0 minimum|maximum, 1 product|probabilistic sum, 2 Lukasiewicz, 3 drastic;
negation 0 standard, 1 one-minus-square, 2 Goedel.
"""

import numpy as np

NAME = "numpy"


def tnorm(code, x, y):
    x, y = np.broadcast_arrays(np.asarray(x, dtype=np.float64), np.asarray(y, dtype=np.float64))
    if code == 0:
        return np.minimum(x, y)
    if code == 1:
        return x * y
    if code == 2:
        return np.where((x == 1.0) | (y == 1.0), np.minimum(x, y), np.maximum(x + y - 1.0, 0.0))
    if code == 3:
        return np.where((x < 1.0) & (y < 1.0), 0.0, np.minimum(x, y))
    raise ValueError(f"unknown t-norm code {code}")


def tconorm(code, x, y):
    x, y = np.broadcast_arrays(np.asarray(x, dtype=np.float64), np.asarray(y, dtype=np.float64))
    if code == 0:
        return np.maximum(x, y)
    if code == 1:
        hi, lo = np.maximum(x, y), np.minimum(x, y)
        return hi + lo * (1.0 - hi)
    if code == 2:
        return np.minimum(x + y, 1.0)
    if code == 3:
        return np.where((x > 0.0) & (y > 0.0), 1.0, np.maximum(x, y))
    raise ValueError(f"unknown t-conorm code {code}")


def negation(code, x):
    x = np.asarray(x, dtype=np.float64)
    if code == 0:
        return 1.0 - x
    if code == 1:
        return 1.0 - x * x
    if code == 2:
        return np.where(x == 0.0, 1.0, 0.0)
    raise ValueError(f"unknown negation code {code}")


def fold_tnorm(code, m):
    """Row-wise left fold of a 2-D array; empty rows give 1."""
    m = np.asarray(m, dtype=np.float64)
    if m.shape[1] == 0:
        return np.ones(m.shape[0])
    out = m[:, 0].copy()
    for j in range(1, m.shape[1]):
        out = tnorm(code, out, m[:, j])
    return out


def fold_tconorm(code, m):
    """Row-wise left fold of a 2-D array; empty rows give 0."""
    m = np.asarray(m, dtype=np.float64)
    if m.shape[1] == 0:
        return np.zeros(m.shape[0])
    out = m[:, 0].copy()
    for j in range(1, m.shape[1]):
        out = tconorm(code, out, m[:, j])
    return out


def residuum(code, a, b):
    a, b = np.broadcast_arrays(np.asarray(a, dtype=np.float64), np.asarray(b, dtype=np.float64))
    le = a <= b
    if code == 0:
        return np.where(le, 1.0, b)
    if code == 1:
        with np.errstate(divide="ignore", invalid="ignore"):
            return np.where(le, 1.0, b / np.where(a == 0.0, 1.0, a))
    if code == 2:
        return np.minimum(1.0, 1.0 - a + b)
    if code == 3:
        return np.where(le | (a < 1.0), 1.0, b)
    raise ValueError(f"unknown t-norm code {code}")


def residuum_oracle(code, a, b, grid_points=1001, iters=60):
    """sup{z : T(a, z) <= b} by grid scan then bisection; uses only ``tnorm``."""
    a, b = np.broadcast_arrays(np.asarray(a, dtype=np.float64), np.asarray(b, dtype=np.float64))
    shape = a.shape
    a = a.ravel()
    b = b.ravel()
    grid = np.linspace(0.0, 1.0, grid_points)
    ok = tnorm(code, a[:, None], grid[None, :]) <= b[:, None]
    # the admissible set is a down-set in z, so the last admissible index bounds it
    last = np.where(ok.any(axis=1), grid_points - 1 - np.argmax(ok[:, ::-1], axis=1), -1)
    out = np.empty(a.shape[0])
    full = last == grid_points - 1
    out[full] = 1.0
    todo = ~full
    lo = np.where(last[todo] >= 0, grid[np.maximum(last[todo], 0)], 0.0)
    hi = grid[np.minimum(last[todo] + 1, grid_points - 1)]
    at, bt = a[todo], b[todo]
    for _ in range(iters):
        mid = 0.5 * (lo + hi)
        good = tnorm(code, at, mid) <= bt
        lo = np.where(good, mid, lo)
        hi = np.where(good, hi, mid)
    out[todo] = lo
    return out.reshape(shape)


def axiom_flags(tnorm_code, tconorm_code, neg_code, deg, neg_deg, tol):
    """Per-row verdicts for Axioms I, III, V and V' over a batch of degree tables.

    ``deg`` is (n, m); ``neg_deg`` holds the degrees used for the negated
    elementary attributes (N(deg) for regular rows).  Returns a (4, n) bool
    array ordered I, III, V, V'.
    """
    deg = np.asarray(deg, dtype=np.float64)
    neg_deg = np.asarray(neg_deg, dtype=np.float64)
    n, m = deg.shape
    in_range = ((deg >= -tol) & (deg <= 1.0 + tol)).all(axis=1)
    positive = (deg > tol).any(axis=1)
    unit = np.abs(deg - 1.0) <= tol
    n_unit = unit.sum(axis=1)
    nonzero = (deg > tol).sum(axis=1)
    ax1 = in_range & positive & ((n_unit == 0) | ((n_unit == 1) & (nonzero == 1)))
    ax3 = (neg_deg <= negation(neg_code, deg) + tol).all(axis=1)
    ax5 = np.ones(n, dtype=bool)
    for p in range(m):
        others = np.delete(deg, p, axis=1)
        ax5 &= neg_deg[:, p] >= fold_tconorm(tconorm_code, others) - tol
    total = deg.sum(axis=1)
    ax5p = (total > tol) & (total <= 1.0 + tol)
    return np.vstack([ax1, ax3, ax5, ax5p])
