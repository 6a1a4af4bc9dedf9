"""Loop kernels compiled with numba; same contracts as ``_numpy``."""

import numpy as np
from numba import njit

NAME = "numba"


@njit(cache=True)
def _t(code, x, y):
    if code == 0:
        return x if x < y else y
    if code == 1:
        return x * y
    if code == 2:
        if x == 1.0 or y == 1.0:
            return x if x < y else y
        v = x + y - 1.0
        return v if v > 0.0 else 0.0
    if x < 1.0 and y < 1.0:
        return 0.0
    return x if x < y else y


@njit(cache=True)
def _s(code, x, y):
    if code == 0:
        return x if x > y else y
    if code == 1:
        if x >= y:
            return x + y * (1.0 - x)
        return y + x * (1.0 - y)
    if code == 2:
        v = x + y
        return v if v < 1.0 else 1.0
    if x > 0.0 and y > 0.0:
        return 1.0
    return x if x > y else y


@njit(cache=True)
def _n(code, x):
    if code == 0:
        return 1.0 - x
    if code == 1:
        return 1.0 - x * x
    return 1.0 if x == 0.0 else 0.0


@njit(cache=True)
def _tnorm_flat(code, x, y, out):
    for i in range(x.shape[0]):
        out[i] = _t(code, x[i], y[i])


@njit(cache=True)
def _tconorm_flat(code, x, y, out):
    for i in range(x.shape[0]):
        out[i] = _s(code, x[i], y[i])


@njit(cache=True)
def _negation_flat(code, x, out):
    for i in range(x.shape[0]):
        out[i] = _n(code, x[i])


@njit(cache=True)
def _fold_rows(code, m, conorm):
    n, k = m.shape
    out = np.empty(n)
    for i in range(n):
        if k == 0:
            out[i] = 0.0 if conorm else 1.0
            continue
        acc = m[i, 0]
        for j in range(1, k):
            acc = _s(code, acc, m[i, j]) if conorm else _t(code, acc, m[i, j])
        out[i] = acc
    return out


@njit(cache=True)
def _residuum_flat(code, a, b, out):
    for i in range(a.shape[0]):
        ai = a[i]
        bi = b[i]
        if ai <= bi:
            out[i] = 1.0
        elif code == 0:
            out[i] = bi
        elif code == 1:
            out[i] = bi / ai
        elif code == 2:
            v = 1.0 - ai + bi
            out[i] = v if v < 1.0 else 1.0
        else:
            out[i] = 1.0 if ai < 1.0 else bi


@njit(cache=True)
def _oracle_flat(code, a, b, grid_points, iters, out):
    h = 1.0 / (grid_points - 1)
    for i in range(a.shape[0]):
        last = -1
        for k in range(grid_points):
            z = k * h if k < grid_points - 1 else 1.0
            if _t(code, a[i], z) <= b[i]:
                last = k
        if last == grid_points - 1:
            out[i] = 1.0
            continue
        lo = last * h if last >= 0 else 0.0
        hi = (last + 1) * h
        if hi > 1.0:
            hi = 1.0
        for _ in range(iters):
            mid = 0.5 * (lo + hi)
            if _t(code, a[i], mid) <= b[i]:
                lo = mid
            else:
                hi = mid
        out[i] = lo


@njit(cache=True)
def _axiom_flags(tcode, scode, ncode, deg, neg_deg, tol, out):
    n, m = deg.shape
    for i in range(n):
        ok_range = True
        positive = False
        n_unit = 0
        nonzero = 0
        total = 0.0
        for j in range(m):
            d = deg[i, j]
            if d < -tol or d > 1.0 + tol:
                ok_range = False
            if d > tol:
                positive = True
                nonzero += 1
            if abs(d - 1.0) <= tol:
                n_unit += 1
            total += d
        out[0, i] = ok_range and positive and (n_unit == 0 or (n_unit == 1 and nonzero == 1))
        ok3 = True
        for j in range(m):
            if neg_deg[i, j] > _n(ncode, deg[i, j]) + tol:
                ok3 = False
        out[1, i] = ok3
        ok5 = True
        for p in range(m):
            acc = 0.0
            first = True
            for q in range(m):
                if q != p:
                    acc = deg[i, q] if first else _s(scode, acc, deg[i, q])
                    first = False
            if neg_deg[i, p] < acc - tol:
                ok5 = False
        out[2, i] = ok5
        out[3, i] = total > tol and total <= 1.0 + tol


def _pair(x, y):
    x, y = np.broadcast_arrays(np.asarray(x, dtype=np.float64), np.asarray(y, dtype=np.float64))
    return np.ascontiguousarray(x).ravel(), np.ascontiguousarray(y).ravel(), x.shape


def tnorm(code, x, y):
    xf, yf, shape = _pair(x, y)
    out = np.empty(xf.shape[0])
    _tnorm_flat(code, xf, yf, out)
    return out.reshape(shape)


def tconorm(code, x, y):
    xf, yf, shape = _pair(x, y)
    out = np.empty(xf.shape[0])
    _tconorm_flat(code, xf, yf, out)
    return out.reshape(shape)


def negation(code, x):
    x = np.asarray(x, dtype=np.float64)
    xf = np.ascontiguousarray(x).ravel()
    out = np.empty(xf.shape[0])
    _negation_flat(code, xf, out)
    return out.reshape(x.shape)


def fold_tnorm(code, m):
    return _fold_rows(code, np.ascontiguousarray(m, dtype=np.float64), False)


def fold_tconorm(code, m):
    return _fold_rows(code, np.ascontiguousarray(m, dtype=np.float64), True)


def residuum(code, a, b):
    af, bf, shape = _pair(a, b)
    out = np.empty(af.shape[0])
    _residuum_flat(code, af, bf, out)
    return out.reshape(shape)


def residuum_oracle(code, a, b, grid_points=1001, iters=60):
    af, bf, shape = _pair(a, b)
    out = np.empty(af.shape[0])
    _oracle_flat(code, af, bf, grid_points, iters, out)
    return out.reshape(shape)


def axiom_flags(tnorm_code, tconorm_code, neg_code, deg, neg_deg, tol):
    deg = np.ascontiguousarray(deg, dtype=np.float64)
    neg_deg = np.ascontiguousarray(neg_deg, dtype=np.float64)
    out = np.empty((4, deg.shape[0]), dtype=np.bool_)
    _axiom_flags(tnorm_code, tconorm_code, neg_code, deg, neg_deg, float(tol), out)
    return out
