"""Brute-force reference computations, independent of the library's inversions.

Membership formulas are re-typed here from their definitions, and level
sets / crossing points are found by scanning a uniform grid. Scans over
long ranges bisect on the grid *index*, which returns the same grid point a
full scan would (the predicates are monotone in t).
"""

from __future__ import annotations

import math

import numpy as np

STEP = 1e-6


# --------------------------------------------------------------- formulas


def staircase(t):
    t = np.asarray(t, dtype=float)
    return np.select([t <= 0, t <= 0.25, t <= 0.75, t <= 1.0], [0.0, t, 0.5, t], 1.0)


def half_near_zero(t):
    t = np.asarray(t, dtype=float)
    return np.select([t <= 0, t <= 0.5], [0.0, 0.5], 1.0)


def ramp(t):
    t = np.asarray(t, dtype=float)
    return np.select([t <= 0, t <= 1.0], [0.0, t], 1.0)


def step_at(d):
    def f(t):
        t = np.asarray(t, dtype=float)
        return np.where(t > d, 1.0, 0.0)
    return f


def rational(c, m=1.0, n=1.0, k=1.0, scale=1.0, cap=None):
    def f(t):
        t = np.asarray(t, dtype=float)
        pos = np.maximum(t, 0.0)
        with np.errstate(divide="ignore", invalid="ignore"):
            val = scale * k * pos ** n / (k * pos ** n + m * c)
        val = np.where(t <= 0, 0.0, val)
        if cap is not None:
            val = np.where(t > cap, 1.0, val)
        return val
    return f


def fixture_formula(fid: str, c: float, **params):
    """Off-diagonal membership of fixture ``fid`` for a pair at distance ``c``."""
    return {
        "ex2_4": lambda: staircase,
        "ex2_5": lambda: half_near_zero,
        "ex4_5": lambda: ramp,
        "ex3_6": lambda: rational(c, scale=0.75, cap=2.0),
        "ex3_7": lambda: rational(c),
        "ex4_6": lambda: rational(c, cap=2.0),
        "standard": lambda: rational(c),
        "indicator": lambda: step_at(c),
        "mnk": lambda: rational(c, params.get("m", 1.0), params.get("n", 1.0), params.get("k", 1.0)),
    }[fid]()


# ------------------------------------------------------------------ scans


def _first_index(pred, hi_index: int) -> int:
    """Smallest i in [0, hi_index] with pred(i) true (pred monotone, pred(hi_index) true)."""
    lo, hi = -1, hi_index
    while hi - lo > 1:
        mid = (lo + hi) // 2
        if pred(mid):
            hi = mid
        else:
            lo = mid
    return hi


def _horizon(f, lam, step):
    # grid length reaching past the super-level set
    hi = 1.0
    while not f(hi) > lam:
        hi *= 2.0
        if hi > 1e9:
            raise ArithmeticError("level out of scan range")
    return int(math.ceil(hi / step)) + 1


def scan_level_inf(f, lam: float, step: float = STEP) -> float:
    """First grid point where ``f > lam`` (within one step above the true infimum)."""
    n = _horizon(f, lam, step)
    return _first_index(lambda i: float(f(i * step)) > lam, n) * step


def scan_level_sup(f, lam: float, step: float = STEP) -> float:
    """Last grid point where ``f < lam`` (within one step below the true supremum)."""
    n = _horizon(f, lam, step)
    i = _first_index(lambda i: not float(f(i * step)) < lam, n)
    return max(i - 1, 0) * step


def scan_crossing(f, h, step: float = 1e-7, hi: float = 1.0, chunk: int = 2_000_000) -> float:
    """Last grid point of ``[0, hi]`` with ``f(t) <= 1 - h(t)`` (full dense scan)."""
    total = int(round(hi / step)) + 1
    best = -1
    for start in range(0, total, chunk):
        idx = np.arange(start, min(start + chunk, total))
        ts = idx * step
        ok = f(ts) <= 1.0 - h(ts)
        if ok.any():
            best = int(idx[np.flatnonzero(ok)[-1]])
    return best * step if best >= 0 else math.nan


def scan_plateau_size(f, lam: float, lo: float, hi: float, step: float = STEP) -> int:
    """Number of grid points in ``[lo, hi]`` where ``f == lam``."""
    ts = np.arange(lo, hi + step, step)
    return int(np.count_nonzero(f(ts) == lam))


def triangle_holds(D: np.ndarray) -> bool:
    """Zero-slack triangle inequality over all ordered triples, plain loops."""
    n = len(D)
    for x in range(n):
        for y in range(n):
            for z in range(n):
                if D[x, z] > D[x, y] + D[y, z]:
                    return False
    return True
