"""Crisp metrics induced by a fuzzy metric.

* upper / lower lambda-metrics ``inf{t : M > lam}`` and ``sup{t : M < lam}``
* the actual metric: their common limit as ``lam -> 1``, which exists
  exactly when every pair reaches membership 1 at a finite distance
* the crossing-point metrics ``sup{t >= 0 : M(t) <= 1 - h(t)}`` for
  ``h`` the identity, a superadditive ``mu`` or an ``alpha`` profile
"""

from __future__ import annotations

import dataclasses
import math
import warnings
from dataclasses import dataclass, field
from typing import Callable, Optional, Sequence

import numpy as np

from .fuzzy_space import FuzzyMetricSpace
from .membership import (
    DEFAULT_LAMBDA_STAR,
    BlackBoxMembership,
    Membership,
    OneThreshold,
    PiecewiseMembership,
    PlateauUndecidable,
    RationalMembership,
    bisect_predicate,
)
from .metric import CrispMetric, check_metric_axioms  # noqa: F401  (re-exported)


class ProfileError(ValueError):
    """A mu/alpha profile that violates its checkable side conditions."""


def _pairwise(space: FuzzyMetricSpace, fn: Callable[[Membership], float]) -> CrispMetric:
    n = len(space)
    D = np.zeros((n, n))
    for (i, j), f in space.table.items():
        D[i, j] = D[j, i] = fn(f)
    return CrispMetric(space.points, D, exact=space.exact)


def upper_lambda_metric(space: FuzzyMetricSpace, lam: float) -> CrispMetric:
    """``inf{t : M(x, y, t) > lam}`` for every pair (0 on the diagonal)."""
    return _pairwise(space, lambda f: f.level_inf(lam))


def lower_lambda_metric(space: FuzzyMetricSpace, lam: float) -> CrispMetric:
    """``sup{t : M(x, y, t) < lam}`` for every pair (0 on the diagonal)."""
    return _pairwise(space, lambda f: f.level_sup(lam))


def equality_at_lambda(space: FuzzyMetricSpace, lam: float, x, y) -> bool:
    """Whether the lower and upper lambda-metrics agree on ``(x, y)``.

    Decided from the level set ``{t : M(x, y, t) = lam}``: they agree iff it
    holds at most one point. Black-box pairs raise
    :class:`PlateauUndecidable`.
    """
    if space.points.index(x) == space.points.index(y):
        return True
    f = space.membership(x, y)
    if not f.exact:
        raise PlateauUndecidable(f"pair ({x}, {y}) has a black-box membership")
    return f.plateau(lam).at_most_one


# ------------------------------------------------------------------- sweep


@dataclass(frozen=True)
class PairLimit:
    converged: bool
    value: float  # the limit, or the search cap reached when diverged

    def to_dict(self):
        return {"verdict": "converged" if self.converged else "diverged", "value": self.value}


@dataclass
class LambdaSweep:
    """Upper and lower lambda-metrics along an ascending grid of levels.

    ``violations`` lists, per property, the offending
    ``(lam_1, lam_2, x, y, a, b)`` tuples; all lists are empty for a valid
    fuzzy metric.
    """

    lambdas: tuple[float, ...]
    upper: list[CrispMetric]
    lower: list[CrispMetric]
    limit: dict[tuple[str, str], PairLimit]
    violations: dict[str, list] = field(default_factory=dict)

    @property
    def ok(self) -> bool:
        return not any(self.violations.values())

    def upper_at(self, lam: float) -> CrispMetric:
        return self.upper[self.lambdas.index(lam)]

    def lower_at(self, lam: float) -> CrispMetric:
        return self.lower[self.lambdas.index(lam)]


def _entrywise_le(A, B, labels, tag):
    bad = np.argwhere(A.dist > B.dist)
    return [(tag[0], tag[1], labels[i], labels[j], float(A.dist[i, j]), float(B.dist[i, j]))
            for i, j in bad if i < j]


def lambda_sweep(space: FuzzyMetricSpace, lambdas: Sequence[float],
                 cap: float | None = None) -> LambdaSweep:
    """Both lambda-metrics at every grid level, plus the ordering checks.

    Checked entrywise: lower <= upper at each level, both nondecreasing
    along the grid, and upper at one level <= lower at the next.
    """
    lambdas = tuple(float(v) for v in lambdas)
    if not lambdas:
        raise ValueError("empty lambda grid")
    if any(not 0 < v < 1 for v in lambdas):
        raise ValueError("lambda grid must lie in (0, 1)")
    if any(a >= b for a, b in zip(lambdas, lambdas[1:])):
        raise ValueError("lambda grid must be strictly ascending")
    upper = [upper_lambda_metric(space, v) for v in lambdas]
    lower = [lower_lambda_metric(space, v) for v in lambdas]
    labels = space.labels
    viol = {"lower_le_upper": [], "upper_monotone": [], "lower_monotone": [], "interleaving": []}
    for v, lo, up in zip(lambdas, lower, upper):
        viol["lower_le_upper"] += _entrywise_le(lo, up, labels, (v, v))
    for k in range(len(lambdas) - 1):
        tag = (lambdas[k], lambdas[k + 1])
        viol["upper_monotone"] += _entrywise_le(upper[k], upper[k + 1], labels, tag)
        viol["lower_monotone"] += _entrywise_le(lower[k], lower[k + 1], labels, tag)
        viol["interleaving"] += _entrywise_le(upper[k], lower[k + 1], labels, tag)
    am = actual_metric(space, cap=cap)
    return LambdaSweep(lambdas, upper, lower, am.pair_limits(), viol)


# ----------------------------------------------------------- actual metric


@dataclass
class ActualMetric:
    """Per-pair limits of both lambda-metric nets as the level rises to 1.

    ``upper`` and ``lower`` hold the two limits (``inf`` where a net
    diverges), computed independently of each other; ``thresholds`` holds
    the per-pair FD witnesses. Divergence is per pair: :attr:`metric` is
    only available when nothing diverged.
    """

    points: object
    upper: np.ndarray
    lower: np.ndarray
    thresholds: dict[tuple[str, str], OneThreshold]
    exact: bool
    cap: float

    @property
    def labels(self):
        return self.points.labels

    @property
    def diverged(self) -> list[tuple[str, str]]:
        return [p for p, th in self.thresholds.items() if not th.finite]

    @property
    def fd_holds(self) -> bool:
        return not self.diverged

    @property
    def upper_exists(self) -> bool:
        return bool(np.all(np.isfinite(self.upper)))

    @property
    def lower_exists(self) -> bool:
        return bool(np.all(np.isfinite(self.lower)))

    @property
    def equivalence_consistent(self) -> bool:
        """FD, existence of the lower limit and of the upper limit agree."""
        return self.fd_holds == self.lower_exists == self.upper_exists

    @property
    def limits_agree(self) -> bool:
        fin = np.isfinite(self.upper) & np.isfinite(self.lower)
        if self.exact:
            return bool(np.array_equal(self.upper[fin], self.lower[fin]))
        return bool(np.allclose(self.upper[fin], self.lower[fin], rtol=0, atol=1e-9))

    @property
    def dist(self) -> np.ndarray:
        """Limit matrix with ``nan`` on diverged pairs."""
        D = self.upper.copy()
        D[~np.isfinite(D)] = np.nan
        return D

    @property
    def metric(self) -> CrispMetric:
        if self.diverged:
            x, y = self.diverged[0]
            raise ArithmeticError(f"actual metric diverges on {len(self.diverged)} pair(s),"
                                  f" e.g. ({x}, {y})")
        return CrispMetric(self.points, self.upper, exact=self.exact)

    def __call__(self, x, y) -> float:
        return float(self.upper[self.points.index(x), self.points.index(y)])

    def pair_limits(self) -> dict[tuple[str, str], PairLimit]:
        out = {}
        for i, j in self.points.pairs():
            key = (self.labels[i], self.labels[j])
            v = float(self.upper[i, j])
            out[key] = PairLimit(True, v) if self.thresholds[key].finite else PairLimit(False, self.cap)
        return out


def actual_metric(space: FuzzyMetricSpace, lam_star: float = DEFAULT_LAMBDA_STAR,
                  cap: float | None = None) -> ActualMetric:
    """Limit of the lambda-metrics as ``lam -> 1``, pair by pair.

    Exact backends give the limit in closed form (where membership first
    reaches 1). Black-box pairs are approximated at ``lam_star`` and count
    as divergent when that level is not reached below ``cap``.
    """
    n = len(space)
    upper = np.zeros((n, n))
    lower = np.zeros((n, n))
    thresholds = {}
    used_cap = math.inf
    for (i, j), f in space.table.items():
        if isinstance(f, BlackBoxMembership) and cap is not None:
            f = dataclasses.replace(f, cap=cap)
        if isinstance(f, BlackBoxMembership):
            used_cap = f.cap if math.isinf(used_cap) else max(used_cap, f.cap)
        thresholds[(space.labels[i], space.labels[j])] = f.one_threshold()
        upper[i, j] = upper[j, i] = f.upper_limit(lam_star)
        lower[i, j] = lower[j, i] = f.lower_limit(lam_star)
    return ActualMetric(space.points, upper, lower, thresholds, space.exact,
                        cap if cap is not None else used_cap)


# -------------------------------------------------------- crossing metrics


@dataclass(frozen=True)
class MuProfile:
    """Continuous ``mu : [0, inf) -> [0, inf)`` with ``mu(t) = 0`` iff ``t = 0``
    and ``mu(t + s) >= mu(t) + mu(s)``.

    ``slope`` marks the linear case ``mu(t) = slope * t``, which has a closed
    form crossing.
    """

    func: Callable[[float], float]
    slope: Optional[float] = None
    name: str = "mu"

    def __call__(self, t):
        return float(self.func(t))

    @classmethod
    def linear(cls, slope: float = 1.0) -> "MuProfile":
        slope = float(slope)
        return cls(lambda t: slope * t, slope, f"{slope:g}*t")

    @classmethod
    def identity(cls) -> "MuProfile":
        return cls.linear(1.0)

    def problems(self) -> list[str]:
        ts = np.unique(np.concatenate([np.linspace(0.0, 10.0, 101), np.geomspace(1e-6, 1e3, 40)]))
        vals = np.array([self(t) for t in ts])
        out = []
        if self(0.0) != 0.0:
            out.append(f"mu(0) = {self(0.0)!r}, not 0")
        if np.any(vals[ts > 0] <= 0):
            out.append(f"mu(t) <= 0 at t = {ts[ts > 0][vals[ts > 0] <= 0][0]!r}")
        sub = ts[:: max(1, len(ts) // 40)]
        for t in sub:
            for s in sub:
                if self(t + s) < self(t) + self(s) - 1e-12 * (1.0 + abs(self(t + s))):
                    out.append(f"superadditivity fails at t={t!r}, s={s!r}")
                    return out
        return out


@dataclass(frozen=True)
class AlphaProfile:
    """Increasing ``alpha`` with ``0 < alpha(t) <= t`` on ``(0, 1)`` and ``alpha(t) > 1`` past 1."""

    func: Callable[[float], float]
    slope: Optional[float] = None
    name: str = "alpha"

    def __call__(self, t):
        return float(self.func(t))

    @classmethod
    def identity(cls) -> "AlphaProfile":
        return cls(lambda t: t, 1.0, "t")

    def problems(self) -> list[str]:
        inner = np.linspace(0.0, 1.0, 201)[1:-1]
        outer = np.concatenate([1.0 + np.geomspace(1e-6, 1.0, 30), np.linspace(2.0, 100.0, 50)])
        ts = np.concatenate([inner, [1.0], outer])
        vals = np.array([self(t) for t in ts])
        out = []
        if np.any(np.diff(vals) < 0):
            k = int(np.flatnonzero(np.diff(vals) < 0)[0])
            out.append(f"not increasing between t={ts[k]!r} and t={ts[k + 1]!r}")
        for t in inner:
            a = self(t)
            if not 0.0 < a <= t:
                out.append(f"alpha({t!r}) = {a!r} outside (0, t]")
                break
        for t in outer:
            if not self(t) > 1.0:
                out.append(f"alpha({t!r}) = {self(t)!r} not > 1")
                break
        grid01 = np.linspace(0.0, 1.0, 21)
        for s in grid01:
            for t in grid01:
                if s + t == 0:
                    continue
                if min(1 - self(s), 1 - self(t)) < 1 - self(s + t) - 1e-12:
                    out.append(f"min(1-alpha(s), 1-alpha(t)) < 1-alpha(s+t) at s={s!r}, t={t!r}")
                    return out
        return out


def _rational_linear_root(f: RationalMembership, kappa: float) -> float:
    # scale*k t/(k t + m c) + kappa t = 1  (n == 1, c > 0), positive root
    A, k, m, c = f.scale, f.k, f.m, f.c
    B = A * k + kappa * m * c - k
    disc = math.sqrt(B * B + 4.0 * kappa * k * m * c)
    if B >= 0:
        return 2.0 * m * c / (B + disc)
    return (disc - B) / (2.0 * kappa * k)


def _crossing(f: Membership, h: Callable[[float], float], slope: Optional[float]) -> float:
    """``sup{t >= 0 : f(t) <= 1 - h(t)}`` for nondecreasing f and h."""

    def P(t):
        return f.eval(t) + h(t) > 1.0

    def hr(a):
        # h just to the right of a
        return slope * a if slope is not None else h(np.nextafter(a, math.inf))

    def search(lo, hi=None):
        # P(lo) false; find the switch point in (lo, hi], doubling if hi is None
        if hi is None:
            hi = max(1.0, 2.0 * lo)
            while not P(hi):
                lo, hi = hi, hi * 2.0
                if hi > 1e300:
                    return math.inf
        return bisect_predicate(P, lo, hi)[0]

    if isinstance(f, PiecewiseMembership):
        for a, b, s, e in f._pieces():
            if s + hr(a) > 1.0:
                return a
            if not P(b):
                continue
            if slope is not None:
                rate = (e - s) / (b - a) + slope
                t0 = a + (1.0 - s - slope * a) / rate
                return min(max(t0, a), b)
            return search(a, b)
        a = f.knots[-1]
        return a if f.tail + hr(a) > 1.0 else search(a)

    if isinstance(f, RationalMembership):
        end = f.cap
        if f.right_limit_at_zero() + hr(0.0) > 1.0:
            return 0.0
        if end is None or P(end):
            if slope is not None and f.c == 0.0:
                t0 = (1.0 - f.scale) / slope
            elif slope is not None and f.n == 1.0:
                t0 = _rational_linear_root(f, slope)
            else:
                return search(0.0, end)
            return t0 if end is None else min(max(t0, 0.0), end)
        return end if 1.0 + hr(end) > 1.0 else search(end)

    return search(0.0)


def _crossing_metric(space: FuzzyMetricSpace, h, slope) -> CrispMetric:
    return _pairwise(space, lambda f: _crossing(f, h, slope))


def radu_metric(space: FuzzyMetricSpace) -> CrispMetric:
    """``sup{t >= 0 : M(x, y, t) <= 1 - t}``; never exceeds 1."""
    return _crossing_metric(space, lambda t: t, 1.0)


def mu_space_condition(space: FuzzyMetricSpace, mu: MuProfile, ts: Sequence[float] | None = None):
    """Grid check that ``M > 1 - mu`` at (x, y, t) and (y, z, s) forces it at (x, z, t + s).

    Returns ``(holds, witness)``.
    """
    ts = np.asarray(ts if ts is not None else np.linspace(0.05, 2.0, 40))
    n = len(space)
    labels = space.labels
    m = np.array([mu(t) for t in ts])
    ok = {}
    for i in range(n):
        for j in range(n):
            f = space.membership(labels[i], labels[j])
            ok[i, j] = f.eval_array(ts) > 1.0 - m
    sums = ts[:, None] + ts[None, :]
    msum = np.vectorize(mu.func, otypes=[float])(sums)
    for x in range(n):
        for z in range(n):
            rhs = space.membership(labels[x], labels[z]).eval_array(sums) > 1.0 - msum
            for y in range(n):
                bad = ok[x, y][:, None] & ok[y, z][None, :] & ~rhs
                if bad.any():
                    a, b = np.argwhere(bad)[0]
                    return False, (labels[x], labels[y], labels[z], float(ts[a]), float(ts[b]))
    return True, None


def radu_mu_metric(space: FuzzyMetricSpace, mu: MuProfile, check_space: bool = True) -> CrispMetric:
    """``sup{t >= 0 : M(x, y, t) <= 1 - mu(t)}``.

    Raises :class:`ProfileError` if ``mu`` fails its grid-checked side
    conditions. The compatibility condition between ``mu`` and the space is
    grid-checked too and reported as a warning when it fails.
    """
    bad = mu.problems()
    if bad:
        raise ProfileError(f"mu profile {mu.name}: {bad[0]}")
    if check_space:
        holds, witness = mu_space_condition(space, mu)
        if not holds:
            warnings.warn(f"mu profile {mu.name} is not compatible with this space at {witness}",
                          stacklevel=2)
    return _crossing_metric(space, mu, mu.slope)


def radu_alpha_metric(space: FuzzyMetricSpace, alpha: AlphaProfile) -> CrispMetric:
    """``sup{t >= 0 : M(x, y, t) <= 1 - alpha(t)}``."""
    bad = alpha.problems()
    if bad:
        raise ProfileError(f"alpha profile {alpha.name}: {bad[0]}")
    return _crossing_metric(space, alpha, alpha.slope)
