"""Extensional comparison of crisp and fuzzy ball families on a finite sample.

On a finite carrier every metric topology is discrete, so topological
claims are observed through the balls themselves: whether each ball of one
family has an equal ball (or a smaller ball) of the other family with the
same center, over given radius and fuzziness grids. Verdicts therefore hold
"on this sample and grid".
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Sequence, Union

import numpy as np

from .crispify import actual_metric
from .fuzzy_space import FuzzyMetricSpace, open_ball
from .metric import CrispMetric

DEFAULT_RADII = (0.5, 1.1, 1.7, 2.0, 3.0)
DEFAULT_EPSILONS = (0.1, 0.3, 0.4, 0.7, 0.9)


def crisp_ball(d: CrispMetric, x, s: float) -> frozenset:
    """``{y : d(x, y) < s}``."""
    if not s > 0:
        raise ValueError("ball radius must be positive")
    row = d.dist[d.points.index(x)]
    return frozenset(y for y, v in zip(d.labels, row) if v < s)


def fuzzy_to_crisp_radius(m: float, n: float, k: float, r: float, eps: float) -> float:
    """Crisp radius whose ball equals the ``M_{m,n,k}`` ball ``B(x, r, eps)``."""
    _check_positive(m=m, n=n, k=k, r=r)
    _check_eps(eps)
    return eps / (1.0 - eps) * k * r ** n / m


def crisp_to_fuzzy_radius(m: float, n: float, k: float, eta: float, eps: float) -> float:
    """Fuzzy radius ``r`` with ``B_{m,n,k}(x, r, eps) = B_d(x, eta)``."""
    _check_positive(m=m, n=n, k=k, eta=eta)
    _check_eps(eps)
    return ((1.0 - eps) / eps * eta * m / k) ** (1.0 / n)


def _check_positive(**kw):
    for name, v in kw.items():
        if not v > 0:
            raise ValueError(f"{name} must be positive, got {v}")


def _check_eps(eps):
    if not 0 < eps < 1:
        raise ValueError(f"fuzziness parameter must lie in (0, 1), got {eps}")


@dataclass(frozen=True)
class BallSpec:
    """One ball: crisp ``B_d(center, radius)`` or fuzzy ``B(center, radius, eps)``."""

    source: Union[CrispMetric, FuzzyMetricSpace]
    center: str
    radius: float
    eps: float | None = None

    def __post_init__(self):
        if not self.radius > 0:
            raise ValueError("ball radius must be positive")
        if isinstance(self.source, FuzzyMetricSpace):
            if self.eps is None:
                raise ValueError("a fuzzy ball needs a fuzziness parameter")
            _check_eps(self.eps)

    def members(self) -> frozenset:
        if isinstance(self.source, FuzzyMetricSpace):
            return open_ball(self.source, self.center, self.radius, self.eps)
        return crisp_ball(self.source, self.center, self.radius)


@dataclass(frozen=True)
class BallFamily:
    """All balls of one structure over a parameter grid, at every sample point.

    ``params`` holds radii for a crisp source and ``(r, eps)`` pairs for a
    fuzzy one.
    """

    source: Union[CrispMetric, FuzzyMetricSpace]
    params: tuple
    name: str = ""

    @classmethod
    def crisp(cls, d: CrispMetric, radii: Sequence[float], name: str = "crisp") -> "BallFamily":
        return cls(d, tuple(float(r) for r in radii), name)

    @classmethod
    def fuzzy(cls, space: FuzzyMetricSpace, radii: Sequence[float] = DEFAULT_RADII,
              epsilons: Sequence[float] = DEFAULT_EPSILONS, name: str = "fuzzy") -> "BallFamily":
        return cls(space, tuple((float(r), float(e)) for r in radii for e in epsilons), name)

    @property
    def labels(self):
        return self.source.labels

    def balls(self) -> dict[tuple[str, object], frozenset]:
        labels = self.labels
        out = {}
        if isinstance(self.source, FuzzyMetricSpace):
            space = self.source
            radii = sorted({r for r, _ in self.params})
            for x in labels:
                rows = {r: np.array([space.eval(x, y, r) for y in labels]) for r in radii}
                for r, eps in self.params:
                    inside = rows[r] > 1.0 - eps
                    out[(x, (r, eps))] = frozenset(y for y, keep in zip(labels, inside) if keep)
        else:
            D = self.source.dist
            for i, x in enumerate(labels):
                for s in self.params:
                    out[(x, s)] = frozenset(y for y, v in zip(labels, D[i]) if v < s)
        return out


@dataclass(frozen=True)
class BallWitness:
    family: str
    center: str
    param: object
    members: tuple

    def to_dict(self):
        return {"family": self.family, "center": self.center, "param": self.param,
                "members": list(self.members)}


@dataclass
class ComparisonVerdict:
    relation: str  # equal | left_refines_right | right_refines_left | incomparable
    witnesses: list[BallWitness] = field(default_factory=list)
    left_refines_right: bool = False
    right_refines_left: bool = False
    extensional_equal: bool = False
    cells: int = 0

    def to_dict(self):
        return {"relation": self.relation, "left_refines_right": self.left_refines_right,
                "right_refines_left": self.right_refines_left,
                "extensional_equal": self.extensional_equal, "cells": self.cells,
                "witnesses": [w.to_dict() for w in self.witnesses]}


def _relation(left_finer: bool, right_finer: bool) -> str:
    if left_finer and right_finer:
        return "equal"
    if left_finer:
        return "left_refines_right"
    if right_finer:
        return "right_refines_left"
    return "incomparable"


def _ordered(members, labels) -> tuple:
    return tuple(y for y in labels if y in members)


def compare_ball_families(A: BallFamily, B: BallFamily, max_witnesses: int = 10) -> ComparisonVerdict:
    """Compare two ball families on their common sample.

    ``left_refines_right`` means every ball of ``B`` contains a ball of
    ``A`` with the same center (A's topology is at least as fine); the
    relation is ``equal`` when both directions hold. Witnesses are balls
    with no counterpart inside them on the other side.
    """
    if tuple(A.labels) != tuple(B.labels):
        raise ValueError("ball families live on different samples")
    labels = A.labels
    if not labels:
        raise ValueError("empty sample")
    balls_a, balls_b = A.balls(), B.balls()
    by_center_a = {x: [] for x in labels}
    by_center_b = {x: [] for x in labels}
    for (x, p), ball in balls_a.items():
        by_center_a[x].append((p, ball))
    for (x, p), ball in balls_b.items():
        by_center_b[x].append((p, ball))

    ext = True
    left_finer = right_finer = True
    witnesses = []
    for x in labels:
        sets_a = {ball for _, ball in by_center_a[x]}
        sets_b = {ball for _, ball in by_center_b[x]}
        if sets_a != sets_b:
            ext = False
        for p, ball in by_center_b[x]:
            if not any(a <= ball for a in sets_a):
                left_finer = False
                if len(witnesses) < max_witnesses:
                    witnesses.append(BallWitness(B.name or "right", x, p, _ordered(ball, labels)))
        for p, ball in by_center_a[x]:
            if not any(b <= ball for b in sets_b):
                right_finer = False
                if len(witnesses) < max_witnesses:
                    witnesses.append(BallWitness(A.name or "left", x, p, _ordered(ball, labels)))
    return ComparisonVerdict(_relation(left_finer, right_finer), witnesses, left_finer,
                             right_finer, ext, len(balls_a) + len(balls_b))


def check_refinement(space: FuzzyMetricSpace, radii: Sequence[float] = DEFAULT_RADII,
                     epsilons: Sequence[float] = DEFAULT_EPSILONS,
                     max_witnesses: int = 10) -> ComparisonVerdict:
    """Check ``B_{d_M}(x0, r0) <= B_M(x0, r0, eps0)`` at every center and grid cell.

    ``d_M`` is the actual metric of ``space``, which must converge on every
    pair. The verdict is ``equal`` when every inclusion is an equality,
    ``left_refines_right`` when all hold and some are strict, and
    ``incomparable`` if any inclusion fails (witnesses are then the
    violations).
    """
    am = actual_metric(space)
    if am.diverged:
        x, y = am.diverged[0]
        raise ArithmeticError(f"actual metric diverges on ({x}, {y})")
    dM = am.metric
    labels = space.labels
    if not labels:
        raise ValueError("empty sample")
    violations, strict = [], []
    cells = 0
    for x in labels:
        for r in radii:
            crisp = crisp_ball(dM, x, r)
            for eps in epsilons:
                fuzzy = open_ball(space, x, r, eps)
                cells += 1
                if not crisp <= fuzzy:
                    violations.append(BallWitness("d_M", x, (r, eps), _ordered(crisp - fuzzy, labels)))
                elif crisp != fuzzy:
                    strict.append(BallWitness("M", x, (r, eps), _ordered(fuzzy - crisp, labels)))
    if violations:
        return ComparisonVerdict("incomparable", violations[:max_witnesses], False, False, False, cells)
    if strict:
        return ComparisonVerdict("left_refines_right", strict[:max_witnesses], True, False, False, cells)
    return ComparisonVerdict("equal", [], True, True, True, cells)


# Name used by the command-line layer and the documented interface.
check_refinement_thm47 = check_refinement
