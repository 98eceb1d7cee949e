"""Finite point sets and crisp metrics over them."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Hashable, Optional, Sequence

import numpy as np

from .axioms import AxiomReport


class MetricError(ValueError):
    """A distance matrix that is not a metric, or a malformed point set."""


def format_real(x: float) -> str:
    """Shortest round-trippable text for ``x``; integral values drop ``.0``."""
    x = float(x)
    if x != x:
        return "nan"
    if x in (float("inf"), float("-inf")):
        return "inf" if x > 0 else "-inf"
    if x == int(x) and abs(x) < 1e16:
        return str(int(x))
    return repr(x)


def grid_values(lo: float, hi: float, num: int) -> list[float]:
    """``num`` evenly spaced reals on ``[lo, hi]``, rounded to 12 decimals for clean labels."""
    return [round(float(v), 12) + 0.0 for v in np.linspace(lo, hi, num)]


@dataclass(frozen=True)
class PointSet:
    """Ordered distinct labels with optional coordinates (one row per label)."""

    labels: tuple[str, ...]
    coords: Optional[np.ndarray] = None

    def __post_init__(self):
        labels = tuple(str(x) for x in self.labels)
        object.__setattr__(self, "labels", labels)
        if len(set(labels)) != len(labels):
            raise MetricError("point labels must be distinct")
        if self.coords is not None:
            coords = np.array(self.coords, dtype=float)
            if coords.ndim == 1:
                coords = coords[:, None]
            if coords.ndim != 2 or coords.shape[0] != len(labels):
                raise MetricError("need one coordinate vector per label")
            coords.setflags(write=False)
            object.__setattr__(self, "coords", coords)
        object.__setattr__(self, "_index", {x: i for i, x in enumerate(labels)})

    @classmethod
    def from_reals(cls, values: Sequence[float], labels: Sequence[Hashable] | None = None):
        values = [float(v) for v in values]
        if labels is None:
            labels = [format_real(v) for v in values]
        return cls(tuple(labels), np.asarray(values)[:, None] if values else np.zeros((0, 1)))

    @classmethod
    def from_coords(cls, coords, labels: Sequence[Hashable] | None = None):
        coords = np.asarray(coords, dtype=float)
        if labels is None:
            labels = [f"p{i}" for i in range(len(coords))]
        return cls(tuple(labels), coords)

    @classmethod
    def grid(cls, lo: float, hi: float, num: int = 101) -> "PointSet":
        """Uniform sample of ``[lo, hi]`` on the real line."""
        return cls.from_reals(grid_values(lo, hi, num))

    def __len__(self):
        return len(self.labels)

    def __iter__(self):
        return iter(self.labels)

    def __contains__(self, label):
        return str(label) in self._index

    def index(self, label) -> int:
        try:
            return self._index[str(label)]
        except KeyError:
            raise KeyError(f"unknown point {label!r}") from None

    @property
    def dim(self) -> Optional[int]:
        return None if self.coords is None else self.coords.shape[1]

    def pairs(self):
        """Unordered off-diagonal index pairs ``(i, j)`` with ``i < j``."""
        n = len(self)
        return [(i, j) for i in range(n) for j in range(i + 1, n)]

    def euclidean(self) -> np.ndarray:
        if self.coords is None:
            raise MetricError("point set has no coordinates")
        x = self.coords
        if x.shape[1] == 1:
            return np.abs(x[:, 0][:, None] - x[:, 0][None, :])
        diff = x[:, None, :] - x[None, :, :]
        return np.sqrt((diff * diff).sum(axis=-1))


@dataclass(frozen=True)
class CrispMetric:
    """Symmetric distance matrix over a :class:`PointSet`.

    Construction only checks the shape. Use :func:`check_metric_axioms` (or
    :meth:`validated`) to confirm the metric axioms. ``exact`` marks
    matrices computed in closed form; it selects the default tie slack.
    """

    points: PointSet
    dist: np.ndarray
    exact: bool = True

    def __post_init__(self):
        dist = np.array(self.dist, dtype=float)
        n = len(self.points)
        if dist.shape != (n, n):
            raise MetricError(f"distance matrix shape {dist.shape} does not match {n} points")
        dist.setflags(write=False)
        object.__setattr__(self, "dist", dist)

    @classmethod
    def from_matrix(cls, labels, matrix, exact: bool = True) -> "CrispMetric":
        return cls(PointSet(tuple(labels)), np.asarray(matrix, dtype=float), exact)

    @classmethod
    def euclidean(cls, points: PointSet) -> "CrispMetric":
        # rounded distances can break tight (collinear) triangles by an ulp
        return cls(points, points.euclidean(), exact=False)

    @property
    def labels(self):
        return self.points.labels

    def __len__(self):
        return len(self.points)

    def __call__(self, x, y) -> float:
        return float(self.dist[self.points.index(x), self.points.index(y)])

    def validated(self, slack: float | None = None) -> "CrispMetric":
        report = check_metric_axioms(self, slack)
        if not report.ok:
            first = report.failures()[0]
            raise MetricError(f"not a metric: {first.axiom} fails at {first.witness} ({first.detail})")
        return self

    def to_dict(self) -> dict:
        return {"labels": list(self.labels),
                "matrix": [[float(v) for v in row] for row in self.dist]}


def check_metric_axioms(d: CrispMetric, slack: float | None = None):
    """Nonnegativity, identity of indiscernibles, symmetry and triangle inequality.

    ``slack`` relaxes the symmetry and triangle comparisons; by default it is
    0 for exact matrices and 1e-9 otherwise.
    """
    if slack is None:
        slack = 0.0 if d.exact else 1e-9
    D = d.dist
    labels = d.labels
    n = len(labels)
    rep = AxiomReport()
    res = "exact" if slack == 0 else f"slack={slack:g}"

    bad = np.argwhere(~(D >= 0))
    if bad.size:
        i, j = bad[0]
        rep.add("D-nonneg", False, (labels[i], labels[j], D[i, j]), "negative or undefined distance")
    else:
        rep.add("D-nonneg", True, detail="all distances >= 0")

    diag = np.flatnonzero(np.diag(D) != 0)
    off = np.argwhere((D <= 0) & ~np.eye(n, dtype=bool))
    if diag.size:
        i = diag[0]
        rep.add("D-identity", False, (labels[i], labels[i], D[i, i]), "nonzero self-distance")
    elif off.size:
        i, j = off[0]
        rep.add("D-identity", False, (labels[i], labels[j], D[i, j]),
                "distinct points at distance 0")
    else:
        rep.add("D-identity", True, detail="d(x, y) = 0 iff x = y")

    asym = np.argwhere(np.abs(D - D.T) > slack)
    if asym.size:
        i, j = asym[0]
        rep.add("D-symmetry", False, (labels[i], labels[j], D[i, j], D[j, i]),
                "d(x, y) != d(y, x)", res)
    else:
        rep.add("D-symmetry", True, detail="symmetric", resolution=res)

    if n:
        # viol[x, y, z]: d(x, z) > d(x, y) + d(y, z) + slack
        viol = D[:, None, :] > D[:, :, None] + D[None, :, :] + slack
        hits = np.argwhere(viol)
    else:
        hits = np.zeros((0, 3), dtype=int)
    if hits.size:
        x, y, z = hits[0]
        rep.add("D-triangle", False,
                (labels[x], labels[y], labels[z], D[x, z], D[x, y] + D[y, z]),
                f"d(x, z) > d(x, y) + d(y, z) on {len(hits)} ordered triple(s)", res)
    else:
        rep.add("D-triangle", True, detail=f"all {n ** 3} ordered triples", resolution=res)
    return rep


def random_euclidean(n: int, dim: int = 2, rng: np.random.Generator | int | None = None,
                     scale: float = 10.0) -> CrispMetric:
    """Euclidean metric on ``n`` uniform random points of ``[0, scale]^dim``."""
    rng = np.random.default_rng(rng)
    coords = rng.uniform(0.0, scale, size=(n, dim))
    return CrispMetric.euclidean(PointSet.from_coords(coords))
