"""Fuzzy metric spaces over finite labeled carriers (minimum t-norm)."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Mapping

import numpy as np

from .axioms import AxiomReport, GridConfig
from .membership import CONSTANT_ONE, Membership, MembershipError, build_membership
from .metric import CrispMetric, MetricError, PointSet, check_metric_axioms

KM4_TOL = 1e-12


class SpaceError(ValueError):
    """Incomplete or inconsistent membership table."""


@dataclass(frozen=True)
class FuzzyMetricSpace:
    """A point set with one membership per unordered off-diagonal pair.

    Diagonal memberships are never stored: ``M(x, x, .)`` is 1 on
    ``(0, inf)``, so KM2 on the diagonal and KM3 hold by construction.
    """

    points: PointSet
    table: Mapping[tuple[int, int], Membership]

    @property
    def labels(self):
        return self.points.labels

    def __len__(self):
        return len(self.points)

    @property
    def exact(self) -> bool:
        return all(f.exact for f in self.table.values())

    def membership(self, x, y) -> Membership:
        i, j = self.points.index(x), self.points.index(y)
        if i == j:
            return CONSTANT_ONE
        return self.table[(i, j) if i < j else (j, i)]

    def eval(self, x, y, t: float) -> float:
        return self.membership(x, y).eval(t)

    def pairs(self):
        """``(x, y, membership)`` for every unordered pair, in carrier order."""
        labels = self.labels
        return [(labels[i], labels[j], self.table[(i, j)]) for i, j in self.points.pairs()]

    def breakpoints(self) -> list[float]:
        return sorted({b for f in self.table.values() for b in f.breakpoints if b > 0})

    def open_ball(self, center, r: float, eps: float) -> frozenset:
        return open_ball(self, center, r, eps)

    def to_spec(self) -> dict:
        return {"points": list(self.labels),
                "pairs": {f"{x},{y}": f.to_spec() for x, y, f in self.pairs()}}


def _pair_key(points: PointSet, key) -> tuple[int, int]:
    if isinstance(key, str):
        parts = key.split(",")
        if len(parts) != 2:
            raise SpaceError(f"pair key {key!r} is not of the form 'x,y'")
        key = (parts[0].strip(), parts[1].strip())
    x, y = key
    try:
        i, j = points.index(x), points.index(y)
    except KeyError as exc:
        raise SpaceError(str(exc.args[0])) from None
    if i == j:
        raise SpaceError(f"assignment to diagonal pair ({x}, {y}); diagonal memberships are fixed")
    return (i, j) if i < j else (j, i)


def build_space(points: PointSet, assignments, strict: bool = False,
                grid: GridConfig | None = None) -> FuzzyMetricSpace:
    """Assemble a space from per-pair memberships.

    ``assignments`` maps label pairs (tuples or ``"x,y"`` strings) to
    memberships or membership specs. Every unordered pair must appear once.
    Each profile must satisfy KM1, KM2 and KM5; SDP is left to
    :func:`check_axioms` unless ``strict`` is set, so spaces that are fuzzy
    metrics only in the weaker sense can still be built and examined.
    KM4 is not checked here.
    """
    if not isinstance(points, PointSet):
        points = PointSet(tuple(points))
    items = assignments.items() if isinstance(assignments, Mapping) else assignments
    table: dict[tuple[int, int], Membership] = {}
    for key, spec in items:
        ij = _pair_key(points, key)
        if ij in table:
            raise SpaceError(f"pair {points.labels[ij[0]]},{points.labels[ij[1]]} assigned twice")
        try:
            table[ij] = build_membership(spec)
        except MembershipError as exc:
            raise SpaceError(f"pair {points.labels[ij[0]]},{points.labels[ij[1]]}: {exc}") from None
    missing = [p for p in points.pairs() if p not in table]
    if missing:
        i, j = missing[0]
        raise SpaceError(f"missing membership for pair {points.labels[i]},{points.labels[j]}"
                         f" ({len(missing)} missing)")
    required = ("KM1", "KM2", "KM5", "SDP") if strict else ("KM1", "KM2", "KM5")
    for (i, j), f in table.items():
        if not f.exact:
            continue  # black boxes are accepted as declared
        rep = f.verify(is_diagonal=False, grid=grid)
        if not rep.passed(*required):
            bad = [e for e in rep.failures() if e.axiom in required][0]
            raise SpaceError(f"pair {points.labels[i]},{points.labels[j]} violates {bad.axiom}:"
                             f" {bad.detail}")
    ordered = {k: table[k] for k in sorted(table)}
    return FuzzyMetricSpace(points, ordered)


def from_metric(d: CrispMetric, factory) -> FuzzyMetricSpace:
    """Space whose pair ``(x, y)`` gets ``factory(d(x, y))``."""
    D = d.dist
    return build_space(d.points, {(d.labels[i], d.labels[j]): factory(float(D[i, j]))
                                  for i, j in d.points.pairs()})


# ------------------------------------------------------------------ checks


def _km4_nodes(space: FuzzyMetricSpace, grid: GridConfig) -> np.ndarray:
    nodes = set()

    def add(v):
        if np.isfinite(v) and v > 0:
            nodes.add(float(v))
            nodes.add(float(v + 1e-9 * max(1.0, v)))  # just past a jump

    for f in space.table.values():
        if grid.include_breakpoints:
            for b in f.breakpoints:
                add(b)
        if f.exact:
            for lam in (0.25, 0.5, 0.75):
                add(f.level_inf(lam))
                add(f.level_sup(lam))
    if not nodes:
        nodes = {1.0}
    base = np.array(sorted(nodes))
    mids = 0.5 * (base[1:] + base[:-1])
    top = 1.5 * base[-1] + 1.0
    rng = np.random.default_rng(grid.seed)
    extra = rng.uniform(0.0, top, grid.st_samples)
    allnodes = np.concatenate([base, mids, [top], extra])
    return np.unique(allnodes[allnodes > 0])


def check_km4(space: FuzzyMetricSpace, grid: GridConfig | None = None, tol: float = KM4_TOL):
    """Grid check of ``M(x, z, t + s) >= min(M(x, y, t), M(y, z, s))``.

    The (t, s) grid is built from the union of all breakpoints (and points
    just past them), a few level crossings per pair, midpoints and seeded
    random samples. Returns ``(passed, witness, resolution)``.
    """
    grid = grid or GridConfig()
    n = len(space)
    ts = _km4_nodes(space, grid)
    G = len(ts)
    res = f"grid({G}x{G}), tol={tol:g}"
    if n < 3:
        return True, None, res
    vals = np.ones((n, n, G))
    sums = ts[:, None] + ts[None, :]
    summed = {}
    for (i, j), f in space.table.items():
        vals[i, j] = vals[j, i] = f.eval_array(ts)
        summed[(i, j)] = f.eval_array(sums)
    for (x, z), lhs in summed.items():
        others = [y for y in range(n) if y != x and y != z]
        a = vals[x, others][:, :, None]        # M(x, y, t)
        b = vals[others, z][:, None, :]        # M(y, z, s)
        viol = np.minimum(a, b) > lhs[None] + tol
        if viol.any():
            k, it, is_ = np.argwhere(viol)[0]
            y = others[k]
            lab = space.labels
            witness = (lab[x], lab[y], lab[z], float(ts[it]), float(ts[is_]),
                       float(vals[x, y, it]), float(vals[y, z, is_]), float(lhs[it, is_]))
            return False, witness, res
    return True, None, res


def check_axioms(space: FuzzyMetricSpace, grid: GridConfig | None = None) -> AxiomReport:
    """Full condition list: KM1-KM5, SDP and the FD property.

    Per-pair conditions come from :meth:`Membership.verify`; the report has
    one entry per condition, carrying the first failing witness.
    """
    grid = grid or GridConfig()
    labels = space.labels
    per_pair = {}
    for (i, j), f in space.table.items():
        per_pair[(labels[i], labels[j])] = f.verify(is_diagonal=False, grid=grid)
    npairs = len(per_pair)

    rep = AxiomReport()
    for axiom in ("KM1", "KM2", "KM3", "KM4", "KM5", "SDP", "FD"):
        if axiom == "KM3":
            rep.add("KM3", True, detail="one membership per unordered pair", resolution="structural")
            continue
        if axiom == "KM4":
            ok, witness, res = check_km4(space, grid)
            detail = "min-triangle holds on grid" if ok else "M(x,z,t+s) < min(M(x,y,t), M(y,z,s))"
            rep.add("KM4", ok, witness, detail, res)
            continue
        if axiom == "FD":
            bad = []
            for (x, y), f in zip(per_pair, space.table.values()):
                if not f.one_threshold().finite:
                    bad.append((x, y))
            if bad:
                rep.add("FD", False, bad[0], f"value 1 never attained on {len(bad)} of {npairs} pairs")
            else:
                rep.add("FD", True, detail=f"value 1 attained on all {npairs} pairs")
            continue
        failures = []
        resolution = "exact"
        for pair, sub in per_pair.items():
            for e in sub.for_axiom(axiom):
                resolution = e.resolution if e.resolution != "exact" else resolution
                if not e.passed:
                    failures.append((pair, e))
        if failures:
            (x, y), e = failures[0]
            rep.add(axiom, False, (x, y) + tuple(e.witness),
                    f"{e.detail} ({len(failures)} of {npairs} pairs)", resolution)
        else:
            what = {"KM1": "zero for t <= 0", "KM2": "1 on (0, inf) only on the diagonal",
                    "KM5": "left-continuous, tends to 1", "SDP": "vanishes as t -> 0+"}[axiom]
            rep.add(axiom, True, detail=f"{what} ({npairs} pairs)", resolution=resolution)
    return rep


def open_ball(space: FuzzyMetricSpace, center, r: float, eps: float) -> frozenset:
    """``{y : M(center, y, r) > 1 - eps}``."""
    if center not in space.points:
        raise KeyError(f"unknown center {center!r}")
    if not r > 0:
        raise ValueError("ball radius must be positive")
    if not 0 < eps < 1:
        raise ValueError("fuzziness parameter must lie in (0, 1)")
    threshold = 1.0 - eps
    return frozenset(y for y in space.labels if space.eval(center, y, r) > threshold)


def generate_profile_space(d: CrispMetric, profile: Membership) -> FuzzyMetricSpace:
    """Space with ``M(x, y, t) = profile(t / d(x, y))`` off the diagonal.

    The profile must be a valid off-diagonal membership (KM1, KM2, KM5 and
    SDP). Min-triangle then follows from the triangle inequality of ``d``.
    """
    profile = build_membership(profile)
    rep = profile.verify(is_diagonal=False)
    if not rep.ok:
        bad = rep.failures()[0]
        raise MembershipError(f"profile violates {bad.axiom}: {bad.detail}")
    D = d.dist
    zero = [(i, j) for i, j in d.points.pairs() if not D[i, j] > 0]
    if zero:
        i, j = zero[0]
        raise MetricError(f"zero distance between distinct points {d.labels[i]}, {d.labels[j]}")
    metric_rep = check_metric_axioms(d)
    if not metric_rep.ok:
        bad = metric_rep.failures()[0]
        raise MetricError(f"not a metric: {bad.axiom} at {bad.witness}")
    return from_metric(d, profile.rescale)
