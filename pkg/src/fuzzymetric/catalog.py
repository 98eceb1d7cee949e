"""Named fixtures: the worked example spaces, built on concrete carriers."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Callable, Sequence

from .fuzzify import indicator_fuzzify, mnk_fuzzify
from .fuzzy_space import FuzzyMetricSpace, from_metric
from .membership import Membership, PiecewiseMembership, RationalMembership
from .metric import CrispMetric, PointSet


class FixtureError(ValueError):
    """Unknown fixture id, bad parameters or an unusable carrier."""


@dataclass(frozen=True)
class FixtureInfo:
    id: str
    description: str
    needs_coords: bool
    default_carrier: tuple
    params: tuple = ()

    def to_dict(self):
        return {"id": self.id, "description": self.description,
                "needs_coords": self.needs_coords,
                "default_carrier": list(self.default_carrier), "params": list(self.params)}


def _staircase(_c: float) -> Membership:
    # t on (0, 1/4], 1/2 on (1/4, 3/4], t on (3/4, 1], then 1
    return PiecewiseMembership.from_pieces([0.0, 0.25, 0.75, 1.0], [(0.0, 0.25), 0.5, (0.75, 1.0)])


def _half_near_zero(_c: float) -> Membership:
    return PiecewiseMembership.from_pieces([0.0, 0.5], [0.5])


def _ramp(_c: float) -> Membership:
    return PiecewiseMembership.from_pieces([0.0, 1.0], [(0.0, 1.0)])


def _three_quarter_capped(c: float) -> Membership:
    return RationalMembership(1.0, 1.0, 1.0, c, scale=0.75, cap=2.0)


def _standard(c: float) -> Membership:
    return RationalMembership(1.0, 1.0, 1.0, c)


def _standard_capped(c: float) -> Membership:
    return RationalMembership(1.0, 1.0, 1.0, c, cap=2.0)


# id -> (profile keyed by |x - y|, uses distances, default carrier, description)
_EXAMPLES: dict[str, tuple[Callable[[float], Membership], bool, tuple, str]] = {
    "ex2_4": (_staircase, False, (0.0, 1.0, 2.0),
              "t on (0,1/4], 1/2 on (1/4,3/4], t on (3/4,1], 1 above"),
    "ex2_5": (_half_near_zero, False, (0.0, 1.0, 2.0),
              "1/2 on (0,1/2], 1 above; fails SDP"),
    "ex3_6": (_three_quarter_capped, True, tuple(i / 10 for i in range(11)),
              "3t/(4(t+|x-y|)) on (0,2], 1 above"),
    "ex3_7": (_standard, True, (1.0, 2.0, 5.0),
              "t/(t+|x-y|), never reaches 1"),
    "ex4_5": (_ramp, False, (0.0, 1.0, 2.0),
              "t on (0,1], 1 above"),
    "ex4_6": (_standard_capped, True, (0.0, 0.5, 1.0),
              "t/(t+|x-y|) on (0,2], 1 above"),
}

_DERIVED = {
    "standard": ("t/(t+d(x,y)) with d Euclidean on the carrier", ()),
    "indicator": ("1 if d(x,y) < t else 0, d Euclidean on the carrier", ()),
    "mnk": ("k t^n/(k t^n + m d(x,y)), d Euclidean on the carrier", ("m", "n", "k")),
}

DEFAULT_DERIVED_CARRIER = (0.0, 1.0, 3.0)


def list_fixtures() -> list[FixtureInfo]:
    out = [FixtureInfo(fid, desc, coords, carrier)
           for fid, (_, coords, carrier, desc) in _EXAMPLES.items()]
    out += [FixtureInfo(fid, desc, True, DEFAULT_DERIVED_CARRIER, params)
            for fid, (desc, params) in _DERIVED.items()]
    return out


def fixture_ids() -> list[str]:
    return [info.id for info in list_fixtures()]


def _carrier(carrier, default) -> PointSet:
    if carrier is None:
        return PointSet.from_reals(default)
    if isinstance(carrier, PointSet):
        return carrier
    return PointSet.from_reals(list(carrier))


def _distances(points: PointSet, fid: str) -> CrispMetric:
    if points.coords is None:
        raise FixtureError(f"fixture {fid} needs carrier coordinates")
    return CrispMetric.euclidean(points)


def fixture(fid: str, carrier: PointSet | Sequence[float] | None = None, **params) -> FuzzyMetricSpace:
    """Build fixture ``fid`` on ``carrier`` (a point set or a list of reals).

    Coordinate-free examples put the same membership on every pair; the
    others key each pair's membership by the Euclidean distance of the
    carrier coordinates. ``mnk`` takes ``m``, ``n``, ``k`` (default 1).
    """
    if fid in _EXAMPLES:
        if params:
            raise FixtureError(f"fixture {fid} takes no parameters, got {sorted(params)}")
        profile, coords, default, _ = _EXAMPLES[fid]
        points = _carrier(carrier, default)
        if len(points) == 0:
            raise FixtureError("empty carrier")
        if coords:
            return from_metric(_distances(points, fid), profile)
        # only the pair structure matters; distances are unused
        d = CrispMetric(points, _unit_distances(len(points)))
        return from_metric(d, profile)
    if fid in _DERIVED:
        allowed = set(_DERIVED[fid][1])
        unknown = set(params) - allowed
        if unknown:
            raise FixtureError(f"fixture {fid} does not take {sorted(unknown)}")
        points = _carrier(carrier, DEFAULT_DERIVED_CARRIER)
        if len(points) == 0:
            raise FixtureError("empty carrier")
        d = _distances(points, fid)
        if fid == "indicator":
            return indicator_fuzzify(d)
        if fid == "standard":
            return mnk_fuzzify(d)
        try:
            m, n, k = (float(params.get(p, 1.0)) for p in ("m", "n", "k"))
        except (TypeError, ValueError):
            raise FixtureError("m, n, k must be numbers") from None
        if not (m > 0 and n > 0 and k > 0):
            raise FixtureError("m, n, k must be positive")
        return mnk_fuzzify(d, m, n, k)
    raise FixtureError(f"unknown fixture {fid!r}; known: {', '.join(fixture_ids())}")


def _unit_distances(n: int):
    import numpy as np
    return np.ones((n, n)) - np.eye(n)
