"""Fuzzy metrics built from a crisp metric."""

from __future__ import annotations

from .fuzzy_space import FuzzyMetricSpace, from_metric
from .membership import MembershipError, PiecewiseMembership, RationalMembership
from .metric import CrispMetric


def indicator_fuzzify(d: CrispMetric) -> FuzzyMetricSpace:
    """The {0, 1}-valued fuzzy metric of ``d``.

    ``M_d(x, y, t)`` is 1 when ``d(x, y) < t`` and 0 otherwise, i.e. a step
    at ``d(x, y)`` with value 0 *at* the step. ``d`` must be a metric.
    """
    d.validated()
    return from_metric(d, PiecewiseMembership.step)


def mnk_fuzzify(d: CrispMetric, m: float = 1.0, n: float = 1.0, k: float = 1.0) -> FuzzyMetricSpace:
    """``k t^n / (k t^n + m d(x, y))``; m = n = k = 1 is the standard fuzzy metric.

    Membership 1 is only approached, never attained, so these spaces never
    have finite-distance thresholds.
    """
    if not (m > 0 and n > 0 and k > 0):
        raise MembershipError("m, n, k must be positive")
    d.validated()
    return from_metric(d, lambda c: RationalMembership(m, n, k, c))
