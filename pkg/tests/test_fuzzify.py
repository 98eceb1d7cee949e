import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from fuzzymetric.axioms import GridConfig
from fuzzymetric.catalog import fixture
from fuzzymetric.crispify import actual_metric, lower_lambda_metric, upper_lambda_metric
from fuzzymetric.fuzzify import indicator_fuzzify, mnk_fuzzify
from fuzzymetric.fuzzy_space import check_axioms
from fuzzymetric.membership import MembershipError
from fuzzymetric.metric import CrispMetric, MetricError, PointSet, random_euclidean


def test_indicator_jumps_at_the_distance():
    d = CrispMetric.euclidean(PointSet.from_coords([[0, 0], [3, 4]]))
    space = indicator_fuzzify(d)
    f = space.membership("p0", "p1")
    assert f.breakpoints == (5.0,)
    assert space.eval("p0", "p1", 5.0) == 0.0
    assert space.eval("p0", "p1", 5.0 + 1e-9) == 1.0


@pytest.mark.parametrize("lam", [0.1, 0.5, 0.99])
def test_indicator_lambda_metrics_return_input(lam):
    d = random_euclidean(6, 2, 3)
    space = indicator_fuzzify(d)
    assert np.array_equal(upper_lambda_metric(space, lam).dist, d.dist)
    assert np.array_equal(lower_lambda_metric(space, lam).dist, d.dist)


def test_indicator_rejects_non_metric():
    d = CrispMetric.from_matrix("abc", [[0, 1, 5], [1, 0, 1], [5, 1, 0]])
    with pytest.raises(MetricError):
        indicator_fuzzify(d)


@settings(max_examples=40, deadline=None)
@given(st.integers(1, 8), st.integers(0, 100_000))
def test_indicator_space_has_finite_distances_at_the_metric(n, seed):
    d = random_euclidean(n, 3, seed)
    space = indicator_fuzzify(d)
    rep = check_axioms(space, GridConfig(seed=seed))
    assert rep.ok, str(rep)
    for x, y, f in space.pairs():
        th = f.one_threshold()
        assert th.finite and th.t_star == d(x, y) and not th.attained_at_threshold
    assert np.array_equal(actual_metric(space).metric.dist, d.dist)


def test_double_round_trip_differs_for_graded_memberships():
    space = fixture("ex4_5")
    back = indicator_fuzzify(actual_metric(space).metric)
    # the ramp takes 1/2 at t = 1/2; its round trip is {0, 1}-valued
    assert space.eval("0", "1", 0.5) == 0.5
    assert back.eval("0", "1", 0.5) == 0.0


def test_double_round_trip_has_two_values():
    space = fixture("ex4_6", [0, 0.5, 1])
    back = indicator_fuzzify(actual_metric(space).metric)
    ts = np.linspace(-1, 5, 601)
    vals = {v for _, _, f in back.pairs() for v in f.eval_array(ts)}
    assert vals == {0.0, 1.0}


def test_unit_parameters_give_standard_fuzzy_metric():
    d = CrispMetric.from_matrix("ab", [[0, 1], [1, 0]])
    space = mnk_fuzzify(d)
    for t in (0.5, 1, 3):
        assert space.eval("a", "b", t) == t / (t + 1)


def test_mnk_substitution():
    d = CrispMetric.from_matrix("ab", [[0, 1], [1, 0]])
    assert mnk_fuzzify(d, 2, 1, 1).eval("a", "b", 2.0) == 0.5


@pytest.mark.parametrize("m, n, k", [(0, 1, 1), (1, -1, 1), (1, 1, 0)])
def test_mnk_rejects_nonpositive_parameters(m, n, k):
    d = CrispMetric.from_matrix("ab", [[0, 1], [1, 0]])
    with pytest.raises(MembershipError):
        mnk_fuzzify(d, m, n, k)


@settings(max_examples=30, deadline=None)
@given(st.floats(0.1, 5), st.floats(0.2, 4), st.floats(0.1, 5), st.integers(2, 6), st.integers(0, 10_000))
def test_mnk_spaces_are_fuzzy_metrics_that_diverge(m, n, k, npts, seed):
    d = random_euclidean(npts, 2, seed)
    space = mnk_fuzzify(d, m, n, k)
    rep = check_axioms(space, GridConfig(seed=seed))
    assert rep.passed("KM1", "KM2", "KM3", "KM5", "SDP")
    assert not rep.verdict("FD")
    assert len(actual_metric(space).diverged) == len(space.table)
