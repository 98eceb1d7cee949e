import numpy as np
import pytest

from fuzzymetric.axioms import FUZZY_METRIC_AXIOMS
from fuzzymetric.catalog import FixtureError, fixture, fixture_ids, list_fixtures
from fuzzymetric.crispify import actual_metric, lower_lambda_metric, upper_lambda_metric
from fuzzymetric.fuzzy_space import check_axioms
from fuzzymetric.metric import PointSet

import oracles


def test_staircase_values_on_two_points():
    space = fixture("ex2_4", PointSet(("u", "v")))
    assert space.eval("u", "v", 0.5) == 0.5
    assert lower_lambda_metric(space, 0.5)("u", "v") == 0.25
    assert upper_lambda_metric(space, 0.5)("u", "v") == 0.75


def test_half_near_zero_fails_sdp():
    assert not check_axioms(fixture("ex2_5", PointSet(("u", "v")))).verdict("SDP")


def test_capped_standard_limit_on_two_points():
    assert actual_metric(fixture("ex4_6", [0, 1]))("0", "1") == 2.0


@pytest.mark.parametrize("fid", [f for f in fixture_ids() if f != "ex2_5"])
def test_fixtures_are_fuzzy_metrics(fid):
    assert check_axioms(fixture(fid)).passed(*FUZZY_METRIC_AXIOMS)


def test_half_near_zero_fails_exactly_sdp():
    assert [e.axiom for e in check_axioms(fixture("ex2_5")).failures()] == ["SDP"]


@pytest.mark.parametrize("fid, fd", [("ex3_6", True), ("ex4_6", True), ("ex4_5", True),
                                     ("ex2_4", True), ("ex3_7", False)])
def test_finite_distance_property(fid, fd):
    rep = check_axioms(fixture(fid))
    assert rep.verdict("FD") is fd


def test_standard_fails_finite_distance_on_every_pair():
    space = fixture("ex3_7")
    assert all(not f.one_threshold().finite for _, _, f in space.pairs())


def test_three_quarter_capped_jumps_at_two():
    space = fixture("ex3_6", [0, 0.5])
    assert space.eval("0", "0.5", 2.0) == 3 * 2 / (4 * 2.5)
    assert space.eval("0", "0.5", 2.0 + 1e-12) == 1.0


@pytest.mark.parametrize("fid", fixture_ids())
def test_fixture_memberships_match_their_formulas(fid):
    space = fixture(fid)
    ts = np.concatenate([np.linspace(-1, 4, 501), [0.25, 0.5, 0.75, 1.0, 2.0]])
    for x, y, f in space.pairs():
        c = abs(float(x) - float(y))
        ref = oracles.fixture_formula(fid, c)
        assert np.array_equal(f.eval_array(ts), ref(ts)), (x, y)


def test_mnk_parameters_used():
    space = fixture("mnk", [0, 1], m=2, n=1, k=1)
    assert space.eval("0", "1", 2.0) == 0.5


@pytest.mark.parametrize("bad", [{"m": 0}, {"q": 1}, {"n": "x"}])
def test_mnk_parameter_validation(bad):
    with pytest.raises(FixtureError):
        fixture("mnk", [0, 1], **bad)


def test_example_fixture_takes_no_parameters():
    with pytest.raises(FixtureError):
        fixture("ex2_4", m=2)


def test_unknown_fixture():
    with pytest.raises(FixtureError, match="unknown"):
        fixture("ex9_9")


def test_distance_fixture_needs_coordinates():
    with pytest.raises(FixtureError, match="coordinates"):
        fixture("ex3_7", PointSet(("a", "b")))


def test_coordinate_free_fixture_accepts_plain_labels():
    assert len(fixture("ex4_5", PointSet(("a", "b", "c")))) == 3


def test_listing_covers_every_id():
    infos = list_fixtures()
    assert [i.id for i in infos] == fixture_ids()
    assert {i.id for i in infos} >= {"ex2_4", "ex2_5", "ex3_6", "ex3_7", "ex4_5", "ex4_6",
                                      "standard", "indicator", "mnk"}
