import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from fuzzymetric.balls import (DEFAULT_EPSILONS, DEFAULT_RADII, BallFamily, BallSpec,
                               check_refinement, compare_ball_families, crisp_ball,
                               crisp_to_fuzzy_radius, fuzzy_to_crisp_radius)
from fuzzymetric.catalog import fixture
from fuzzymetric.crispify import actual_metric
from fuzzymetric.fuzzify import indicator_fuzzify, mnk_fuzzify
from fuzzymetric.fuzzy_space import open_ball
from fuzzymetric.metric import CrispMetric, PointSet, random_euclidean

SAMPLE = PointSet.grid(-1, 1, 101)


@pytest.fixture(scope="module")
def line():
    return CrispMetric.euclidean(SAMPLE)


@pytest.fixture(scope="module")
def capped():
    return fixture("ex4_6", SAMPLE)


# --------------------------------------------------------------- crisp balls


def test_crisp_ball_on_unit_grid():
    d = CrispMetric.euclidean(PointSet.grid(0, 1, 11))
    assert crisp_ball(d, "0.5", 0.21) == {"0.3", "0.4", "0.5", "0.6", "0.7"}


def test_crisp_ball_larger_than_diameter_is_everything(line):
    assert crisp_ball(line, "0", 5.0) == set(line.labels)


def test_crisp_ball_below_min_distance_is_center(line):
    assert crisp_ball(line, "0", 0.01) == {"0"}


def test_crisp_ball_validation(line):
    with pytest.raises(ValueError):
        crisp_ball(line, "0", 0)
    with pytest.raises(KeyError):
        crisp_ball(line, "7", 1)


def test_ball_spec_members(line, capped):
    assert BallSpec(line, "0", 0.05).members() == {"-0.04", "-0.02", "0", "0.02", "0.04"}
    assert BallSpec(capped, "0", 1.0, 0.5).members() == open_ball(capped, "0", 1.0, 0.5)
    with pytest.raises(ValueError):
        BallSpec(capped, "0", 1.0)


# -------------------------------------------------------- radius conversion


def test_fuzzy_to_crisp_unit_parameters():
    assert fuzzy_to_crisp_radius(1, 1, 1, 1, 0.5) == 1.0


def test_fuzzy_to_crisp_with_m_two():
    assert fuzzy_to_crisp_radius(2, 1, 1, 1, 0.5) == 0.5


def test_crisp_to_fuzzy_unit_parameters():
    assert crisp_to_fuzzy_radius(1, 1, 1, 1, 0.5) == 1.0


def test_crisp_to_fuzzy_square():
    assert crisp_to_fuzzy_radius(1, 2, 1, 4, 0.5) == 2.0


@pytest.mark.parametrize("eps", [0.0, 1.0, -0.1])
def test_conversion_rejects_extreme_fuzziness(eps):
    with pytest.raises(ValueError):
        fuzzy_to_crisp_radius(1, 1, 1, 1, eps)
    with pytest.raises(ValueError):
        crisp_to_fuzzy_radius(1, 1, 1, 1, eps)


positive = st.floats(0.05, 20)


@settings(max_examples=200, deadline=None)
@given(positive, st.floats(0.2, 5), positive, positive, st.floats(0.01, 0.99))
def test_conversions_are_inverse(m, n, k, eta, eps):
    r = crisp_to_fuzzy_radius(m, n, k, eta, eps)
    assert fuzzy_to_crisp_radius(m, n, k, r, eps) == pytest.approx(eta, rel=1e-12)


@settings(max_examples=25, deadline=None)
@given(st.floats(0.2, 5), st.floats(0.5, 3), st.floats(0.2, 5), st.integers(0, 1000))
def test_converted_balls_agree_pointwise(m, n, k, seed):
    d = random_euclidean(12, 2, seed)
    space = mnk_fuzzify(d, m, n, k)
    for x in d.labels:
        for r in (0.5, 2.0, 7.0):
            for eps in (0.1, 0.5, 0.9):
                s = fuzzy_to_crisp_radius(m, n, k, r, eps)
                near_tie = np.abs(d.dist[d.points.index(x)] - s) <= 1e-9 * s
                keep = {y for y, tie in zip(d.labels, near_tie) if not tie}
                assert open_ball(space, x, r, eps) & keep == crisp_ball(d, x, s) & keep


# ------------------------------------------------------------- comparisons


def test_indicator_balls_equal_crisp_balls(line):
    A = BallFamily.fuzzy(indicator_fuzzify(line))
    B = BallFamily.crisp(line, DEFAULT_RADII)
    v = compare_ball_families(A, B)
    assert v.relation == "equal" and v.extensional_equal and not v.witnesses


def test_unit_mnk_balls_equal_converted_crisp_balls(line):
    A = BallFamily.fuzzy(mnk_fuzzify(line))
    B = BallFamily.crisp(line, [fuzzy_to_crisp_radius(1, 1, 1, r, e) for r, e in A.params])
    v = compare_ball_families(A, B)
    assert v.relation == "equal" and v.extensional_equal


def test_limit_indicator_strictly_refines_capped_standard(capped):
    limit_space = indicator_fuzzify(actual_metric(capped).metric)
    v = compare_ball_families(BallFamily.fuzzy(limit_space, name="limit"),
                              BallFamily.fuzzy(capped, name="capped"))
    assert v.relation == "left_refines_right"
    assert v.left_refines_right and not v.right_refines_left
    w = v.witnesses[0]
    assert w.family == "limit" and w.members == (w.center,) and w.param[0] <= 2


def test_swapped_families_flip_the_relation(capped):
    limit_space = indicator_fuzzify(actual_metric(capped).metric)
    v = compare_ball_families(BallFamily.fuzzy(capped), BallFamily.fuzzy(limit_space))
    assert v.relation == "right_refines_left"


def test_incomparable_families_carry_witnesses():
    pts = PointSet.from_reals([0, 1, 3])
    d1 = CrispMetric.euclidean(pts)
    d2 = CrispMetric.from_matrix(pts.labels, [[0, 3, 1], [3, 0, 2], [1, 2, 0]])
    v = compare_ball_families(BallFamily.crisp(d1, [1.5]), BallFamily.crisp(d2, [1.5]))
    assert v.relation == "incomparable" and v.witnesses


def test_families_on_different_samples_rejected(line):
    other = CrispMetric.euclidean(PointSet.grid(0, 1, 5))
    with pytest.raises(ValueError):
        compare_ball_families(BallFamily.crisp(line, [1]), BallFamily.crisp(other, [1]))


def test_empty_sample_rejected():
    empty = CrispMetric(PointSet(()), np.zeros((0, 0)))
    with pytest.raises(ValueError, match="empty"):
        compare_ball_families(BallFamily.crisp(empty, [1]), BallFamily.crisp(empty, [1]))


@pytest.mark.parametrize("r0", [0.5, 1.1, 1.7, 2.0])
@pytest.mark.parametrize("eps0", DEFAULT_EPSILONS)
def test_capped_standard_ball_formula(capped, r0, eps0):
    # inside r0 <= 2 the fuzzy ball is {|x - x0| < r0 eps0 / (1 - eps0)}
    x = SAMPLE.coords[:, 0]
    R = r0 * eps0 / (1 - eps0)
    for i in (0, 37, 50, 100):
        center = SAMPLE.labels[i]
        expected = {SAMPLE.labels[j] for j in range(len(x)) if abs(x[j] - x[i]) < R}
        assert open_ball(capped, center, r0, eps0) == expected


def test_limit_side_ball_is_singleton(capped):
    limit_space = indicator_fuzzify(actual_metric(capped).metric)
    for r0 in (0.5, 1.1, 2.0):
        for eps0 in (0.05, 0.3):
            assert open_ball(limit_space, "0.5", r0, eps0) == {"0.5"}


# ---------------------------------------------------------- inclusion check


def test_limit_balls_inside_fuzzy_balls(capped):
    v = check_refinement(capped)
    assert v.relation == "left_refines_right"
    assert v.cells == len(SAMPLE) * len(DEFAULT_RADII) * len(DEFAULT_EPSILONS)


def test_indicator_inclusion_is_equality(line):
    v = check_refinement(indicator_fuzzify(line))
    assert v.relation == "equal" and not v.witnesses


def test_tiny_radius_gives_trivial_inclusion(capped):
    v = check_refinement(capped, radii=[1e-3], epsilons=[0.5])
    assert v.relation == "equal"


def test_divergent_limit_rejected():
    with pytest.raises(ArithmeticError):
        check_refinement(fixture("ex3_7"))


def test_strict_inclusion_witnesses_name_extra_points(capped):
    v = check_refinement(capped)
    dM = actual_metric(capped).metric
    for w in v.witnesses:
        r, eps = w.param
        extra = open_ball(capped, w.center, r, eps) - crisp_ball(dM, w.center, r)
        assert set(w.members) == extra and extra
