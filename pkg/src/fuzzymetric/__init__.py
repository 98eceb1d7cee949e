"""Fuzzy metric spaces over finite carriers: axiom checks, crispification
(lambda-metrics and their limit), fuzzification of crisp metrics and
ball-family comparisons."""

__version__ = "0.1.0"

from .axioms import AxiomEntry, AxiomReport, GridConfig
from .balls import (BallFamily, BallSpec, ComparisonVerdict, check_refinement,
                    check_refinement_thm47, compare_ball_families, crisp_ball,
                    crisp_to_fuzzy_radius, fuzzy_to_crisp_radius)
from .catalog import FixtureError, fixture, fixture_ids, list_fixtures
from .crispify import (ActualMetric, AlphaProfile, LambdaSweep, MuProfile, ProfileError,
                       actual_metric, equality_at_lambda, lambda_sweep, lower_lambda_metric,
                       radu_alpha_metric, radu_metric, radu_mu_metric, upper_lambda_metric)
from .fuzzify import indicator_fuzzify, mnk_fuzzify
from .fuzzy_space import (FuzzyMetricSpace, SpaceError, build_space, check_axioms,
                          generate_profile_space, open_ball)
from .membership import (BlackBoxMembership, LevelUnreachable, Membership, MembershipError,
                         OneThreshold, PiecewiseMembership, Plateau, PlateauUndecidable,
                         RationalMembership, build_membership, verify_profile)
from .metric import CrispMetric, MetricError, PointSet, check_metric_axioms, random_euclidean
