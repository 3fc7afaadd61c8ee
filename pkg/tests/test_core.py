import math

import numpy as np
import pytest

from paretoscope.core import (
    GoalSpec,
    ObjectiveVector,
    ProblemDefinition,
    Objective,
    ResourcePoint,
    dominates,
    eval_goal,
    normalize_weights,
    pareto_filter,
    restrict_objectives,
    survivor_mask,
)
from paretoscope.errors import (
    DimensionMismatch,
    EmptyInputError,
    ValidationError,
)

from oracles import brute_force_survivors


def _pairs(vectors):
    return [(ResourcePoint((float(i),)), ObjectiveVector(v)) for i, v in enumerate(vectors)]


class TestObjectiveVector:
    def test_basic(self):
        g = ObjectiveVector((1.0, 2.0), ("bit/s", "bit/J"))
        assert g.values == (1.0, 2.0)
        assert len(g) == 2
        assert g[1] == 2.0

    def test_default_units(self):
        assert ObjectiveVector((1.0,)).units == ("",)

    @pytest.mark.parametrize("bad", [(-1.0, 0.0), (float("nan"), 1.0), (float("inf"), 1.0)])
    def test_rejects_invalid(self, bad):
        with pytest.raises(ValidationError):
            ObjectiveVector(bad)

    def test_unit_length_mismatch(self):
        with pytest.raises(DimensionMismatch):
            ObjectiveVector((1.0, 2.0), ("bit/s",))


class TestDominates:
    def test_componentwise_greater(self):
        assert dominates((2, 1), (1, 1)) is True

    def test_equal_vectors_do_not_dominate(self):
        assert dominates((1, 1), (1, 1)) is False

    def test_incomparable(self):
        assert dominates((2, 0), (1, 1)) is False
        assert dominates((1, 1), (2, 0)) is False

    def test_dimension_mismatch(self):
        with pytest.raises(DimensionMismatch):
            dominates((1, 2), (1, 2, 3))

    def test_irreflexive_antisymmetric_transitive(self):
        rng = np.random.default_rng(3)
        for _ in range(500):
            a, b, c = rng.integers(0, 4, (3, 3)).astype(float)
            assert not dominates(a, a)
            assert not (dominates(a, b) and dominates(b, a))
            if dominates(a, b) and dominates(b, c):
                assert dominates(a, c)


class TestParetoFilter:
    def test_hand_example(self):
        pairs = _pairs([(1, 2), (2, 1), (1, 1), (0, 0)])
        survivors = pareto_filter(pairs)
        assert [p[1].values for p in survivors] == [(1.0, 2.0), (2.0, 1.0)]

    def test_singleton(self):
        pairs = _pairs([(5, 5)])
        assert pareto_filter(pairs) == pairs

    def test_empty_errors(self):
        with pytest.raises(EmptyInputError):
            pareto_filter([])

    def test_mixed_dimensions_error(self):
        pairs = [
            (ResourcePoint((0.0,)), ObjectiveVector((1.0, 2.0))),
            (ResourcePoint((1.0,)), ObjectiveVector((1.0,))),
        ]
        with pytest.raises(DimensionMismatch):
            pareto_filter(pairs)

    def test_exact_ties_all_survive(self):
        pairs = _pairs([(1, 2), (1, 2), (0, 1)])
        survivors = pareto_filter(pairs)
        assert len(survivors) == 2
        assert survivors[0] is pairs[0] and survivors[1] is pairs[1]

    def test_stable_order(self):
        pairs = _pairs([(0, 3), (2, 2), (3, 0), (1, 1)])
        survivors = pareto_filter(pairs)
        assert [p[1].values for p in survivors] == [(0.0, 3.0), (2.0, 2.0), (3.0, 0.0)]

    def test_matches_brute_force_oracle(self):
        rng = np.random.default_rng(11)
        for _ in range(25):
            n = int(rng.integers(1, 1000))
            m = int(rng.integers(2, 4))
            vals = rng.random((n, m))
            if n > 10:
                vals[rng.integers(0, n, n // 10)] = vals[rng.integers(0, n, n // 10)]
            assert np.array_equal(survivor_mask(vals), brute_force_survivors(vals))

    def test_idempotent(self):
        rng = np.random.default_rng(12)
        pairs = _pairs(rng.random((200, 3)).tolist())
        once = pareto_filter(pairs)
        assert pareto_filter(once) == once


class TestGoalSpec:
    def test_weighted_kinds_require_positive_weights(self):
        with pytest.raises(ValidationError):
            GoalSpec("sum", weights=(1.0, 0.0))
        with pytest.raises(ValidationError):
            GoalSpec("chebyshev", weights=None)

    def test_distance_requires_reference(self):
        with pytest.raises(ValidationError):
            GoalSpec("distance")
        with pytest.raises(ValidationError):
            GoalSpec("distance", weights=(1.0,), reference=ObjectiveVector((1.0,)))

    def test_distance_norm_orders(self):
        ref = ObjectiveVector((1.0, 1.0))
        for p in (1, 2, "inf"):
            GoalSpec("distance", reference=ref, p=p)
        with pytest.raises(ValidationError):
            GoalSpec("distance", reference=ref, p=3)

    def test_unknown_kind(self):
        with pytest.raises(ValidationError):
            GoalSpec("lexicographic", weights=(1.0,))


class TestEvalGoal:
    def test_sum(self):
        assert eval_goal(GoalSpec("sum", weights=(1, 1)), (2, 3)) == 5.0

    def test_chebyshev(self):
        assert eval_goal(GoalSpec("chebyshev", weights=(1, 2)), (2, 3)) == 1.5

    def test_distance_zero_at_reference(self):
        goal = GoalSpec("distance", reference=ObjectiveVector((1.0, 1.0)), p=2)
        assert eval_goal(goal, (1, 1)) == 0.0

    def test_distance_norms(self):
        ref = ObjectiveVector((1.0, 1.0))
        g = (0.0, 0.0)
        assert eval_goal(GoalSpec("distance", reference=ref, p=1), g) == -2.0
        assert eval_goal(GoalSpec("distance", reference=ref, p=2), g) == -math.sqrt(2.0)
        assert eval_goal(GoalSpec("distance", reference=ref, p="inf"), g) == -1.0

    def test_product_zero_is_zero_not_error(self):
        assert eval_goal(GoalSpec("product", weights=(0.5, 2.0)), (0.0, 3.0)) == 0.0

    def test_product(self):
        assert eval_goal(GoalSpec("product", weights=(2.0, 1.0)), (3.0, 4.0)) == pytest.approx(36.0)

    def test_nan_rejected(self):
        with pytest.raises(ValidationError):
            eval_goal(GoalSpec("sum", weights=(1, 1)), np.array([np.nan, 1.0]))

    def test_monotone_under_dominance(self):
        rng = np.random.default_rng(5)
        goals = [
            GoalSpec("sum", weights=(0.5, 1.5, 1.0)),
            GoalSpec("product", weights=(1.0, 2.0, 0.5)),
            GoalSpec("chebyshev", weights=(1.0, 0.3, 2.0)),
        ]
        for _ in range(300):
            a, b = rng.random((2, 3)) * 10
            if dominates(a, b):
                for goal in goals:
                    assert eval_goal(goal, a) >= eval_goal(goal, b)

    def test_product_argmax_invariant_under_rescaling(self):
        # scaling objective m by c > 0 multiplies every product value by c^w_m
        rng = np.random.default_rng(6)
        goal = GoalSpec("product", weights=(1.5, 0.5))
        cand = rng.random((50, 2)) + 0.01
        base = np.argmax([eval_goal(goal, g) for g in cand])
        for c in (0.01, 3.7, 250.0):
            scaled = cand * np.array([c, 1.0])
            assert np.argmax([eval_goal(goal, g) for g in scaled]) == base

    def test_chebyshev_epigraph_consistency(self):
        # argmax of min(g/w) is the candidate with the largest feasible scale
        # lambda such that g >= lambda * w componentwise
        rng = np.random.default_rng(7)
        w = np.array([1.3, 0.6])
        cand = rng.random((40, 2))
        goal = GoalSpec("chebyshev", weights=tuple(w))
        by_goal = int(np.argmax([eval_goal(goal, g) for g in cand]))
        lams = [max(l for l in np.linspace(0, 2, 4001) if (g >= l * w).all()) for g in cand]
        assert int(np.argmax(lams)) == by_goal


def test_normalize_weights():
    assert normalize_weights((2.0, 2.0)) == (0.5, 0.5)
    assert sum(normalize_weights((0.3, 1.9, 7.0))) == pytest.approx(1.0)
    with pytest.raises(ValidationError):
        normalize_weights((0.0, 0.0))


class TestProblemDefinition:
    def test_origin_must_be_feasible_and_zero(self):
        with pytest.raises(ValidationError):
            ProblemDefinition(
                name="bad",
                lower=(0.0,),
                upper=(1.0,),
                integral=(False,),
                objectives=(Objective("g", "u", lambda x: x[0] + 1.0),),
                origin_point=(0.0,),
            )

    def test_bounds_must_be_finite(self):
        with pytest.raises(ValidationError):
            ProblemDefinition(
                name="bad",
                lower=(0.0,),
                upper=(float("inf"),),
                integral=(False,),
                objectives=(Objective("g", "u", lambda x: x[0]),),
                origin_point=(0.0,),
            )

    def test_integrality_enforced(self, mimo):
        assert mimo.feasible((3.0, 10.0, 1.0))
        assert not mimo.feasible((3.5, 10.0, 1.0))

    def test_evaluate_matches_scalar_objectives(self, toy):
        g = toy.evaluate((0.25, 0.5))
        assert g.values == (0.25, 0.5)
        assert g.units == ("unit", "unit")

    def test_restrict_objectives(self, mimo):
        sub = restrict_objectives(mimo, (0, 2))
        assert sub.M == 2
        assert sub.objective_names == ("user_rate", "energy_efficiency")
        full = mimo.evaluate((10.0, 100.0, 5.0)).values
        assert sub.evaluate((10.0, 100.0, 5.0)).values == (full[0], full[2])

    def test_restrict_validates_indices(self, mimo):
        with pytest.raises(ValidationError):
            restrict_objectives(mimo, (0, 3))
        with pytest.raises(ValidationError):
            restrict_objectives(mimo, (1, 1))
