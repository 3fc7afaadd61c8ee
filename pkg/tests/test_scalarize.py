import dataclasses

import numpy as np
import pytest

from paretoscope.core import GoalSpec, Objective, ProblemDefinition
from paretoscope.errors import DimensionMismatch, ValidationError
from paretoscope.grids import GridSpec
from paretoscope.sampler import Direction, bisect_ray, lambda_max_for, utopia
from paretoscope.scalarize import scalarize_sweep, solve_scalarized

from oracles import brute_force_survivors

TOY_GRID = GridSpec.counts(201, 201)


class TestSolveScalarized:
    def test_sum_goal_level_line_tie_break(self, toy):
        # f = x1 + x2 = 1 along the whole face; the lowest-lexicographic grid
        # point on it is (0, 1)
        sol = solve_scalarized(toy, GoalSpec("sum", weights=(1.0, 1.0)), TOY_GRID)
        assert sol.value == pytest.approx(1.0, abs=1e-12)
        assert sol.x_star.x == (0.0, 1.0)

    def test_chebyshev_goal_midpoint(self, toy):
        sol = solve_scalarized(toy, GoalSpec("chebyshev", weights=(1.0, 1.0)), TOY_GRID)
        assert sol.x_star.x == (0.5, 0.5)
        assert sol.value == pytest.approx(0.5, abs=1e-12)

    def test_value_equals_goal_of_gstar(self, toy):
        from paretoscope.core import eval_goal

        goal = GoalSpec("sum", weights=(0.7, 1.3))
        sol = solve_scalarized(toy, goal, TOY_GRID)
        assert sol.value == eval_goal(goal, sol.g_star)

    def test_gstar_reevaluates(self, toy):
        sol = solve_scalarized(toy, GoalSpec("chebyshev", weights=(0.4, 1.1)), TOY_GRID)
        assert toy.evaluate(sol.x_star.x).values == sol.g_star.values

    def test_refinement_monotone_and_improving(self, toy):
        goal = GoalSpec("chebyshev", weights=(0.37, 0.81))
        coarse = solve_scalarized(toy, goal, GridSpec.counts(21, 21), refine_levels=0,
                                  cross_validate=False)
        values = [
            solve_scalarized(toy, goal, GridSpec.counts(21, 21), refine_levels=k,
                             cross_validate=False).value
            for k in range(4)
        ]
        assert values[0] == coarse.value
        assert all(b >= a for a, b in zip(values, values[1:]))
        # the true optimum is 1/(w1+w2); refinement approaches it from below
        assert values[-1] <= 1.0 / (0.37 + 0.81) + 1e-12
        assert values[-1] > values[0]

    def test_chebyshev_cross_validation_runs(self, toy):
        scan = dataclasses.replace(toy, membership=None)
        sol = solve_scalarized(scan, GoalSpec("chebyshev", weights=(1.0, 1.0)), TOY_GRID,
                               cross_validate=True)
        assert "bisect_lambda" in sol.diagnostics
        assert abs(sol.diagnostics["bisect_lambda"] - sol.diagnostics["grid_value"]) \
            <= sol.diagnostics["cross_validation_eps"]

    def test_weak_pareto_certificate(self, toy):
        sol = solve_scalarized(toy, GoalSpec("sum", weights=(1.0, 2.0)), TOY_GRID)
        assert sol.diagnostics["strictly_dominated_on_grid"] is False

    def test_degenerate_product_flag(self):
        # second objective is identically zero, so every product is zero; the
        # solver falls back to maximizing the count of nonzero objectives
        problem = ProblemDefinition(
            name="flatline",
            lower=(0.0,),
            upper=(1.0,),
            integral=(False,),
            objectives=(
                Objective("live", "u", lambda x: x[0]),
                Objective("dead", "u", lambda x: 0.0),
            ),
            origin_point=(0.0,),
        )
        sol = solve_scalarized(problem, GoalSpec("product", weights=(1.0, 1.0)),
                               GridSpec.counts(11))
        assert sol.diagnostics["degenerate_product"] is True
        assert sol.value == 0.0
        assert sol.g_star.values[0] > 0.0

    def test_dimension_mismatch(self, toy):
        with pytest.raises(DimensionMismatch):
            solve_scalarized(toy, GoalSpec("sum", weights=(1.0, 1.0, 1.0)), TOY_GRID)

    def test_product_argmax_invariant_under_objective_rescaling(self):
        # scaling one objective by c > 0 rescales every product value by c^w
        # and leaves the winning grid point alone
        def variant(c):
            return ProblemDefinition(
                name=f"scaled_{c}",
                lower=(0.0, 0.0),
                upper=(1.0, 1.0),
                integral=(False, False),
                objectives=(
                    Objective("a", "u", lambda x, c=c: c * x[0]),
                    Objective("b", "u", lambda x: 1.0 - 0.6 * x[1] ** 2 if x != (0.0, 0.0) else 0.0),
                ),
                origin_point=(0.0, 0.0),
                validate_origin=False,
            )

        goal = GoalSpec("product", weights=(1.3, 0.7))
        grid = GridSpec.counts(17, 17)
        base = solve_scalarized(variant(1.0), goal, grid)
        for c in (0.02, 5.0, 900.0):
            assert solve_scalarized(variant(c), goal, grid).x_star == base.x_star

    def test_distance_goal_reaches_reference_region(self, toy):
        from paretoscope.core import ObjectiveVector

        goal = GoalSpec("distance", reference=ObjectiveVector((1.0, 1.0)), p=2)
        sol = solve_scalarized(toy, goal, TOY_GRID)
        # closest simplex point to (1,1) is (0.5, 0.5)
        assert sol.x_star.x == (0.5, 0.5)

    def test_mimo_chebyshev_with_utopia_weights(self, mimo):
        grid = GridSpec.values(
            np.arange(1.0, 251.0, 10.0), np.arange(2.0, 501.0, 20.0),
            np.concatenate(([0.0], np.logspace(-3, 4, 16))),
        )
        u = utopia(mimo, grid)
        goal = GoalSpec("chebyshev", weights=u.values)
        sol = solve_scalarized(mimo, goal, grid, cross_validate=True)
        direction = Direction(u.values)
        ray = bisect_ray(mimo, direction, 1e-6, lambda_max_for(direction, u), grid)
        assert abs(sol.value - ray.lam) <= 1e-6


class TestScalarizeSweep:
    def test_five_weights_five_boundary_points(self, toy):
        weights = [(w, 1.0 - w) for w in (0.1, 0.3, 0.5, 0.7, 0.9)]
        front = scalarize_sweep(toy, "chebyshev", weights, TOY_GRID)
        assert front.method == "scalarize_sweep"
        assert len(front.points) == 5
        for p in front.points:
            assert p.g.values[0] + p.g.values[1] == pytest.approx(1.0, abs=1e-9)

    def test_convex_sum_sweep_nondominated(self, toy):
        weights = [(w, 1.0 - w) for w in np.linspace(0.05, 0.95, 9)]
        front = scalarize_sweep(toy, "sum", weights, TOY_GRID)
        vals = front.values()
        assert brute_force_survivors(vals).all()

    def test_sum_sweep_misses_unsupported_point_chebyshev_reaches_it(self):
        # three attainable vectors: corners (1,0), (0,1) and a dented middle
        # (0.45, 0.45) below the segment between them. No simplex weight makes
        # the weighted sum pick the dent; the chebyshev sweep lands on it.
        table = {0.0: (0.0, 0.0), 1.0: (1.0, 0.0), 2.0: (0.45, 0.45), 3.0: (0.0, 1.0)}
        problem = ProblemDefinition(
            name="dented",
            lower=(0.0,),
            upper=(3.0,),
            integral=(True,),
            objectives=(
                Objective("a", "u", lambda x: table[x[0]][0]),
                Objective("b", "u", lambda x: table[x[0]][1]),
            ),
            origin_point=(0.0,),
        )
        grid = GridSpec.values([0.0, 1.0, 2.0, 3.0])
        weights = [(w, 1.0 - w) for w in np.linspace(0.05, 0.95, 19)]
        sum_front = scalarize_sweep(problem, "sum", weights, grid)
        cheb_front = scalarize_sweep(problem, "chebyshev", weights, grid)
        dent = (0.45, 0.45)
        assert dent not in {p.g.values for p in sum_front.points}
        assert dent in {p.g.values for p in cheb_front.points}

    def test_duplicates_merge_with_weights_recorded(self, toy):
        weights = [(0.5, 0.5), (0.4, 0.6), (0.6, 0.4)]
        front = scalarize_sweep(toy, "sum", weights, GridSpec.counts(3, 3))
        total = sum(len(p.meta["weights"]) for p in front.points)
        assert total == 3
        assert len(front.points) < 3

    def test_weights_must_be_on_simplex(self, toy):
        with pytest.raises(ValidationError):
            scalarize_sweep(toy, "sum", [(0.9, 0.9)], TOY_GRID)
        with pytest.raises(ValidationError):
            scalarize_sweep(toy, "sum", [(1.2, -0.2)], TOY_GRID)
        with pytest.raises(ValidationError):
            scalarize_sweep(toy, "distance", [(0.5, 0.5)], TOY_GRID)
