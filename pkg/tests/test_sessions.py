import numpy as np
import pytest

from paretoscope.errors import OverConstrainedError, ValidationError
from paretoscope.grids import GridSpec
from paretoscope.sampler import sample_front, utopia
from paretoscope.sessions import (
    BoundRefinement,
    FloorRefinement,
    SessionState,
    apply_refinements,
    refinement_from_dict,
)

TOY_GRID = GridSpec.counts(101, 101)


class TestApplyRefinements:
    def test_empty_list_is_identity(self, toy):
        assert apply_refinements(toy, []) is toy

    def test_bound_tightening(self, toy):
        refined = apply_refinements(toy, [BoundRefinement(dim=0, upper=0.4)])
        assert refined.upper == (0.4, 1.0)
        assert toy.upper == (1.0, 1.0)
        assert refined.feasible((0.3, 0.3))
        assert not refined.feasible((0.5, 0.3))

    def test_bounds_cannot_escape_box(self, toy):
        with pytest.raises(ValidationError):
            apply_refinements(toy, [BoundRefinement(dim=0, upper=1.5)])
        with pytest.raises(ValidationError):
            apply_refinements(toy, [BoundRefinement(dim=0, lower=-0.5)])

    def test_crossed_bounds_rejected(self, toy):
        with pytest.raises(ValidationError):
            apply_refinements(
                toy,
                [BoundRefinement(dim=0, lower=0.8), BoundRefinement(dim=0, upper=0.2)],
            )

    def test_floor_shrinks_feasible_set(self, toy):
        refined = apply_refinements(toy, [FloorRefinement(objective=0, value=0.5)])
        assert not refined.feasible((0.2, 0.2))
        assert refined.feasible((0.6, 0.3))
        mask = refined.feasible_mask(np.array([[0.2, 0.2], [0.6, 0.3]]))
        assert mask.tolist() == [False, True]

    def test_floor_must_be_nonnegative(self, toy):
        with pytest.raises(ValidationError):
            apply_refinements(toy, [FloorRefinement(objective=0, value=-0.1)])

    def test_floor_above_utopia_over_constrains(self, toy):
        # utopia component is 1.0; no point reaches 1.01
        with pytest.raises(OverConstrainedError):
            apply_refinements(toy, [FloorRefinement(objective=0, value=1.01)], search=TOY_GRID)

    def test_over_constrained_via_crossing_floors(self, toy):
        with pytest.raises(OverConstrainedError):
            apply_refinements(
                toy,
                [FloorRefinement(objective=0, value=0.7), FloorRefinement(objective=1, value=0.7)],
                search=TOY_GRID,
            )

    def test_default_grid_clipped(self, toy):
        refined = apply_refinements(toy, [BoundRefinement(dim=0, upper=0.5)])
        axes0 = refined.default_grid.axes[0]
        assert max(axes0) <= 0.5

    def test_front_shrinks_under_floor(self, mimo):
        # every direction reaches at most as far as before the refinement
        grid = GridSpec.values(
            np.arange(1.0, 251.0, 25.0), np.arange(2.0, 501.0, 25.0),
            np.concatenate(([0.0], np.logspace(-2, 4, 10))),
        )
        base_front = sample_front(mimo, count=6, eps=1e-4, search=grid)
        refined = apply_refinements(mimo, [FloorRefinement(objective=2, value=2e6)],
                                    search=grid)
        ref_front = sample_front(refined, count=6, eps=1e-4, search=grid.clipped_to(refined))
        for a, b in zip(base_front.points, ref_front.points):
            if a.direction is None or b.direction is None:
                continue
            assert b.g.values[2] >= 2e6
        base_u = utopia(mimo, grid).values
        ref_u = utopia(refined, grid).values
        assert all(r <= b for r, b in zip(ref_u, base_u))

    def test_unknown_dimension_or_objective(self, toy):
        with pytest.raises(ValidationError):
            apply_refinements(toy, [BoundRefinement(dim=5, upper=0.5)])
        with pytest.raises(ValidationError):
            apply_refinements(toy, [FloorRefinement(objective=5, value=0.5)])


class TestRefinementCodec:
    def test_round_trip(self):
        refs = [
            BoundRefinement(dim=1, lower=0.2, upper=0.8),
            FloorRefinement(objective=0, value=3.5),
        ]
        docs = [r.to_dict() for r in refs]
        assert [refinement_from_dict(d) for d in docs] == refs

    def test_unknown_type_rejected(self):
        with pytest.raises(ValidationError):
            refinement_from_dict({"type": "teleport"})


class TestSessionState:
    def test_version_counts_refinements(self):
        s = SessionState(session_id="s1", problem_name="toy_simplex")
        assert s.version == 0
        s.refinements.append(FloorRefinement(objective=0, value=0.1))
        assert s.version == 1

    def test_refinements_at_prefix(self):
        s = SessionState(session_id="s1", problem_name="toy_simplex")
        s.refinements += [
            FloorRefinement(objective=0, value=0.1),
            FloorRefinement(objective=0, value=0.2),
        ]
        assert s.refinements_at(0) == []
        assert s.refinements_at(1) == [FloorRefinement(objective=0, value=0.1)]
        with pytest.raises(ValidationError):
            s.refinements_at(3)

    def test_dict_round_trip(self):
        s = SessionState(session_id="abc", problem_name="mimo_case_study")
        s.refinements.append(BoundRefinement(dim=0, upper=100.0))
        s.front_cache["key"] = "front1"
        again = SessionState.from_dict(s.to_dict())
        assert again == s
