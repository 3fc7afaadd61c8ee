"""Exploration sessions: ordered refinements over a base problem.

A refinement either tightens one box dimension or imposes a floor on one
objective; both only ever shrink the feasible set. The session version is the
number of applied refinements, and cached fronts are keyed by the version
they were sampled at, so a front is never served against a stale feasible
set.
"""

from __future__ import annotations

import dataclasses
from dataclasses import dataclass, field
from typing import Sequence, Union

import numpy as np

from .core import Constraint, ProblemDefinition
from .errors import OverConstrainedError, ValidationError
from .grids import GridSpec
from .sampler import membership_test, now_timestamp


@dataclass(frozen=True)
class BoundRefinement:
    """Tighten one dimension of the box."""

    dim: int
    lower: float | None = None
    upper: float | None = None

    def to_dict(self) -> dict:
        out: dict = {"type": "bound", "dim": self.dim}
        if self.lower is not None:
            out["lower"] = self.lower
        if self.upper is not None:
            out["upper"] = self.upper
        return out


@dataclass(frozen=True)
class FloorRefinement:
    """Require objective m to stay at or above a value (objective units)."""

    objective: int
    value: float

    def to_dict(self) -> dict:
        return {"type": "floor", "objective": self.objective, "value": self.value}


Refinement = Union[BoundRefinement, FloorRefinement]


def refinement_from_dict(doc: dict) -> Refinement:
    kind = doc.get("type")
    if kind == "bound":
        return BoundRefinement(
            dim=int(doc["dim"]),
            lower=None if doc.get("lower") is None else float(doc["lower"]),
            upper=None if doc.get("upper") is None else float(doc["upper"]),
        )
    if kind == "floor":
        return FloorRefinement(objective=int(doc["objective"]), value=float(doc["value"]))
    raise ValidationError(f"unknown refinement type {kind!r}")


class _FloorMask:
    """Batch feasibility for floors, evaluating the objectives once per chunk."""

    def __init__(self, problem: ProblemDefinition, floors: list[FloorRefinement]):
        self._base = problem.batch_feasible
        self._evaluate = problem.evaluate_matrix
        self._floors = floors

    def __call__(self, X: np.ndarray) -> np.ndarray:
        X = np.asarray(X, dtype=np.float64)
        mask = (
            np.asarray(self._base(X), dtype=bool)
            if self._base is not None
            else np.ones(len(X), dtype=bool)
        )
        if mask.any() and self._floors:
            G = self._evaluate(X[mask])
            sub = np.ones(int(mask.sum()), dtype=bool)
            for f in self._floors:
                sub &= G[:, f.objective] >= f.value
            mask[mask] = sub
        return mask


def apply_refinements(
    problem: ProblemDefinition,
    refinements: Sequence[Refinement],
    search: GridSpec | None = None,
    check_nonempty: bool = True,
) -> ProblemDefinition:
    """The shrunken problem: tightened box plus objective-floor predicates.

    The base problem is untouched. With ``check_nonempty``, raises
    OverConstrainedError when the origin drops out and a membership scan of
    the search grid (the problem default when not given) finds no feasible
    point either.
    """
    if not refinements:
        return problem

    lower = list(problem.lower)
    upper = list(problem.upper)
    floors: list[FloorRefinement] = []
    for r in refinements:
        if isinstance(r, BoundRefinement):
            if not (0 <= r.dim < problem.D):
                raise ValidationError(f"dimension {r.dim} out of range for D={problem.D}")
            if r.lower is not None:
                if r.lower < problem.lower[r.dim]:
                    raise ValidationError(
                        f"new lower bound {r.lower} escapes the original box"
                    )
                lower[r.dim] = max(lower[r.dim], float(r.lower))
            if r.upper is not None:
                if r.upper > problem.upper[r.dim]:
                    raise ValidationError(
                        f"new upper bound {r.upper} escapes the original box"
                    )
                upper[r.dim] = min(upper[r.dim], float(r.upper))
            if lower[r.dim] > upper[r.dim]:
                raise ValidationError(
                    f"dimension {r.dim}: tightened bounds cross ({lower[r.dim]} > {upper[r.dim]})"
                )
        elif isinstance(r, FloorRefinement):
            if not (0 <= r.objective < problem.M):
                raise ValidationError(
                    f"objective {r.objective} out of range for M={problem.M}"
                )
            if not (r.value >= 0.0):
                raise ValidationError(f"floors must be nonnegative, got {r.value}")
            floors.append(r)
        else:
            raise ValidationError(f"unknown refinement {r!r}")

    floor_constraints = tuple(
        Constraint(
            f"floor_{problem.objective_names[f.objective]}>={f.value}",
            (lambda x, _m=f.objective, _v=f.value, _p=problem: _p.evaluate(x).values[_m] >= _v),
        )
        for f in floors
    )
    refined = dataclasses.replace(
        problem,
        lower=tuple(lower),
        upper=tuple(upper),
        constraints=problem.constraints + floor_constraints,
        batch_feasible=_FloorMask(problem, floors) if floors else problem.batch_feasible,
        # an exact membership oracle answers for the base feasible set and
        # would ignore the refinements, so the derived problem falls back to
        # the grid scan
        membership=None,
        validate_origin=False,
        default_grid=None,
    )
    if problem.default_grid is not None:
        refined = dataclasses.replace(
            refined, default_grid=problem.default_grid.clipped_to(refined)
        )

    if check_nonempty and not refined.feasible(refined.origin_point):
        grid = search or refined.default_grid
        if grid is None or membership_test(refined, (0.0,) * refined.M, grid) is None:
            raise OverConstrainedError(
                "refinements empty the feasible set (origin excluded, scan found nothing)"
            )
    return refined


@dataclass
class SessionState:
    """One live exploration session over a named base problem."""

    session_id: str
    problem_name: str
    refinements: list[Refinement] = field(default_factory=list)
    front_cache: dict[str, str] = field(default_factory=dict)  # request key -> front id
    created_at: str = field(default_factory=now_timestamp)
    updated_at: str = field(default_factory=now_timestamp)

    @property
    def version(self) -> int:
        return len(self.refinements)

    def refinements_at(self, version: int) -> list[Refinement]:
        if not (0 <= version <= self.version):
            raise ValidationError(f"version {version} out of range (current {self.version})")
        return list(self.refinements[:version])

    def to_dict(self) -> dict:
        return {
            "session_id": self.session_id,
            "problem": self.problem_name,
            "refinements": [r.to_dict() for r in self.refinements],
            "front_cache": dict(self.front_cache),
            "created_at": self.created_at,
            "updated_at": self.updated_at,
        }

    @classmethod
    def from_dict(cls, doc: dict) -> "SessionState":
        return cls(
            session_id=doc["session_id"],
            problem_name=doc["problem"],
            refinements=[refinement_from_dict(r) for r in doc.get("refinements", [])],
            front_cache=dict(doc.get("front_cache", {})),
            created_at=doc.get("created_at", now_timestamp()),
            updated_at=doc.get("updated_at", now_timestamp()),
        )
