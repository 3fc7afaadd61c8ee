"""Domain types and order structure for vector-valued design problems.

A problem is a compact box of resource utilizations (with optional coupling
constraints and integrality), a vector of named nonnegative objectives, and a
designated origin where every objective is zero. Objective vectors are
compared by componentwise dominance; the four goal families (weighted sum,
weighted product, weighted Chebyshev, distance-to-reference) impose total
orders used for scalarization.
"""

from __future__ import annotations

import dataclasses
import math
from dataclasses import dataclass, field
from typing import Callable, Iterable, Sequence

import numpy as np

from . import kernels
from .errors import DimensionMismatch, EmptyInputError, ValidationError

GOAL_KINDS = ("sum", "product", "chebyshev", "distance")


def _as_tuple(values: Iterable[float]) -> tuple[float, ...]:
    return tuple(float(v) for v in values)


@dataclass(frozen=True)
class ObjectiveVector:
    """A point in objective space: finite, nonnegative, with unit labels."""

    values: tuple[float, ...]
    units: tuple[str, ...] = ()

    def __post_init__(self):
        object.__setattr__(self, "values", _as_tuple(self.values))
        if not self.units:
            object.__setattr__(self, "units", ("",) * len(self.values))
        else:
            object.__setattr__(self, "units", tuple(self.units))
        if len(self.units) != len(self.values):
            raise DimensionMismatch(
                f"{len(self.values)} values but {len(self.units)} unit labels"
            )
        for v in self.values:
            if not math.isfinite(v) or v < 0.0:
                raise ValidationError(f"objective values must be finite and >= 0, got {v}")

    def __len__(self) -> int:
        return len(self.values)

    def __getitem__(self, m: int) -> float:
        return self.values[m]

    def as_array(self) -> np.ndarray:
        return np.asarray(self.values, dtype=np.float64)


@dataclass(frozen=True)
class ResourcePoint:
    """A resource utilization x; integrality and bounds are checked by the problem."""

    x: tuple[float, ...]

    def __post_init__(self):
        object.__setattr__(self, "x", _as_tuple(self.x))
        for v in self.x:
            if not math.isfinite(v):
                raise ValidationError(f"resource coordinates must be finite, got {v}")

    def __len__(self) -> int:
        return len(self.x)

    def as_array(self) -> np.ndarray:
        return np.asarray(self.x, dtype=np.float64)


@dataclass(frozen=True)
class Objective:
    """A named scalar evaluator with a unit label."""

    name: str
    unit: str
    fn: Callable[[Sequence[float]], float] = field(compare=False)

    def __call__(self, x: Sequence[float]) -> float:
        return float(self.fn(x))


@dataclass(frozen=True)
class Constraint:
    """A named feasibility predicate over resource points."""

    name: str
    fn: Callable[[Sequence[float]], bool] = field(compare=False)

    def __call__(self, x: Sequence[float]) -> bool:
        return bool(self.fn(x))


@dataclass(frozen=True, eq=False)
class ProblemDefinition:
    """A named design problem: box bounds, constraints, objectives, origin.

    Optional hooks make large scans fast and exact:

    - ``batch_objectives``: (n, D) array of feasible points -> (n, M) array;
      when present it is the canonical evaluator (``evaluate`` routes single
      points through it), so batch scans and point re-evaluation agree bit
      for bit.
    - ``batch_feasible``: (n, D) array -> boolean mask for the non-box
      constraints (the box and integrality are always checked generically).
    - ``membership``: exact attainability oracle ``mu -> x or None`` for
      problems with analytic structure; grid-scan realization is used when
      absent.
    - ``default_grid``: the search discretization used by services and the
      CLI when the caller does not supply one.
    """

    name: str
    lower: tuple[float, ...]
    upper: tuple[float, ...]
    integral: tuple[bool, ...]
    objectives: tuple[Objective, ...]
    origin_point: tuple[float, ...]
    constraints: tuple[Constraint, ...] = ()
    batch_objectives: Callable[[np.ndarray], np.ndarray] | None = None
    batch_feasible: Callable[[np.ndarray], np.ndarray] | None = None
    membership: Callable[[tuple[float, ...]], tuple[float, ...] | None] | None = None
    default_grid: "object | None" = None
    validate_origin: bool = True

    def __post_init__(self):
        object.__setattr__(self, "lower", _as_tuple(self.lower))
        object.__setattr__(self, "upper", _as_tuple(self.upper))
        object.__setattr__(self, "integral", tuple(bool(b) for b in self.integral))
        object.__setattr__(self, "origin_point", _as_tuple(self.origin_point))
        object.__setattr__(self, "objectives", tuple(self.objectives))
        object.__setattr__(self, "constraints", tuple(self.constraints))
        if not (len(self.lower) == len(self.upper) == len(self.integral)):
            raise DimensionMismatch("lower/upper/integral lengths disagree")
        if self.D < 1 or self.M < 1:
            raise ValidationError("need at least one dimension and one objective")
        for lo, hi in zip(self.lower, self.upper):
            if not (math.isfinite(lo) and math.isfinite(hi)):
                raise ValidationError("box bounds must be finite (compact bundle)")
            if lo > hi:
                raise ValidationError(f"lower bound {lo} exceeds upper bound {hi}")
        if len(self.origin_point) != self.D:
            raise DimensionMismatch("origin point has wrong dimension")
        if self.validate_origin:
            if not self.feasible(self.origin_point):
                raise ValidationError("origin point must be feasible")
            g0 = self.evaluate(self.origin_point)
            if any(v != 0.0 for v in g0.values):
                raise ValidationError(f"objectives must all be 0 at the origin, got {g0.values}")

    @property
    def D(self) -> int:
        return len(self.lower)

    @property
    def M(self) -> int:
        return len(self.objectives)

    @property
    def units(self) -> tuple[str, ...]:
        return tuple(o.unit for o in self.objectives)

    @property
    def objective_names(self) -> tuple[str, ...]:
        return tuple(o.name for o in self.objectives)

    # feasibility -----------------------------------------------------------

    def in_box(self, x: Sequence[float]) -> bool:
        if len(x) != self.D:
            raise DimensionMismatch(f"point has {len(x)} coordinates, problem has D={self.D}")
        for v, lo, hi, integ in zip(x, self.lower, self.upper, self.integral):
            if not (lo <= v <= hi):
                return False
            if integ and v != int(v):
                return False
        return True

    def feasible(self, x: Sequence[float]) -> bool:
        # short-circuit keeps derived floor predicates from seeing out-of-box points
        return self.in_box(x) and all(c(x) for c in self.constraints)

    def feasible_mask(self, X: np.ndarray) -> np.ndarray:
        X = np.asarray(X, dtype=np.float64)
        if X.ndim != 2 or X.shape[1] != self.D:
            raise DimensionMismatch(f"expected (n, {self.D}) array, got {X.shape}")
        lo = np.asarray(self.lower)
        hi = np.asarray(self.upper)
        mask = ((X >= lo) & (X <= hi)).all(axis=1)
        for d, integ in enumerate(self.integral):
            if integ:
                mask &= X[:, d] == np.rint(X[:, d])
        if not mask.any():
            return mask
        if self.batch_feasible is not None:
            sub = np.asarray(self.batch_feasible(X[mask]), dtype=bool)
            mask[mask] = sub
        elif self.constraints:
            idx = np.flatnonzero(mask)
            keep = [all(c(tuple(X[i])) for c in self.constraints) for i in idx]
            mask[idx] = keep
        return mask

    # evaluation ------------------------------------------------------------

    def evaluate_matrix(self, X: np.ndarray) -> np.ndarray:
        """Objective values for an (n, D) array of feasible points."""
        X = np.asarray(X, dtype=np.float64)
        if X.ndim != 2 or X.shape[1] != self.D:
            raise DimensionMismatch(f"expected (n, {self.D}) array, got {X.shape}")
        if self.batch_objectives is not None:
            G = np.asarray(self.batch_objectives(X), dtype=np.float64)
        else:
            G = np.array([[o(row) for o in self.objectives] for row in X.tolist()], dtype=np.float64)
            G = G.reshape(len(X), self.M)
        if G.shape != (len(X), self.M):
            raise ValidationError(f"batch evaluator returned shape {G.shape}")
        return G

    def evaluate(self, x: Sequence[float]) -> ObjectiveVector:
        """Canonical evaluation of a single feasible point."""
        if isinstance(x, ResourcePoint):
            x = x.x
        if len(x) != self.D:
            raise DimensionMismatch(f"point has {len(x)} coordinates, problem has D={self.D}")
        row = self.evaluate_matrix(np.asarray(x, dtype=np.float64).reshape(1, -1))[0]
        return ObjectiveVector(tuple(row), self.units)

    def check_point(self, x: Sequence[float]) -> ResourcePoint:
        if isinstance(x, ResourcePoint):
            x = x.x
        if not self.in_box(x):
            raise ValidationError(f"point {tuple(x)} violates box bounds or integrality")
        return ResourcePoint(tuple(x))


# dominance -----------------------------------------------------------------


def _values(g) -> tuple[float, ...]:
    if isinstance(g, ObjectiveVector):
        return g.values
    return _as_tuple(g)


def dominates(a, b) -> bool:
    """True iff a is componentwise >= b and a != b (a objectively preferable)."""
    va, vb = _values(a), _values(b)
    if len(va) != len(vb):
        raise DimensionMismatch(f"cannot compare vectors of length {len(va)} and {len(vb)}")
    return all(x >= y for x, y in zip(va, vb)) and va != vb


def survivor_mask(values: np.ndarray) -> np.ndarray:
    """Boolean mask of points not dominated by any other row of ``values``."""
    values = np.ascontiguousarray(values, dtype=np.float64)
    if values.ndim != 2:
        raise DimensionMismatch("expected an (n, M) array of objective values")
    if len(values) == 0:
        raise EmptyInputError("cannot filter an empty set")
    if not np.isfinite(values).all():
        raise ValidationError("objective values must be finite")
    return np.asarray(kernels.pareto_survivor_mask(values), dtype=bool)


def pareto_filter(
    points: Sequence[tuple[ResourcePoint, ObjectiveVector]],
) -> list[tuple[ResourcePoint, ObjectiveVector]]:
    """Drop every point dominated by another; stable order, exact ties all kept."""
    points = list(points)
    if not points:
        raise EmptyInputError("cannot filter an empty set")
    M = len(points[0][1])
    for _, g in points:
        if len(g) != M:
            raise DimensionMismatch("mixed objective dimensions in filter input")
    vals = np.array([_values(g) for _, g in points], dtype=np.float64)
    mask = survivor_mask(vals)
    return [p for p, keep in zip(points, mask) if keep]


# goal functions --------------------------------------------------------------


@dataclass(frozen=True)
class GoalSpec:
    """One of the four scalarization goals.

    sum / product / chebyshev take strictly positive weights; distance takes a
    reference point and a norm order p in {1, 2, inf}.
    """

    kind: str
    weights: tuple[float, ...] | None = None
    reference: ObjectiveVector | None = None
    p: float = 2.0

    def __post_init__(self):
        if self.kind not in GOAL_KINDS:
            raise ValidationError(f"unknown goal kind {self.kind!r}, expected one of {GOAL_KINDS}")
        if self.weights is not None:
            object.__setattr__(self, "weights", _as_tuple(self.weights))
        if self.kind == "distance":
            if self.reference is None:
                raise ValidationError("distance goal needs a reference point")
            if self.weights is not None:
                raise ValidationError("distance goal takes no weights")
            if not isinstance(self.reference, ObjectiveVector):
                object.__setattr__(self, "reference", ObjectiveVector(_as_tuple(self.reference)))
            p = float("inf") if self.p in ("inf", float("inf")) else float(self.p)
            if p not in (1.0, 2.0, float("inf")):
                raise ValidationError(f"norm order must be 1, 2 or inf, got {self.p}")
            object.__setattr__(self, "p", p)
        else:
            if self.reference is not None:
                raise ValidationError(f"{self.kind} goal takes no reference point")
            if not self.weights:
                raise ValidationError(f"{self.kind} goal needs weights")
            for w in self.weights:
                if not math.isfinite(w) or w <= 0.0:
                    raise ValidationError(f"weights must be strictly positive, got {w}")

    @property
    def M(self) -> int:
        return len(self.weights) if self.weights is not None else len(self.reference)


def normalize_weights(weights: Sequence[float]) -> tuple[float, ...]:
    """Scale positive weights onto the simplex (sum equal to one)."""
    w = _as_tuple(weights)
    total = sum(w)
    if total <= 0.0 or not math.isfinite(total):
        raise ValidationError("weights must sum to a positive finite value")
    return tuple(v / total for v in w)


def eval_goal_batch(goal: GoalSpec, G: np.ndarray) -> np.ndarray:
    """Goal values for each row of an (n, M) objective matrix."""
    G = np.asarray(G, dtype=np.float64)
    if G.ndim != 2 or G.shape[1] != goal.M:
        raise DimensionMismatch(f"expected (n, {goal.M}) objective matrix, got {G.shape}")
    if np.isnan(G).any():
        raise ValidationError("NaN objective value in goal evaluation")
    if goal.kind == "sum":
        return G @ np.asarray(goal.weights)
    if goal.kind == "product":
        return np.prod(G ** np.asarray(goal.weights), axis=1)
    if goal.kind == "chebyshev":
        return np.min(G / np.asarray(goal.weights), axis=1)
    ref = goal.reference.as_array()
    diff = ref - G
    if goal.p == 1.0:
        return -np.abs(diff).sum(axis=1)
    if goal.p == 2.0:
        return -np.sqrt((diff * diff).sum(axis=1))
    return -np.abs(diff).max(axis=1)


def eval_goal(goal: GoalSpec, g) -> float:
    """Scalar preference of a single objective vector; larger is better."""
    row = np.asarray(_values(g), dtype=np.float64).reshape(1, -1)
    return float(eval_goal_batch(goal, row)[0])


# derived problems ------------------------------------------------------------


def restrict_objectives(problem: ProblemDefinition, indices: Sequence[int]) -> ProblemDefinition:
    """Same bundle, but only the selected objectives (for pairwise studies)."""
    indices = tuple(int(i) for i in indices)
    for i in indices:
        if not (0 <= i < problem.M):
            raise ValidationError(f"objective index {i} out of range for M={problem.M}")
    if len(set(indices)) != len(indices) or not indices:
        raise ValidationError("objective selection must be nonempty and unique")

    batch = None
    if problem.batch_objectives is not None:
        parent = problem.batch_objectives
        cols = np.asarray(indices)

        def batch(X, _parent=parent, _cols=cols):
            return np.ascontiguousarray(np.asarray(_parent(X))[:, _cols])

    return dataclasses.replace(
        problem,
        name=f"{problem.name}:{','.join(problem.objective_names[i] for i in indices)}",
        objectives=tuple(problem.objectives[i] for i in indices),
        batch_objectives=batch,
        membership=None,
        validate_origin=problem.validate_origin,
    )
