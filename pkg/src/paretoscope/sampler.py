"""Boundary sampling: grid clouds and direction search via bisection.

Two complementary strategies produce samples of the attainable objective set:

- ``grid_sample`` evaluates the objectives over a finite grid of the bundle
  and marks the dominance-filter survivors as (weak) boundary points.
- ``sample_front`` walks rays from the origin through objective space. For
  each ray it brackets the outermost attainable scale factor lambda with a
  bisection over a membership test, which makes every returned point a
  certified boundary sample: lambda_max - lambda_min <= eps on exit, so the
  returned point sits within eps * ||v|| of the boundary along the ray.

Membership ("is mu attainable?") uses the free-disposal form: some feasible x
with g_m(x) >= mu_m for all m. Over a fixed finite grid this makes
attainability monotone in lambda along any ray, which is exactly what the
bisection needs. Problems with an exact membership oracle use it instead of
the scan.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from datetime import datetime, timezone
from typing import Callable, Sequence

import numpy as np

from .core import (
    ObjectiveVector,
    ProblemDefinition,
    ResourcePoint,
    survivor_mask,
)
from .errors import (
    AllInfeasibleError,
    DimensionMismatch,
    LambdaMaxTooSmall,
    SweepCancelled,
    ValidationError,
)
from .grids import DEFAULT_CHUNK, GridSpec, collect_feasible, iter_feasible

INTERIOR = "interior"
WEAK = "weak"
STRONG = "strong_certified"

METHOD_GRID = "grid"
METHOD_DIRECTION = "direction_search"
METHOD_SWEEP = "scalarize_sweep"

EPOCH_TIMESTAMP = "1970-01-01T00:00:00+00:00"


def now_timestamp() -> str:
    return datetime.now(timezone.utc).isoformat(timespec="seconds")


@dataclass(frozen=True)
class Direction:
    """A nonnegative search direction in objective space; not all zero."""

    v: tuple[float, ...]

    def __post_init__(self):
        object.__setattr__(self, "v", tuple(float(x) for x in self.v))
        if not self.v:
            raise ValidationError("direction must have at least one component")
        for x in self.v:
            if not math.isfinite(x) or x < 0.0:
                raise ValidationError(f"direction components must be finite and >= 0, got {x}")
        if not any(x > 0.0 for x in self.v):
            raise ValidationError("direction must have a strictly positive component")

    def as_array(self) -> np.ndarray:
        return np.asarray(self.v, dtype=np.float64)

    def norm(self) -> float:
        return float(np.linalg.norm(self.as_array()))


@dataclass(frozen=True)
class FrontPoint:
    """A sampled point: preimage x, objective values g, and its certificate."""

    x: ResourcePoint
    g: ObjectiveVector
    direction: Direction | None = None
    lam: float | None = None
    boundary_kind: str = INTERIOR
    eps: float | None = None
    meta: dict = field(default_factory=dict, compare=False)

    def __post_init__(self):
        if self.boundary_kind not in (INTERIOR, WEAK, STRONG):
            raise ValidationError(f"unknown boundary kind {self.boundary_kind!r}")


@dataclass
class Front:
    """A set of sampled points plus the parameters that produced them."""

    problem: str
    method: str
    points: list[FrontPoint]
    eps: float | None = None
    parameters: dict = field(default_factory=dict)
    created_at: str = ""
    errors: list[dict] = field(default_factory=list)
    refinement_version: int = 0

    def __post_init__(self):
        if self.method not in (METHOD_GRID, METHOD_DIRECTION, METHOD_SWEEP):
            raise ValidationError(f"unknown front method {self.method!r}")
        if not self.created_at:
            self.created_at = now_timestamp()
        if self.method == METHOD_DIRECTION:
            for p in self.points:
                if p.boundary_kind == INTERIOR:
                    raise ValidationError("direction-search fronts cannot contain interior points")

    def values(self) -> np.ndarray:
        if not self.points:
            return np.empty((0, 0), dtype=np.float64)
        return np.array([p.g.values for p in self.points], dtype=np.float64)


# directions ------------------------------------------------------------------


def generate_directions(M: int, count: int) -> list[Direction]:
    """Deterministic unit directions into the positive orthant.

    M=2: angles evenly spaced in the open interval (0, pi/2).
    M=3: golden-angle spiral over the positive octant (equal-area in the
    z coordinate), which keeps pairwise angular separation bounded away
    from zero without randomness.
    """
    if count < 1:
        raise ValidationError(f"direction count must be >= 1, got {count}")
    if M == 1:
        return [Direction((1.0,))] * count if count == 1 else [Direction((1.0,)) for _ in range(count)]
    if M == 2:
        out = []
        for i in range(1, count + 1):
            theta = (math.pi / 2.0) * i / (count + 1)
            out.append(Direction((math.cos(theta), math.sin(theta))))
        return out
    if M == 3:
        golden = (math.sqrt(5.0) - 1.0) / 2.0
        out = []
        for i in range(count):
            z = (i + 0.5) / count
            alpha = (math.pi / 2.0) * ((i * golden) % 1.0)
            r = math.sqrt(max(0.0, 1.0 - z * z))
            out.append(Direction((r * math.cos(alpha), r * math.sin(alpha), z)))
        return out
    raise ValidationError(
        f"direction sweeps support M in {{1, 2, 3}} (visualization-bound), got M={M}"
    )


# utopia ----------------------------------------------------------------------


def utopia_with_witnesses(
    problem: ProblemDefinition, search: GridSpec, chunk: int = DEFAULT_CHUNK
) -> tuple[ObjectiveVector, list[ResourcePoint]]:
    """Componentwise maxima over the feasible grid, with a witness per objective."""
    best = np.full(problem.M, -np.inf)
    witnesses: list[np.ndarray | None] = [None] * problem.M
    seen = False
    for X, G in iter_feasible(problem, search, chunk):
        if not len(X):
            continue
        seen = True
        for m in range(problem.M):
            i = int(np.argmax(G[:, m]))
            if G[i, m] > best[m]:
                best[m] = G[i, m]
                witnesses[m] = X[i]
    if not seen:
        raise AllInfeasibleError("no feasible point in the search grid")
    vals = []
    points = []
    for m, w in enumerate(witnesses):
        g = problem.evaluate(tuple(w))
        vals.append(g.values[m])
        points.append(ResourcePoint(tuple(w)))
    return ObjectiveVector(tuple(vals), problem.units), points


def utopia(problem: ProblemDefinition, search: GridSpec, chunk: int = DEFAULT_CHUNK) -> ObjectiveVector:
    """The (generally unattainable) vector of per-objective maxima."""
    return utopia_with_witnesses(problem, search, chunk)[0]


# membership ------------------------------------------------------------------


def membership_test(
    problem: ProblemDefinition,
    mu: Sequence[float],
    search: GridSpec,
    chunk: int = DEFAULT_CHUNK,
) -> ResourcePoint | None:
    """Find a feasible x with g(x) >= mu componentwise, or None.

    Uses the problem's exact oracle when it has one; otherwise an early-exit
    scan of the search grid in C order. Candidates found by the batch scan are
    confirmed with a canonical single-point evaluation before being returned.
    """
    mu_arr = np.asarray([float(v) for v in mu], dtype=np.float64)
    if mu_arr.shape != (problem.M,):
        raise DimensionMismatch(f"mu has {mu_arr.size} entries, problem has M={problem.M}")
    if not np.isfinite(mu_arr).all() or (mu_arr < 0).any():
        raise ValidationError("mu must be finite and nonnegative")

    if not mu_arr.any() and problem.feasible(problem.origin_point):
        # the zero vector is witnessed by the origin whenever it is feasible
        return ResourcePoint(problem.origin_point)

    if problem.membership is not None:
        x = problem.membership(tuple(mu_arr))
        if x is None:
            return None
        point = ResourcePoint(tuple(float(v) for v in x))
        g = problem.evaluate(point.x)
        if any(gv < m for gv, m in zip(g.values, mu_arr)):
            raise ValidationError("membership oracle returned a witness that misses mu")
        return point

    for X, G in iter_feasible(problem, search, chunk):
        if not len(X):
            continue
        hits = np.flatnonzero((G >= mu_arr).all(axis=1))
        for i in hits:
            x = tuple(X[i])
            g = problem.evaluate(x)
            if all(gv >= m for gv, m in zip(g.values, mu_arr)):
                return ResourcePoint(x)
    return None


# bisection -------------------------------------------------------------------


def bisect_ray(
    problem: ProblemDefinition,
    v: Direction | Sequence[float],
    eps: float,
    lambda_max: float,
    search: GridSpec,
    chunk: int = DEFAULT_CHUNK,
) -> FrontPoint:
    """Outermost attainable point along mu = lambda * v, bracketed to eps.

    Halves [lambda_min, lambda_max] with a membership test at the midpoint
    until the bracket is narrower than eps; lambda_min stays attainable and
    lambda_max stays unattainable throughout. The total number of membership
    tests is ceil(log2(lambda_max / eps)) + 1 (the +1 checks the upper
    bracket, raising 'lambda_max too small' if it is in fact attainable).
    """
    direction = v if isinstance(v, Direction) else Direction(tuple(v))
    varr = direction.as_array()
    if len(varr) != problem.M:
        raise DimensionMismatch(f"direction has {len(varr)} entries, problem has M={problem.M}")
    if not (eps > 0.0 and math.isfinite(eps)):
        raise ValidationError(f"eps must be positive and finite, got {eps}")
    if not (lambda_max > 0.0 and math.isfinite(lambda_max)):
        raise ValidationError(f"lambda_max must be positive and finite, got {lambda_max}")

    tests = 1
    if membership_test(problem, lambda_max * varr, search, chunk) is not None:
        raise LambdaMaxTooSmall(
            f"lambda_max={lambda_max} * v is attainable; pick a larger bracket"
        )

    lo, hi = 0.0, float(lambda_max)
    witness: ResourcePoint | None = None
    if problem.feasible(problem.origin_point):
        witness = ResourcePoint(problem.origin_point)
    while hi - lo > eps:
        mid = 0.5 * (lo + hi)
        tests += 1
        w = membership_test(problem, mid * varr, search, chunk)
        if w is not None:
            lo, witness = mid, w
        else:
            hi = mid
    fallback_tests = 0
    if witness is None:
        # origin infeasible (floored problem) and no midpoint ever passed
        fallback_tests = 1
        witness = membership_test(problem, np.zeros(problem.M), search, chunk)
        if witness is None:
            raise AllInfeasibleError("no feasible point in the search grid")
    g = problem.evaluate(witness.x)
    return FrontPoint(
        x=witness,
        g=g,
        direction=direction,
        lam=lo,
        boundary_kind=WEAK,
        eps=eps,
        meta={
            "iterations": tests,
            "fallback_tests": fallback_tests,
            "lambda_max": float(lambda_max),
        },
    )


def lambda_max_for(direction: Direction, utopia_vec: ObjectiveVector, delta: float = 0.01) -> float:
    """Upper bracket from the utopia point: lambda * v_m <= u_m must hold for all m."""
    ratios = [
        u / v
        for u, v in zip(utopia_vec.values, direction.v)
        if v > 0.0
    ]
    if not ratios:
        raise ValidationError("direction has no positive component")
    return (1.0 + delta) * min(ratios)


# direction sweep ---------------------------------------------------------------


def _argmax_sum_above(
    problem: ProblemDefinition,
    floor: np.ndarray,
    search: GridSpec,
    chunk: int,
    seed_sum: float,
    seed_vec: tuple[float, ...],
) -> tuple[float, tuple[float, ...]]:
    """Best total objective among grid points with g >= floor, seeded with a candidate."""
    best_sum, best_vec = seed_sum, seed_vec
    for _, G in iter_feasible(problem, search, chunk):
        if not len(G):
            continue
        ok = (G >= floor).all(axis=1)
        if not ok.any():
            continue
        sums = G[ok].sum(axis=1)
        i = int(np.argmax(sums))
        if sums[i] > best_sum:
            best_sum = float(sums[i])
            best_vec = tuple(G[ok][i])
    return best_sum, best_vec


def sample_front(
    problem: ProblemDefinition,
    count: int,
    eps: float,
    search: GridSpec,
    chunk: int = DEFAULT_CHUNK,
    delta: float = 0.01,
    scale_by: ObjectiveVector | None = None,
    progress: Callable[[int, int], None] | None = None,
    should_cancel: Callable[[], bool] | None = None,
    created_at: str | None = None,
) -> Front:
    """Direction-search front: one bisection per direction, then certification.

    Unit angular directions are scaled componentwise by the utopia point so
    the sweep covers objectives of very different magnitudes evenly; pass
    ``scale_by`` (for example the base problem's utopia when sampling a
    refined bundle) to keep the rays comparable across related sweeps. A
    point is upgraded from 'weak' to 'strong_certified' when no other sampled
    point dominates it and a re-solve maximizing the objective sum over the
    grid region {g >= lambda* v} cannot improve on its objective vector.

    Per-direction failures do not abort the sweep; they are recorded in
    ``front.errors``.
    """
    if scale_by is None:
        u, _ = utopia_with_witnesses(problem, search, chunk)
    else:
        u = scale_by
    u_arr = u.as_array()
    dirs = generate_directions(problem.M, count)
    points: list[FrontPoint] = []
    errors: list[dict] = []
    for i, d in enumerate(dirs):
        if should_cancel is not None and should_cancel():
            raise SweepCancelled(f"sweep cancelled after {i} of {count} directions")
        scaled = Direction(tuple(d.as_array() * u_arr))
        try:
            lam_max = lambda_max_for(scaled, u, delta)
            fp = bisect_ray(problem, scaled, eps, lam_max, search, chunk)
            fp.meta["direction_index"] = i
            fp.meta["unit_direction"] = d.v
            points.append(fp)
        except Exception as exc:  # noqa: BLE001 - collected per direction
            errors.append({"direction_index": i, "direction": d.v, "error": str(exc)})
        if progress is not None:
            progress(i + 1, count)

    certified: list[FrontPoint] = []
    if points:
        vals = np.array([p.g.values for p in points], dtype=np.float64)
        not_dominated = survivor_mask(vals)
        for keep, fp in zip(not_dominated, points):
            kind = WEAK
            if keep:
                floor = fp.lam * fp.direction.as_array()
                seed_sum = float(sum(fp.g.values))
                best_sum, best_vec = _argmax_sum_above(
                    problem, floor, search, chunk, seed_sum, fp.g.values
                )
                if best_vec == fp.g.values:
                    kind = STRONG
            certified.append(
                FrontPoint(fp.x, fp.g, fp.direction, fp.lam, kind, fp.eps, fp.meta)
            )

    return Front(
        problem=problem.name,
        method=METHOD_DIRECTION,
        points=certified,
        eps=eps,
        parameters={
            "count": count,
            "delta": delta,
            "utopia": list(u.values),
            "D": problem.D,
            "M": problem.M,
        },
        errors=errors,
        created_at=created_at or now_timestamp(),
    )


# grid cloud --------------------------------------------------------------------


def grid_sample(
    problem: ProblemDefinition,
    grid: GridSpec,
    chunk: int = DEFAULT_CHUNK,
    created_at: str | None = None,
) -> Front:
    """Evaluate the objectives over every feasible grid point.

    Dominance-filter survivors are marked 'weak' (they bound the cloud from
    above); everything else is 'interior'. Raises EmptyGridError when the
    grid has no points at all and AllInfeasibleError when it has points but
    none is feasible.
    """
    X, G = collect_feasible(problem, grid, chunk)
    if len(X) == 0:
        raise AllInfeasibleError(
            "every grid point violates the constraints (the grid itself is nonempty)"
        )
    mask = survivor_mask(G)
    points = [
        FrontPoint(
            x=ResourcePoint(tuple(x)),
            g=ObjectiveVector(tuple(g), problem.units),
            boundary_kind=WEAK if keep else INTERIOR,
        )
        for x, g, keep in zip(X.tolist(), G.tolist(), mask.tolist())
    ]
    return Front(
        problem=problem.name,
        method=METHOD_GRID,
        points=points,
        eps=None,
        parameters={
            "grid_points": int(len(X)),
            "survivors": int(mask.sum()),
            "D": problem.D,
            "M": problem.M,
        },
        created_at=created_at or now_timestamp(),
    )
