"""Scalarized solves: one goal function, one best resource point.

The solver is an exhaustive scan of the search grid followed by local
refinement that halves the step around the incumbent on continuous
dimensions. The result is exact to the searched resolution, so its value is
an honest lower bound on the true optimum. Chebyshev solves are
cross-validated against the ray-bisection route: both see the same grid, so
their scale factors must agree to the bisection tolerance.
"""

from __future__ import annotations

import dataclasses
from dataclasses import dataclass, field
from typing import Sequence

import numpy as np

from .core import (
    GoalSpec,
    ObjectiveVector,
    ProblemDefinition,
    ResourcePoint,
    eval_goal,
    eval_goal_batch,
)
from .errors import AllInfeasibleError, DimensionMismatch, ValidationError
from .grids import DEFAULT_CHUNK, GridSpec, iter_feasible
from .sampler import (
    METHOD_SWEEP,
    WEAK,
    Direction,
    Front,
    FrontPoint,
    bisect_ray,
    lambda_max_for,
    now_timestamp,
    utopia_with_witnesses,
)

CROSS_VALIDATION_SHIFT = 30  # bisect to lambda_max * 2**-30 when cross-validating


@dataclass(frozen=True)
class ScalarSolution:
    """Best point found for one goal, with solver diagnostics."""

    x_star: ResourcePoint
    g_star: ObjectiveVector
    value: float
    goal: GoalSpec
    diagnostics: dict = field(default_factory=dict, compare=False)


def _scan_best(problem, goal, search, chunk):
    """First-best (value, x, g) over the feasible grid in C order.

    Ties keep the earliest point, which is the lexicographically smallest x
    because resolved axes are ascending. For product goals also tracks the
    point with the most nonzero objectives, the fallback when every product
    is zero.
    """
    best_val = -np.inf
    best_x = best_g = None
    nz_best = (-1, None, None)
    n_points = 0
    for X, G in iter_feasible(problem, search, chunk):
        if not len(X):
            continue
        n_points += len(X)
        vals = eval_goal_batch(goal, G)
        i = int(np.argmax(vals))
        if vals[i] > best_val:
            best_val = float(vals[i])
            best_x, best_g = tuple(X[i]), tuple(G[i])
        if goal.kind == "product":
            counts = (G > 0.0).sum(axis=1)
            j = int(np.argmax(counts))
            if counts[j] > nz_best[0]:
                nz_best = (int(counts[j]), tuple(X[j]), tuple(G[j]))
    if best_x is None:
        raise AllInfeasibleError("no feasible point in the search grid")
    return best_val, best_x, best_g, nz_best, n_points


def _refine(problem, goal, x, g, value, axes, levels, chunk):
    """Halve the step around the incumbent on continuous dimensions."""
    cont = [d for d in range(problem.D) if not problem.integral[d]]
    if not cont or levels < 1:
        return x, g, value
    brackets = {}
    for d in cont:
        a = axes[d]
        j = int(np.searchsorted(a, x[d]))
        j = min(max(j, 0), len(a) - 1)
        brackets[d] = (float(a[max(j - 1, 0)]), float(a[min(j + 1, len(a) - 1)]))
    for _ in range(levels):
        local = []
        for d in range(problem.D):
            if d in brackets:
                lo, hi = brackets[d]
                local.append(np.unique(np.linspace(lo, hi, 9)))
            else:
                local.append(np.array([x[d]]))
        mesh = np.meshgrid(*local, indexing="ij")
        X = np.column_stack([m.ravel() for m in mesh])
        mask = problem.feasible_mask(X)
        if mask.any():
            Xf = X[mask]
            vals = eval_goal_batch(goal, problem.evaluate_matrix(Xf))
            i = int(np.argmax(vals))
            if vals[i] > value:
                value = float(vals[i])
                x = tuple(Xf[i])
                g = tuple(problem.evaluate_matrix(Xf[i].reshape(1, -1))[0])
        for d in cont:
            lo, hi = brackets[d]
            half = (hi - lo) / 4.0
            brackets[d] = (max(lo, x[d] - half), min(hi, x[d] + half))
    return x, g, value


def _strictly_dominated_on_grid(problem, g_star, search, chunk) -> bool:
    """True if some grid point beats g_star strictly in every objective."""
    target = np.asarray(g_star, dtype=np.float64)
    for _, G in iter_feasible(problem, search, chunk):
        if len(G) and (G > target).all(axis=1).any():
            return True
    return False


def solve_scalarized(
    problem: ProblemDefinition,
    goal: GoalSpec,
    search: GridSpec,
    refine_levels: int = 0,
    cross_validate: bool = True,
    chunk: int = DEFAULT_CHUNK,
) -> ScalarSolution:
    """Maximize a goal function over the bundle's search grid.

    The returned value is eval_goal at the (canonically re-evaluated) best
    point and is a lower bound on the continuous optimum. Product goals where
    every grid point has a zero objective return the point with the most
    nonzero objectives, flagged 'degenerate_product'. Chebyshev goals are
    cross-validated against bisect_ray on the same grid: the grid-level
    incumbent and the bisection scale must agree within the bisection
    tolerance (refinement can only raise the final value above the
    grid-level one; both are recorded).
    """
    if goal.M != problem.M:
        raise DimensionMismatch(f"goal has M={goal.M}, problem has M={problem.M}")
    axes = search.resolve(problem)
    value, x, g, nz_best, n_points = _scan_best(problem, goal, search, chunk)
    diagnostics: dict = {
        "grid_points": n_points,
        "refine_levels": refine_levels,
        "grid_value": value,
    }
    degenerate = goal.kind == "product" and value <= 0.0 and nz_best[1] is not None
    if degenerate:
        diagnostics["degenerate_product"] = True
        diagnostics["nonzero_objectives"] = nz_best[0]
        x, g = nz_best[1], nz_best[2]
        value = 0.0
    else:
        x, g, value = _refine(problem, goal, x, g, value, axes, refine_levels, chunk)

    if cross_validate and goal.kind == "chebyshev" and not degenerate:
        # the bisection must see the same realization as the scan, so an
        # exact membership oracle (continuum answers) is stripped here
        grid_problem = (
            dataclasses.replace(problem, membership=None)
            if problem.membership is not None
            else problem
        )
        u, _ = utopia_with_witnesses(grid_problem, search, chunk)
        direction = Direction(goal.weights)
        lam_max = lambda_max_for(direction, u)
        eps_cv = lam_max * 2.0**-CROSS_VALIDATION_SHIFT
        ray = bisect_ray(grid_problem, direction, eps_cv, lam_max, search, chunk)
        gap = abs(ray.lam - diagnostics["grid_value"])
        diagnostics["bisect_lambda"] = ray.lam
        diagnostics["cross_validation_eps"] = eps_cv
        if gap > eps_cv:
            raise ValidationError(
                "chebyshev cross-validation failed: grid incumbent "
                f"{diagnostics['grid_value']} vs bisection {ray.lam} (eps {eps_cv})"
            )

    g_star = problem.evaluate(x)
    diagnostics["strictly_dominated_on_grid"] = _strictly_dominated_on_grid(
        problem, g_star.values, search, chunk
    )
    return ScalarSolution(
        x_star=ResourcePoint(x),
        g_star=g_star,
        value=eval_goal(goal, g_star),
        goal=goal,
        diagnostics=diagnostics,
    )


def scalarize_sweep(
    problem: ProblemDefinition,
    kind: str,
    weight_grid: Sequence[Sequence[float]],
    search: GridSpec,
    refine_levels: int = 0,
    chunk: int = DEFAULT_CHUNK,
    created_at: str | None = None,
) -> Front:
    """One scalarized solve per simplex weight vector, assembled as a front.

    Duplicate objective vectors are merged; every weight vector that produced
    a point is recorded in that point's metadata. Cross-validation is skipped
    inside sweeps (the per-solve route is exercised by solve_scalarized).
    """
    if kind not in ("sum", "product", "chebyshev"):
        raise ValidationError(f"sweeps use weighted kinds, got {kind!r}")
    weights = [tuple(float(v) for v in w) for w in weight_grid]
    if not weights:
        raise ValidationError("weight grid must be nonempty")
    for w in weights:
        if len(w) != problem.M:
            raise DimensionMismatch(f"weight vector {w} has wrong length for M={problem.M}")
        if any(v <= 0.0 for v in w):
            raise ValidationError(f"weights must be strictly positive, got {w}")
        if abs(sum(w) - 1.0) > 1e-9:
            raise ValidationError(f"weights must lie on the simplex (sum to 1), got sum {sum(w)}")

    by_vector: dict[tuple[float, ...], FrontPoint] = {}
    order: list[tuple[float, ...]] = []
    for w in weights:
        sol = solve_scalarized(
            problem, GoalSpec(kind, weights=w), search,
            refine_levels=refine_levels, cross_validate=False, chunk=chunk,
        )
        key = sol.g_star.values
        if key in by_vector:
            by_vector[key].meta["weights"].append(list(w))
            continue
        point = FrontPoint(
            x=sol.x_star,
            g=sol.g_star,
            boundary_kind=WEAK,
            meta={"weights": [list(w)], "value": sol.value},
        )
        by_vector[key] = point
        order.append(key)

    return Front(
        problem=problem.name,
        method=METHOD_SWEEP,
        points=[by_vector[k] for k in order],
        eps=None,
        parameters={
            "kind": kind,
            "weight_count": len(weights),
            "refine_levels": refine_levels,
            "D": problem.D,
            "M": problem.M,
        },
        created_at=created_at or now_timestamp(),
    )
