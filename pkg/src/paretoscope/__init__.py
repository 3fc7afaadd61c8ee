"""Pareto-boundary computation, certification, and exploration toolkit.

Computes attainable-set samples for vector-valued design problems (grid
clouds and certified direction searches), solves scalarized goals, and serves
an interactive refinement loop over HTTP. Ships the massive-MIMO network
dimensioning model as the flagship built-in problem.
"""

from .core import (
    GoalSpec,
    Objective,
    ObjectiveVector,
    ProblemDefinition,
    ResourcePoint,
    dominates,
    eval_goal,
    normalize_weights,
    pareto_filter,
    restrict_objectives,
)
from .grids import GridSpec
from .kernels import backend as kernel_backend
from .mimo import MimoParams, MimoPoint
from .sampler import (
    Direction,
    Front,
    FrontPoint,
    bisect_ray,
    generate_directions,
    grid_sample,
    membership_test,
    sample_front,
    utopia,
)
from .scalarize import ScalarSolution, scalarize_sweep, solve_scalarized
from .sessions import BoundRefinement, FloorRefinement, SessionState, apply_refinements

__version__ = "0.1.0"

__all__ = [
    "BoundRefinement",
    "Direction",
    "FloorRefinement",
    "Front",
    "FrontPoint",
    "GoalSpec",
    "GridSpec",
    "MimoParams",
    "MimoPoint",
    "Objective",
    "ObjectiveVector",
    "ProblemDefinition",
    "ResourcePoint",
    "ScalarSolution",
    "SessionState",
    "apply_refinements",
    "bisect_ray",
    "dominates",
    "eval_goal",
    "generate_directions",
    "grid_sample",
    "kernel_backend",
    "membership_test",
    "normalize_weights",
    "pareto_filter",
    "restrict_objectives",
    "sample_front",
    "scalarize_sweep",
    "solve_scalarized",
    "utopia",
]
