"""Built-in problems and their default search discretizations."""

from __future__ import annotations

import numpy as np

from .core import Constraint, Objective, ProblemDefinition
from .errors import UnknownProblemError
from .grids import GridSpec
from .mimo import MimoParams, as_problem as mimo_as_problem


def mimo_default_grid(params: MimoParams | None = None) -> GridSpec:
    """Moderate-resolution scan grid: stepped integers, log-spaced power plus 0."""
    prm = params or MimoParams()
    k_vals = np.arange(1.0, 251.0, 3.0)          # ends exactly at 250
    n_vals = np.unique(np.concatenate((np.arange(2.0, prm.N_max + 1.0, 6.0), [float(prm.N_max)])))
    p_cap = prm.N_max * prm.P_max
    p_vals = np.concatenate(([0.0], np.logspace(-3, np.log10(p_cap), 48)))
    return GridSpec.values(k_vals, n_vals, p_vals)


def toy_simplex() -> ProblemDefinition:
    """Two coordinates on the unit simplex; the boundary is x1 + x2 = 1.

    Ships an exact membership oracle: mu is attainable iff mu1 + mu2 <= 1,
    witnessed by x = mu itself.
    """

    def batch_objectives(X):
        return np.ascontiguousarray(np.asarray(X, dtype=np.float64))

    def batch_feasible(X):
        X = np.asarray(X, dtype=np.float64)
        return X[:, 0] + X[:, 1] <= 1.0

    def membership(mu):
        if mu[0] + mu[1] <= 1.0:
            return (float(mu[0]), float(mu[1]))
        return None

    return ProblemDefinition(
        name="toy_simplex",
        lower=(0.0, 0.0),
        upper=(1.0, 1.0),
        integral=(False, False),
        objectives=(
            Objective("x1", "unit", lambda x: float(x[0])),
            Objective("x2", "unit", lambda x: float(x[1])),
        ),
        origin_point=(0.0, 0.0),
        constraints=(Constraint("simplex", lambda x: x[0] + x[1] <= 1.0),),
        batch_objectives=batch_objectives,
        batch_feasible=batch_feasible,
        membership=membership,
        default_grid=GridSpec.values(np.linspace(0.0, 1.0, 201), np.linspace(0.0, 1.0, 201)),
    )


BUILTIN_NAMES = ("mimo_case_study", "toy_simplex")


def get_problem(name: str, params: MimoParams | None = None) -> ProblemDefinition:
    if name == "mimo_case_study":
        return mimo_as_problem(params)
    if name == "toy_simplex":
        return toy_simplex()
    raise UnknownProblemError(f"unknown problem {name!r}; built-ins: {list(BUILTIN_NAMES)}")


def list_problems() -> list[str]:
    return list(BUILTIN_NAMES)
