"""Exception hierarchy for the toolkit.

Callers that need to distinguish outcomes (empty grid vs. nothing feasible,
over-constrained refinements, a too-small bisection bracket) get a dedicated
class; everything derives from ParetoscopeError so the CLI and service can
map internal failures uniformly.
"""


class ParetoscopeError(Exception):
    """Base class for all toolkit errors."""

    code = "error"


class DimensionMismatch(ParetoscopeError, ValueError):
    """Vectors or grids whose lengths disagree with the problem dimensions."""

    code = "dimension_mismatch"


class ValidationError(ParetoscopeError, ValueError):
    """Invalid field values (negative weights, NaN objectives, bad bounds)."""

    code = "invalid_value"


class EmptyInputError(ParetoscopeError, ValueError):
    """An operation that requires at least one element got none."""

    code = "empty_input"


class GridError(ParetoscopeError, ValueError):
    """Grid values outside the box, or non-integers on integral dimensions."""

    code = "invalid_grid"


class EmptyGridError(GridError):
    """The grid resolves to zero points."""

    code = "empty_grid"


class AllInfeasibleError(ParetoscopeError):
    """The grid has points, but none of them satisfies the constraints."""

    code = "all_infeasible"


class LambdaMaxTooSmall(ParetoscopeError):
    """The bisection upper bracket is attainable, so no boundary is inside."""

    code = "lambda_max_too_small"


class OverConstrainedError(ParetoscopeError):
    """A refinement emptied the feasible set."""

    code = "over_constrained"


class SweepCancelled(ParetoscopeError):
    """A long-running sweep was cancelled by its owner."""

    code = "cancelled"


class UnknownProblemError(ParetoscopeError, KeyError):
    """No built-in problem registered under the requested name."""

    code = "unknown_problem"
