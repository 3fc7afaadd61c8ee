"""Hot numeric kernels with a compiled core and a numpy fallback.

The Cython extension (``_speedups``) is optional; when it is missing, fails
to import, or PARETOSCOPE_NO_SPEEDUPS is set, the pure-numpy implementations
in ``_fallback`` are used. The active backend is fixed at import time so that
every evaluation in a process goes through one code path.
"""

import os

from . import _fallback

_impl = _fallback
BACKEND = "fallback"
if not os.environ.get("PARETOSCOPE_NO_SPEEDUPS"):
    try:  # pragma: no cover - exercised via the parity tests when compiled
        from . import _speedups  # type: ignore[attr-defined]

        _impl = _speedups
        BACKEND = "compiled"
    except ImportError:  # pragma: no cover
        pass


def backend() -> str:
    """Name of the active kernel backend ('compiled' or 'fallback')."""
    return BACKEND


def implementations():
    """Mapping backend name -> module, for parity tests and benchmarks."""
    impls = {"fallback": _fallback}
    if BACKEND == "compiled":
        impls["compiled"] = _impl
    return impls


def mimo_objective_table(K, N, P, params):
    """(g1, g2, g3) rows for parallel arrays of feasible (K, N, P) points."""
    import numpy as np

    K = np.ascontiguousarray(K, dtype=np.float64)
    N = np.ascontiguousarray(N, dtype=np.float64)
    P = np.ascontiguousarray(P, dtype=np.float64)
    return _impl.mimo_objective_table(
        K, N, P,
        params.B, params.sigma2, params.A, params.Lambda1, params.Lambda2,
        params.Upsilon, params.eta, params.C_N, params.C_K, params.C_0,
        params.L_eff,
    )


def pareto_survivor_mask(values):
    """Boolean mask of rows not dominated by any other row (max sense)."""
    import numpy as np

    values = np.ascontiguousarray(values, dtype=np.float64)
    return _impl.pareto_survivor_mask(values)
