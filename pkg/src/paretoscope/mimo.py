"""Massive-MIMO downlink dimensioning model.

Closed-form average user rate and cell power consumption for a network where
each base station runs N antennas, serves K single-antenna users with
zero-forcing precoding, and emits P watts. The three objectives are the
average user rate (bit/s/user), the area rate (bit/s/km^2), and the energy
efficiency (bit/J) over the bundle

    1 <= K <= N/2,  2 <= N <= N_max,  0 <= P <= N * P_max.

Intercell propagation is collapsed into the two aggregate constants Lambda1
(mean inverse serving-channel variance) and Lambda2 (mean intercell-to-serving
ratio); no channel realizations are simulated.
"""

from __future__ import annotations

import dataclasses
import math
import time
from dataclasses import dataclass
from pathlib import Path

import numpy as np

from . import kernels
from .core import Constraint, Objective, ObjectiveVector, ProblemDefinition
from .errors import ValidationError

UNITS = ("bit/s/user", "bit/s/km^2", "bit/J")
OBJECTIVE_NAMES = ("user_rate", "area_rate", "energy_efficiency")


@dataclass(frozen=True)
class MimoParams:
    """Model constants; defaults are the reference parameter set."""

    B: float = 10e6          # bandwidth [Hz]
    sigma2: float = 1e-13    # noise power [W]
    A: float = 0.0625        # cell area [km^2]
    Lambda1: float = 1.72e9  # E{1 / serving-channel variance}
    Lambda2: float = 0.54    # E{intercell / serving variance ratio}
    Upsilon: float = 1000.0  # coherence block length [channel uses]
    eta: float = 0.31        # power amplifier efficiency
    C_N: float = 1.0         # circuit power per BS antenna [W]
    C_K: float = 0.3         # circuit power per served user [W]
    C_0: float = 10.0        # static power per cell [W]
    L_eff: float = 12.8e9    # computational efficiency [flop/s per W]
    N_max: int = 500         # max antennas per BS
    P_max: float = 20.0      # max emitted power per antenna [W]

    def __post_init__(self):
        for name in ("B", "sigma2", "A", "Lambda1", "Lambda2", "Upsilon",
                     "C_N", "C_K", "C_0", "L_eff", "P_max"):
            v = getattr(self, name)
            if not (isinstance(v, (int, float)) and math.isfinite(v) and v > 0):
                raise ValidationError(f"{name} must be a positive finite number, got {v!r}")
        if not (0.0 < self.eta <= 1.0):
            raise ValidationError(f"eta must be in (0, 1], got {self.eta}")
        if not (isinstance(self.N_max, int) and self.N_max >= 2):
            raise ValidationError(f"N_max must be an integer >= 2, got {self.N_max!r}")


@dataclass(frozen=True)
class MimoPoint:
    """One resource utilization: K users, N antennas, P watts emitted."""

    K: int
    N: int
    P: float

    def __post_init__(self):
        if not (isinstance(self.K, int) and self.K >= 1):
            raise ValidationError(f"K must be an integer >= 1, got {self.K!r}")
        if not (isinstance(self.N, int) and self.N >= 2):
            raise ValidationError(f"N must be an integer >= 2, got {self.N!r}")
        if not (math.isfinite(self.P) and self.P >= 0.0):
            raise ValidationError(f"P must be finite and >= 0, got {self.P!r}")

    def is_feasible(self, params: MimoParams) -> bool:
        return (
            self.K * 2 <= self.N
            and self.N <= params.N_max
            and self.P <= self.N * params.P_max
        )

    def as_tuple(self) -> tuple[float, float, float]:
        return (float(self.K), float(self.N), float(self.P))


def _table(pt: MimoPoint, params: MimoParams) -> np.ndarray:
    k, n, p = pt.as_tuple()
    return kernels.mimo_objective_table(
        np.array([k]), np.array([n]), np.array([p]), params
    )[0]


def average_user_rate(pt: MimoPoint, params: MimoParams = MimoParams()) -> float:
    """Mean downlink rate per user [bit/s]; exactly 0 when P = 0."""
    if pt.K >= params.Upsilon:
        raise ValidationError(
            f"K={pt.K} >= coherence block length {params.Upsilon}: no room for pilots"
        )
    return float(_table(pt, params)[0])


def total_power(pt: MimoPoint, params: MimoParams = MimoParams()) -> float:
    """Cell power consumption [W]; always >= C_0 > 0."""
    return float(sum(power_breakdown(pt, params).values()))


def power_breakdown(pt: MimoPoint, params: MimoParams = MimoParams()) -> dict[str, float]:
    """Additive components of the cell power consumption [W]."""
    k, n, p = pt.as_tuple()
    # one zero-forcing precoder computation per coherence block, B/Upsilon blocks/s
    precoding_flops = 3.0 * k * k * n * (params.B / params.Upsilon)
    return {
        "amplifier": p / params.eta,
        "antenna_circuits": n * params.C_N,
        "user_circuits": k * params.C_K,
        "precoding": precoding_flops / params.L_eff,
        "static": params.C_0,
    }


def objectives(pt: MimoPoint, params: MimoParams = MimoParams()) -> ObjectiveVector:
    """(user rate, area rate, energy efficiency) at one point."""
    if pt.K >= params.Upsilon:
        raise ValidationError(
            f"K={pt.K} >= coherence block length {params.Upsilon}: no room for pilots"
        )
    return ObjectiveVector(tuple(_table(pt, params)), UNITS)


def rate_saturation_limit(K: int, N: int, params: MimoParams = MimoParams()) -> float:
    """Closed-form user-rate limit as P grows without bound."""
    return float(
        params.B * (1.0 - K / params.Upsilon)
        * math.log2(1.0 + (N - K) / (K * params.Lambda2))
    )


def as_problem(params: MimoParams | None = None, name: str = "mimo_case_study") -> ProblemDefinition:
    """The dimensioning bundle and objectives assembled as a problem definition."""
    from .problems import mimo_default_grid

    prm = params or MimoParams()
    p_cap = prm.N_max * prm.P_max

    def batch_objectives(X, _prm=prm):
        X = np.asarray(X, dtype=np.float64)
        return kernels.mimo_objective_table(X[:, 0], X[:, 1], X[:, 2], _prm)

    def batch_feasible(X, _prm=prm):
        X = np.asarray(X, dtype=np.float64)
        return (2.0 * X[:, 0] <= X[:, 1]) & (X[:, 2] <= X[:, 1] * _prm.P_max)

    def scalar(m, X):
        return float(batch_objectives(np.asarray(X, dtype=np.float64).reshape(1, 3))[0, m])

    objs = tuple(
        Objective(nm, unit, (lambda x, m=m: scalar(m, x)))
        for m, (nm, unit) in enumerate(zip(OBJECTIVE_NAMES, UNITS))
    )
    cons = (
        Constraint("users_at_most_half_antennas", lambda x: 2.0 * x[0] <= x[1]),
        Constraint("power_cap_per_antenna", lambda x, _pm=prm.P_max: x[2] <= x[1] * _pm),
    )
    return ProblemDefinition(
        name=name,
        lower=(1.0, 2.0, 0.0),
        upper=(250.0, float(prm.N_max), float(p_cap)),
        integral=(True, True, False),
        objectives=objs,
        origin_point=(1.0, 2.0, 0.0),
        constraints=cons,
        batch_objectives=batch_objectives,
        batch_feasible=batch_feasible,
        default_grid=mimo_default_grid(prm),
    )


# parameter overrides ---------------------------------------------------------

_INT_FIELDS = {"N_max"}
_FIELD_NAMES = {f.name for f in dataclasses.fields(MimoParams)}


def load_params(path: str | Path, base: MimoParams | None = None) -> MimoParams:
    """Read ``key=value`` overrides; '#' starts a comment; unknown keys are rejected."""
    overrides = {}
    for lineno, raw in enumerate(Path(path).read_text().splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if "=" not in line:
            raise ValidationError(f"{path}:{lineno}: expected key=value, got {raw!r}")
        key, value = (part.strip() for part in line.split("=", 1))
        if key not in _FIELD_NAMES:
            raise ValidationError(f"{path}:{lineno}: unknown parameter {key!r}")
        try:
            overrides[key] = int(value) if key in _INT_FIELDS else float(value)
        except ValueError as exc:
            raise ValidationError(f"{path}:{lineno}: bad number {value!r}") from exc
    return dataclasses.replace(base or MimoParams(), **overrides)


# energy-efficiency optimum ----------------------------------------------------


def find_max_ee(
    params: MimoParams | None = None,
    n_power: int = 201,
    refine_rounds: int = 40,
    neighborhood: int = 2,
) -> dict:
    """Maximize energy efficiency over the full bundle.

    Exhaustive scan over every integer (K, N) pair and a logarithmic power
    grid (n_power points including P=0), then bisection-style refinement of P
    around the incumbent and an integer neighborhood sweep. Returns the
    optimizer, its objective vector, and scan diagnostics.
    """
    prm = params or MimoParams()
    t0 = time.perf_counter()
    n_vals = np.arange(2.0, prm.N_max + 1.0)
    p_vals = np.concatenate(([0.0], np.logspace(-3, np.log10(prm.N_max * prm.P_max), n_power - 1)))
    evaluations = 0
    best_ee = -1.0
    best = None
    k_cap = int(min(250, prm.N_max // 2))
    for k in range(1, k_cap + 1):
        ns = n_vals[n_vals >= 2.0 * k]
        N, P = np.meshgrid(ns, p_vals, indexing="ij")
        feas = P <= N * prm.P_max
        Kc = np.full(feas.sum(), float(k))
        Nc, Pc = N[feas], P[feas]
        table = kernels.mimo_objective_table(Kc, Nc, Pc, prm)
        evaluations += len(Kc)
        i = int(np.argmax(table[:, 2]))
        if table[i, 2] > best_ee:
            best_ee = float(table[i, 2])
            best = (float(k), float(Nc[i]), float(Pc[i]))

    # refine P around the incumbent (K, N fixed: integer dimensions stay put)
    k, n, p = best
    lo = p_vals[max(0, int(np.searchsorted(p_vals, p)) - 1)]
    hi_idx = min(len(p_vals) - 1, int(np.searchsorted(p_vals, p)) + 1)
    hi = min(p_vals[hi_idx], n * prm.P_max)
    for _ in range(refine_rounds):
        ps = np.linspace(lo, hi, 9)
        table = kernels.mimo_objective_table(np.full(9, k), np.full(9, n), ps, prm)
        evaluations += 9
        j = int(np.argmax(table[:, 2]))
        if table[j, 2] > best_ee:
            best_ee = float(table[j, 2])
            p = float(ps[j])
        lo, hi = ps[max(0, j - 1)], ps[min(8, j + 1)]

    # integer neighborhood around (K, N) at the refined power
    for dk in range(-neighborhood, neighborhood + 1):
        for dn in range(-neighborhood, neighborhood + 1):
            kk, nn = k + dk, n + dn
            if kk < 1 or nn < 2 or 2 * kk > nn or nn > prm.N_max or p > nn * prm.P_max:
                continue
            row = kernels.mimo_objective_table(
                np.array([kk]), np.array([nn]), np.array([p]), prm
            )[0]
            evaluations += 1
            if row[2] > best_ee:
                best_ee = float(row[2])
                k, n = kk, nn

    point = MimoPoint(int(k), int(n), float(p))
    return {
        "point": point,
        "objectives": objectives(point, prm),
        "evaluations": evaluations,
        "elapsed_s": time.perf_counter() - t0,
    }
