"""Finite search discretizations of a resource bundle.

A GridSpec holds, per dimension, either a sample count (resolved against the
problem's box: evenly spaced, rounded to unique integers on integral
dimensions) or an explicit value list. Scanning walks the Cartesian product
in C order (last axis fastest) in bounded chunks, filtering infeasible points
and evaluating objectives.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterator, Sequence

import numpy as np

from .core import ProblemDefinition
from .errors import DimensionMismatch, EmptyGridError, GridError

DEFAULT_CHUNK = 16384


@dataclass(frozen=True)
class GridSpec:
    """Per-dimension sample counts or explicit value lists."""

    axes: tuple[int | tuple[float, ...], ...]

    def __post_init__(self):
        norm = []
        for ax in self.axes:
            if isinstance(ax, (int, np.integer)):
                if ax < 1:
                    raise GridError(f"axis count must be >= 1, got {ax}")
                norm.append(int(ax))
            else:
                norm.append(tuple(float(v) for v in ax))
        object.__setattr__(self, "axes", tuple(norm))

    @classmethod
    def counts(cls, *counts: int) -> "GridSpec":
        return cls(tuple(counts))

    @classmethod
    def values(cls, *value_lists: Sequence[float]) -> "GridSpec":
        return cls(tuple(tuple(v) for v in value_lists))

    def resolve(self, problem: ProblemDefinition) -> list[np.ndarray]:
        """Concrete ascending value arrays per dimension, validated for the box."""
        if len(self.axes) != problem.D:
            raise DimensionMismatch(
                f"grid has {len(self.axes)} axes, problem has D={problem.D}"
            )
        out = []
        for d, ax in enumerate(self.axes):
            lo, hi, integ = problem.lower[d], problem.upper[d], problem.integral[d]
            if isinstance(ax, int):
                vals = np.linspace(lo, hi, ax)
                if integ:
                    vals = np.unique(np.rint(vals))
            else:
                vals = np.unique(np.asarray(ax, dtype=np.float64))
                if len(vals) == 0:
                    raise EmptyGridError(f"dimension {d}: empty value list")
                if vals[0] < lo or vals[-1] > hi:
                    raise GridError(
                        f"dimension {d}: values outside box [{lo}, {hi}]"
                    )
                if integ and (vals != np.rint(vals)).any():
                    raise GridError(f"dimension {d}: non-integer values on an integral dimension")
            out.append(np.ascontiguousarray(vals, dtype=np.float64))
        return out

    def size(self, problem: ProblemDefinition) -> int:
        n = 1
        for vals in self.resolve(problem):
            n *= len(vals)
        return n

    def clipped_to(self, problem: ProblemDefinition) -> "GridSpec":
        """Drop explicit values that fall outside the (possibly tightened) box."""
        axes = []
        for d, ax in enumerate(self.axes):
            if isinstance(ax, int):
                axes.append(ax)
            else:
                lo, hi = problem.lower[d], problem.upper[d]
                kept = tuple(v for v in ax if lo <= v <= hi)
                if not kept:
                    raise EmptyGridError(
                        f"dimension {d}: no grid values remain inside [{lo}, {hi}]"
                    )
                axes.append(kept)
        return GridSpec(tuple(axes))


def iter_feasible(
    problem: ProblemDefinition,
    grid: GridSpec,
    chunk: int = DEFAULT_CHUNK,
    evaluate: bool = True,
) -> Iterator[tuple[np.ndarray, np.ndarray | None]]:
    """Yield (X, G) chunks of feasible grid points in C order.

    G is None when ``evaluate`` is false. Chunks may be empty when a whole
    stretch of the grid is infeasible; callers typically skip those.
    """
    axes = grid.resolve(problem)
    sizes = [len(a) for a in axes]
    total = int(np.prod(sizes, dtype=object))
    if total == 0:
        raise EmptyGridError("grid resolves to zero points")
    for start in range(0, total, chunk):
        stop = min(start + chunk, total)
        flat = np.arange(start, stop, dtype=np.int64)
        cols = []
        rem = flat
        for size in reversed(sizes):
            cols.append(rem % size)
            rem = rem // size
        X = np.empty((stop - start, problem.D), dtype=np.float64)
        for d, idx in enumerate(reversed(cols)):
            X[:, d] = axes[d][idx]
        mask = problem.feasible_mask(X)
        Xf = X[mask]
        if len(Xf) == 0:
            yield Xf, (np.empty((0, problem.M)) if evaluate else None)
            continue
        G = problem.evaluate_matrix(Xf) if evaluate else None
        yield Xf, G


def collect_feasible(
    problem: ProblemDefinition, grid: GridSpec, chunk: int = DEFAULT_CHUNK
) -> tuple[np.ndarray, np.ndarray]:
    """All feasible grid points and their objective values (may be empty)."""
    xs, gs = [], []
    for X, G in iter_feasible(problem, grid, chunk):
        if len(X):
            xs.append(X)
            gs.append(G)
    if not xs:
        return (
            np.empty((0, problem.D), dtype=np.float64),
            np.empty((0, problem.M), dtype=np.float64),
        )
    return np.vstack(xs), np.vstack(gs)
