"""Front and solution serialization.

The JSON document layout is fixed (field order matters for byte-stable
exports):

    {problem, method, eps, refinement_version,
     points: [{x, g, lambda?, direction?, boundary_kind}], created_at}

Numbers keep full precision (shortest round-trip repr). CSV exports carry the
columns x_1..x_D, g_1..g_M, lambda, boundary_kind, one row per point.
"""

from __future__ import annotations

import json
from typing import Any

from .core import ObjectiveVector, ResourcePoint
from .errors import ValidationError
from .sampler import Direction, Front, FrontPoint


def front_to_dict(front: Front) -> dict[str, Any]:
    points = []
    for p in front.points:
        entry: dict[str, Any] = {"x": list(p.x.x), "g": list(p.g.values)}
        if p.lam is not None:
            entry["lambda"] = p.lam
        if p.direction is not None:
            entry["direction"] = list(p.direction.v)
        entry["boundary_kind"] = p.boundary_kind
        points.append(entry)
    return {
        "problem": front.problem,
        "method": front.method,
        "eps": front.eps,
        "refinement_version": front.refinement_version,
        "points": points,
        "created_at": front.created_at,
    }


def front_to_json_bytes(front: Front) -> bytes:
    return (json.dumps(front_to_dict(front), indent=2) + "\n").encode("utf-8")


def front_from_dict(doc: dict[str, Any]) -> Front:
    points = []
    for entry in doc.get("points", []):
        direction = entry.get("direction")
        points.append(
            FrontPoint(
                x=ResourcePoint(tuple(entry["x"])),
                g=ObjectiveVector(tuple(entry["g"])),
                direction=Direction(tuple(direction)) if direction is not None else None,
                lam=entry.get("lambda"),
                boundary_kind=entry["boundary_kind"],
                eps=doc.get("eps"),
            )
        )
    dims = {}
    if points:
        dims = {"D": len(points[0].x.x), "M": len(points[0].g.values)}
    return Front(
        problem=doc["problem"],
        method=doc["method"],
        points=points,
        eps=doc.get("eps"),
        parameters=dims,
        created_at=doc["created_at"],
        refinement_version=int(doc.get("refinement_version", 0)),
    )


def front_from_json_bytes(data: bytes) -> Front:
    return front_from_dict(json.loads(data.decode("utf-8")))


def _front_dims(front: Front, D: int | None, M: int | None) -> tuple[int, int]:
    if front.points:
        return len(front.points[0].x.x), len(front.points[0].g.values)
    d = D if D is not None else front.parameters.get("D")
    m = M if M is not None else front.parameters.get("M")
    if d is None or m is None:
        raise ValidationError("cannot derive column layout for an empty front; pass D and M")
    return int(d), int(m)


def front_to_csv_bytes(front: Front, D: int | None = None, M: int | None = None) -> bytes:
    d, m = _front_dims(front, D, M)
    header = [f"x_{i + 1}" for i in range(d)] + [f"g_{j + 1}" for j in range(m)]
    header += ["lambda", "boundary_kind"]
    lines = [",".join(header)]
    for p in front.points:
        cells = [repr(v) for v in p.x.x] + [repr(v) for v in p.g.values]
        cells.append(repr(p.lam) if p.lam is not None else "")
        cells.append(p.boundary_kind)
        lines.append(",".join(cells))
    return ("\n".join(lines) + "\n").encode("utf-8")


def export_front(front: Front, format: str, D: int | None = None, M: int | None = None) -> bytes:
    """Serialize a front; format is 'json' or 'csv'."""
    if format == "json":
        return front_to_json_bytes(front)
    if format == "csv":
        return front_to_csv_bytes(front, D, M)
    raise ValidationError(f"unknown export format {format!r}, expected 'json' or 'csv'")


def scalar_solution_to_dict(sol) -> dict[str, Any]:
    goal: dict[str, Any] = {"kind": sol.goal.kind}
    if sol.goal.weights is not None:
        goal["weights"] = list(sol.goal.weights)
    if sol.goal.reference is not None:
        goal["reference"] = list(sol.goal.reference.values)
        goal["p"] = "inf" if sol.goal.p == float("inf") else sol.goal.p
    return {
        "x": list(sol.x_star.x),
        "g": list(sol.g_star.values),
        "value": sol.value,
        "goal": goal,
        "diagnostics": dict(sol.diagnostics),
    }
