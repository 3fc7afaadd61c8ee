"""Command-line front door: list problems, sample fronts, scalarize, serve.

Exit codes: 0 success, 1 user error (bad flags, bad inputs, failed verify),
2 internal error. Batch outputs are reproducible: exports carry the fixed
epoch timestamp unless --timestamp injects wall-clock time.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from pathlib import Path

from . import problems as problem_registry
from . import serialize
from .core import GoalSpec, ObjectiveVector
from .errors import ParetoscopeError, ValidationError
from .mimo import MimoParams, load_params
from .sampler import EPOCH_TIMESTAMP, grid_sample, now_timestamp, sample_front, utopia_with_witnesses
from .scalarize import solve_scalarized

DATA_DIR_ENV = "PARETOSCOPE_DATA"


def _load_problem(args):
    params = None
    if getattr(args, "params", None):
        params = load_params(args.params)
    return problem_registry.get_problem(args.problem, params)


def _parse_weights(text: str, problem, search) -> tuple[float, ...]:
    if text.strip() == "utopia":
        u, _ = utopia_with_witnesses(problem, search)
        return u.values
    try:
        return tuple(float(tok) for tok in text.split(","))
    except ValueError as exc:
        raise ValidationError(f"bad weights {text!r}: comma-separated numbers or 'utopia'") from exc


def cmd_problems(args) -> int:
    params = load_params(args.params) if args.params else None
    for name in problem_registry.list_problems():
        p = problem_registry.get_problem(name, params)
        objs = ", ".join(f"{o.name} [{o.unit}]" for o in p.objectives)
        print(f"{p.name}: D={p.D}, M={p.M}, objectives: {objs}")
    return 0


def cmd_sample(args) -> int:
    problem = _load_problem(args)
    search = problem.default_grid
    created = now_timestamp() if args.timestamp else EPOCH_TIMESTAMP
    if args.method == "direction":
        front = sample_front(problem, args.count, args.eps, search, created_at=created)
    else:
        front = grid_sample(problem, search, created_at=created)
    data = serialize.export_front(front, "csv" if args.out.endswith(".csv") else "json",
                                  D=problem.D, M=problem.M)
    Path(args.out).write_bytes(data)
    kinds = {}
    for p in front.points:
        kinds[p.boundary_kind] = kinds.get(p.boundary_kind, 0) + 1
    summary = ", ".join(f"{k}={v}" for k, v in sorted(kinds.items()))
    print(f"{front.method}: {len(front.points)} points ({summary}) -> {args.out}")
    if front.errors:
        print(f"warning: {len(front.errors)} direction(s) failed", file=sys.stderr)
    return 0


def cmd_scalarize(args) -> int:
    problem = _load_problem(args)
    search = problem.default_grid
    if args.goal == "distance":
        if not args.ref:
            raise ValidationError("distance goal needs --ref a,b,c")
        ref = tuple(float(tok) for tok in args.ref.split(","))
        p = float("inf") if args.norm == "inf" else float(args.norm)
        goal = GoalSpec("distance", reference=ObjectiveVector(ref, problem.units), p=p)
    else:
        if not args.weights:
            raise ValidationError(f"{args.goal} goal needs --weights a,b,c (or 'utopia')")
        goal = GoalSpec(args.goal, weights=_parse_weights(args.weights, problem, search))
    solution = solve_scalarized(problem, goal, search, refine_levels=args.refine)
    doc = serialize.scalar_solution_to_dict(solution)
    text = json.dumps(doc, indent=2)
    if args.out:
        Path(args.out).write_text(text + "\n")
    print(text)
    return 0


def cmd_utopia(args) -> int:
    problem = _load_problem(args)
    u, witnesses = utopia_with_witnesses(problem, problem.default_grid)
    print(json.dumps({
        "values": list(u.values),
        "units": list(u.units),
        "witnesses": [list(w.x) for w in witnesses],
    }, indent=2))
    return 0


def cmd_serve(args) -> int:
    from .service import serve

    params = load_params(args.params) if args.params else None
    serve(host=args.host, port=args.port, data_dir=args.data, params=params)
    return 0


def cmd_verify(args) -> int:
    from .verify import run_all

    params = load_params(args.params) if args.params else None
    results = run_all(params=params)
    return 0 if all(r.passed for r in results) else 1


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="paretoscope",
        description="Pareto-boundary sampling and exploration for network dimensioning",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("problems", help="list built-in problems")
    p.add_argument("--params", help="key=value parameter override file")
    p.set_defaults(fn=cmd_problems)

    p = sub.add_parser("sample", help="sample a front and write it to a file")
    p.add_argument("--problem", required=True)
    p.add_argument("--method", choices=("grid", "direction"), required=True)
    p.add_argument("--count", type=int, default=32, help="number of search directions")
    p.add_argument("--eps", type=float, default=1e-4, help="bisection tolerance")
    p.add_argument("--out", required=True, help="output path (.json or .csv)")
    p.add_argument("--params", help="key=value parameter override file")
    p.add_argument("--timestamp", action="store_true",
                   help="stamp wall-clock time instead of the reproducible epoch")
    p.set_defaults(fn=cmd_sample)

    p = sub.add_parser("scalarize", help="solve one scalarized goal")
    p.add_argument("--problem", required=True)
    p.add_argument("--goal", choices=("sum", "product", "chebyshev", "distance"), required=True)
    p.add_argument("--weights", help="comma-separated positive weights, or 'utopia'")
    p.add_argument("--ref", help="reference point for the distance goal")
    p.add_argument("--norm", choices=("1", "2", "inf"), default="2")
    p.add_argument("--refine", type=int, default=0, help="local refinement rounds")
    p.add_argument("--out", help="also write the solution JSON to this path")
    p.add_argument("--params", help="key=value parameter override file")
    p.set_defaults(fn=cmd_scalarize)

    p = sub.add_parser("utopia", help="per-objective maxima over the default grid")
    p.add_argument("--problem", required=True)
    p.add_argument("--params", help="key=value parameter override file")
    p.set_defaults(fn=cmd_utopia)

    p = sub.add_parser("serve", help="run the local exploration service")
    p.add_argument("--port", type=int, default=8423)
    p.add_argument("--host", default="127.0.0.1")
    p.add_argument("--data", default=os.environ.get(DATA_DIR_ENV, "paretoscope-data"))
    p.add_argument("--params", help="key=value parameter override file")
    p.set_defaults(fn=cmd_serve)

    p = sub.add_parser("verify", help="run the acceptance checks and print a pass/fail table")
    p.add_argument("--params", help="key=value parameter override file")
    p.set_defaults(fn=cmd_verify)

    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        # argparse exits 2 on usage errors and 0 on --help; fold usage into 1
        return 0 if exc.code in (0, None) else 1
    try:
        return args.fn(args)
    except ParetoscopeError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    except Exception as exc:  # noqa: BLE001 - last-resort boundary
        print(f"internal error: {type(exc).__name__}: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
