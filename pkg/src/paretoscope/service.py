"""Local HTTP/JSON service: problems, sessions, sampling jobs, scalarization.

Single-designer decision-support tool: binds to localhost by default, no
authentication, flat-file persistence (one JSON document per session and per
front) in a configurable data directory. Sampling runs on a small worker
pool; job progress is polled; jobs can be cancelled. Fronts are cached per
(session, request, refinement version) and served byte-identically on
repeated requests.
"""

from __future__ import annotations

import json
import socket
import threading
import uuid
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from pathlib import Path
from typing import Any

from fastapi import FastAPI, Request
from fastapi.exceptions import RequestValidationError
from fastapi.middleware.cors import CORSMiddleware
from fastapi.responses import JSONResponse, Response
from pydantic import BaseModel

from . import problems as problem_registry
from . import serialize
from .core import GoalSpec, ObjectiveVector, ProblemDefinition
from .errors import (
    OverConstrainedError,
    ParetoscopeError,
    SweepCancelled,
    UnknownProblemError,
    ValidationError,
)
from .grids import GridSpec
from .mimo import MimoParams
from .sampler import grid_sample, now_timestamp, sample_front, utopia_with_witnesses
from .scalarize import solve_scalarized
from .sessions import SessionState, apply_refinements, refinement_from_dict

DEFAULT_EPS = 1e-4
DEFAULT_COUNT = 32


class CreateSessionBody(BaseModel):
    problem: str


class RefineBody(BaseModel):
    refinements: list[dict]


class SampleBody(BaseModel):
    method: str
    count: int | None = None
    eps: float | None = None
    grid: dict | None = None


class ScalarizeBody(BaseModel):
    kind: str
    weights: list[float] | None = None
    reference: list[float] | None = None
    p: float | str | None = None
    refine_levels: int = 0


@dataclass
class Job:
    job_id: str
    session_id: str
    total: int
    completed: int = 0
    status: str = "queued"  # queued | running | done | error | cancelled
    front_id: str | None = None
    error: str | None = None
    cancel_event: threading.Event = field(default_factory=threading.Event)

    def snapshot(self) -> dict[str, Any]:
        out: dict[str, Any] = {
            "status": self.status,
            "progress": {"completed": self.completed, "total": self.total},
        }
        if self.front_id is not None:
            out["front_id"] = self.front_id
        if self.error is not None:
            out["error"] = self.error
        return out


class ServiceState:
    """Owns sessions, jobs, fronts and their on-disk copies."""

    def __init__(self, data_dir: Path, params: MimoParams | None = None):
        self.data_dir = Path(data_dir)
        self.sessions_dir = self.data_dir / "sessions"
        self.fronts_dir = self.data_dir / "fronts"
        self.sessions_dir.mkdir(parents=True, exist_ok=True)
        self.fronts_dir.mkdir(parents=True, exist_ok=True)
        self.params = params
        self.sessions: dict[str, SessionState] = {}
        self.session_locks: dict[str, threading.RLock] = {}
        self.jobs: dict[str, Job] = {}
        self.utopia_cache: dict[str, dict] = {}
        self.lock = threading.Lock()
        self.executor = ThreadPoolExecutor(max_workers=4)
        for path in sorted(self.sessions_dir.glob("*.json")):
            state = SessionState.from_dict(json.loads(path.read_text()))
            self.sessions[state.session_id] = state
            self.session_locks[state.session_id] = threading.RLock()

    # problems ---------------------------------------------------------------

    def problem(self, name: str) -> ProblemDefinition:
        if name not in problem_registry.BUILTIN_NAMES:
            raise UnknownProblemError(f"unknown problem {name!r}")
        return problem_registry.get_problem(name, self.params)

    def refined_problem(self, state: SessionState, version: int | None = None) -> ProblemDefinition:
        base = self.problem(state.problem_name)
        refs = state.refinements_at(state.version if version is None else version)
        return apply_refinements(base, refs, check_nonempty=False)

    # persistence --------------------------------------------------------------

    def save_session(self, state: SessionState) -> None:
        path = self.sessions_dir / f"{state.session_id}.json"
        path.write_text(json.dumps(state.to_dict(), indent=2) + "\n")

    def store_front(self, front_bytes: bytes) -> str:
        front_id = uuid.uuid4().hex
        (self.fronts_dir / f"{front_id}.json").write_bytes(front_bytes)
        return front_id

    def load_front(self, front_id: str) -> bytes | None:
        path = self.fronts_dir / f"{front_id}.json"
        return path.read_bytes() if path.exists() else None

    # sessions -----------------------------------------------------------------

    def create_session(self, problem_name: str) -> SessionState:
        self.problem(problem_name)  # validates the name
        state = SessionState(session_id=uuid.uuid4().hex, problem_name=problem_name)
        with self.lock:
            self.sessions[state.session_id] = state
            self.session_locks[state.session_id] = threading.RLock()
        self.save_session(state)
        return state

    def get_session(self, session_id: str) -> tuple[SessionState, threading.RLock]:
        state = self.sessions.get(session_id)
        if state is None:
            raise UnknownProblemError(f"unknown session {session_id!r}")
        return state, self.session_locks[session_id]

    def base_scale(self, session: SessionState) -> ObjectiveVector:
        """Base-problem utopia, cached per session: keeps sweep rays comparable
        across refinement versions."""
        key = f"{session.session_id}:base-utopia"
        cached = self.utopia_cache.get(key)
        if cached is None:
            base = self.problem(session.problem_name)
            u, _ = utopia_with_witnesses(base, base.default_grid)
            cached = {"values": list(u.values), "units": list(u.units)}
            self.utopia_cache[key] = cached
        return ObjectiveVector(tuple(cached["values"]), tuple(cached["units"]))


def _error(code: str, message: str, status: int) -> JSONResponse:
    return JSONResponse({"error": {"code": code, "message": message}}, status_code=status)


def _grid_from_request(problem: ProblemDefinition, doc: dict | None) -> GridSpec:
    if doc is None:
        if problem.default_grid is None:
            raise ValidationError("problem has no default grid; pass one explicitly")
        return problem.default_grid
    axes = doc.get("axes")
    if axes is None:
        raise ValidationError("grid must carry 'axes': a list of counts or value lists")
    return GridSpec(tuple(ax if isinstance(ax, int) else tuple(ax) for ax in axes))


def create_app(data_dir: str | Path, params: MimoParams | None = None) -> FastAPI:
    state = ServiceState(Path(data_dir), params)
    app = FastAPI(title="paretoscope", version="0.1.0")
    app.state.service = state
    app.add_middleware(
        CORSMiddleware,
        allow_origins=["*"],
        allow_methods=["*"],
        allow_headers=["*"],
    )

    @app.exception_handler(RequestValidationError)
    async def on_validation_error(request: Request, exc: RequestValidationError):
        return _error("validation_error", str(exc.errors()), 400)

    @app.exception_handler(ParetoscopeError)
    async def on_domain_error(request: Request, exc: ParetoscopeError):
        status = {
            "unknown_problem": 404,
            "over_constrained": 409,
        }.get(exc.code, 400)
        return _error(exc.code, str(exc), status)

    # problems ------------------------------------------------------------

    @app.get("/api/v1/problems")
    def list_problems():
        out = []
        for name in problem_registry.BUILTIN_NAMES:
            p = state.problem(name)
            out.append(
                {
                    "name": p.name,
                    "D": p.D,
                    "M": p.M,
                    "objectives": [
                        {"name": o.name, "unit": o.unit} for o in p.objectives
                    ],
                    "box": {
                        "lower": list(p.lower),
                        "upper": list(p.upper),
                        "integral": list(p.integral),
                    },
                }
            )
        return out

    # sessions ------------------------------------------------------------

    @app.post("/api/v1/sessions")
    def create_session(body: CreateSessionBody):
        session = state.create_session(body.problem)
        return {"session_id": session.session_id}

    @app.get("/api/v1/sessions/{session_id}")
    def get_session(session_id: str):
        session, lock = state.get_session(session_id)
        with lock:
            return {
                "session_id": session.session_id,
                "problem": session.problem_name,
                "version": session.version,
                "refinements": [r.to_dict() for r in session.refinements],
            }

    @app.post("/api/v1/sessions/{session_id}/refine")
    def refine(session_id: str, body: RefineBody):
        session, lock = state.get_session(session_id)
        refs = [refinement_from_dict(doc) for doc in body.refinements]
        with lock:
            base = state.problem(session.problem_name)
            # raises OverConstrainedError before the session is touched
            apply_refinements(base, session.refinements + refs, check_nonempty=True)
            session.refinements.extend(refs)
            session.updated_at = now_timestamp()
            state.save_session(session)
            return {"refinement_version": session.version}

    @app.get("/api/v1/sessions/{session_id}/utopia")
    def session_utopia(session_id: str):
        session, lock = state.get_session(session_id)
        with lock:
            key = f"{session_id}:{session.version}"
            cached = state.utopia_cache.get(key)
            if cached is not None:
                return cached
            problem = state.refined_problem(session)
            u, witnesses = utopia_with_witnesses(problem, problem.default_grid)
            doc = {
                "values": list(u.values),
                "units": list(u.units),
                "witnesses": [list(w.x) for w in witnesses],
                "refinement_version": session.version,
            }
            state.utopia_cache[key] = doc
            return doc

    # sampling jobs ----------------------------------------------------------

    @app.post("/api/v1/sessions/{session_id}/sample")
    def sample(session_id: str, body: SampleBody):
        session, lock = state.get_session(session_id)
        if body.method not in ("grid", "direction"):
            raise ValidationError(f"method must be 'grid' or 'direction', got {body.method!r}")
        count = body.count or DEFAULT_COUNT
        eps = body.eps if body.eps is not None else DEFAULT_EPS
        with lock:
            version = session.version
            refs = list(session.refinements)
            cache_key = json.dumps(
                {
                    "method": body.method,
                    "count": count if body.method == "direction" else None,
                    "eps": eps if body.method == "direction" else None,
                    "grid": body.grid,
                    "version": version,
                },
                sort_keys=True,
            )
            cached_front = session.front_cache.get(cache_key)

        job = Job(job_id=uuid.uuid4().hex, session_id=session_id,
                  total=count if body.method == "direction" else 1)
        state.jobs[job.job_id] = job
        if cached_front is not None and state.load_front(cached_front) is not None:
            job.status = "done"
            job.completed = job.total
            job.front_id = cached_front
            return {"job_id": job.job_id}

        def run():
            job.status = "running"
            try:
                base = state.problem(session.problem_name)
                problem = apply_refinements(base, refs, check_nonempty=False)
                grid = _grid_from_request(problem, body.grid)

                def progress(done: int, total: int):
                    job.completed = done

                if body.method == "direction":
                    front = sample_front(
                        problem, count, eps, grid,
                        scale_by=state.base_scale(session),
                        progress=progress,
                        should_cancel=job.cancel_event.is_set,
                    )
                else:
                    front = grid_sample(problem, grid)
                    job.completed = 1
                front.refinement_version = version
                front_bytes = serialize.front_to_json_bytes(front)
                front_id = state.store_front(front_bytes)
                with lock:
                    session.front_cache[cache_key] = front_id
                    state.save_session(session)
                job.front_id = front_id
                job.status = "done"
            except SweepCancelled as exc:
                job.status = "cancelled"
                job.error = str(exc)
            except Exception as exc:  # noqa: BLE001 - reported via the job record
                job.status = "error"
                job.error = str(exc)

        state.executor.submit(run)
        return {"job_id": job.job_id}

    @app.get("/api/v1/jobs/{job_id}")
    def job_status(job_id: str):
        job = state.jobs.get(job_id)
        if job is None:
            raise UnknownProblemError(f"unknown job {job_id!r}")
        doc = job.snapshot()
        if job.status == "done" and job.front_id is not None:
            front_bytes = state.load_front(job.front_id)
            if front_bytes is not None:
                doc["front"] = json.loads(front_bytes)
        return doc

    @app.delete("/api/v1/jobs/{job_id}")
    def cancel_job(job_id: str):
        job = state.jobs.get(job_id)
        if job is None:
            raise UnknownProblemError(f"unknown job {job_id!r}")
        job.cancel_event.set()
        return {"status": job.status, "cancelling": True}

    # scalarization --------------------------------------------------------

    @app.post("/api/v1/sessions/{session_id}/scalarize")
    def scalarize(session_id: str, body: ScalarizeBody):
        session, lock = state.get_session(session_id)
        with lock:
            problem = state.refined_problem(session)
        if body.kind == "distance":
            if body.reference is None:
                raise ValidationError("distance goal needs a reference point")
            p = body.p if body.p is not None else 2
            goal = GoalSpec(
                "distance",
                reference=ObjectiveVector(tuple(body.reference), problem.units),
                p=float("inf") if p == "inf" else float(p),
            )
        else:
            if body.weights is None:
                raise ValidationError(f"{body.kind} goal needs weights")
            goal = GoalSpec(body.kind, weights=tuple(body.weights))
        solution = solve_scalarized(
            problem, goal, problem.default_grid, refine_levels=body.refine_levels
        )
        doc = serialize.scalar_solution_to_dict(solution)
        doc["refinement_version"] = session.version
        return doc

    # fronts ----------------------------------------------------------------

    @app.get("/api/v1/fronts/{front_id}")
    def get_front(front_id: str, format: str = "json"):
        front_bytes = state.load_front(front_id)
        if front_bytes is None:
            raise UnknownProblemError(f"unknown front {front_id!r}")
        if format == "json":
            return Response(front_bytes, media_type="application/json")
        if format == "csv":
            front = serialize.front_from_json_bytes(front_bytes)
            dims = {}
            try:
                problem = state.problem(front.problem)
                dims = {"D": problem.D, "M": problem.M}
            except ParetoscopeError:
                pass
            csv_bytes = serialize.front_to_csv_bytes(front, dims.get("D"), dims.get("M"))
            return Response(csv_bytes, media_type="text/csv")
        raise ValidationError(f"unknown format {format!r}, expected 'json' or 'csv'")

    return app


def check_port_free(host: str, port: int) -> None:
    with socket.socket(socket.AF_INET, socket.SOCK_STREAM) as sock:
        sock.setsockopt(socket.SOL_SOCKET, socket.SO_REUSEADDR, 1)
        try:
            sock.bind((host, port))
        except OSError as exc:
            raise ParetoscopeError(f"port {port} on {host} is busy: {exc}") from exc


def serve(
    host: str = "127.0.0.1",
    port: int = 8423,
    data_dir: str | Path = "paretoscope-data",
    params: MimoParams | None = None,
) -> None:
    """Run the service until interrupted; raises when the port is taken."""
    import uvicorn

    check_port_free(host, port)
    app = create_app(data_dir, params)
    uvicorn.run(app, host=host, port=port, log_level="warning")
