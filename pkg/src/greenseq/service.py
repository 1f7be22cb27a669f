"""HTTP session service for step-by-step green mutation.

A session holds a framed quiver and a stack of states; every mutate request
must name a currently green vertex, so the recorded sequence is a green
sequence by construction, and the session completes exactly when all mutable
vertices are red.  Sessions live in memory and expire after an idle period.

All integers travel as JSON numbers (c-vector entries stay small at
interactive depths; there are no path counts in this API).
"""
from __future__ import annotations

import secrets
import threading
import time
from dataclasses import dataclass, field

from fastapi import FastAPI, Request
from fastapi.middleware.cors import CORSMiddleware
from fastapi.responses import JSONResponse

from greenseq import catalog
from greenseq.quiver import ExchangeMatrix, VertexColor, framed
from greenseq.quiverio import QuiverFormatError, parse_quiver, parse_quiver_json
from greenseq.search import VerifyStatus, reaches_all_red, verify_sequence

DEFAULT_TTL_SECONDS = 3600.0


class ApiError(Exception):
    def __init__(self, status: int, error: str, **extra):
        self.status = status
        self.payload = {"error": error, **extra}
        super().__init__(error)


@dataclass
class Session:
    id: str
    base: ExchangeMatrix
    states: list[ExchangeMatrix]
    sequence: list[int] = field(default_factory=list)
    last_access: float = 0.0
    lock: threading.Lock = field(default_factory=threading.Lock)


async def _json_body(request: Request):
    try:
        return await request.json()
    except Exception:
        raise ApiError(400, "bad_request", detail="body must be JSON")


def _snapshot(sess: Session) -> dict:
    state = sess.states[-1]
    n = state.n
    colors = [state.vertex_color(i).value for i in range(1, n + 1)]
    done = state.is_all_red()
    snap = {
        "matrix": [list(row) for row in state.entries],
        "n": n,
        "m": state.m,
        "c_matrix": [list(row) for row in state.c_matrix()],
        "colors": colors,
        "moves": list(state.green_vertices()),
        "sequence": list(sess.sequence),
        "status": "maximal-green-complete" if done else "in-progress",
    }
    if done:
        checked = verify_sequence(sess.base, sess.sequence)
        # cannot fail: every recorded step was green and the end is all-red
        assert checked.status is VerifyStatus.VALID_MAXIMAL_GREEN
        snap["terminal_perm"] = list(checked.terminal_perm)
    return snap


def create_app(ttl: float = DEFAULT_TTL_SECONDS, clock=time.monotonic) -> FastAPI:
    app = FastAPI(title="greenseq session service")
    # the explorer page is typically opened from a file:// or dev-server
    # origin; sessions are throwaway, so a permissive policy is fine
    app.add_middleware(
        CORSMiddleware,
        allow_origins=["*"],
        allow_methods=["*"],
        allow_headers=["*"],
    )
    sessions: dict[str, Session] = {}
    registry_lock = threading.Lock()

    def sweep(now: float):
        stale = [s.id for s in sessions.values() if now - s.last_access > ttl]
        for sid in stale:
            sessions.pop(sid, None)

    def get_session(sid: str) -> Session:
        now = clock()
        with registry_lock:
            sweep(now)
            sess = sessions.get(sid)
            if sess is None:
                raise ApiError(404, "unknown_session")
            sess.last_access = now
            return sess

    @app.exception_handler(ApiError)
    async def on_api_error(_request: Request, err: ApiError):
        return JSONResponse(status_code=err.status, content=err.payload)

    @app.get("/catalog")
    def list_catalog():
        out = []
        for name in catalog.names():
            entry = catalog.make(name)
            item = {
                "name": name,
                "description": entry.description,
                "n": entry.matrix.n,
            }
            if entry.note:
                item["note"] = entry.note
            out.append(item)
        return out

    @app.post("/sessions", status_code=201)
    async def create_session(request: Request):
        body = await _json_body(request)
        if not isinstance(body, dict):
            raise ApiError(400, "bad_request")
        if "catalog" in body:
            try:
                base = catalog.make(body["catalog"]).matrix
            except KeyError as err:
                raise ApiError(400, "unknown_catalog", detail=err.args[0])
        elif "quiver" in body:
            raw = body["quiver"]
            try:
                # strings may be either the plain text format or JSON text
                base = parse_quiver(raw) if isinstance(raw, str) else parse_quiver_json(raw)
            except QuiverFormatError as err:
                raise ApiError(400, "bad_quiver", detail=str(err))
            if base.m != 0:
                raise ApiError(400, "bad_quiver",
                               detail="session quivers must have no frozen vertices")
        else:
            raise ApiError(400, "bad_request",
                           detail='body needs "catalog" or "quiver"')
        sess = Session(
            id=secrets.token_hex(8),
            base=base,
            states=[framed(base)],
            last_access=clock(),
        )
        with registry_lock:
            sweep(sess.last_access)
            sessions[sess.id] = sess
        return {"id": sess.id, "snapshot": _snapshot(sess)}

    @app.get("/sessions/{sid}")
    def get_state(sid: str):
        sess = get_session(sid)
        with sess.lock:
            return _snapshot(sess)

    @app.post("/sessions/{sid}/mutate")
    async def mutate(sid: str, request: Request):
        body = await _json_body(request)
        vertex = body.get("vertex") if isinstance(body, dict) else None
        sess = get_session(sid)
        with sess.lock:
            state = sess.states[-1]
            if not isinstance(vertex, int) or not 1 <= vertex <= state.n:
                raise ApiError(400, "bad_vertex",
                               detail=f"vertex must be an integer in 1..{state.n}")
            if state.vertex_color(vertex) is not VertexColor.GREEN:
                raise ApiError(409, "not_green",
                               c_vector=list(state.c_vector(vertex)))
            sess.states.append(state.mutate(vertex))
            sess.sequence.append(vertex)
            return _snapshot(sess)

    @app.post("/sessions/{sid}/undo")
    def undo(sid: str):
        sess = get_session(sid)
        with sess.lock:
            if len(sess.states) == 1:
                raise ApiError(409, "nothing_to_undo")
            sess.states.pop()
            sess.sequence.pop()
            return _snapshot(sess)

    @app.get("/sessions/{sid}/hints")
    def hints(sid: str, depth: int | None = None):
        sess = get_session(sid)
        with sess.lock:
            state = sess.states[-1]
            d = 2 * state.n if depth is None else depth
            if d < 1:
                raise ApiError(400, "bad_depth", detail="depth must be >= 1")
            out = [
                {
                    "vertex": k,
                    "completable": reaches_all_red(state.mutate(k), d - 1),
                }
                for k in state.green_vertices()
            ]
            return {"depth": d, "hints": out}

    return app


def app() -> FastAPI:
    """Factory for `uvicorn greenseq.service:app --factory`."""
    return create_app()
