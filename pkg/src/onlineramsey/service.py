"""Session HTTP API: play either side of the building game against the engine.

A session pits a human against the engine with fixed targets and a round cap.
The engine answers within the same request, so clients only ever observe a
session that is waiting for the human or finished.  As Builder the engine
follows the bundled plan while the position stays on book (matched by
canonical key, so transpositions count) and falls back to exact search; as
Painter it answers with a color that survives the remaining rounds whenever
one exists.

State lives in memory.  With a persistence directory each session also keeps
an append-only transcript file (the game-engine text format plus header
comments), and a restarted server rebuilds its sessions from those files.
"""

from __future__ import annotations

import threading
import uuid
from dataclasses import dataclass, field
from functools import cache
from pathlib import Path
from typing import Literal

from fastapi import FastAPI
from fastapi.exceptions import RequestValidationError
from fastapi.middleware.cors import CORSMiddleware
from fastapi.requests import Request
from fastapi.responses import JSONResponse
from fastapi.staticfiles import StaticFiles
from pydantic import BaseModel, Field

from .catalog import entries, proposition_bounds
from .engine import (
    GameState,
    forces_blue,
    forces_red,
    initial_state,
    legal_moves,
    parse_transcript,
    play,
    replay,
)
from .graphs import Color, GraphError, TargetGraph, find_mono
from .solver import PainterOracle, TranspositionTable, best_move
from .strategy import bundled_book_index, load_bundled, translate_book_move

Role = Literal["painter", "builder"]
Policy = Literal["book_then_solver", "solver_only"]

# Solver-capacity guard for session targets; caps beyond this are refused too.
MAX_TARGET_VERTICES = 9
DEFAULT_MAX_CAP = 12


class ApiError(Exception):
    """An HTTP error with a machine-readable code."""

    def __init__(self, status: int, code: str, message: str):
        super().__init__(message)
        self.status = status
        self.code = code
        self.message = message


def vertex_name(i: int) -> str:
    """Display name for vertex id i: A..Z, then AA, AB, ..."""
    if i < 0:
        raise ValueError("vertex ids are nonnegative")
    name = ""
    i += 1
    while i:
        i, r = divmod(i - 1, 26)
        name = chr(65 + r) + name
    return name


@dataclass
class Session:
    """One live game plus everything needed to answer for the engine."""

    id: str
    state: GameState
    human_role: Role
    policy: Policy
    cap: int
    moves: list[tuple[int, int, Color]] = field(default_factory=list)
    pending: tuple[int, int] | None = None
    winner: str | None = None
    tt: TranspositionTable = field(default_factory=TranspositionTable)
    book: dict | None = None
    lock: threading.Lock = field(default_factory=threading.Lock)

    @property
    def finished(self) -> bool:
        return self.winner is not None


def _norm_move(state: GameState, u: int, v: int) -> tuple[int, int]:
    """Resolve fresh markers against the current board and sort the pair."""
    u, v = state.board.resolve_pair(u, v)
    return (u, v) if u <= v else (v, u)


def _book_for(red: TargetGraph, blue: TargetGraph, policy: Policy) -> dict | None:
    if policy != "book_then_solver":
        return None
    bundle = load_bundled()
    if (red, blue) != (bundle.red_target, bundle.blue_target):
        return None
    return bundled_book_index()


@cache
def _bundle_script() -> list[tuple[int, int]]:
    """The bundled opening as id pairs, names numbered by first appearance."""
    ids: dict[str, int] = {}
    out = []
    for u, v in load_bundled().opening:
        a = ids.setdefault(u, len(ids))
        b = ids.setdefault(v, len(ids))
        out.append((a, b) if a < b else (b, a))
    return out


def _script_move(sess: Session) -> tuple[int, int] | None:
    """Next scripted opening edge, while the game sits on the scripted opening.

    Mirror-image opening prefixes are isomorphic boards, so the canonical-key
    book cannot distinguish which end of the path to extend; the script can.
    """
    script = _bundle_script()
    j = len(sess.moves)
    if j < len(script) and all(sess.moves[i][:2] == script[i] for i in range(j)):
        return script[j]
    return None


def _engine_edge(sess: Session) -> tuple[int, int]:
    """The engine's next offer as Builder: book move if on book, else search."""
    state = sess.state
    if sess.book is not None:
        move = _script_move(sess)
        if move is not None:
            return move
        hit = sess.book.get(state.board.canonical_key())
        if hit is not None:
            ref_board, ref_move, _label = hit
            return _norm_move(state, *translate_book_move(ref_board, ref_move, state.board))
    move, _value = best_move(state, sess.cap - state.rounds_played, sess.tt)
    if move is None:
        # No forced win fits the cap; play on and let the cap decide.
        move = legal_moves(state)[0]
    return _norm_move(state, *move)


def _engine_color(sess: Session, move: tuple[int, int]) -> Color:
    oracle = PainterOracle(
        sess.state.red_target, sess.state.blue_target, sess.cap, sess.tt
    )
    return oracle.choose(sess.state, move)


def _advance(sess: Session) -> None:
    """Settle the session after a round: declare a winner or ask the engine."""
    sess.pending = None
    if sess.state.is_terminal:
        sess.winner = "builder"
    elif sess.state.rounds_played >= sess.cap:
        sess.winner = "painter"
    elif sess.human_role == "painter":
        sess.pending = _engine_edge(sess)


def _force_flags(state: GameState, move: tuple[int, int]) -> dict:
    fr = forces_red(state, move)
    fb = forces_blue(state, move)
    return {"forces_red": fr, "forces_blue": fb, "double_forced": fr and fb}


def _session_json(sess: Session) -> dict:
    board = sess.state.board
    transcript = [
        {"round": i + 1, "u": u, "v": v, "color": c.letter}
        for i, (u, v, c) in enumerate(sess.moves)
    ]
    pending = None
    pending_forces = None
    if sess.pending is not None:
        pu, pv = sess.pending
        pending = {"u": pu, "v": pv}
        pending_forces = _force_flags(sess.state, sess.pending)
    winning_copy = None
    if sess.state.completed is not None:
        color = Color(sess.state.completed)
        target = sess.state.target_for(color)
        image = find_mono(board, target, color)
        winning_copy = {
            "color": color.letter,
            "target": target.label,
            "vertices": image,
            "edges": [sorted((image[a], image[b])) for a, b in target.edge_list],
        }
    return {
        "id": sess.id,
        "status": "finished" if sess.finished else "awaiting_human",
        "human_role": sess.human_role,
        "policy": sess.policy,
        "cap": sess.cap,
        "red_target": sess.state.red_target.label,
        "blue_target": sess.state.blue_target.label,
        "rounds_played": sess.state.rounds_played,
        "winner": sess.winner,
        "board": {
            "n": board.n,
            "names": [vertex_name(i) for i in range(board.n)],
            "edges": transcript,
        },
        "pending_edge": pending,
        "pending_forces": pending_forces,
        "winning_copy": winning_copy,
        "transcript": transcript,
    }


# ---------------------------------------------------------------------------
# Persistence: one append-only transcript file per session.

_HEADER_KEYS = ("red_target", "blue_target", "human_role", "policy", "cap")


def _transcript_path(persist_dir: Path, sid: str) -> Path:
    return persist_dir / f"{sid}.transcript"


def _recover_session(path: Path) -> Session:
    text = path.read_text()
    head: dict[str, str] = {}
    for line in text.splitlines():
        if not line.startswith("#"):
            break
        key, _, val = line[1:].strip().partition(" ")
        head[key] = val.strip()
    missing = [k for k in _HEADER_KEYS if k not in head]
    if missing:
        raise GraphError(f"{path.name}: missing header {missing[0]!r}")
    red = TargetGraph.parse(head["red_target"])
    blue = TargetGraph.parse(head["blue_target"])
    moves = parse_transcript(text)
    sess = Session(
        id=path.stem,
        state=replay(moves, red, blue),
        human_role=head["human_role"],  # type: ignore[arg-type]
        policy=head["policy"],  # type: ignore[arg-type]
        cap=int(head["cap"]),
        moves=moves,
        book=_book_for(red, blue, head["policy"]),  # type: ignore[arg-type]
    )
    _advance(sess)
    return sess


class SessionStore:
    """In-memory sessions, optionally mirrored to transcript files."""

    def __init__(self, persist_dir: str | Path | None = None):
        self._sessions: dict[str, Session] = {}
        self._lock = threading.Lock()
        self.persist_dir = Path(persist_dir) if persist_dir is not None else None
        if self.persist_dir is not None:
            self.persist_dir.mkdir(parents=True, exist_ok=True)
            for path in sorted(self.persist_dir.glob("*.transcript")):
                sess = _recover_session(path)
                self._sessions[sess.id] = sess

    def add(self, sess: Session) -> None:
        with self._lock:
            self._sessions[sess.id] = sess
        if self.persist_dir is not None:
            comments = [
                f"red_target {sess.state.red_target.label}",
                f"blue_target {sess.state.blue_target.label}",
                f"human_role {sess.human_role}",
                f"policy {sess.policy}",
                f"cap {sess.cap}",
            ]
            lines = "".join(f"# {c}\n" for c in comments)
            _transcript_path(self.persist_dir, sess.id).write_text(lines)

    def get(self, sid: str) -> Session:
        with self._lock:
            sess = self._sessions.get(sid)
        if sess is None:
            raise ApiError(404, "UnknownSession", f"no session {sid!r}")
        return sess

    def append_move(self, sess: Session, u: int, v: int, color: Color) -> None:
        if self.persist_dir is None:
            return
        line = f"{len(sess.moves)} {u} {v} {color.letter}\n"
        with _transcript_path(self.persist_dir, sess.id).open("a") as fh:
            fh.write(line)


# ---------------------------------------------------------------------------
# Request bodies.


class CreateSessionRequest(BaseModel):
    red_target: str
    blue_target: str
    human_role: Role
    cap: int = Field(ge=1)
    policy: Policy = "book_then_solver"


class MoveRequest(BaseModel):
    color: str | None = None
    u: int | None = None
    v: int | None = None


# ---------------------------------------------------------------------------
# Application.


def create_app(
    max_cap: int = DEFAULT_MAX_CAP,
    persist_dir: str | Path | None = None,
    static_dir: str | Path | None = None,
) -> FastAPI:
    store = SessionStore(persist_dir)
    app = FastAPI(title="onlineramsey service", version="1.0")
    app.add_middleware(
        CORSMiddleware, allow_origins=["*"], allow_methods=["*"], allow_headers=["*"]
    )

    @app.exception_handler(ApiError)
    async def api_error(_req: Request, exc: ApiError) -> JSONResponse:
        return JSONResponse(
            status_code=exc.status, content={"code": exc.code, "message": exc.message}
        )

    @app.exception_handler(RequestValidationError)
    async def validation_error(_req: Request, exc: RequestValidationError) -> JSONResponse:
        first = exc.errors()[0]
        where = ".".join(str(p) for p in first.get("loc", ()))
        return JSONResponse(
            status_code=422,
            content={"code": "ValidationError", "message": f"{where}: {first['msg']}"},
        )

    @app.get("/")
    def index() -> dict:
        return {
            "service": "onlineramsey",
            "endpoints": [
                "POST /sessions",
                "GET /sessions/{id}",
                "POST /sessions/{id}/moves",
                "GET /sessions/{id}/hints",
                "GET /catalog/bounds",
            ],
        }

    @app.post("/sessions", status_code=201)
    def create_session(req: CreateSessionRequest) -> dict:
        try:
            red = TargetGraph.parse(req.red_target)
            blue = TargetGraph.parse(req.blue_target)
        except GraphError as exc:
            raise ApiError(422, "ValidationError", str(exc))
        if req.cap > max_cap:
            raise ApiError(
                400, "CapacityExceeded", f"cap {req.cap} exceeds the maximum {max_cap}"
            )
        big = max(red.n_vertices, blue.n_vertices)
        if big > MAX_TARGET_VERTICES:
            raise ApiError(
                400,
                "CapacityExceeded",
                f"targets up to {MAX_TARGET_VERTICES} vertices are supported, got {big}",
            )
        sess = Session(
            id=uuid.uuid4().hex[:12],
            state=initial_state(red, blue),
            human_role=req.human_role,
            policy=req.policy,
            cap=req.cap,
            book=_book_for(red, blue, req.policy),
        )
        store.add(sess)
        with sess.lock:
            _advance(sess)
            return _session_json(sess)

    @app.get("/sessions/{sid}")
    def get_session(sid: str) -> dict:
        sess = store.get(sid)
        with sess.lock:
            return _session_json(sess)

    @app.post("/sessions/{sid}/moves")
    def submit_move(sid: str, req: MoveRequest) -> dict:
        sess = store.get(sid)
        with sess.lock:
            if sess.finished:
                raise ApiError(409, "OutOfTurn", "the session is finished")
            if sess.human_role == "painter":
                move = sess.pending
                if req.u is not None or req.v is not None:
                    raise ApiError(
                        422, "ValidationError", "a painter submits a color, not an edge"
                    )
                if req.color not in ("R", "B"):
                    raise ApiError(422, "ValidationError", "color must be 'R' or 'B'")
                color = Color.from_letter(req.color)
            else:
                if req.color is not None:
                    raise ApiError(
                        422, "ValidationError", "a builder submits an edge, not a color"
                    )
                if (req.u is not None and req.u < 0) or (req.v is not None and req.v < 0):
                    raise ApiError(
                        422, "ValidationError", "vertex ids are nonnegative; null means a fresh vertex"
                    )
                # null endpoints become fresh markers; two nulls, two new vertices
                u = -1 if req.u is None else req.u
                v = (-2 if u == -1 else -1) if req.v is None else req.v
                move = _norm_move(sess.state, u, v)
                if move not in {_norm_move(sess.state, a, b) for a, b in legal_moves(sess.state)}:
                    raise ApiError(400, "IllegalMove", f"pair {move} is not playable")
                color = _engine_color(sess, move)
            try:
                state = play(sess.state, move, color)
            except GraphError as exc:
                raise ApiError(400, "IllegalMove", str(exc))
            sess.state = state
            sess.moves.append((move[0], move[1], color))
            store.append_move(sess, move[0], move[1], color)
            _advance(sess)
            return _session_json(sess)

    @app.get("/sessions/{sid}/hints")
    def list_hints(sid: str) -> dict:
        sess = store.get(sid)
        with sess.lock:
            if sess.finished:
                return {"hints": []}
            state = sess.state
            out = []
            for u, v in legal_moves(state):
                move = _norm_move(state, u, v)
                flags = _force_flags(state, move)
                out.append(
                    {
                        "u": move[0],
                        "v": move[1],
                        **flags,
                        "pending": move == sess.pending,
                    }
                )
            return {"hints": out}

    @app.get("/catalog/bounds")
    def catalog_bounds(k: int | None = None) -> dict:
        ks = [k] if k is not None else [6, 7, 8, 9]
        try:
            rows = [(kk, *proposition_bounds(kk)) for kk in ks]
        except ValueError as exc:
            raise ApiError(422, "ValidationError", str(exc))
        return {
            "entries": [
                {
                    "red": e.red,
                    "blue": e.blue,
                    "value": e.value,
                    "source": e.source,
                    "checkable": e.checkable,
                }
                for e in entries()
            ],
            "path_bounds": [
                {
                    "k": kk,
                    "lower": lo,
                    "upper": hi,
                    "line": f"{lo} <= r(C4,P{kk}) <= {hi}",
                }
                for kk, lo, hi in rows
            ],
        }

    if static_dir is not None and Path(static_dir).is_dir():
        app.mount("/app", StaticFiles(directory=static_dir, html=True), name="app")

    return app
