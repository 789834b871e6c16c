"""JSON-over-HTTP session service for interactive splitter-game play.

The server is the rules authority: every move goes through the engine's
legality checks, engine replies are computed synchronously, and any
state returned to a client is replayable from its move history.
"""

from __future__ import annotations

import json
import secrets
import threading
from dataclasses import dataclass, field, replace
from datetime import datetime, timezone
from pathlib import Path

from fastapi import FastAPI, Request
from fastapi.responses import JSONResponse
from fastapi.staticfiles import StaticFiles

from . import edgelist
from .families import FamilySpec, generate, hub_vertices
from .graph import Graph, ball_within
from .minors import graph_from_json, graph_to_json
from .splitter import (
    CONNECTOR,
    RESIGN,
    SPLITTER,
    GameConfig,
    GameState,
    IllegalMove,
    Round,
    apply_splitter,
    connector_strategy_hub,
    new_game,
    propose_connector,
    replay,
    solve_game,
    splitter_strategy_path_union,
)

INTERACTIVE_MAX_VERTICES = 500
SOLVER_ENGINE_MAX = 12

SPLITTER_ENGINES = ("path_union", "solver")
CONNECTOR_ENGINES = ("hub", "solver")


class ServiceError(Exception):
    def __init__(self, status: int, code: str, rule: str = "", detail: str = ""):
        self.status = status
        self.code = code
        self.rule = rule
        self.detail = detail
        super().__init__(detail or rule or code)

    def payload(self) -> dict:
        return {"error": {"code": self.code, "rule": self.rule, "detail": self.detail}}


@dataclass
class Session:
    id: str
    graph: Graph
    config: GameConfig
    mode: str  # human_connector | human_splitter
    engine: str
    state: GameState
    family: FamilySpec | None
    hubs: tuple[int, ...] | None
    created_at: str
    updated_at: str
    winner: str | None = None
    resigned: bool = False
    lock: threading.Lock = field(default_factory=threading.Lock, repr=False)

    @property
    def finished(self) -> bool:
        return self.winner is not None or self.state.winner is not None

    def outcome(self) -> str | None:
        return self.winner or self.state.winner


def _now() -> str:
    return datetime.now(timezone.utc).isoformat()


def session_view(s: Session) -> dict:
    state = s.state
    winner = s.outcome()
    to_move = None
    if winner is None:
        human_side = CONNECTOR if s.mode == "human_connector" else SPLITTER
        to_move = "human" if state.turn == human_side else "engine"
    return {
        "id": s.id,
        "mode": s.mode,
        "engine": s.engine,
        "config": {"d": s.config.d, "ell": s.config.ell, "m": s.config.m},
        "status": "finished" if winner is not None else "live",
        "winner": winner,
        "resigned": s.resigned,
        "to_move": to_move,
        "pending_v": state.pending_v,
        "arena": sorted(state.arena),
        "arenas": [sorted(a) for a in state.arenas],
        "arena_sizes": [len(a) for a in state.arenas],
        "moves": [{"v": r.v, "W": sorted(r.w)} for r in state.moves],
        "graph": graph_to_json(s.graph),
        "family": (
            {"kind": s.family.kind, "params": list(s.family.params)} if s.family else None
        ),
        "hubs": list(s.hubs) if s.hubs else None,
        "created_at": s.created_at,
        "updated_at": s.updated_at,
    }


class SessionStore:
    def __init__(self, state_file: str | Path | None = None):
        self._sessions: dict[str, Session] = {}
        self._order: list[str] = []  # creation order, oldest first
        self._lock = threading.RLock()
        self._state_file = Path(state_file) if state_file else None
        if self._state_file and self._state_file.exists():
            self._load()

    def add(self, session: Session) -> None:
        with self._lock:
            self._sessions[session.id] = session
            self._order.append(session.id)
            self._persist()

    def get(self, sid: str) -> Session:
        with self._lock:
            if sid not in self._sessions:
                raise ServiceError(404, "not_found", detail=f"no session {sid}")
            return self._sessions[sid]

    def newest_first(self) -> list[Session]:
        with self._lock:
            return [self._sessions[sid] for sid in reversed(self._order)]

    def touch(self) -> None:
        with self._lock:
            self._persist()

    def _persist(self) -> None:
        if not self._state_file:
            return
        data = {"sessions": [self._dump_session(s) for s in (self._sessions[i] for i in self._order)]}
        tmp = self._state_file.with_suffix(".tmp")
        tmp.write_text(json.dumps(data, indent=2, sort_keys=True))
        tmp.replace(self._state_file)

    @staticmethod
    def _dump_session(s: Session) -> dict:
        return {
            "id": s.id,
            "graph": graph_to_json(s.graph),
            "config": {"d": s.config.d, "ell": s.config.ell, "m": s.config.m},
            "mode": s.mode,
            "engine": s.engine,
            "family": ({"kind": s.family.kind, "params": list(s.family.params)} if s.family else None),
            "hubs": list(s.hubs) if s.hubs else None,
            "moves": [{"v": r.v, "W": sorted(r.w)} for r in s.state.moves],
            "pending_v": s.state.pending_v,
            "winner": s.winner,
            "resigned": s.resigned,
            "created_at": s.created_at,
            "updated_at": s.updated_at,
        }

    def _load(self) -> None:
        data = json.loads(self._state_file.read_text())
        for item in data["sessions"]:
            graph = graph_from_json(item["graph"])
            cfg = item["config"]
            config = GameConfig(d=int(cfg["d"]), ell=cfg.get("ell"), m=cfg.get("m"))
            moves = [Round(v=int(mv["v"]), w=frozenset(mv["W"])) for mv in item["moves"]]
            state = replay(graph, config, moves)
            if item.get("pending_v") is not None:
                state = propose_connector(state, int(item["pending_v"]))
            family = None
            if item.get("family"):
                family = FamilySpec(item["family"]["kind"], tuple(item["family"]["params"]))
            session = Session(
                id=item["id"],
                graph=graph,
                config=config,
                mode=item["mode"],
                engine=item["engine"],
                state=state,
                family=family,
                hubs=tuple(item["hubs"]) if item.get("hubs") else None,
                created_at=item["created_at"],
                updated_at=item["updated_at"],
                winner=item.get("winner"),
                resigned=bool(item.get("resigned")),
            )
            self._sessions[session.id] = session
            self._order.append(session.id)


# ---------------------------------------------------------------------------
# Engine moves


def _engine_splitter_reply(session: Session) -> frozenset[int]:
    if session.engine == "path_union":
        return frozenset(splitter_strategy_path_union(session.state))
    if session.engine == "solver":
        solution = solve_game(session.graph, replace(session.config, m=1))
        return frozenset(
            solution.solver.splitter_reply(session.state.arena, session.state.pending_v)
        )
    raise ServiceError(400, "bad_engine", detail=f"unknown splitter engine {session.engine}")


def _engine_connector_move(session: Session):
    if session.engine == "hub":
        return connector_strategy_hub(session.state, session.hubs or ())
    if session.engine == "solver":
        solution = solve_game(session.graph, replace(session.config, m=1))
        if not session.state.arena:
            return RESIGN
        return solution.solver.connector_move(session.state.arena)
    raise ServiceError(400, "bad_engine", detail=f"unknown connector engine {session.engine}")


def _advance_engine(session: Session) -> None:
    """Let the engine move until it is the human's turn or the game ends."""
    human_side = CONNECTOR if session.mode == "human_connector" else SPLITTER
    while session.outcome() is None and session.state.turn not in (None, human_side):
        if session.state.turn == CONNECTOR:
            mv = _engine_connector_move(session)
            if mv is RESIGN:
                session.winner = SPLITTER
                session.resigned = True
                break
            session.state = propose_connector(session.state, mv)
        else:
            session.state = apply_splitter(session.state, _engine_splitter_reply(session))


# ---------------------------------------------------------------------------
# Application


def create_app(state_file: str | Path | None = None, static_dir: str | Path | None = None) -> FastAPI:
    app = FastAPI(title="splitterlab game service")
    store = SessionStore(state_file)
    app.state.store = store

    @app.exception_handler(ServiceError)
    async def service_error_handler(request: Request, exc: ServiceError):
        return JSONResponse(status_code=exc.status, content=exc.payload())

    @app.get("/api/health")
    def health():
        return {"status": "ok", "sessions": len(store.newest_first())}

    @app.post("/api/sessions", status_code=201)
    async def create_session(request: Request):
        body = await request.json()
        session = _build_session(body)
        store.add(session)
        return {"session": session_view(session)}

    @app.get("/api/sessions")
    def list_sessions(page: int = 1, per_page: int = 20):
        if page < 1 or per_page < 1:
            raise ServiceError(400, "bad_request", detail="page and per_page must be positive")
        sessions = store.newest_first()
        start = (page - 1) * per_page
        chunk = sessions[start : start + per_page]
        return {
            "sessions": [session_view(s) for s in chunk],
            "page": page,
            "per_page": per_page,
            "total": len(sessions),
        }

    @app.get("/api/sessions/{sid}")
    def get_session(sid: str):
        return {"session": session_view(store.get(sid))}

    @app.get("/api/sessions/{sid}/preview")
    def preview(sid: str, v: int):
        session = store.get(sid)
        if v not in session.state.arena:
            raise ServiceError(
                400,
                "illegal_move",
                rule="connector must pick a vertex inside the current arena",
                detail=f"vertex {v} is not in the arena",
            )
        overlay = ball_within(session.graph, v, session.config.d, session.state.arena)
        return {"v": v, "ball": sorted(overlay)}

    @app.post("/api/sessions/{sid}/moves")
    async def submit_move(sid: str, request: Request):
        body = await request.json()
        session = store.get(sid)
        if not session.lock.acquire(blocking=False):
            raise ServiceError(409, "conflict", detail="another move is being processed")
        try:
            _apply_human_move(session, body)
            store.touch()
            return {"session": session_view(session)}
        finally:
            session.lock.release()

    if static_dir is None:
        static_dir = Path(__file__).resolve().parents[2] / "frontend" / "dist"
    if Path(static_dir).is_dir():
        app.mount("/", StaticFiles(directory=str(static_dir), html=True), name="ui")

    return app


def _build_session(body: dict) -> Session:
    if not isinstance(body, dict):
        raise ServiceError(400, "bad_request", detail="request body must be a JSON object")
    family = None
    hubs = None
    try:
        if "family" in body and body["family"]:
            family = FamilySpec(body["family"]["kind"], tuple(body["family"]["params"]))
            graph = generate(family)
            try:
                hubs = hub_vertices(family)
            except ValueError:
                hubs = None
        elif "edge_list" in body and body["edge_list"]:
            graph = edgelist.loads(body["edge_list"])
        elif "graph" in body and body["graph"]:
            graph = graph_from_json(body["graph"])
        else:
            raise ServiceError(400, "bad_request", detail="provide family, edge_list, or graph")
    except edgelist.EdgeListError as exc:
        raise ServiceError(400, "bad_graph", detail=str(exc)) from exc
    except (KeyError, TypeError, ValueError) as exc:
        if isinstance(exc, ServiceError):
            raise
        raise ServiceError(400, "bad_graph", detail=str(exc)) from exc

    if graph.n == 0:
        raise ServiceError(400, "bad_graph", detail="the graph must have at least one vertex")
    if graph.n > INTERACTIVE_MAX_VERTICES:
        raise ServiceError(
            400,
            "too_large",
            detail=f"interactive play is limited to {INTERACTIVE_MAX_VERTICES} vertices",
        )

    cfg = body.get("config") or {}
    try:
        config = GameConfig(
            d=int(cfg["d"]),
            ell=int(cfg["ell"]) if cfg.get("ell") is not None else None,
            m=int(cfg["m"]) if cfg.get("m") is not None else None,
        )
    except (KeyError, TypeError, ValueError) as exc:
        raise ServiceError(400, "bad_config", detail=f"invalid game config: {exc}") from exc

    mode = body.get("mode")
    if mode not in ("human_connector", "human_splitter"):
        raise ServiceError(400, "bad_mode", detail="mode must be human_connector or human_splitter")
    engine = body.get("engine")
    allowed = SPLITTER_ENGINES if mode == "human_connector" else CONNECTOR_ENGINES
    if engine not in allowed:
        raise ServiceError(
            400,
            "bad_engine",
            detail=f"engine for {mode} must be one of {', '.join(allowed)}",
        )
    if engine == "solver" and graph.n > SOLVER_ENGINE_MAX:
        raise ServiceError(
            400, "bad_engine", detail=f"solver engine is limited to {SOLVER_ENGINE_MAX} vertices"
        )
    if engine == "hub" and not hubs:
        raise ServiceError(
            400, "bad_engine", detail="hub engine needs a family with designated hubs"
        )

    now = _now()
    session = Session(
        id=secrets.token_urlsafe(16),
        graph=graph,
        config=config,
        mode=mode,
        engine=engine,
        state=new_game(graph, config),
        family=family,
        hubs=hubs,
        created_at=now,
        updated_at=now,
    )
    _advance_engine(session)  # in human_splitter mode the engine opens
    return session


def _apply_human_move(session: Session, body: dict) -> None:
    if session.outcome() is not None:
        raise ServiceError(409, "finished", detail="this session is finished")
    state = session.state
    human_side = CONNECTOR if session.mode == "human_connector" else SPLITTER
    if state.turn != human_side:
        raise ServiceError(409, "out_of_turn", detail="it is the engine's turn")
    try:
        if human_side == CONNECTOR:
            if "v" not in body:
                raise ServiceError(400, "bad_move", detail='connector move must provide "v"')
            session.state = propose_connector(state, int(body["v"]))
        else:
            if "W" not in body:
                raise ServiceError(400, "bad_move", detail='splitter move must provide "W"')
            session.state = apply_splitter(state, frozenset(int(x) for x in body["W"]))
    except IllegalMove as exc:
        raise ServiceError(400, "illegal_move", rule=exc.rule, detail=str(exc)) from exc
    _advance_engine(session)
    session.updated_at = _now()
