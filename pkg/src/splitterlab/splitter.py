"""The arena-shrinking splitter game: rules engine, exact solver, strategies.

Each round the connector picks a vertex v of the current arena, the
splitter removes a bounded set W, and the arena shrinks to the radius-d
ball around v (distances measured INSIDE the current arena) minus W.
Splitter wins when the arena empties within the round limit.
"""

from __future__ import annotations

from dataclasses import dataclass, replace

from .graph import Graph, ball_within

RESIGN = object()  # connector strategies return this when no move is acceptable

SPLITTER = "splitter"
CONNECTOR = "connector"

SOLVER_MAX_VERTICES = 12


class IllegalMove(ValueError):
    def __init__(self, player: str, rule: str):
        self.player = player
        self.rule = rule
        super().__init__(f"illegal {player} move: {rule}")


@dataclass(frozen=True)
class GameConfig:
    d: int
    ell: int | None = None
    m: int | None = None

    def __post_init__(self) -> None:
        if self.d < 0:
            raise ValueError("locality radius d must be nonnegative")
        if self.ell is not None and self.ell < 1:
            raise ValueError("round limit ell must be at least 1 when present")
        if self.m is not None and self.m < 1:
            raise ValueError("removal budget m must be at least 1 when present")


@dataclass(frozen=True)
class Round:
    v: int
    w: frozenset[int]


@dataclass(frozen=True)
class GameState:
    graph: Graph
    config: GameConfig
    arenas: tuple[frozenset[int], ...]  # arenas[i] = arena entering round i+1
    moves: tuple[Round, ...]
    pending_v: int | None = None

    @property
    def arena(self) -> frozenset[int]:
        return self.arenas[-1]

    @property
    def rounds_played(self) -> int:
        return len(self.moves)

    @property
    def winner(self) -> str | None:
        if not self.arena:
            return SPLITTER
        if self.config.ell is not None and self.rounds_played >= self.config.ell:
            return CONNECTOR
        return None

    @property
    def turn(self) -> str | None:
        if self.winner is not None:
            return None
        return SPLITTER if self.pending_v is not None else CONNECTOR


def new_game(g: Graph, config: GameConfig) -> GameState:
    return GameState(
        graph=g,
        config=config,
        arenas=(frozenset(range(g.n)),),
        moves=(),
    )


def propose_connector(state: GameState, v: int) -> GameState:
    if state.winner is not None:
        raise IllegalMove(CONNECTOR, "the game is over")
    if state.pending_v is not None:
        raise IllegalMove(CONNECTOR, "it is splitter's turn")
    if v not in state.arena:
        raise IllegalMove(CONNECTOR, "connector must pick a vertex inside the current arena")
    return replace(state, pending_v=v)


def apply_splitter(state: GameState, w) -> GameState:
    if state.winner is not None:
        raise IllegalMove(SPLITTER, "the game is over")
    if state.pending_v is None:
        raise IllegalMove(SPLITTER, "it is connector's turn")
    w = frozenset(w)
    if not w <= state.arena:
        raise IllegalMove(SPLITTER, "splitter's set must be a subset of the current arena")
    if state.config.m is not None and len(w) > state.config.m:
        raise IllegalMove(
            SPLITTER, f"splitter's set exceeds the removal budget m={state.config.m}"
        )
    v = state.pending_v
    new_arena = frozenset(ball_within(state.graph, v, state.config.d, state.arena)) - w
    return GameState(
        graph=state.graph,
        config=state.config,
        arenas=state.arenas + (new_arena,),
        moves=state.moves + (Round(v=v, w=w),),
        pending_v=None,
    )


def apply_round(state: GameState, v: int, w) -> GameState:
    return apply_splitter(propose_connector(state, v), w)


def replay(g: Graph, config: GameConfig, moves) -> GameState:
    state = new_game(g, config)
    for rnd in moves:
        state = apply_round(state, rnd.v, rnd.w)
    return state


# ---------------------------------------------------------------------------
# Exact solver (m = 1)


class GameSolver:
    """Memoized minimax over (arena, rounds) for the single-removal game.

    The value of an arena is the number of rounds the splitter needs to
    empty it under optimal play by both sides; with m=1 this is always
    finite (removing the picked vertex shrinks the arena every round).
    """

    def __init__(self, g: Graph, d: int):
        if g.n > SOLVER_MAX_VERTICES:
            raise ValueError(f"exact solver is limited to {SOLVER_MAX_VERTICES} vertices")
        self.graph = g
        self.d = d
        self._adj = [0] * g.n
        for u, v in g.edges:
            self._adj[u] |= 1 << v
            self._adj[v] |= 1 << u
        self._value: dict[int, int] = {0: 0}
        self._best_v: dict[int, int] = {}
        self._best_u: dict[tuple[int, int], int] = {}

    def _ball(self, arena: int, v: int) -> int:
        cur = 1 << v
        for _ in range(self.d):
            grown = cur
            rest = cur
            while rest:
                low = rest & -rest
                grown |= self._adj[low.bit_length() - 1]
                rest ^= low
            grown &= arena
            if grown == cur:
                break
            cur = grown
        return cur

    def value(self, arena: int) -> int:
        """Optimal number of rounds for splitter to empty `arena`."""
        known = self._value.get(arena)
        if known is not None:
            return known
        worst = 0
        worst_v = None
        rest = arena
        while rest:
            low = rest & -rest
            v = low.bit_length() - 1
            rest ^= low
            bm = self._ball(arena, v)
            best = None
            best_u = None
            cand = bm
            while cand:
                lu = cand & -cand
                u = lu.bit_length() - 1
                cand ^= lu
                val = 1 + self.value(bm & ~lu)
                if best is None or val < best:
                    best, best_u = val, u
            self._best_u[(arena, v)] = best_u
            if best > worst:
                worst, worst_v = best, v
        self._value[arena] = worst
        if worst_v is not None:
            self._best_v[arena] = worst_v
        return worst

    def mask(self, vertices) -> int:
        out = 0
        for v in vertices:
            out |= 1 << v
        return out

    def connector_move(self, arena_set) -> int:
        arena = self.mask(arena_set)
        self.value(arena)
        return self._best_v[arena]

    def splitter_reply(self, arena_set, v: int) -> set[int]:
        arena = self.mask(arena_set)
        self.value(arena)
        return {self._best_u[(arena, v)]}

    def table(self) -> dict[frozenset[int], dict]:
        """Optimal moves for every arena evaluated so far."""
        out: dict[frozenset[int], dict] = {}
        for arena, val in self._value.items():
            vertices = frozenset(v for v in range(self.graph.n) if arena >> v & 1)
            entry = {
                "rounds": val,
                "connector": self._best_v.get(arena),
                "splitter": {
                    v: u for (a, v), u in self._best_u.items() if a == arena
                },
            }
            out[vertices] = entry
        return out


@dataclass(frozen=True)
class Solution:
    winner: str
    optimal_rounds: int
    solver: GameSolver

    def splitter_strategy(self):
        def strategy(state: GameState) -> set[int]:
            return self.solver.splitter_reply(state.arena, state.pending_v)

        return strategy

    def connector_strategy(self):
        def strategy(state: GameState):
            if not state.arena:
                return RESIGN
            return self.solver.connector_move(state.arena)

        return strategy


def solve_game(g: Graph, config: GameConfig) -> Solution:
    """Exact game value and strategy tables for the m=1 game."""
    if config.m != 1:
        raise ValueError("the exact solver handles m=1 only")
    solver = GameSolver(g, config.d)
    rounds = solver.value(solver.mask(range(g.n)))
    if config.ell is None or rounds <= config.ell:
        winner = SPLITTER
    else:
        winner = CONNECTOR
    return Solution(winner=winner, optimal_rounds=rounds, solver=solver)


# ---------------------------------------------------------------------------
# Proof-derived strategies


def shortest_path_within(g: Graph, subset, a: int, b: int) -> list[int] | None:
    """Deterministic BFS shortest path from a to b inside an induced subgraph."""
    allowed = set(subset)
    if a not in allowed or b not in allowed:
        return None
    parent: dict[int, int | None] = {a: None}
    queue = [a]
    while queue:
        nxt = []
        for u in queue:
            for x in g.adjacency[u]:
                if x in allowed and x not in parent:
                    parent[x] = u
                    nxt.append(x)
        if b in parent:
            break
        queue = nxt
    if b not in parent:
        return None
    path = [b]
    while parent[path[-1]] is not None:
        path.append(parent[path[-1]])
    return list(reversed(path))


def splitter_strategy_path_union(state: GameState) -> set[int]:
    """Remove the connector's vertex plus the union of one short path to
    each earlier connector move, each computed in the arena it was played in."""
    if state.pending_v is None:
        raise ValueError("path-union strategy must be called on splitter's turn")
    v_i = state.pending_v
    w: set[int] = {v_i}
    for j, rnd in enumerate(state.moves):
        path = shortest_path_within(state.graph, state.arenas[j], rnd.v, v_i)
        if path is None or len(path) - 1 > state.config.d:
            raise AssertionError(
                f"no path of length <= {state.config.d} from {rnd.v} to {v_i} "
                f"inside the round-{j + 1} arena; rules violated upstream"
            )
        w.update(path)
    return w & set(state.arena)


def connector_strategy_hub(state: GameState, hubs) -> int | object:
    """Play the smallest designated hub still in the arena; resign when none is."""
    if state.pending_v is not None:
        raise ValueError("hub strategy must be called on connector's turn")
    for h in sorted(hubs):
        if h in state.arena:
            return h
    return RESIGN


def make_hub_connector(hubs):
    def strategy(state: GameState):
        return connector_strategy_hub(state, hubs)

    return strategy


def transform_one_move(strategy):
    """Unroll a set-valued splitter strategy into a single-removal strategy.

    Buffers the wrapped strategy's set and emits its vertices one per
    round, skipping vertices that have already left the arena and
    requesting a fresh set when the buffer drains.
    """
    buffer: list[int] = []

    def wrapped(state: GameState) -> set[int]:
        nonlocal buffer
        buffer = [b for b in buffer if b in state.arena]
        if not buffer:
            buffer = sorted(strategy(state))
            buffer = [b for b in buffer if b in state.arena]
        if not buffer:
            return set()
        return {buffer.pop(0)}

    return wrapped


# ---------------------------------------------------------------------------
# Match harness and replayable traces


@dataclass(frozen=True)
class StrategyTrace:
    config: GameConfig
    moves: tuple[Round, ...]
    winner: str
    arena_sizes: tuple[int, ...]  # after each completed round
    forfeit: str | None = None  # player who emitted an illegal move
    resigned: bool = False


def play_match(
    g: Graph,
    config: GameConfig,
    splitter_strategy,
    connector_strategy,
    round_cap: int | None = None,
) -> StrategyTrace:
    """Alternate the strategies through the rules engine until a win or the cap."""
    if round_cap is None:
        round_cap = g.n
    if round_cap < 1:
        raise ValueError("round_cap must be at least 1")
    state = new_game(g, config)
    winner: str | None = None
    forfeit: str | None = None
    resigned = False
    while winner is None and state.rounds_played < round_cap:
        mv = connector_strategy(state)
        if mv is RESIGN:
            winner = SPLITTER
            resigned = True
            break
        try:
            state = propose_connector(state, mv)
        except IllegalMove:
            winner = SPLITTER
            forfeit = CONNECTOR
            break
        w = splitter_strategy(state)
        try:
            state = apply_splitter(state, w)
        except IllegalMove:
            winner = CONNECTOR
            forfeit = SPLITTER
            break
        winner = state.winner
    if winner is None:
        winner = CONNECTOR  # survived to the cap
    return StrategyTrace(
        config=config,
        moves=state.moves,
        winner=winner,
        arena_sizes=tuple(len(a) for a in state.arenas[1:]),
        forfeit=forfeit,
        resigned=resigned,
    )


def trace_to_json(trace: StrategyTrace) -> dict:
    return {
        "config": {"d": trace.config.d, "ell": trace.config.ell, "m": trace.config.m},
        "moves": [{"v": r.v, "W": sorted(r.w)} for r in trace.moves],
        "winner": trace.winner,
        "arena_sizes": list(trace.arena_sizes),
    }


def trace_from_json(data: dict) -> StrategyTrace:
    cfg = data["config"]
    return StrategyTrace(
        config=GameConfig(d=int(cfg["d"]), ell=cfg.get("ell"), m=cfg.get("m")),
        moves=tuple(Round(v=int(mv["v"]), w=frozenset(mv["W"])) for mv in data["moves"]),
        winner=data["winner"],
        arena_sizes=tuple(data["arena_sizes"]),
    )


def verify_trace(g: Graph, trace: StrategyTrace) -> bool:
    """Replay the move list and confirm the recorded sizes and winner."""
    state = replay(g, trace.config, trace.moves)
    if tuple(len(a) for a in state.arenas[1:]) != trace.arena_sizes:
        return False
    if trace.forfeit or trace.resigned:
        return True
    final = state.winner
    if trace.winner == SPLITTER:
        return final == SPLITTER
    return final in (None, CONNECTOR)
