"""Budget-limited exact search for optimal Builder play.

Builder minimizes the round count, Painter maximizes it.  `_search(s, b)`
returns the true game value when it is at most b and a SURVIVES sentinel
otherwise; that contract is what makes the transposition table sound across
different budgets (exact entries are reusable anywhere, survival entries are
lower bounds reusable at caps up to the recorded budget).

Move-level pruning: a move whose reply already survives the shrinking budget
window is dismissed on the spot; a double-forced pair settles the node at
value 1 immediately; positions whose remaining budget cannot complete either
target in the best case are survival-pruned (this bound never fires when a
target is already complete, since completing costs zero new edges then).
Successor deduplication is indirect: isomorphic children share a canonical
key, so the table collapses them without any orbit computation in the hot
path.
"""

from __future__ import annotations

import time
from dataclasses import dataclass, field

from . import strategy as strategy_mod
from .engine import GameState, initial_state
from .graphs import (
    BLUE,
    RED,
    Color,
    ColoredGraph,
    TargetGraph,
    completable_within,
    completion_checker,
    creates_mono,
)

SURVIVES = 1 << 20


class NoStrategyError(Exception):
    """Builder has no winning plan within the requested budget."""


class TranspositionTable:
    """Canonical-key store of search results.

    One int per key: an exact value v >= 0, or -(b+1) recording that the
    position survives b rounds of optimal play.
    """

    __slots__ = ("entries",)

    def __init__(self) -> None:
        self.entries: dict[bytes, int] = {}

    def __len__(self) -> int:
        return len(self.entries)

    def probe(self, key: bytes, budget: int) -> int | None:
        e = self.entries.get(key)
        if e is None:
            return None
        if e >= 0:
            return e if e <= budget else SURVIVES
        return SURVIVES if -e - 1 >= budget else None

    def store_exact(self, key: bytes, value: int) -> None:
        self.entries[key] = value

    def store_bound(self, key: bytes, budget: int) -> None:
        e = self.entries.get(key)
        if e is None or (e < 0 and -e - 1 < budget):
            self.entries[key] = -(budget + 1)


@dataclass
class SolverOptions:
    fresh_fresh: bool = True      # disable for an upper-bound-only search
    use_tt: bool = True
    move_order: str = "forcing"   # "forcing" | "lex" | "reverse" (value-invariant)


@dataclass
class SolveStats:
    nodes: int = 0
    tt_hits: int = 0
    prunes: int = 0
    elapsed: float = 0.0
    tt_size: int = 0


class _Ctx:
    __slots__ = (
        "red_target",
        "blue_target",
        "red_through",
        "blue_through",
        "tt",
        "opts",
        "stats",
        "prune_gate",
    )

    def __init__(self, red_target: TargetGraph, blue_target: TargetGraph,
                 tt: TranspositionTable | None, opts: SolverOptions) -> None:
        self.red_target = red_target
        self.blue_target = blue_target
        self.red_through = completion_checker(red_target)
        self.blue_through = completion_checker(blue_target)
        self.tt = tt if tt is not None else TranspositionTable()
        self.opts = opts
        self.stats = SolveStats()
        self.prune_gate = min(red_target.n_edges, blue_target.n_edges)


def _move_candidates(board: ColoredGraph, ctx: _Ctx) -> list[tuple[int, int, bool, bool]] | int:
    """Playable pairs with forcing flags, or 1 if a double-forced pair exists.

    Fresh endpoints appear as the concrete ids n and n+1 they would take.
    """
    n = board.n
    red = board.red
    blue = board.blue
    radj = list(red) + [0, 0]
    badj = list(blue) + [0, 0]
    red_through = ctx.red_through
    blue_through = ctx.blue_through
    pairs: list[tuple[int, int]] = []
    for u in range(n):
        occ = red[u] | blue[u]
        for v in range(u + 1, n):
            if not ((occ >> v) & 1):
                pairs.append((u, v))
    for u in range(n):
        pairs.append((u, n))
    if ctx.opts.fresh_fresh:
        pairs.append((n, n + 1))
    out = []
    for u, v in pairs:
        bu = 1 << u
        bv = 1 << v
        radj[u] |= bv
        radj[v] |= bu
        rt = red_through(radj, u, v)
        radj[u] ^= bv
        radj[v] ^= bu
        badj[u] |= bv
        badj[v] |= bu
        bt = blue_through(badj, u, v)
        badj[u] ^= bv
        badj[v] ^= bu
        if rt and bt:
            return 1
        out.append((u, v, rt, bt))
    return out


def _order_moves(
    board: ColoredGraph, moves: list[tuple[int, int, bool, bool]], ctx: _Ctx
) -> list[tuple[int, int, bool, bool]]:
    mode = ctx.opts.move_order
    if mode == "lex":
        return sorted(moves, key=lambda m: (m[0], m[1]))
    if mode == "reverse":
        return sorted(moves, key=lambda m: (m[0], m[1]), reverse=True)
    n = board.n
    red = board.red
    blue = board.blue

    def busy(m: tuple[int, int, bool, bool]) -> tuple[int, int, int, int]:
        u, v, rt, bt = m
        du = (red[u] | blue[u]).bit_count() if u < n else 0
        dv = (red[v] | blue[v]).bit_count() if v < n else 0
        return (0 if (rt or bt) else 1, -(du + dv), u, v)

    return sorted(moves, key=busy)


def _search(board: ColoredGraph, budget: int, ctx: _Ctx) -> int:
    """Exact value if <= budget, else SURVIVES.  `board` must be live."""
    if budget <= 0:
        return SURVIVES
    use_tt = ctx.opts.use_tt
    key = b""
    if use_tt:
        key = board.canonical_key()
        hit = ctx.tt.probe(key, budget)
        if hit is not None:
            ctx.stats.tt_hits += 1
            return hit
    ctx.stats.nodes += 1
    if budget < ctx.prune_gate:
        if not completable_within(
            board, ctx.red_target, RED, budget
        ) and not completable_within(board, ctx.blue_target, BLUE, budget):
            ctx.stats.prunes += 1
            if use_tt:
                ctx.tt.store_bound(key, budget)
            return SURVIVES

    moves = _move_candidates(board, ctx)
    if moves == 1:
        if use_tt:
            ctx.tt.store_exact(key, 1)
        return 1

    red = board.red
    blue = board.blue
    n = board.n
    best = SURVIVES
    for u, v, rt, bt in _order_moves(board, moves, ctx):
        limit = budget if best > budget else best - 1
        if limit < 1:
            break
        if rt:
            colors = (BLUE,)
        elif bt:
            colors = (RED,)
        else:
            ru = red[u].bit_count() if u < n else 0
            rv = red[v].bit_count() if v < n else 0
            bu = blue[u].bit_count() if u < n else 0
            bv = blue[v].bit_count() if v < n else 0
            # try the color this edge helps less first: likelier to survive
            colors = (RED, BLUE) if ru + rv <= bu + bv else (BLUE, RED)
        worst = 0
        for c in colors:
            child = board.add_edge(u, v, c)
            cv = _search(child, limit - 1, ctx)
            if cv >= SURVIVES:
                worst = SURVIVES
                break
            if cv > worst:
                worst = cv
        if worst < SURVIVES and worst + 1 < best:
            best = worst + 1
            if best == 2:
                break  # value 1 needs a double-forced pair; none here
    if best <= budget:
        if use_tt:
            ctx.tt.store_exact(key, best)
        return best
    if use_tt:
        ctx.tt.store_bound(key, budget)
    return SURVIVES


def _pick_move(
    board: ColoredGraph, budget: int, ctx: _Ctx
) -> tuple[tuple[int, int] | None, int]:
    """Like _search at one node, but reports a move achieving the value.

    Fresh endpoints in the returned move carry the ids they will take when
    played.  Returns (None, SURVIVES) when nothing wins within budget.
    """
    if budget <= 0:
        return None, SURVIVES
    moves = _move_candidates(board, ctx)
    if moves == 1:
        for u, v, rt, bt in _move_candidates_list(board, ctx):
            if rt and bt:
                return (u, v), 1
    best = SURVIVES
    best_move: tuple[int, int] | None = None
    for u, v, rt, bt in _order_moves(board, moves, ctx):
        limit = budget if best > budget else best - 1
        if limit < 1:
            break
        colors = (BLUE,) if rt else ((RED,) if bt else (RED, BLUE))
        worst = 0
        for c in colors:
            child = board.add_edge(u, v, c)
            cv = _search(child, limit - 1, ctx)
            if cv >= SURVIVES:
                worst = SURVIVES
                break
            if cv > worst:
                worst = cv
        if worst < SURVIVES and worst + 1 < best:
            best = worst + 1
            best_move = (u, v)
            if best == 2:
                break
    return best_move, best


def _move_candidates_list(board: ColoredGraph, ctx: _Ctx) -> list[tuple[int, int, bool, bool]]:
    """Candidate list even when a double-forced pair short-circuits the scan."""
    n = board.n
    red = board.red
    blue = board.blue
    radj = list(red) + [0, 0]
    badj = list(blue) + [0, 0]
    pairs: list[tuple[int, int]] = []
    for u in range(n):
        occ = red[u] | blue[u]
        for v in range(u + 1, n):
            if not ((occ >> v) & 1):
                pairs.append((u, v))
    for u in range(n):
        pairs.append((u, n))
    if ctx.opts.fresh_fresh:
        pairs.append((n, n + 1))
    out = []
    for u, v in pairs:
        bu = 1 << u
        bv = 1 << v
        radj[u] |= bv
        radj[v] |= bu
        rt = ctx.red_through(radj, u, v)
        radj[u] ^= bv
        radj[v] ^= bu
        badj[u] |= bv
        badj[v] |= bu
        bt = ctx.blue_through(badj, u, v)
        badj[u] ^= bv
        badj[v] ^= bu
        out.append((u, v, rt, bt))
    return out


# ---------------------------------------------------------------------------
# Public entry points


@dataclass
class SolveOutcome:
    win: bool
    rounds: int          # WinIn value when win, else the survived cap
    cap: int
    guarantee: str
    pv: list[tuple[int, int, Color]] = field(default_factory=list)
    stats: SolveStats = field(default_factory=SolveStats)
    restricted_moves: bool = False

    def __str__(self) -> str:  # pragma: no cover - cosmetic
        return f"WinIn({self.rounds})" if self.win else f"SurvivesCap({self.cap})"


def value(
    state: GameState,
    cap: int,
    tt: TranspositionTable | None = None,
    options: SolverOptions | None = None,
) -> SolveOutcome:
    """Optimal rounds-to-win from `state`, searched under a hard round cap."""
    if cap < 0:
        raise ValueError("cap must be nonnegative")
    opts = options or SolverOptions()
    ctx = _Ctx(state.red_target, state.blue_target, tt, opts)
    t0 = time.perf_counter()
    if state.is_terminal:
        out = SolveOutcome(True, 0, cap, "exact (already complete)")
    else:
        r = _search(state.board, cap, ctx)
        if r < SURVIVES:
            pv = _principal_variation(state, r, ctx)
            out = SolveOutcome(True, r, cap, "exact", pv=pv)
        else:
            out = SolveOutcome(False, cap, cap, "survives cap")
    ctx.stats.elapsed = time.perf_counter() - t0
    ctx.stats.tt_size = len(ctx.tt)
    out.stats = ctx.stats
    out.restricted_moves = not opts.fresh_fresh
    return out


def _principal_variation(
    state: GameState, val: int, ctx: _Ctx
) -> list[tuple[int, int, Color]]:
    pv: list[tuple[int, int, Color]] = []
    board = state.board
    remaining = val
    while remaining > 0:
        move, v = _pick_move(board, remaining, ctx)
        assert move is not None and v <= remaining
        u, vtx = move
        worst_c: Color | None = None
        worst_v = -1
        for c in (RED, BLUE):
            checker = ctx.red_through if c is RED else ctx.blue_through
            child = board.add_edge(u, vtx, c)
            if checker(child.adj(c), u, vtx):
                cv = 0
            else:
                cv = _search(child, v - 1, ctx)
            if cv > worst_v:
                worst_v = cv
                worst_c = c
        pv.append((u, vtx, worst_c))
        board = board.add_edge(u, vtx, worst_c)
        remaining = worst_v
        if worst_v == 0:
            break
    return pv


def online_size_ramsey(
    red_target: TargetGraph,
    blue_target: TargetGraph,
    cap: int,
    tt: TranspositionTable | None = None,
    options: SolverOptions | None = None,
) -> SolveOutcome:
    """Solve the game from the empty board and report the exactness basis.

    A WinIn(n) with n < cap is exact outright; at n == cap the result is
    double-checked by a survival search at n-1.  SurvivesCap means the value
    exceeds the cap (a lower bound of cap+1), under the full move set only.
    """
    tt = tt if tt is not None else TranspositionTable()
    out = value(initial_state(red_target, blue_target), cap, tt, options)
    if out.win:
        if out.rounds < cap:
            out.guarantee = "exact (value below cap)"
        else:
            confirm = value(
                initial_state(red_target, blue_target), out.rounds - 1, tt, options
            )
            if confirm.win:
                raise AssertionError("survival check contradicts the solved value")
            out.guarantee = "exact (survival confirmed at value-1)"
    else:
        out.guarantee = "survives cap (value exceeds cap)"
    return out


@dataclass
class PainterOracle:
    """Replays Painter's side of a survival certificate.

    For any builder move it answers a color whose successor still survives
    the remaining budget, recomputing through the table built by the search.
    """

    red_target: TargetGraph
    blue_target: TargetGraph
    horizon: int
    tt: TranspositionTable
    options: SolverOptions = field(default_factory=SolverOptions)

    def choose(self, state: GameState, move: tuple[int, int]) -> Color:
        remaining = self.horizon - state.rounds_played
        if remaining <= 0:
            raise ValueError("the survival horizon is exhausted")
        ctx = _Ctx(self.red_target, self.blue_target, self.tt, self.options)
        best_c, best_v = BLUE, -1
        for c in (RED, BLUE):
            target = state.target_for(c)
            if creates_mono(state.board, move[0], move[1], c, target):
                cv = 0
            else:
                child = state.board.add_edge(move[0], move[1], c)
                cv = _search(child, remaining - 1, ctx)
            if cv >= SURVIVES:
                return c
            if cv > best_v:
                best_v, best_c = cv, c
        return best_c


def painter_survival(
    red_target: TargetGraph,
    blue_target: TargetGraph,
    rounds: int,
    tt: TranspositionTable | None = None,
    options: SolverOptions | None = None,
) -> tuple[bool, PainterOracle | None]:
    """Can Painter guarantee no target completes within `rounds` rounds?

    rounds = 0 is vacuously survivable.  On success the returned oracle can
    replay Painter's certified answers against any builder.
    """
    if rounds < 0:
        raise ValueError("rounds must be nonnegative")
    if rounds == 0:
        return True, PainterOracle(red_target, blue_target, 0, TranspositionTable())
    tt = tt if tt is not None else TranspositionTable()
    out = value(initial_state(red_target, blue_target), rounds, tt, options)
    if out.win:
        return False, None
    return True, PainterOracle(red_target, blue_target, rounds, tt, options or SolverOptions())


def best_move(
    state: GameState,
    budget: int,
    tt: TranspositionTable | None = None,
    options: SolverOptions | None = None,
) -> tuple[tuple[int, int] | None, int]:
    """Builder move achieving value(state) when a win fits the budget.

    Returns (move, value); (None, SURVIVES) when Painter survives the budget.
    """
    opts = options or SolverOptions()
    ctx = _Ctx(state.red_target, state.blue_target, tt, opts)
    return _pick_move(state.board, budget, ctx)


def extract_builder_strategy(
    red_target: TargetGraph,
    blue_target: TargetGraph,
    budget: int,
    tt: TranspositionTable | None = None,
    options: SolverOptions | None = None,
) -> "strategy_mod.StrategyFile":
    """Materialize a winning plan as a verifiable strategy file.

    The file uses an empty opening (its single case tree branches on every
    Painter reply) and carries the solved value as its budget.
    """
    tt = tt if tt is not None else TranspositionTable()
    opts = options or SolverOptions()
    state = initial_state(red_target, blue_target)
    out = value(state, budget, tt, opts)
    if not out.win:
        raise NoStrategyError(
            f"no builder win within {budget} rounds for ({red_target}, {blue_target})"
        )
    ctx = _Ctx(red_target, blue_target, tt, opts)

    def name_for(idx: int) -> str:
        if idx >= 26:
            raise NoStrategyError("strategy tree exceeds the A..Z name alphabet")
        return chr(ord("A") + idx)

    def build(board: ColoredGraph, allowed: int, names: dict[int, str]):
        move, val = _pick_move(board, allowed, ctx)
        assert move is not None and val <= allowed
        u, v = move
        names = dict(names)
        for x in (u, v):
            if x not in names:
                names[x] = name_for(len(names))
        rt = ctx.red_through(_adj_with(board, u, v, RED), u, v)
        bt = ctx.blue_through(_adj_with(board, u, v, BLUE), u, v)
        children: dict[Color, strategy_mod.StrategyNode] = {}
        lose_if: Color | None = None
        if rt and bt:
            return strategy_mod.StrategyNode((names[u], names[v]), {}, True, None)
        if rt:
            lose_if = RED
            children[BLUE] = build(board.add_edge(u, v, BLUE), allowed - 1, names)
        elif bt:
            lose_if = BLUE
            children[RED] = build(board.add_edge(u, v, RED), allowed - 1, names)
        else:
            children[RED] = build(board.add_edge(u, v, RED), allowed - 1, names)
            children[BLUE] = build(board.add_edge(u, v, BLUE), allowed - 1, names)
        return strategy_mod.StrategyNode((names[u], names[v]), children, False, lose_if)

    root = build(state.board, out.rounds, {})
    entry = strategy_mod.PatternEntry(pattern="", case="MAIN", relabel=None, immediate_win=False)
    return strategy_mod.StrategyFile(
        red_target=red_target,
        blue_target=blue_target,
        budget=out.rounds,
        opening=[],
        patterns={"": entry},
        cases={"MAIN": root},
    )


def _adj_with(board: ColoredGraph, u: int, v: int, color: Color) -> list[int]:
    adj = list(board.adj(color)) + [0, 0]
    adj[u] |= 1 << v
    adj[v] |= 1 << u
    return adj
