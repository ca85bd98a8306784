"""Rules of the Builder-Painter game.

Each round Builder picks a pair that is not yet an edge (either endpoint may
be a fresh vertex), Painter colors it red or blue, and play stops the moment
the board holds a red copy of the red target or a blue copy of the blue
target.  Builder wins every finished game; the only question is the round
count, so states track which color completed rather than a winner.
"""

from __future__ import annotations

from dataclasses import dataclass

from .graphs import (
    BLUE,
    Color,
    ColoredGraph,
    GraphError,
    TargetGraph,
    automorphism_orbits,
    contains_mono,
    creates_mono,
    playable_pairs,
)

Move = tuple[int, int]


class StateAlreadyWon(Exception):
    """Raised when a move or move query is made on a finished game."""


@dataclass(frozen=True)
class GameState:
    board: ColoredGraph
    red_target: TargetGraph
    blue_target: TargetGraph
    completed: Color | None = None

    @property
    def rounds_played(self) -> int:
        return self.board.m

    @property
    def is_terminal(self) -> bool:
        return self.completed is not None

    def target_for(self, color: Color) -> TargetGraph:
        return self.red_target if Color(color) is Color.RED else self.blue_target


def initial_state(red_target: TargetGraph, blue_target: TargetGraph) -> GameState:
    return state_from_board(ColoredGraph.empty(), red_target, blue_target)


def state_from_board(
    board: ColoredGraph, red_target: TargetGraph, blue_target: TargetGraph
) -> GameState:
    """Wrap an arbitrary board, scanning it in full for completed targets."""
    completed = None
    if contains_mono(board, red_target, Color.RED):
        completed = Color.RED
    elif contains_mono(board, blue_target, Color.BLUE):
        completed = Color.BLUE
    return GameState(board, red_target, blue_target, completed)


def play(state: GameState, move: Move, color: Color) -> GameState:
    """One round: Builder offers `move`, Painter answers `color`."""
    if state.is_terminal:
        raise StateAlreadyWon("the game is already over")
    u, v = move
    color = Color(color)
    done = creates_mono(state.board, u, v, color, state.target_for(color))
    board = state.board.add_edge(u, v, color)
    return GameState(
        board,
        state.red_target,
        state.blue_target,
        color if done else None,
    )


def forces_red(state: GameState, move: Move) -> bool:
    """Coloring this move blue would complete the blue target."""
    return creates_mono(state.board, move[0], move[1], BLUE, state.blue_target)


def forces_blue(state: GameState, move: Move) -> bool:
    """Coloring this move red would complete the red target."""
    return creates_mono(state.board, move[0], move[1], Color.RED, state.red_target)


def double_forced(state: GameState, move: Move) -> bool:
    """Either color finishes the game: Builder wins next round by playing it."""
    return forces_red(state, move) and forces_blue(state, move)


@dataclass(frozen=True)
class MoveOrbit:
    rep: Move
    pairs: tuple[Move, ...]

    @property
    def size(self) -> int:
        return len(self.pairs)


def legal_move_orbits(state: GameState, include_fresh_fresh: bool = True) -> list[MoveOrbit]:
    """Playable pairs grouped by board symmetry, in a deterministic order.

    Orbits are sorted by the canonical key of the red-colored successor of
    their representative, tie-broken by the blue successor's key.
    """
    if state.is_terminal:
        raise StateAlreadyWon("no legal moves in a finished game")
    orbits = automorphism_orbits(state.board, include_fresh_fresh)

    def child_keys(rep: Move) -> tuple[bytes, bytes]:
        red_child = state.board.add_edge(rep[0], rep[1], Color.RED)
        blue_child = state.board.add_edge(rep[0], rep[1], BLUE)
        return red_child.canonical_key(), blue_child.canonical_key()

    keyed = [(child_keys(orbit[0]), MoveOrbit(orbit[0], tuple(orbit))) for orbit in orbits]
    keyed.sort(key=lambda kv: kv[0])
    return [mo for _, mo in keyed]


def legal_moves(state: GameState, include_fresh_fresh: bool = True) -> list[Move]:
    if state.is_terminal:
        raise StateAlreadyWon("no legal moves in a finished game")
    return playable_pairs(state.board, include_fresh_fresh)


# ---------------------------------------------------------------------------
# Transcripts: one line per round, `round u v color`, plus `#` comments.


def format_transcript(moves: list[tuple[int, int, Color]], comments: list[str] | None = None) -> str:
    lines = [f"# {c}" for c in (comments or [])]
    for i, (u, v, c) in enumerate(moves, start=1):
        lines.append(f"{i} {u} {v} {Color(c).letter}")
    return "\n".join(lines) + "\n"


def parse_transcript(text: str) -> list[tuple[int, int, Color]]:
    moves: list[tuple[int, int, Color]] = []
    for raw in text.splitlines():
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        parts = line.split()
        if len(parts) != 4:
            raise GraphError(f"bad transcript line {raw!r}")
        rnd, u, v = int(parts[0]), int(parts[1]), int(parts[2])
        if rnd != len(moves) + 1:
            raise GraphError(f"round numbers must run 1..n, got {rnd} at position {len(moves) + 1}")
        moves.append((u, v, Color.from_letter(parts[3])))
    return moves


def replay(
    moves: list[tuple[int, int, Color]],
    red_target: TargetGraph,
    blue_target: TargetGraph,
) -> GameState:
    state = initial_state(red_target, blue_target)
    for u, v, c in moves:
        state = play(state, (u, v), c)
    return state
