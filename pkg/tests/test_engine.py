"""Game rules: rounds, forcing predicates, move orbits, transcripts."""

from __future__ import annotations

import random

import pytest

from onlineramsey.engine import (
    GameState,
    StateAlreadyWon,
    double_forced,
    forces_blue,
    forces_red,
    format_transcript,
    initial_state,
    legal_move_orbits,
    parse_transcript,
    play,
    replay,
    state_from_board,
)
from onlineramsey.graphs import (
    BLUE,
    FRESH,
    FRESH2,
    RED,
    Color,
    ColoredGraph,
    GraphError,
    TargetGraph,
)
from util import random_graph

C4 = TargetGraph.cycle(4)
P6 = TargetGraph.path(6)

# Vertex ids for the scripted opening path A-B-C-D-E-F.
A, B, C, D, E, F = range(6)
OPENING = [(A, B), (B, C), (C, D), (D, E), (E, F)]


def opening_state(pattern: str) -> GameState:
    """Play the five path edges with the given R/B colors."""
    s = initial_state(C4, P6)
    for (u, v), letter in zip(OPENING, pattern):
        s = play(s, (u, v), Color.from_letter(letter))
    return s


def r3_choice_state() -> GameState:
    """RRBRR opening plus a red (A, F): the board all R3 subcases share."""
    return play(opening_state("RRBRR"), (A, F), RED)


def test_rounds_count_edges():
    s = initial_state(C4, P6)
    assert s.rounds_played == 0
    s = play(s, (FRESH, FRESH2), RED)
    s = play(s, (1, FRESH), BLUE)
    assert s.rounds_played == 2 == s.board.m


def test_play_detects_completion():
    s = opening_state("BBBBB")
    assert s.is_terminal and s.completed is BLUE
    with pytest.raises(StateAlreadyWon):
        play(s, (A, F), RED)
    with pytest.raises(StateAlreadyWon):
        legal_move_orbits(s)


def test_only_the_played_color_can_complete():
    s = opening_state("BBBB" + "R")
    assert not s.is_terminal  # four blue edges and a red one: no P6, no C4


def test_r3_prefix_board_shape():
    s = r3_choice_state()
    assert not s.is_terminal
    g = s.board
    assert g.edge_color(A, F) is RED
    assert g.edge_color(C, D) is BLUE
    assert sum(1 for *_ , c in g.edges() if c is RED) == 5


def r3a_after_8() -> GameState:
    # R3 subcase (a): 6=(A,F) blue, 7=(A,E) blue, 8=(B,F) blue
    s = opening_state("RRBRR")
    for mv in [(A, F), (A, E), (B, F)]:
        s = play(s, mv, BLUE)
    return s


def test_forcing_predicates_on_r3a():
    s = r3a_after_8()
    # (C, E) must be red: blue would finish the blue path B-F-A-E-C-D
    assert forces_red(s, (C, E))
    assert not forces_blue(s, (C, E))
    s9 = play(s, (C, E), RED)
    # now (B, D) finishes either way: blue path C-D-B-F-A-E / red cycle B-C-E-D
    assert double_forced(s9, (B, D))


def test_forces_blue_on_r3b():
    # R3 subcase (b): 6, 7 blue then 8=(B,F) red; ninth edge (B,D) must be blue
    s = opening_state("RRBRR")
    s = play(s, (A, F), BLUE)
    s = play(s, (A, E), BLUE)
    s = play(s, (B, F), RED)
    assert forces_blue(s, (B, D))  # red (B,D) would close the cycle B-D-E-F
    assert not forces_red(s, (B, D))


def test_double_forced_on_r3d():
    # R3 subcase (d): 6=(A,F) red, then 7..10 as certified
    s = r3_choice_state()
    for mv, c in [((B, E), BLUE), ((C, F), BLUE), ((A, D), BLUE), ((A, E), RED)]:
        s = play(s, mv, c)
    assert double_forced(s, (B, F))


def test_legal_move_orbit_counts():
    s = initial_state(C4, P6)
    assert len(legal_move_orbits(s)) == 1
    s = play(s, (FRESH, FRESH2), BLUE)
    assert len(legal_move_orbits(s)) == 2
    s = play(s, (1, FRESH), BLUE)  # blue P3
    assert len(legal_move_orbits(s)) == 4


def test_legal_move_orbits_deterministic_and_sorted():
    s = play(initial_state(C4, P6), (FRESH, FRESH2), BLUE)
    s = play(s, (1, FRESH), RED)
    first = legal_move_orbits(s)
    second = legal_move_orbits(s)
    assert [o.rep for o in first] == [o.rep for o in second]
    keys = []
    for o in first:
        red_k = s.board.add_edge(o.rep[0], o.rep[1], RED).canonical_key()
        blue_k = s.board.add_edge(o.rep[0], o.rep[1], BLUE).canonical_key()
        keys.append((red_k, blue_k))
    assert keys == sorted(keys)


def test_orbit_pairs_cover_all_playable_moves():
    rng = random.Random(11)
    for _ in range(100):
        g = random_graph(rng, max_v=6, max_edges=8)
        s = state_from_board(g, C4, P6)
        if s.is_terminal:
            continue
        orbits = legal_move_orbits(s)
        covered = sorted(p for o in orbits for p in o.pairs)
        n_free = sum(
            1
            for u in range(g.n)
            for v in range(u + 1, g.n)
            if ((g.red[u] | g.blue[u]) >> v) & 1 == 0
        )
        assert len(covered) == n_free + g.n + 1
        assert len(set(covered)) == len(covered)


def test_transcript_round_trip():
    moves = [(0, 1, RED), (1, 2, BLUE), (0, 3, BLUE)]
    text = format_transcript(moves, comments=["targets C4 P6"])
    assert parse_transcript(text) == moves
    final = replay(moves, C4, P6)
    assert final.rounds_played == 3


def test_transcript_rejects_bad_round_numbers():
    with pytest.raises(GraphError):
        parse_transcript("2 0 1 R\n")


def test_swapped_targets_mirror_states():
    # swapping board colors and targets yields isomorphic game positions
    s = opening_state("RBBRB")
    mirror = state_from_board(s.board.swap_colors(), P6, C4)
    assert mirror.completed is None
    for mv in [(A, F), (B, E)]:
        assert forces_red(s, mv) == forces_blue(mirror, mv)
        assert forces_blue(s, mv) == forces_red(mirror, mv)
