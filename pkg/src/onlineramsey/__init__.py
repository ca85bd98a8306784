"""Exact engine for the Builder-Painter online size Ramsey game.

The headline artifact is a certified eleven-round builder plan forcing a red
C4 or a blue P6, together with the exhaustive verifier that re-derives every
claim in it and an exact budget-limited solver that reproduces the small
known game values from scratch.
"""

from .graphs import (
    BLUE,
    FRESH,
    FRESH2,
    RED,
    CapacityError,
    Color,
    ColoredGraph,
    DuplicateEdgeError,
    GraphError,
    SelfLoopError,
    TargetGraph,
    TargetKind,
    automorphism_orbits,
    contains_mono,
    find_mono,
)
from .engine import (
    GameState,
    MoveOrbit,
    StateAlreadyWon,
    double_forced,
    forces_blue,
    forces_red,
    initial_state,
    legal_move_orbits,
    play,
)

__all__ = [
    "BLUE",
    "FRESH",
    "FRESH2",
    "RED",
    "CapacityError",
    "Color",
    "ColoredGraph",
    "DuplicateEdgeError",
    "GraphError",
    "SelfLoopError",
    "TargetGraph",
    "TargetKind",
    "automorphism_orbits",
    "contains_mono",
    "find_mono",
    "GameState",
    "MoveOrbit",
    "StateAlreadyWon",
    "double_forced",
    "forces_blue",
    "forces_red",
    "initial_state",
    "legal_move_orbits",
    "play",
]
