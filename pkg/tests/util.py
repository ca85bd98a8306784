"""Shared test oracles: brute-force reference implementations.

Everything here is deliberately naive (try all bijections, all subsets) so it
can anchor the clever code paths.  Usable only on small graphs.
"""

from __future__ import annotations

import itertools
import random

from onlineramsey.graphs import BLUE, FRESH, FRESH2, RED, Color, ColoredGraph


def random_graph(rng: random.Random, max_v: int = 7, max_edges: int | None = None) -> ColoredGraph:
    """Random colored board grown through add_edge (so invariants hold)."""
    g = ColoredGraph.empty()
    target_edges = rng.randrange(0, max_edges if max_edges is not None else 10)
    for _ in range(target_edges):
        choices = []
        if g.n < max_v:
            choices.append((FRESH, FRESH2) if g.n == 0 else (rng.randrange(g.n), FRESH))
        free = [
            (u, v)
            for u in range(g.n)
            for v in range(u + 1, g.n)
            if ((g.red[u] | g.blue[u]) >> v) & 1 == 0
        ]
        if free:
            choices.append(rng.choice(free))
        if not choices:
            break
        u, v = rng.choice(choices)
        g = g.add_edge(u, v, rng.choice((RED, BLUE)))
    return g


def brute_isomorphic(a: ColoredGraph, b: ColoredGraph) -> bool:
    """Reference colored-graph isomorphism: try every vertex bijection."""
    if a.n != b.n or a.m != b.m:
        return False
    if sorted(x.bit_count() for x in a.red) != sorted(x.bit_count() for x in b.red):
        return False
    for perm in itertools.permutations(range(a.n)):
        if a.relabel(perm) == b:
            return True
    return False


def brute_automorphisms(g: ColoredGraph) -> list[tuple[int, ...]]:
    return [p for p in itertools.permutations(range(g.n)) if g.relabel(p) == g]


def brute_pair_orbits(g: ColoredGraph) -> set[frozenset[tuple[int, int]]]:
    """Reference orbit partition of playable pairs, via the full automorphism group."""
    auts = brute_automorphisms(g)
    pairs = [
        (u, v)
        for u in range(g.n)
        for v in range(u + 1, g.n)
        if ((g.red[u] | g.blue[u]) >> v) & 1 == 0
    ]
    pairs += [(u, FRESH) for u in range(g.n)]
    pairs.append((FRESH, FRESH2))

    def image(pair: tuple[int, int], p: tuple[int, ...]) -> tuple[int, int]:
        u, v = pair
        iu = p[u] if u >= 0 else u
        iv = p[v] if v >= 0 else v
        if iu >= 0 and iv >= 0 and iu > iv:
            iu, iv = iv, iu
        return (iu, iv)

    orbits: set[frozenset[tuple[int, int]]] = set()
    seen: set[tuple[int, int]] = set()
    for pair in pairs:
        if pair in seen:
            continue
        orbit = {image(pair, p) for p in auts}
        seen |= orbit
        orbits.add(frozenset(orbit))
    return orbits
