"""Colored graphs, monochromatic-subgraph detection, and exact canonical forms.

Game boards stay tiny (a play of r rounds touches at most 2r vertices), so the
representation favors exactness and determinism over asymptotics: adjacency is
one bitmask per vertex and color, containment tests are backtracking searches
with pruning, and canonical labeling runs equitable refinement plus
individualization, pruning branches with automorphisms discovered along the
way.  Keys are exact: two graphs receive the same key if and only if some
vertex bijection maps edges to edges preserving colors.  Hash-based keys are
deliberately avoided because the search that consumes these keys treats equal
keys as proof of equal game value, so a collision would silently corrupt
results.
"""

from __future__ import annotations

import enum
import itertools
import re
from dataclasses import dataclass, field
from pathlib import Path
from typing import Callable, Iterable, Sequence

MAX_VERTICES = 32

# Move endpoints may name vertices that are not on the board yet.  FRESH is
# the first new endpoint of a move, FRESH2 the second (for an edge between
# two brand-new vertices).  They resolve to ids n and n+1 when played.
FRESH = -1
FRESH2 = -2


class GraphError(ValueError):
    """Base class for graph construction and capacity problems."""


class SelfLoopError(GraphError):
    pass


class DuplicateEdgeError(GraphError):
    pass


class CapacityError(GraphError):
    pass


class Color(enum.IntEnum):
    RED = 0
    BLUE = 1

    @property
    def other(self) -> "Color":
        return Color(1 - self.value)

    @property
    def letter(self) -> str:
        return "R" if self is Color.RED else "B"

    @classmethod
    def from_letter(cls, s: str) -> "Color":
        if s in ("R", "r"):
            return cls.RED
        if s in ("B", "b"):
            return cls.BLUE
        raise GraphError(f"unknown color letter {s!r}")

    def __str__(self) -> str:  # pragma: no cover - cosmetic
        return self.letter


RED = Color.RED
BLUE = Color.BLUE


# ---------------------------------------------------------------------------
# Target shapes


class TargetKind(enum.Enum):
    PATH = "P"
    CYCLE = "C"
    CLIQUE = "K"
    EXPLICIT = "X"


@dataclass(frozen=True)
class TargetGraph:
    """An uncolored shape one side tries to complete in its color.

    `edge_list` is normalized to sorted pairs over dense ids 0..k-1 so that
    equality and containment never depend on how the target was written down.
    """

    kind: TargetKind
    k: int
    edge_list: tuple[tuple[int, int], ...]
    label: str

    @staticmethod
    def path(k: int) -> "TargetGraph":
        if k < 1:
            raise GraphError("a path needs at least one vertex")
        edges = tuple((i, i + 1) for i in range(k - 1))
        return TargetGraph(TargetKind.PATH, k, edges, f"P{k}")

    @staticmethod
    def cycle(k: int) -> "TargetGraph":
        if k < 3:
            raise GraphError("a cycle needs at least three vertices")
        edges = tuple((i, i + 1) for i in range(k - 1)) + ((0, k - 1),)
        return TargetGraph(TargetKind.CYCLE, k, tuple(sorted(edges)), f"C{k}")

    @staticmethod
    def clique(k: int) -> "TargetGraph":
        if k < 2:
            raise GraphError("a clique target needs at least two vertices")
        edges = tuple((i, j) for i in range(k) for j in range(i + 1, k))
        return TargetGraph(TargetKind.CLIQUE, k, edges, f"K{k}")

    @staticmethod
    def explicit(edges: Iterable[tuple[int, int]], label: str | None = None) -> "TargetGraph":
        remap: dict[int, int] = {}
        norm = set()
        for u, v in edges:
            if u == v:
                raise SelfLoopError("target edges may not be loops")
            a = remap.setdefault(u, len(remap))
            b = remap.setdefault(v, len(remap))
            pair = (a, b) if a < b else (b, a)
            if pair in norm:
                raise DuplicateEdgeError("duplicate target edge")
            norm.add(pair)
        if not norm:
            raise GraphError("an explicit target needs at least one edge")
        k = len(remap)
        edge_list = tuple(sorted(norm))
        return TargetGraph(
            TargetKind.EXPLICIT, k, edge_list, label or f"X{k}e{len(edge_list)}"
        )

    @classmethod
    def parse(cls, spec: str, base_dir: str | Path = ".") -> "TargetGraph":
        """Parse a target spec: P<k>, C<k>, K<k>, or file:<path>."""
        spec = spec.strip()
        m = re.fullmatch(r"([PCKpck])(\d+)", spec)
        if m:
            kind, k = m.group(1).upper(), int(m.group(2))
            if kind == "P":
                return cls.path(k)
            if kind == "C":
                return cls.cycle(k)
            return cls.clique(k)
        if spec.startswith("file:"):
            path = Path(base_dir) / spec[5:]
            g = ColoredGraph.from_text(path.read_text())
            return cls.explicit([(u, v) for u, v, _ in g.edges()], label=Path(spec[5:]).stem)
        raise GraphError(f"cannot parse target spec {spec!r}")

    @property
    def n_vertices(self) -> int:
        return self.k

    @property
    def n_edges(self) -> int:
        return len(self.edge_list)

    def __str__(self) -> str:  # pragma: no cover - cosmetic
        return self.label


# ---------------------------------------------------------------------------
# The colored board graph


class ColoredGraph:
    """Immutable simple graph whose edges are red or blue.

    Vertex ids are dense (0..n-1) and every stored vertex has at least one
    incident edge; growth happens only through `add_edge`, which is how game
    rounds append to a board.  Instances compare by labeled identity; use
    `canonical_key` for identity up to color-preserving isomorphism.
    """

    __slots__ = ("n", "red", "blue", "m", "_canon")

    def __init__(self, n: int, red: tuple[int, ...], blue: tuple[int, ...], m: int):
        self.n = n
        self.red = red
        self.blue = blue
        self.m = m
        self._canon: tuple[bytes, tuple[int, ...]] | None = None

    @classmethod
    def empty(cls) -> "ColoredGraph":
        return cls(0, (), (), 0)

    @classmethod
    def from_edges(cls, edges: Iterable[tuple[int, int, Color]]) -> "ColoredGraph":
        edges = list(edges)
        n = 0
        for u, v, _ in edges:
            if u < 0 or v < 0:
                raise GraphError("from_edges needs concrete vertex ids")
            n = max(n, u + 1, v + 1)
        red = [0] * n
        blue = [0] * n
        m = 0
        for u, v, c in edges:
            if u == v:
                raise SelfLoopError(f"loop at vertex {u}")
            if ((red[u] | blue[u]) >> v) & 1:
                raise DuplicateEdgeError(f"edge ({u}, {v}) occurs twice")
            adj = red if Color(c) is RED else blue
            adj[u] |= 1 << v
            adj[v] |= 1 << u
            m += 1
        for v in range(n):
            if not (red[v] | blue[v]):
                raise GraphError(f"vertex {v} is isolated; ids must be dense")
        return cls(n, tuple(red), tuple(blue), m)

    # -- growth ------------------------------------------------------------

    def resolve_pair(self, u: int, v: int) -> tuple[int, int]:
        """Map FRESH markers in a move to the concrete ids they would get."""
        nxt = self.n
        if u < 0:
            u = nxt
            nxt += 1
        if v < 0:
            v = nxt
        return u, v

    def add_edge(self, u: int, v: int, color: Color) -> "ColoredGraph":
        u, v = self.resolve_pair(u, v)
        if u == v:
            raise SelfLoopError(f"loop at vertex {u}")
        if u > v:
            u, v = v, u
        if v >= self.n + 2 or (v >= self.n + 1 and u < self.n):
            raise GraphError(f"vertex id {v} skips over unused ids")
        new_n = max(self.n, v + 1)
        if u < self.n and v < self.n and (((self.red[u] | self.blue[u]) >> v) & 1):
            raise DuplicateEdgeError(f"edge ({u}, {v}) already played")
        red = list(self.red) + [0] * (new_n - self.n)
        blue = list(self.blue) + [0] * (new_n - self.n)
        adj = red if Color(color) is RED else blue
        adj[u] |= 1 << v
        adj[v] |= 1 << u
        return ColoredGraph(new_n, tuple(red), tuple(blue), self.m + 1)

    # -- inspection ---------------------------------------------------------

    def edges(self) -> list[tuple[int, int, Color]]:
        out = []
        for u in range(self.n):
            ru = self.red[u] >> (u + 1)
            bu = self.blue[u] >> (u + 1)
            v = u + 1
            while ru or bu:
                if ru & 1:
                    out.append((u, v, RED))
                elif bu & 1:
                    out.append((u, v, BLUE))
                ru >>= 1
                bu >>= 1
                v += 1
        return out

    def edge_color(self, u: int, v: int) -> Color | None:
        if u < 0 or v < 0 or u >= self.n or v >= self.n:
            return None
        if (self.red[u] >> v) & 1:
            return RED
        if (self.blue[u] >> v) & 1:
            return BLUE
        return None

    def adj(self, color: Color) -> tuple[int, ...]:
        return self.red if Color(color) is RED else self.blue

    def degree(self, v: int, color: Color | None = None) -> int:
        if color is None:
            return (self.red[v] | self.blue[v]).bit_count()
        return self.adj(color)[v].bit_count()

    def relabel(self, perm: Sequence[int]) -> "ColoredGraph":
        """Return the graph with vertex v renamed perm[v]."""
        red = [0] * self.n
        blue = [0] * self.n
        for v in range(self.n):
            pv = perm[v]
            rv = self.red[v]
            bv = self.blue[v]
            w = 0
            while rv or bv:
                if rv & 1:
                    red[pv] |= 1 << perm[w]
                if bv & 1:
                    blue[pv] |= 1 << perm[w]
                rv >>= 1
                bv >>= 1
                w += 1
        return ColoredGraph(self.n, tuple(red), tuple(blue), self.m)

    def swap_colors(self) -> "ColoredGraph":
        return ColoredGraph(self.n, self.blue, self.red, self.m)

    def __eq__(self, other: object) -> bool:
        return (
            isinstance(other, ColoredGraph)
            and self.n == other.n
            and self.red == other.red
            and self.blue == other.blue
        )

    def __hash__(self) -> int:
        return hash((self.n, self.red, self.blue))

    def __repr__(self) -> str:  # pragma: no cover - debugging aid
        return f"ColoredGraph(n={self.n}, edges={self.edges()})"

    # -- text form ----------------------------------------------------------

    def to_text(self) -> str:
        lines = [f"vertices {self.n} edges {self.m}"]
        for u, v, c in self.edges():
            lines.append(f"{u} {v} {c.letter}")
        return "\n".join(lines) + "\n"

    @classmethod
    def from_text(cls, text: str) -> "ColoredGraph":
        lines = [
            ln.strip()
            for ln in text.splitlines()
            if ln.strip() and not ln.strip().startswith("#")
        ]
        if not lines:
            raise GraphError("empty graph text")
        m = re.fullmatch(r"vertices\s+(\d+)\s+edges\s+(\d+)", lines[0])
        if not m:
            raise GraphError(f"bad header line {lines[0]!r}")
        n, mcount = int(m.group(1)), int(m.group(2))
        if len(lines) - 1 != mcount:
            raise GraphError(f"header promises {mcount} edges, found {len(lines) - 1}")
        edges = []
        for ln in lines[1:]:
            parts = ln.split()
            if len(parts) == 2:
                u, v = int(parts[0]), int(parts[1])
                c = RED
            elif len(parts) == 3:
                u, v = int(parts[0]), int(parts[1])
                c = Color.from_letter(parts[2])
            else:
                raise GraphError(f"bad edge line {ln!r}")
            if u >= n or v >= n:
                raise GraphError(f"edge ({u}, {v}) exceeds vertex count {n}")
            edges.append((u, v, c))
        g = cls.from_edges(edges)
        if g.n != n:
            raise GraphError(f"header promises {n} vertices, edges span {g.n}")
        return g

    # -- canonical forms ------------------------------------------------------

    def canonical_form(self) -> tuple[bytes, tuple[int, ...]]:
        """Exact canonical key plus one labeling achieving it.

        labeling[i] is the original id placed at canonical position i.
        """
        if self._canon is None:
            if self.n > MAX_VERTICES:
                raise CapacityError(f"{self.n} vertices exceed the {MAX_VERTICES} cap")
            key, lab, _ = _canonical_search(self.n, self.red, self.blue, 0)
            self._canon = (key, lab)
        return self._canon

    def canonical_key(self) -> bytes:
        return self.canonical_form()[0]


# ---------------------------------------------------------------------------
# Canonical labeling: equitable refinement + individualization with pruning by
# discovered automorphisms.


def _refine(red: Sequence[int], blue: Sequence[int], cells: list[list[int]]) -> list[list[int]]:
    while True:
        masks = []
        for cell in cells:
            m = 0
            for v in cell:
                m |= 1 << v
            masks.append(m)
        out: list[list[int]] = []
        changed = False
        for cell in cells:
            if len(cell) == 1:
                out.append(cell)
                continue
            buckets: dict[tuple, list[int]] = {}
            for v in cell:
                rv = red[v]
                bv = blue[v]
                sig = tuple(
                    ((rv & m).bit_count(), (bv & m).bit_count()) for m in masks
                )
                buckets.setdefault(sig, []).append(v)
            if len(buckets) == 1:
                out.append(cell)
            else:
                changed = True
                for sig in sorted(buckets):
                    out.append(buckets[sig])
        if not changed:
            return out
        cells = out


def _encode(n: int, red: Sequence[int], blue: Sequence[int], lab: Sequence[int]) -> bytes:
    out = bytearray()
    acc = 0
    nb = 0
    for i in range(1, n):
        u = lab[i]
        ru = red[u]
        bu = blue[u]
        for j in range(i):
            v = lab[j]
            code = 1 if (ru >> v) & 1 else (2 if (bu >> v) & 1 else 0)
            acc = (acc << 2) | code
            nb += 2
            if nb == 8:
                out.append(acc)
                acc = 0
                nb = 0
    if nb:
        out.append(acc << (8 - nb))
    return bytes(out)


def _canonical_search(
    n: int, red: Sequence[int], blue: Sequence[int], distinguished: int
) -> tuple[bytes, tuple[int, ...], list[tuple[int, ...]]]:
    """Minimal adjacency encoding over all labelings compatible with refinement.

    `distinguished` is a bitmask of marked vertices that any isomorphism must
    map onto marked vertices; they occupy the leading cells, so the key needs
    no extra position data, only a count tag.  Returns (key, labeling,
    discovered automorphisms); the automorphism list is whatever surfaced
    during the search (used for pruning, not guaranteed to generate Aut).
    """
    tag = bytes([distinguished.bit_count(), n])
    if n == 0:
        return tag, (), []
    groups: dict[tuple[int, int, int], list[int]] = {}
    for v in range(n):
        marked_last = ((distinguished >> v) & 1) ^ 1
        groups.setdefault(
            (marked_last, red[v].bit_count(), blue[v].bit_count()), []
        ).append(v)
    cells0 = [groups[k] for k in sorted(groups)]

    best_key: bytes | None = None
    best_lab: list[int] = []
    auts: list[tuple[int, ...]] = []
    ident = tuple(range(n))

    def leaf(cells: list[list[int]]) -> None:
        nonlocal best_key, best_lab
        lab = [c[0] for c in cells]
        key = _encode(n, red, blue, lab)
        if best_key is None or key < best_key:
            best_key = key
            best_lab = lab
        elif key == best_key:
            perm = [0] * n
            for i in range(n):
                perm[best_lab[i]] = lab[i]
            p = tuple(perm)
            if p != ident and p not in auts:
                auts.append(p)

    def rec(cells: list[list[int]], prefix: tuple[int, ...]) -> None:
        cells = _refine(red, blue, cells)
        idx = -1
        for i, cell in enumerate(cells):
            if len(cell) > 1:
                idx = i
                break
        if idx < 0:
            leaf(cells)
            return
        cell = cells[idx]
        head = cells[:idx]
        tail = cells[idx + 1 :]
        explored: list[int] = []
        for v in cell:
            if explored:
                fixing = [p for p in auts if all(p[x] == x for x in prefix)]
                if fixing:
                    reach = set(explored)
                    frontier = list(explored)
                    while frontier:
                        u = frontier.pop()
                        for p in fixing:
                            w = p[u]
                            if w not in reach:
                                reach.add(w)
                                frontier.append(w)
                    if v in reach:
                        continue
            rest = [w for w in cell if w != v]
            rec(head + [[v], rest] + tail, prefix + (v,))
            explored.append(v)

    rec(cells0, ())
    assert best_key is not None
    return tag + best_key, tuple(best_lab), auts


def marked_key(g: ColoredGraph, marked: Iterable[int]) -> bytes:
    """Canonical key of g with a vertex subset distinguished.

    Two subsets receive equal keys iff some color automorphism of g maps one
    onto the other; this is how pair orbits are detected exactly.
    """
    if g.n > MAX_VERTICES:
        raise CapacityError(f"{g.n} vertices exceed the {MAX_VERTICES} cap")
    mask = 0
    for v in marked:
        mask |= 1 << v
    key, _, _ = _canonical_search(g.n, g.red, g.blue, mask)
    return key


# ---------------------------------------------------------------------------
# Playable pairs and their orbits under the automorphism group


def playable_pairs(g: ColoredGraph, include_fresh_fresh: bool = True) -> list[tuple[int, int]]:
    """Unordered non-edge pairs over V plus fresh endpoints, in a fixed order."""
    pairs: list[tuple[int, int]] = []
    for u in range(g.n):
        occupied = g.red[u] | g.blue[u]
        for v in range(u + 1, g.n):
            if not ((occupied >> v) & 1):
                pairs.append((u, v))
    for u in range(g.n):
        pairs.append((u, FRESH))
    if include_fresh_fresh:
        pairs.append((FRESH, FRESH2))
    return pairs


def _pair_sort_key(g_n: int, pair: tuple[int, int]) -> tuple[int, int]:
    u, v = pair
    ku = u if u >= 0 else g_n + (-u - 1)
    kv = v if v >= 0 else g_n + (-v - 1)
    return (ku, kv) if ku <= kv else (kv, ku)


def automorphism_orbits(
    g: ColoredGraph, include_fresh_fresh: bool = True
) -> list[list[tuple[int, int]]]:
    """Partition playable pairs into orbits of the color automorphism group.

    Pairs with a fresh endpoint orbit together exactly when their existing
    endpoints are equivalent; the fresh-fresh pair is always its own orbit.
    """
    buckets: dict[bytes, list[tuple[int, int]]] = {}
    for u in range(g.n):
        occupied = g.red[u] | g.blue[u]
        for v in range(u + 1, g.n):
            if not ((occupied >> v) & 1):
                buckets.setdefault(b"p" + marked_key(g, (u, v)), []).append((u, v))
    for u in range(g.n):
        buckets.setdefault(b"f" + marked_key(g, (u,)), []).append((u, FRESH))
    orbits = [sorted(orbit, key=lambda p: _pair_sort_key(g.n, p)) for orbit in buckets.values()]
    if include_fresh_fresh:
        orbits.append([(FRESH, FRESH2)])
    orbits.sort(key=lambda orb: _pair_sort_key(g.n, orb[0]))
    return orbits


# ---------------------------------------------------------------------------
# Monochromatic containment.  The generic embedder is the reference; the
# path/cycle/clique routines are the fast paths the game loop leans on, and
# the test suite holds them to agreement with the embedder.


def _has_path(adj: Sequence[int], n: int, k: int) -> bool:
    if k <= 0:
        return False
    if k == 1:
        return n > 0
    if sum(a.bit_count() for a in adj) // 2 < k - 1:
        return False

    def dfs(x: int, used: int, left: int) -> bool:
        if left == 0:
            return True
        cand = adj[x] & ~used
        while cand:
            yb = cand & -cand
            cand ^= yb
            if dfs(yb.bit_length() - 1, used | yb, left - 1):
                return True
        return False

    return any(adj[v] and dfs(v, 1 << v, k - 1) for v in range(n))


def _path_through(adj: Sequence[int], u: int, v: int, k: int) -> bool:
    """Simple path on k vertices that uses the (present) edge (u, v)."""
    if k <= 2:
        return True
    need = k - 2

    def right(x: int, used: int, steps: int) -> bool:
        if steps == 0:
            return True
        cand = adj[x] & ~used
        while cand:
            yb = cand & -cand
            cand ^= yb
            if right(yb.bit_length() - 1, used | yb, steps - 1):
                return True
        return False

    def left(x: int, used: int, placed: int) -> bool:
        if right(v, used, need - placed):
            return True
        if placed == need:
            return False
        cand = adj[x] & ~used
        while cand:
            yb = cand & -cand
            cand ^= yb
            if left(yb.bit_length() - 1, used | yb, placed + 1):
                return True
        return False

    return left(u, (1 << u) | (1 << v), 0)


def _has_c4(adj: Sequence[int], n: int) -> bool:
    for u in range(n):
        au = adj[u]
        if not au:
            continue
        for v in range(u + 1, n):
            common = au & adj[v] & ~((1 << u) | (1 << v))
            if common.bit_count() >= 2:
                return True
    return False


def _cycle_through(adj: Sequence[int], u: int, v: int, k: int) -> bool:
    """k-cycle using edge (u, v): a u-to-v path with k-2 inner vertices."""

    def dfs(x: int, used: int, steps: int) -> bool:
        if steps == 0:
            return bool((adj[x] >> v) & 1)
        cand = adj[x] & ~used
        while cand:
            yb = cand & -cand
            cand ^= yb
            if dfs(yb.bit_length() - 1, used | yb, steps - 1):
                return True
        return False

    return dfs(u, (1 << u) | (1 << v), k - 2)


def _has_cycle(adj: Sequence[int], n: int, k: int) -> bool:
    for u in range(n):
        au = adj[u] >> (u + 1)
        v = u + 1
        while au:
            if au & 1 and _cycle_through(adj, u, v, k):
                return True
            au >>= 1
            v += 1
    return False


def _clique_in(adj: Sequence[int], mask: int, size: int) -> bool:
    if size == 0:
        return True
    if mask.bit_count() < size:
        return False
    while mask:
        vb = mask & -mask
        mask ^= vb
        v = vb.bit_length() - 1
        if _clique_in(adj, mask & adj[v], size - 1):
            return True
    return False


def _has_clique(adj: Sequence[int], n: int, k: int) -> bool:
    if k == 1:
        return n > 0
    full = (1 << n) - 1
    return _clique_in(adj, full, k)


# -- generic embedder --------------------------------------------------------


def _target_order(
    t_n: int, t_edges: Sequence[tuple[int, int]], seed: Sequence[int] = ()
) -> tuple[list[int], list[list[int]]]:
    """Assignment order plus, per position, earlier positions adjacent in the target."""
    t_adj: list[set[int]] = [set() for _ in range(t_n)]
    for a, b in t_edges:
        t_adj[a].add(b)
        t_adj[b].add(a)
    order = list(seed)
    placed = set(order)
    while len(order) < t_n:
        best, best_c = -1, -1
        for v in range(t_n):
            if v in placed:
                continue
            c = sum(1 for w in t_adj[v] if w in placed)
            if c > best_c:
                best, best_c = v, c
        order.append(best)
        placed.add(best)
    pos = {v: i for i, v in enumerate(order)}
    prevs = [[pos[w] for w in t_adj[v] if pos[w] < i] for i, v in enumerate(order)]
    return order, prevs


def _embed_search(
    adj: Sequence[int],
    n: int,
    order: Sequence[int],
    prevs: Sequence[Sequence[int]],
    init_imgs: Sequence[int],
) -> list[int] | None:
    imgs = list(init_imgs)
    used = 0
    for x in imgs:
        used |= 1 << x

    def rec(i: int) -> bool:
        nonlocal used
        if i == len(order):
            return True
        ps = prevs[i]
        if ps:
            cand = ~used
            for p in ps:
                cand &= adj[imgs[p]]
        else:
            cand = ((1 << n) - 1) & ~used
        while cand:
            xb = cand & -cand
            cand ^= xb
            x = xb.bit_length() - 1
            imgs.append(x)
            used |= xb
            if rec(i + 1):
                return True
            imgs.pop()
            used ^= xb
        return False

    if rec(len(imgs)):
        out = [0] * len(order)
        for i, v in enumerate(order):
            out[v] = imgs[i]
        return out
    return None


def _embed_generic(adj: Sequence[int], n: int, target: TargetGraph) -> list[int] | None:
    if target.n_vertices > n:
        return None
    order, prevs = _target_order(target.n_vertices, target.edge_list)
    return _embed_search(adj, n, order, prevs, ())


def _embed_through(
    adj: Sequence[int], n: int, target: TargetGraph, u: int, v: int
) -> bool:
    for a, b in target.edge_list:
        order, prevs = _target_order(target.n_vertices, target.edge_list, (a, b))
        for x, y in ((u, v), (v, u)):
            if _embed_search(adj, n, order, prevs, (x, y)) is not None:
                return True
    return False


def contains_mono_generic(g: ColoredGraph, target: TargetGraph, color: Color) -> bool:
    """Reference containment test: pure backtracking embedder, no fast paths."""
    return _embed_generic(g.adj(color), g.n, target) is not None


def contains_mono(g: ColoredGraph, target: TargetGraph, color: Color) -> bool:
    """Does g contain a copy of target all of whose edges have this color?"""
    adj = g.adj(color)
    if target.kind is TargetKind.PATH:
        return _has_path(adj, g.n, target.k)
    if target.kind is TargetKind.CYCLE:
        if target.k == 4:
            return _has_c4(adj, g.n)
        return _has_cycle(adj, g.n, target.k)
    if target.kind is TargetKind.CLIQUE:
        return _has_clique(adj, g.n, target.k)
    return contains_mono_generic(g, target, color)


def find_mono(g: ColoredGraph, target: TargetGraph, color: Color) -> list[int] | None:
    """One embedding (image of target vertex i at index i), or None."""
    return _embed_generic(g.adj(color), g.n, target)


def completion_checker(target: TargetGraph) -> Callable[[Sequence[int], int, int], bool]:
    """Detector for 'a copy of target runs through edge (u, v)'.

    The returned function takes the one-color adjacency of a board where
    (u, v) is already present.  Because play stops at the first completed
    copy, checking through the new edge is a full terminality test.
    """
    kind, k = target.kind, target.k

    if kind is TargetKind.PATH:
        return lambda adj, u, v: _path_through(adj, u, v, k)
    if kind is TargetKind.CYCLE:
        return lambda adj, u, v: _cycle_through(adj, u, v, k)
    if kind is TargetKind.CLIQUE:
        if k == 2:
            return lambda adj, u, v: True

        def clique_through(adj: Sequence[int], u: int, v: int) -> bool:
            return _clique_in(adj, adj[u] & adj[v], k - 2)

        return clique_through

    def explicit_through(adj: Sequence[int], u: int, v: int) -> bool:
        n = max(len(adj), u + 1, v + 1)
        return _embed_through(adj, n, target, u, v)

    return explicit_through


def creates_mono(
    g: ColoredGraph, u: int, v: int, color: Color, target: TargetGraph
) -> bool:
    """Would playing (u, v) in this color complete a copy of target?

    Endpoints may be FRESH markers.  Assumes g itself has no copy yet, which
    holds for every live game board.
    """
    child = g.add_edge(u, v, color)
    cu, cv = g.resolve_pair(u, v)
    return completion_checker(target)(child.adj(color), cu, cv)


# ---------------------------------------------------------------------------
# Completion-cost bound: can this color still finish its target within a
# budget of new edges?  Used by the solver to prune dead branches; it never
# fires unless the remaining budget is below the target's edge count.


def completable_within(
    g: ColoredGraph, target: TargetGraph, color: Color, budget: int
) -> bool:
    if budget >= target.n_edges:
        return True
    if budget < 0:
        return False
    want = g.adj(color)
    other = g.adj(Color(color).other)
    n = g.n
    order, prevs = _target_order(target.n_vertices, target.edge_list)
    imgs: list[int] = []

    def rec(i: int, used: int, cost: int) -> bool:
        if i == len(order):
            return True
        ps = prevs[i]
        for x in range(n):
            if (used >> x) & 1:
                continue
            c = cost
            ok = True
            for p in ps:
                y = imgs[p]
                if y >= n:
                    c += 1
                elif (want[x] >> y) & 1:
                    pass
                elif (other[x] >> y) & 1:
                    ok = False
                    break
                else:
                    c += 1
                if c > budget:
                    ok = False
                    break
            if ok:
                imgs.append(x)
                if rec(i + 1, used | (1 << x), c):
                    return True
                imgs.pop()
        # a brand-new vertex: every incident target edge costs one new edge
        c = cost + len(ps)
        if c <= budget:
            imgs.append(n + sum(1 for y in imgs if y >= n))
            if rec(i + 1, used, c):
                return True
            imgs.pop()
        return False

    return rec(0, 0, 0)
