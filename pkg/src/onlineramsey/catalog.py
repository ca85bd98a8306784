"""Known game values and general bounds for the red-C4 path family.

The catalog answers two questions: "is this exact value already known?" and
"what do the general inequalities give for red C4 against a blue path?".
Exact rows live in a bundled data file; each row says how the number is
established here (`certified` by the bundled plan, `solver` by exact search,
`reported` when it is beyond what this package can recompute) and how cheap
that check is (`fast`, `slow`, `no`).
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import cache
from importlib import resources

from .graphs import GraphError, TargetGraph, TargetKind

SOURCES = ("formula", "certified", "solver", "reported")
CHECKABLE = ("fast", "slow", "no")


@dataclass(frozen=True)
class CatalogEntry:
    red: str
    blue: str
    value: int
    source: str
    checkable: str


@cache
def entries() -> tuple[CatalogEntry, ...]:
    text = resources.files("onlineramsey").joinpath("assets/known_values.txt").read_text()
    out = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        parts = line.split()
        if len(parts) != 5:
            raise GraphError(f"known_values.txt line {lineno}: expected 5 fields")
        red, blue, value, source, checkable = parts
        if source not in SOURCES or checkable not in CHECKABLE:
            raise GraphError(f"known_values.txt line {lineno}: bad tag")
        out.append(CatalogEntry(red, blue, int(value), source, checkable))
    return tuple(out)


def known_value(red: TargetGraph, blue: TargetGraph) -> CatalogEntry | None:
    """Exact value for the pair if known, in either order.

    An edge against a clique follows the closed form k(k-1)/2: Painter colors
    everything blue until the blue clique is one edge short, so Builder simply
    buys every clique edge and wins on a red reply or the final blue one.
    """
    if (
        red.kind is TargetKind.CLIQUE
        and blue.kind is TargetKind.CLIQUE
        and 2 in (red.k, blue.k)
    ):
        k = blue.k if red.k == 2 else red.k
        return CatalogEntry(red.label, blue.label, k * (k - 1) // 2, "formula", "fast")
    for e in entries():
        if (e.red, e.blue) in ((red.label, blue.label), (blue.label, red.label)):
            return e
    return None


def proposition_bounds(k: int) -> tuple[int, int]:
    """General (lower, upper) bounds for red C4 against a blue k-vertex path.

    Upper bound 3k-5: Builder grows a blue path two rounds per vertex after
    an opening that costs one extra round.  Lower bound: Painter can always
    survive 2k-2 rounds, and one round more when k is 6 or 7.
    """
    if k < 6:
        raise ValueError("the general bounds apply from k = 6 up")
    lower = 2 * k - 1 if k in (6, 7) else 2 * k - 2
    return lower, 3 * k - 5


def bounds_line(k: int) -> str:
    lower, upper = proposition_bounds(k)
    return f"{lower} <= r(C4,P{k}) <= {upper}"
