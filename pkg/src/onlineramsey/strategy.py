"""Builder strategy files: a verifiable decision-tree format.

A strategy file scripts Builder's play: a fixed opening of K moves, a table
mapping each of the 2^K Painter reply patterns to a case tree (possibly
through a relabeling that reuses a mirror-symmetric case), and per-case trees
whose nodes give Builder's next move and branch on Painter's color.  A node
may omit one color branch only because that color would finish the game on
the spot, and a `win` leaf claims its move is double-forced.  None of that is
taken on trust: `verify` replays every Painter reply sequence and re-derives
each omission and each win from the board itself.  The only content a PASS
leaves unchecked is the choice of moves, which is exactly the part a strategy
is free to choose.

The bundled `c4p6.strategy` asset certifies an eleven-round win for the red
C4 / blue P6 game; solver extractions use the same format with an empty
opening (their single case tree branches from round one).
"""

from __future__ import annotations

import re
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from functools import cache
from importlib import resources

from .engine import (
    GameState,
    StateAlreadyWon,
    initial_state,
    play,
)
from .graphs import (
    BLUE,
    FRESH,
    FRESH2,
    RED,
    Color,
    ColoredGraph,
    GraphError,
    TargetGraph,
    TargetKind,
)

_NAME = re.compile(r"[A-Z]")


class StrategyError(Exception):
    def __init__(self, message: str, lineno: int | None = None):
        super().__init__(f"line {lineno}: {message}" if lineno else message)
        self.lineno = lineno


class StrategySyntaxError(StrategyError):
    pass


class StrategySemanticError(StrategyError):
    """Structured rule violation; `code` names the rule."""

    def __init__(self, code: str, message: str, lineno: int | None = None):
        super().__init__(f"{code}: {message}", lineno)
        self.code = code


@dataclass
class StrategyNode:
    move: tuple[str, str]
    children: dict[Color, "StrategyNode"]
    win: bool
    lose_if: Color | None

    def depth(self) -> int:
        if not self.children:
            return 1
        return 1 + max(c.depth() for c in self.children.values())


@dataclass
class PatternEntry:
    pattern: str
    case: str | None
    relabel: dict[str, str] | None
    immediate_win: bool


@dataclass
class StrategyFile:
    red_target: TargetGraph
    blue_target: TargetGraph
    budget: int
    opening: list[tuple[str, str]]
    patterns: dict[str, PatternEntry]
    cases: dict[str, StrategyNode]

    # -- parsing -------------------------------------------------------------

    @classmethod
    def parse(cls, text: str) -> "StrategyFile":
        rows: list[tuple[int, int, str]] = []
        for lineno, raw in enumerate(text.splitlines(), start=1):
            stripped = raw.split("#", 1)[0].rstrip()
            if not stripped.strip():
                continue
            if "\t" in raw[: len(raw) - len(raw.lstrip())]:
                raise StrategySyntaxError("tabs are not allowed in indentation", lineno)
            indent = len(stripped) - len(stripped.lstrip())
            rows.append((lineno, indent, stripped.strip()))

        red_target: TargetGraph | None = None
        blue_target: TargetGraph | None = None
        budget: int | None = None
        opening: list[tuple[str, str]] = []
        patterns: dict[str, PatternEntry] = {}
        cases: dict[str, StrategyNode] = {}

        i = 0
        while i < len(rows):
            lineno, indent, line = rows[i]
            if indent != 0:
                raise StrategySyntaxError(f"unexpected indented line {line!r}", lineno)
            if line.startswith("targets "):
                m = re.fullmatch(r"targets\s+RED=(\S+)\s+BLUE=(\S+)", line)
                if not m:
                    raise StrategySyntaxError("expected 'targets RED=<spec> BLUE=<spec>'", lineno)
                try:
                    red_target = TargetGraph.parse(m.group(1))
                    blue_target = TargetGraph.parse(m.group(2))
                except GraphError as e:
                    raise StrategySyntaxError(str(e), lineno)
                i += 1
            elif line.startswith("budget "):
                try:
                    budget = int(line.split()[1])
                except (IndexError, ValueError):
                    raise StrategySyntaxError("expected 'budget <n>'", lineno)
                if budget < 1:
                    raise StrategySemanticError("BudgetViolation", "budget must be positive", lineno)
                i += 1
            elif line.startswith("opening "):
                parts = line.split()
                if len(parts) != 3 or not (_NAME.fullmatch(parts[1]) and _NAME.fullmatch(parts[2])):
                    raise StrategySyntaxError("expected 'opening <U> <V>' with single-letter names", lineno)
                if parts[1] == parts[2]:
                    raise StrategySemanticError("MalformedNode", "opening move is a loop", lineno)
                opening.append((parts[1], parts[2]))
                i += 1
            elif line.startswith("pattern "):
                entry = _parse_pattern_line(line, lineno)
                if entry.pattern in patterns:
                    raise StrategySemanticError(
                        "DuplicatePattern", f"pattern {entry.pattern or '-'} listed twice", lineno
                    )
                patterns[entry.pattern] = entry
                i += 1
            elif line.startswith("case "):
                parts = line.split()
                if len(parts) != 2:
                    raise StrategySyntaxError("expected 'case <label>'", lineno)
                label = parts[1]
                if label in cases:
                    raise StrategySyntaxError(f"case {label} defined twice", lineno)
                if i + 1 >= len(rows) or rows[i + 1][1] == 0:
                    raise StrategySyntaxError(f"case {label} has an empty body", lineno)
                node, i = _parse_node(rows, i + 1, rows[i + 1][1])
                cases[label] = node
            else:
                raise StrategySyntaxError(f"unrecognized line {line!r}", lineno)

        if red_target is None or blue_target is None:
            raise StrategySyntaxError("missing targets line")
        if budget is None:
            raise StrategySyntaxError("missing budget line")

        f = cls(red_target, blue_target, budget, opening, patterns, cases)
        f._validate()
        return f

    def _validate(self) -> None:
        k = len(self.opening)
        for pat, entry in self.patterns.items():
            if len(pat) != k:
                raise StrategySemanticError(
                    "MissingPattern",
                    f"pattern {pat or '-'} has length {len(pat)}, opening has {k} moves",
                )
        for bits in range(1 << k):
            pat = "".join("RB"[(bits >> j) & 1] for j in range(k))
            if pat not in self.patterns:
                raise StrategySemanticError("MissingPattern", f"pattern {pat or '-'} is not covered")
        opening_names = sorted({x for mv in self.opening for x in mv})
        used_cases = set()
        for entry in self.patterns.values():
            if entry.immediate_win:
                continue
            if entry.case not in self.cases:
                raise StrategySemanticError("UnknownCase", f"pattern {entry.pattern or '-'} names unknown case {entry.case}")
            used_cases.add(entry.case)
            if entry.relabel is not None:
                if sorted(entry.relabel) != opening_names or sorted(
                    entry.relabel.values()
                ) != opening_names:
                    raise StrategySemanticError(
                        "BadRelabel",
                        f"relabel for pattern {entry.pattern or '-'} is not a permutation of the opening names",
                    )
        for label, node in self.cases.items():
            if label not in used_cases:
                raise StrategySemanticError("UnreferencedCase", f"case {label} is never referenced")
            if k + node.depth() > self.budget:
                raise StrategySemanticError(
                    "BudgetViolation",
                    f"case {label} can run to round {k + node.depth()}, past budget {self.budget}",
                )
        if k and k > self.budget:
            raise StrategySemanticError("BudgetViolation", "opening alone exceeds the budget")

    # -- serialization ---------------------------------------------------------

    def serialize(self) -> str:
        for t in (self.red_target, self.blue_target):
            if t.kind is TargetKind.EXPLICIT:
                raise StrategyError("explicit targets have no file spelling")
        out = [
            f"targets RED={self.red_target.label} BLUE={self.blue_target.label}",
            f"budget {self.budget}",
        ]
        for u, v in self.opening:
            out.append(f"opening {u} {v}")
        for pat in sorted(self.patterns):
            e = self.patterns[pat]
            shown = pat or "-"
            if e.immediate_win:
                out.append(f"pattern {shown} immediate-win")
            elif e.relabel:
                order = sorted({x for mv in self.opening for x in mv})
                perm = "".join(e.relabel[x] for x in order)
                out.append(f"pattern {shown} case {e.case} relabel {perm}")
            else:
                out.append(f"pattern {shown} case {e.case}")
        for label in sorted(self.cases):
            out.append(f"case {label}")
            _emit_node(out, self.cases[label], 1)
        return "\n".join(out) + "\n"


def _parse_pattern_line(line: str, lineno: int) -> PatternEntry:
    m = re.fullmatch(
        r"pattern\s+(\S+)\s+(?:(immediate-win)|case\s+([A-Za-z0-9_]+)(?:\s+relabel\s+([A-Z]+))?)",
        line,
    )
    if not m:
        raise StrategySyntaxError(
            "expected 'pattern <RB..> immediate-win' or 'pattern <RB..> case <label> [relabel <perm>]'",
            lineno,
        )
    pat = m.group(1)
    if pat == "-":
        pat = ""
    if not re.fullmatch(r"[RB]*", pat):
        raise StrategySyntaxError(f"pattern {m.group(1)!r} must use only R and B", lineno)
    if m.group(2):
        return PatternEntry(pat, None, None, True)
    relabel = None
    if m.group(4):
        perm = m.group(4)
        order = sorted(set(perm))
        if len(set(perm)) != len(perm):
            raise StrategySemanticError("BadRelabel", f"relabel {perm} repeats a name", lineno)
        relabel = dict(zip(sorted(perm), perm))
    return PatternEntry(pat, m.group(3), relabel, False)


def _parse_node(
    rows: list[tuple[int, int, str]], i: int, indent: int
) -> tuple[StrategyNode, int]:
    lineno, ind, line = rows[i]
    if ind != indent or not line.startswith("move "):
        raise StrategySyntaxError(f"expected a move line, got {line!r}", lineno)
    parts = line.split()
    if len(parts) != 3 or not (_NAME.fullmatch(parts[1]) and _NAME.fullmatch(parts[2])):
        raise StrategySyntaxError("expected 'move <U> <V>' with single-letter names", lineno)
    if parts[1] == parts[2]:
        raise StrategySemanticError("MalformedNode", "move is a loop", lineno)
    move = (parts[1], parts[2])
    move_lineno = lineno
    i += 1
    win = False
    lose_if: Color | None = None
    children: dict[Color, StrategyNode] = {}
    while i < len(rows) and rows[i][1] == indent:
        lineno, _, line = rows[i]
        if line == "win":
            win = True
            i += 1
        elif line in ("lose-if-R", "lose-if-B"):
            lose_if = Color.from_letter(line[-1])
            i += 1
        elif line in ("on R:", "on B:"):
            color = Color.from_letter(line[3])
            if color in children:
                raise StrategySyntaxError(f"duplicate 'on {color.letter}:' branch", lineno)
            if i + 1 >= len(rows) or rows[i + 1][1] <= indent:
                raise StrategySyntaxError(f"'on {color.letter}:' has an empty body", lineno)
            child, i = _parse_node(rows, i + 1, rows[i + 1][1])
            children[color] = child
        else:
            break
    node = StrategyNode(move, children, win, lose_if)
    _check_node(node, move_lineno)
    return node, i


def _check_node(node: StrategyNode, lineno: int) -> None:
    if node.win:
        if node.children:
            raise StrategySemanticError(
                "MalformedLeaf", f"win leaf {node.move[0]}{node.move[1]} has a color branch", lineno
            )
        if node.lose_if is not None:
            raise StrategySemanticError(
                "MalformedLeaf", "win leaf also claims lose-if", lineno
            )
        return
    if not node.children:
        raise StrategySemanticError(
            "MalformedNode", f"node {node.move[0]}{node.move[1]} has no continuation and no win", lineno
        )
    if len(node.children) == 1:
        (present,) = node.children
        missing = present.other
        if node.lose_if is not missing:
            raise StrategySemanticError(
                "MalformedNode",
                f"node {node.move[0]}{node.move[1]} omits the {missing.letter} branch without lose-if-{missing.letter}",
                lineno,
            )
    elif node.lose_if is not None:
        raise StrategySemanticError(
            "MalformedNode", "node with both branches also claims lose-if", lineno
        )


def _emit_node(out: list[str], node: StrategyNode, depth: int) -> None:
    pad = "  " * depth
    out.append(f"{pad}move {node.move[0]} {node.move[1]}")
    if node.win:
        out.append(f"{pad}win")
        return
    if node.lose_if is not None:
        out.append(f"{pad}lose-if-{node.lose_if.letter}")
    for color in (RED, BLUE):
        if color in node.children:
            out.append(f"{pad}on {color.letter}:")
            _emit_node(out, node.children[color], depth + 1)


# ---------------------------------------------------------------------------
# Exhaustive verification


@dataclass
class CaseReport:
    pattern: str
    case: str | None
    branches: int
    max_rounds: int
    ok: bool
    failures: list[str] = field(default_factory=list)


@dataclass
class VerificationReport:
    ok: bool
    budget: int
    max_rounds: int
    branches: int
    cases: list[CaseReport]

    def summary_lines(self) -> list[str]:
        lines = []
        for r in self.cases:
            status = "ok" if r.ok else "FAIL"
            label = r.case if r.case is not None else "immediate-win"
            lines.append(
                f"pattern {r.pattern or '-'} case {label}: "
                f"branches={r.branches} max_rounds={r.max_rounds} {status}"
            )
            lines.extend(f"  {f}" for f in r.failures)
        return lines


def _base_names(opening: list[tuple[str, str]]) -> dict[str, int]:
    ids: dict[str, int] = {}
    for u, v in opening:
        for x in (u, v):
            if x not in ids:
                ids[x] = len(ids)
    return ids


def _entry_names(file: StrategyFile, entry: PatternEntry) -> dict[str, int]:
    base = _base_names(file.opening)
    if entry.relabel is None:
        return dict(base)
    return {x: base[entry.relabel[x]] for x in entry.relabel}


def _resolve_move(
    state: GameState, names: dict[str, int], move: tuple[str, str]
) -> tuple[tuple[int, int], dict[str, int]]:
    """Map a named move to board ids, binding fresh names to the ids they get."""
    un, vn = move
    u = names.get(un, FRESH)
    v = names.get(vn, FRESH if un in names else FRESH2)
    cu, cv = state.board.resolve_pair(u, v)
    names = dict(names)
    names.setdefault(un, cu)
    names.setdefault(vn, cv)
    return (u, v), names


def _walk_entry(file: StrategyFile, entry: PatternEntry) -> CaseReport:
    failures: list[str] = []
    branches = 0
    max_rounds = 0

    state = initial_state(file.red_target, file.blue_target)
    base = _base_names(file.opening)
    for j, (un, vn) in enumerate(file.opening):
        color = Color.from_letter(entry.pattern[j])
        try:
            state = play(state, (base[un], base[vn]), color)
        except (GraphError, StateAlreadyWon) as e:
            failures.append(f"opening move {j + 1} is illegal: {e}")
            break
        if state.is_terminal and j < len(file.opening) - 1:
            failures.append(f"the game ends at opening round {j + 1}")
            break

    if entry.immediate_win:
        if not failures and not state.is_terminal:
            failures.append("immediate-win pattern leaves the game unfinished")
        return CaseReport(
            entry.pattern, None, 1 if not failures else 0, state.rounds_played, not failures, failures
        )
    if not failures and state.is_terminal:
        failures.append("pattern finishes during the opening but is not declared immediate-win")
    if failures:
        return CaseReport(entry.pattern, entry.case, 0, state.rounds_played, False, failures)

    def walk(state: GameState, node: StrategyNode, names: dict[str, int]) -> None:
        nonlocal branches, max_rounds
        try:
            (mu, mv), names = _resolve_move(state, names, node.move)
            children = {c: play(state, (mu, mv), c) for c in (RED, BLUE)}
        except (GraphError, StateAlreadyWon) as e:
            failures.append(f"move {node.move[0]}{node.move[1]} is illegal: {e}")
            return
        for c in (RED, BLUE):
            child = children[c]
            rounds = child.rounds_played
            sub = node.children.get(c)
            if node.win:
                if child.completed is not c:
                    failures.append(
                        f"win leaf {node.move[0]}{node.move[1]} does not finish when colored {c.letter}"
                    )
                    continue
                branches += 1
                max_rounds = max(max_rounds, rounds)
                if rounds > file.budget:
                    failures.append(f"win at round {rounds} exceeds budget {file.budget}")
            elif sub is None:
                if child.completed is not c:
                    failures.append(
                        f"missing {c.letter} branch after {node.move[0]}{node.move[1]} "
                        "does not lose immediately"
                    )
                    continue
                branches += 1
                max_rounds = max(max_rounds, rounds)
                if rounds > file.budget:
                    failures.append(f"forced finish at round {rounds} exceeds budget {file.budget}")
            else:
                if child.is_terminal:
                    failures.append(
                        f"{c.letter} branch after {node.move[0]}{node.move[1]} "
                        "continues past the end of the game"
                    )
                    continue
                walk(child, sub, names)

    walk(state, file.cases[entry.case], _entry_names(file, entry))
    return CaseReport(entry.pattern, entry.case, branches, max_rounds, not failures, failures)


def verify(file: StrategyFile, threads: int = 1) -> VerificationReport:
    """Replay every Painter reply sequence and re-derive every claim.

    Trusts only the move choices: forced colors, immediate losses, and
    double-forced wins are all recomputed from the boards.
    """
    entries = [file.patterns[p] for p in sorted(file.patterns)]
    if threads > 1:
        with ThreadPoolExecutor(max_workers=threads) as ex:
            reports = list(ex.map(lambda e: _walk_entry(file, e), entries))
    else:
        reports = [_walk_entry(file, e) for e in entries]
    return VerificationReport(
        ok=all(r.ok for r in reports),
        budget=file.budget,
        max_rounds=max((r.max_rounds for r in reports), default=0),
        branches=sum(r.branches for r in reports),
        cases=reports,
    )


# ---------------------------------------------------------------------------
# Bundled plan and the position book derived from it


@cache
def load_bundled() -> StrategyFile:
    text = resources.files("onlineramsey").joinpath("assets/c4p6.strategy").read_text()
    return StrategyFile.parse(text)


def case_pattern_table(file: StrategyFile | None = None) -> dict[str, str]:
    """Pattern -> case label; mirrored entries are marked with a prime."""
    file = file or load_bundled()
    table = {}
    for pat, e in file.patterns.items():
        if e.immediate_win:
            table[pat] = "ImmediateWin"
        else:
            table[pat] = e.case + ("'" if e.relabel else "")
    return table


def book_index(
    file: StrategyFile,
) -> dict[bytes, tuple[ColoredGraph, tuple[int, int], str]]:
    """Canonical position key -> (reference board, scripted move, origin label).

    Covers every Builder-to-move position the plan can reach, opening
    included, so an engine can follow the book by key lookup alone (and thus
    also from transposed move orders).
    """
    index: dict[bytes, tuple[ColoredGraph, tuple[int, int], str]] = {}
    base = _base_names(file.opening)
    k = len(file.opening)

    def marked(state: GameState, u: int, v: int) -> tuple[int, int]:
        n = state.board.n
        if u >= n and v >= n:
            return (FRESH, FRESH2)
        if v >= n:
            return (u, FRESH)
        if u >= n:
            return (v, FRESH)
        return (u, v)

    def tree_walk(state: GameState, node: StrategyNode, names: dict[str, int], label: str) -> None:
        (mu, mv), names = _resolve_move(state, names, node.move)
        cu, cv = state.board.resolve_pair(mu, mv)
        index[state.board.canonical_key()] = (state.board, marked(state, cu, cv), label)
        for c, sub in node.children.items():
            child = play(state, (mu, mv), c)
            if not child.is_terminal:
                tree_walk(child, sub, names, label)

    def opening_walk(state: GameState, j: int, pattern: str) -> None:
        if j == k:
            entry = file.patterns[pattern]
            if entry.immediate_win or state.is_terminal:
                return
            tree_walk(state, file.cases[entry.case], _entry_names(file, entry), entry.case)
            return
        un, vn = file.opening[j]
        u, v = base[un], base[vn]
        index[state.board.canonical_key()] = (
            state.board,
            marked(state, u, v),
            f"opening:{j + 1}",
        )
        for c in (RED, BLUE):
            child = play(state, (u, v), c)
            if not child.is_terminal:
                opening_walk(child, j + 1, pattern + c.letter)

    opening_walk(initial_state(file.red_target, file.blue_target), 0, "")
    return index


@cache
def bundled_book_index() -> dict[bytes, tuple[ColoredGraph, tuple[int, int], str]]:
    return book_index(load_bundled())


def translate_book_move(
    ref_board: ColoredGraph, ref_move: tuple[int, int], board: ColoredGraph
) -> tuple[int, int]:
    """Carry a book move across the isomorphism between two equal-key boards."""
    ref_key, ref_lab = ref_board.canonical_form()
    key, lab = board.canonical_form()
    if ref_key != key:
        raise GraphError("boards are not isomorphic; no book translation exists")
    pos = {orig: i for i, orig in enumerate(ref_lab)}
    u, v = ref_move
    tu = u if u < 0 else lab[pos[u]]
    tv = v if v < 0 else lab[pos[v]]
    return (tu, tv)
