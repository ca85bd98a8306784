"""Command line entry point: solve, verify, bounds, replay, extract-strategy, serve.

Every reporting subcommand prints stable, line-oriented text and ends with a
single machine-parsable line `RESULT key=value ...`.  Exit codes: 0 for
success or PASS, 1 for FAIL (a failed verification or a missed --expect),
2 for usage and input errors.
"""

from __future__ import annotations

import argparse
import sys
from pathlib import Path

from .catalog import bounds_line, known_value, proposition_bounds
from .engine import parse_transcript, replay
from .graphs import GraphError, TargetGraph
from .solver import (
    NoStrategyError,
    SolverOptions,
    TranspositionTable,
    extract_builder_strategy,
    online_size_ramsey,
)
from .strategy import StrategyError, StrategyFile, load_bundled, verify


class InputError(Exception):
    """Bad input from the user that argparse cannot catch itself."""


class Report:
    """Line-oriented output that honors --quiet and always ends in RESULT."""

    def __init__(self, quiet: bool):
        self.quiet = quiet

    def line(self, text: str = "") -> None:
        if not self.quiet:
            print(text)

    def result(self, **kv) -> None:
        pairs = " ".join(f"{k}={v}" for k, v in kv.items())
        print(f"RESULT {pairs}")


def _target(spec: str) -> TargetGraph:
    try:
        return TargetGraph.parse(spec)
    except GraphError as exc:
        raise InputError(str(exc))


def _format_pv(pv) -> str:
    return " ".join(f"({u},{v}){c.letter}" for u, v, c in pv)


def _stats_block(rep: Report, stats) -> None:
    rep.line(
        f"stats: nodes={stats.nodes} tt_hits={stats.tt_hits} "
        f"prunes={stats.prunes} tt_size={stats.tt_size} elapsed={stats.elapsed:.3f}s"
    )


# ---------------------------------------------------------------------------
# Subcommands.


def cmd_solve(args: argparse.Namespace) -> int:
    rep = Report(args.quiet)
    red, blue = _target(args.red), _target(args.blue)
    options = SolverOptions(fresh_fresh=not args.no_fresh_fresh)
    tt = TranspositionTable()
    out = online_size_ramsey(red, blue, args.cap, tt, options)
    rep.line(f"targets: red {red}, blue {blue}")
    rep.line(f"cap: {args.cap}")
    if out.restricted_moves:
        rep.line("moves: restricted (no fresh-fresh edges)")
    if out.win:
        rep.line(f"outcome: builder wins within {out.rounds} rounds")
    else:
        rep.line(f"outcome: painter survives {out.cap} rounds")
        if out.restricted_moves:
            rep.line("note: survival under restricted moves is not a lower bound")
    rep.line(f"guarantee: {out.guarantee}")
    if out.win:
        rep.line(f"pv: {_format_pv(out.pv)}")
    if args.stats:
        _stats_block(rep, out.stats)

    code = 0
    extra: dict[str, object] = {}
    if args.expect is not None and (not out.win or out.rounds != args.expect):
        extra = {"expect": args.expect, "status": "FAIL"}
        code = 1
    if args.emit_strategy is not None:
        if not out.win:
            print("error: no strategy to emit, painter survives the cap", file=sys.stderr)
            extra["status"] = "FAIL"
            code = 1
        else:
            plan = extract_builder_strategy(red, blue, args.cap, tt, options)
            Path(args.emit_strategy).write_text(plan.serialize())
            rep.line(f"strategy: wrote {args.emit_strategy} (budget {plan.budget})")
    value = out.rounds if out.win else "unknown"
    if out.win:
        rep.result(value=value, **extra)
    else:
        rep.result(value=value, survives=out.cap, **extra)
    return code


def cmd_verify(args: argparse.Namespace) -> int:
    rep = Report(args.quiet)
    if args.path is None:
        plan = load_bundled()
        rep.line("plan: bundled")
    else:
        try:
            text = Path(args.path).read_text()
        except OSError as exc:
            raise InputError(str(exc))
        try:
            plan = StrategyFile.parse(text)
        except StrategyError as exc:
            print(f"error: {exc}", file=sys.stderr)
            rep.result(status="FAIL")
            return 1
        rep.line(f"plan: {args.path}")
    rep.line(
        f"targets: red {plan.red_target}, blue {plan.blue_target}, "
        f"budget {plan.budget}"
    )
    report = verify(plan, threads=args.threads)
    for line in report.summary_lines():
        rep.line(line)
    status = "PASS" if report.ok else "FAIL"
    rep.result(maxrounds=report.max_rounds, branches=report.branches, status=status)
    return 0 if report.ok else 1


def cmd_bounds(args: argparse.Namespace) -> int:
    rep = Report(args.quiet)
    if args.k is not None:
        try:
            lower, upper = proposition_bounds(args.k)
        except ValueError as exc:
            raise InputError(str(exc))
        rep.line(bounds_line(args.k))
        extra = {}
        hit = known_value(TargetGraph.cycle(4), TargetGraph.path(args.k))
        if hit is not None:
            rep.line(f"exact: r(C4,P{args.k}) = {hit.value} ({hit.source})")
            extra["exact"] = hit.value
        rep.result(lower=lower, upper=upper, **extra)
        return 0
    red, blue = _target(args.red), _target(args.blue)
    hit = known_value(red, blue)
    if hit is None:
        rep.line(f"no exact value recorded for ({red}, {blue})")
        rep.result(value="unknown")
    else:
        rep.line(f"exact: r({red},{blue}) = {hit.value} ({hit.source}, check: {hit.checkable})")
        rep.result(value=hit.value, source=hit.source)
    return 0


def cmd_replay(args: argparse.Namespace) -> int:
    rep = Report(args.quiet)
    try:
        text = Path(args.path).read_text()
    except OSError as exc:
        raise InputError(str(exc))
    head = {}
    for line in text.splitlines():
        if not line.startswith("#"):
            break
        key, _, val = line[1:].strip().partition(" ")
        head[key] = val.strip()
    red_spec = args.red if args.red is not None else head.get("red_target")
    blue_spec = args.blue if args.blue is not None else head.get("blue_target")
    if red_spec is None or blue_spec is None:
        raise InputError("transcript has no target header; pass --red and --blue")
    red, blue = _target(red_spec), _target(blue_spec)
    try:
        moves = parse_transcript(text)
        state = replay(moves, red, blue)
    except GraphError as exc:
        raise InputError(str(exc))
    rep.line(f"targets: red {red}, blue {blue}")
    for i, (u, v, c) in enumerate(moves, start=1):
        rep.line(f"{i}: ({u},{v}) {c.letter}")
    if state.completed is not None:
        color = state.completed.letter
        rep.line(f"completed: {color} {state.target_for(state.completed)} at round {state.rounds_played}")
        rep.result(rounds=state.rounds_played, completed=color)
    else:
        rep.line(f"open after {state.rounds_played} rounds")
        rep.result(rounds=state.rounds_played, completed="none")
    return 0


def cmd_extract_strategy(args: argparse.Namespace) -> int:
    rep = Report(args.quiet)
    red, blue = _target(args.red), _target(args.blue)
    tt = TranspositionTable()
    try:
        plan = extract_builder_strategy(red, blue, args.cap, tt)
    except NoStrategyError as exc:
        print(f"error: {exc}", file=sys.stderr)
        rep.result(status="FAIL")
        return 1
    report = verify(plan)
    Path(args.out).write_text(plan.serialize())
    rep.line(f"targets: red {red}, blue {blue}")
    rep.line(f"extracted: budget {plan.budget}, wrote {args.out}")
    status = "PASS" if report.ok else "FAIL"
    rep.result(budget=plan.budget, branches=report.branches, status=status)
    return 0 if report.ok else 1


def cmd_serve(args: argparse.Namespace) -> int:
    import uvicorn

    from .service import create_app

    static = Path("frontend/dist")
    app = create_app(
        max_cap=args.max_cap,
        persist_dir=args.persist,
        static_dir=static if static.is_dir() else None,
    )
    if static.is_dir() and not args.quiet:
        print(f"ui: serving {static} at /app")
    uvicorn.run(app, host=args.host, port=args.port, log_level="warning" if args.quiet else "info")
    return 0


# ---------------------------------------------------------------------------
# Parser.


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="onlineramsey",
        description="Solve, verify, and play the online size Ramsey building game.",
    )
    parser.add_argument("--threads", type=int, default=1, help="worker threads for verification")
    parser.add_argument("--quiet", action="store_true", help="print only the RESULT line")
    # same flags after the subcommand; SUPPRESS keeps them from clobbering a prefix value
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--threads", type=int, default=argparse.SUPPRESS, help=argparse.SUPPRESS)
    common.add_argument("--quiet", action="store_true", default=argparse.SUPPRESS, help=argparse.SUPPRESS)
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("solve", help="exact game value within a round cap", parents=[common])
    p.add_argument("--red", required=True, help="red target, e.g. C4")
    p.add_argument("--blue", required=True, help="blue target, e.g. P6")
    p.add_argument("--cap", type=int, required=True, help="largest round count to search")
    p.add_argument("--expect", type=int, default=None, help="fail unless the value matches")
    p.add_argument(
        "--no-fresh-fresh",
        action="store_true",
        help="forbid builder moves between two new vertices",
    )
    p.add_argument("--emit-strategy", default=None, metavar="PATH", help="write the winning plan")
    p.add_argument("--stats", action="store_true", help="print search statistics")
    p.set_defaults(func=cmd_solve)

    p = sub.add_parser(
        "verify", help="replay every painter answer against a strategy file", parents=[common]
    )
    p.add_argument("path", nargs="?", default=None, help="strategy file (default: bundled plan)")
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("bounds", help="known values and general path bounds", parents=[common])
    group = p.add_mutually_exclusive_group(required=True)
    group.add_argument("--k", type=int, default=None, help="path order for the general bounds")
    group.add_argument("--red", default=None, help="red target of a catalog pair")
    p.add_argument("--blue", default=None, help="blue target of a catalog pair")
    p.set_defaults(func=cmd_bounds)

    p = sub.add_parser("replay", help="replay a transcript file", parents=[common])
    p.add_argument("path", help="transcript: one line per round, `n u v color`")
    p.add_argument("--red", default=None, help="red target when the file has no header")
    p.add_argument("--blue", default=None, help="blue target when the file has no header")
    p.set_defaults(func=cmd_replay)

    p = sub.add_parser(
        "extract-strategy", help="solve and write a verified strategy file", parents=[common]
    )
    p.add_argument("--red", required=True)
    p.add_argument("--blue", required=True)
    p.add_argument("--cap", type=int, required=True)
    p.add_argument("--out", required=True, metavar="PATH")
    p.set_defaults(func=cmd_extract_strategy)

    p = sub.add_parser("serve", help="run the HTTP session API", parents=[common])
    p.add_argument("--host", default="127.0.0.1")
    p.add_argument("--port", type=int, default=8000)
    p.add_argument("--max-cap", type=int, default=12, help="largest session round cap")
    p.add_argument("--persist", default=None, metavar="DIR", help="transcript directory")
    p.set_defaults(func=cmd_serve)
    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    if args.command == "bounds":
        if args.k is not None and args.blue is not None:
            parser.error("--blue does not combine with --k")
        if args.k is None and args.blue is None:
            parser.error("bounds needs --k or both --red and --blue")
    try:
        return args.func(args)
    except InputError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
