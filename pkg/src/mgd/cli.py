"""Command-line interface.

Subcommands: compute, move, sites, fuzz, resolve.  Exit codes: 0 on
success, 1 for usage errors, 2 for parse or validation errors, 3 when
the state-space bound is exceeded (override with MGD_STATE_LIMIT).
"""

from __future__ import annotations

import argparse
import json
import sys

from .diagram import InvalidDiagramError, resolve
from .mgdio import MgdDocument, MgdSyntaxError, parse, report, serialize
from .moves import MOVE_IDS, MoveSite, PatternMismatch, StuckError, apply_move, enumerate_sites, random_walk
from .states import StateSpaceLimitError

EXIT_USAGE = 1
EXIT_DATA = 2
EXIT_RESOURCE = 3


def _load(path: str) -> MgdDocument:
    with open(path, encoding="utf-8") as fh:
        return parse(fh.read())


def _cmd_compute(args) -> int:
    doc = _load(args.file)
    rep = report(doc.diagram, with_states=args.states)
    if doc.name:
        rep = {"name": doc.name, **rep}
    if doc.flags:
        rep["flags"] = sorted(doc.flags)
    if args.json:
        print(json.dumps(rep, indent=2))
    else:
        for key, value in rep.items():
            if key == "states":
                print("states:")
                for st in value:
                    print(f"  {st['labels']}  {st['class']:9s} {st['weight']}")
            else:
                print(f"{key}: {value}")
    return 0


def _cmd_move(args) -> int:
    doc = _load(args.file)
    site = MoveSite.parse(args.site)
    result = apply_move(doc.diagram, site)
    sys.stdout.write(serialize(MgdDocument(result.diagram, doc.name)))
    print(f"# inverse: {result.inverse.render()}", file=sys.stderr)
    return 0


def _cmd_sites(args) -> int:
    doc = _load(args.file)
    moves = [args.move] if args.move else list(MOVE_IDS)
    for mv in moves:
        if mv not in MOVE_IDS:
            print(f"unknown move {mv!r}", file=sys.stderr)
            return EXIT_USAGE
        for site in enumerate_sites(doc.diagram, mv):
            print(site.render())
    return 0


def _cmd_fuzz(args) -> int:
    doc = _load(args.file)
    allowed = tuple(args.allow.split(",")) if args.allow else MOVE_IDS
    for mv in allowed:
        if mv not in MOVE_IDS:
            print(f"unknown move {mv!r}", file=sys.stderr)
            return EXIT_USAGE
    walk = random_walk(doc.diagram, args.seed, args.steps, allowed)
    for i, D in enumerate(walk, start=1):
        rep = report(D)
        print(
            f"step {i}: crossings={rep['crossings']} vertices={rep['vertices']} "
            f"loops={rep['free_loops']} R'={rep['R_prime']} S'={rep['S_prime']} Q={rep['Q']}"
        )
    return 0


def _cmd_resolve(args) -> int:
    doc = _load(args.file)
    out = resolve(doc.diagram, args.sign)
    name = f"{doc.name} ({args.sign} resolution)" if doc.name else None
    sys.stdout.write(serialize(MgdDocument(out, name)))
    return 0


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="mgd", description="marked graph diagram invariants")
    sub = ap.add_subparsers(dest="command", required=True)

    p = sub.add_parser("compute", help="invariants of a diagram")
    p.add_argument("file")
    p.add_argument("--json", action="store_true")
    p.add_argument("--states", action="store_true", help="list legal states")
    p.set_defaults(func=_cmd_compute)

    p = sub.add_parser("move", help="apply a move site")
    p.add_argument("file")
    p.add_argument("--site", required=True, help='e.g. "O4 fwd d=11"')
    p.set_defaults(func=_cmd_move)

    p = sub.add_parser("sites", help="enumerate move sites")
    p.add_argument("file")
    p.add_argument("--move", help="restrict to one move id (e.g. O4)")
    p.set_defaults(func=_cmd_sites)

    p = sub.add_parser("fuzz", help="seeded random move walk")
    p.add_argument("file")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--steps", type=int, default=10)
    p.add_argument("--allow", help="comma-separated move ids")
    p.set_defaults(func=_cmd_fuzz)

    p = sub.add_parser("resolve", help="smooth all marked vertices")
    p.add_argument("file")
    p.add_argument("--sign", required=True, choices=["+", "-"])
    p.set_defaults(func=_cmd_resolve)

    return ap


def main(argv: list[str] | None = None) -> int:
    ap = build_parser()
    try:
        args = ap.parse_args(argv)
    except SystemExit as exc:
        return EXIT_USAGE if exc.code else 0
    try:
        return args.func(args)
    except (MgdSyntaxError, InvalidDiagramError, PatternMismatch, StuckError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_DATA
    except StateSpaceLimitError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_RESOURCE
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_DATA


if __name__ == "__main__":
    sys.exit(main())
