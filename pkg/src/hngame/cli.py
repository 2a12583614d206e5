"""``hn`` command-line tool.

Exit codes: 0 success, 1 fuzz found a property violation, 2 domain error,
3 unreadable or malformed game file.
"""

from __future__ import annotations

import argparse
import json
import logging
import sys
from pathlib import Path
from typing import Any, Sequence

from .dot import to_dot
from .engine import (
    Filtration,
    Game,
    equivalence_report,
    hn_filtration,
    is_affine,
    is_convex,
    is_semistable,
    is_slope_like,
    jordan_holder,
    verify_filtration,
)
from .errors import HNError, ParseError
from .gamefile import load_game
from .lattice import strict_pairs
from .oracle import run_fuzz
from .values import Ordering, PrimeSet

EXIT_OK, EXIT_VIOLATION, EXIT_DOMAIN, EXIT_PARSE = 0, 1, 2, 3


def _flag(v: bool | None) -> str:
    return "n/a" if v is None else str(bool(v)).lower()


def _labels(game: Game, xs) -> list[str]:
    return sorted(game.label(x) for x in xs)


# -- validate ---------------------------------------------------------------

def validate_summary(game: Game) -> dict[str, Any]:
    d = game.domain
    return {
        "elements": game.lattice.n,
        "strict_pairs": len(strict_pairs(game.lattice)),
        "domain": d.mode + (" (reversed)" if d.reversed else ""),
        "flags": {
            "convex": bool(is_convex(game)),
            "slope_like": bool(is_slope_like(game)) if d.is_total else None,
            "affine": bool(is_affine(game)),
            "semistable": bool(is_semistable(game)),
        },
    }


def cmd_validate(game: Game, args) -> str:
    s = validate_summary(game)
    if args.json:
        return json.dumps(s, indent=2, ensure_ascii=False)
    lines = [f"elements: {s['elements']}", f"strict pairs: {s['strict_pairs']}", f"domain: {s['domain']}"]
    lines += [f"{k}={_flag(v)}" for k, v in s["flags"].items()]
    return "\n".join(lines)


# -- report ---------------------------------------------------------------

def report_document(game: Game) -> dict[str, Any]:
    rep = equivalence_report(game)
    d = game.domain
    return {
        "mu_A_star": d.dump(rep.muA_star),
        "mu_B_star": d.dump(rep.muB_star),
        "mu_bottom_top": d.dump(rep.mu_top),
        "mu_min_top": d.dump(rep.mu_min_top),
        "mu_max_top": d.dump(rep.mu_max_top),
        "st": _labels(game, rep.st_set),
        "flags": rep.flags,
        "statements": rep.statements,
        "first_mover": rep.first_mover.value,
    }


def cmd_report(game: Game, args) -> str:
    if args.json:
        return json.dumps(report_document(game), indent=2, ensure_ascii=False)
    rep = equivalence_report(game)
    f = game.domain.format
    relation = {Ordering.LESS: "mu_A* < mu_B*", Ordering.EQUAL: "mu_A* = mu_B*",
                Ordering.GREATER: "mu_A* > mu_B*", Ordering.INCOMPARABLE: "incomparable"}
    lines = [
        f"mu_A* = {f(rep.muA_star)}",
        f"mu_B* = {f(rep.muB_star)}",
        f"mu(bottom,top) = {f(rep.mu_top)}",
        f"mu_min(top) = {f(rep.mu_min_top)}",
        f"mu_max(top) = {f(rep.mu_max_top)}",
        "St = {" + ", ".join(_labels(game, rep.st_set)) + "}",
        f"first mover: {relation[rep.first_mover]}",
    ]
    lines += [f"{k}={_flag(v)}" for k, v in rep.flags.items()]
    lines += [f"statement ({k}): {_flag(v)}" for k, v in rep.statements.items()]
    return "\n".join(lines)


# -- filtration -------------------------------------------------------------

_SYMBOL = {Ordering.LESS: "<", Ordering.EQUAL: "=", Ordering.GREATER: ">", Ordering.INCOMPARABLE: "≯"}


def format_filtration(game: Game, filt: Filtration) -> str:
    chain = " ⊂ ".join(filt.labels)
    slopes = filt.slopes
    if slopes and all(isinstance(s, PrimeSet) and len(s.primes) == 1 for s in slopes):
        return f"{chain} ; primes " + " > ".join(str(next(iter(s.primes))) for s in slopes)
    d = game.domain
    text = d.format(slopes[0]) if slopes else ""
    for prev, cur in zip(slopes, slopes[1:]):
        text += f" {_SYMBOL[d.compare(prev, cur)]} {d.format(cur)}"
    return f"{chain} ; slopes {text}"


def _filtration_doc(game: Game, filt: Filtration) -> dict:
    return {"chain": list(filt.labels), "slopes": [game.domain.dump(s) for s in filt.slopes]}


def cmd_filtration(game: Game, args) -> str:
    if args.jordan_holder:
        filts = jordan_holder(game, all=args.all)
    else:
        filts = [hn_filtration(game)]
    checks = [verify_filtration(game, f) for f in filts] if args.verify and not args.jordan_holder else []
    if args.json:
        doc: dict[str, Any] = {"filtrations": [_filtration_doc(game, f) for f in filts]}
        if checks:
            doc["verified"] = all(checks)
        return json.dumps(doc, indent=2, ensure_ascii=False)
    lines = [format_filtration(game, f) for f in filts]
    for c in checks:
        lines.append("verified" if c else f"verification failed: {c.message}")
    return "\n".join(lines)


# -- dot --------------------------------------------------------------------

def cmd_dot(game: Game, args) -> str:
    try:
        filt = hn_filtration(game)
    except HNError:
        filt = None
    text = to_dot(game, filt)
    if args.out:
        Path(args.out).write_text(text, encoding="utf-8")
        return f"wrote {args.out}"
    return text.rstrip("\n")


COMMANDS = {
    "validate": cmd_validate,
    "report": cmd_report,
    "filtration": cmd_filtration,
    "dot": cmd_dot,
}


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="hn", description="Harder-Narasimhan games on finite lattices")
    p.add_argument("-v", "--verbose", action="store_true", help="debug logging")
    sub = p.add_subparsers(dest="command", required=True)
    for name in COMMANDS:
        sp = sub.add_parser(name)
        sp.add_argument("path", help="game file (JSON)")
        sp.add_argument("--json", action="store_true", help="machine-readable output")
        if name == "filtration":
            sp.add_argument("--jordan-holder", action="store_true")
            sp.add_argument("--all", action="store_true", help="all Jordan-Hölder filtrations")
            sp.add_argument("--verify", action="store_true")
        if name == "dot":
            sp.add_argument("--out", help="write DOT to this file")
    fz = sub.add_parser("fuzz")
    fz.add_argument("--seed", type=int, default=0)
    fz.add_argument("--count", type=int, default=100)
    fz.add_argument("--size", type=int, default=5, help="largest generator poset size")
    fz.add_argument("--out", default=".", help="directory for counterexample files")
    return p


def main(argv: Sequence[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    logging.basicConfig(level=logging.DEBUG if args.verbose else logging.WARNING,
                        format="%(levelname)s %(name)s: %(message)s")
    try:
        if args.command == "fuzz":
            path = run_fuzz(args.seed, args.count, args.size, args.out)
            if path is not None:
                print(f"counterexample written to {path}")
                return EXIT_VIOLATION
            print(f"{args.count} instances ok")
            return EXIT_OK
        game = load_game(args.path)
        print(COMMANDS[args.command](game, args))
        return EXIT_OK
    except ParseError as exc:
        print(f"error: {exc.code}: {exc}", file=sys.stderr)
        return EXIT_PARSE
    except HNError as exc:
        witness = f" (witness: {exc.witness})" if exc.witness is not None else ""
        print(f"error: {exc.code}: {exc}{witness}", file=sys.stderr)
        return EXIT_DOMAIN


if __name__ == "__main__":
    sys.exit(main())
