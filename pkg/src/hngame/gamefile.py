"""JSON game files.

A document has ``elements``, ``order`` (``{"kind": "covers"|"full", "pairs": [...]}``),
``value_domain`` (``{"mode": ..., ...}``) and ``payoff``, which is one of

* ``{"kind": "table", "entries": [[x, y, value], ...]}``
* ``{"kind": "degree_rank", "degree": {label: value}, "rank": {label: value}}``
* ``{"kind": "module", "invariant_factors": [d1, ...]}`` (elements/order ignored)

:func:`dump_game` always writes the table form with cover pairs, so any game
(including derived ones such as duals) can be saved and reloaded.
"""

from __future__ import annotations

import json
from pathlib import Path
from typing import Any

from .engine import Game
from .errors import ParseError
from .instances import DegreeRankData, FiniteAbelianModule, ass_payoff, game_from_degree_rank
from .lattice import build_lattice, strict_pairs
from .values import MODES, ValueDomain, _parse_rational


def _require(doc: dict, key: str, kind: type, where: str = "game file") -> Any:
    if key not in doc:
        raise ParseError(f"{where} is missing {key!r}")
    if not isinstance(doc[key], kind):
        raise ParseError(f"{where}: {key!r} must be a {kind.__name__}")
    return doc[key]


def _parse_order(doc: dict, where: str):
    labels = _require(doc, "elements", list, where)
    if not all(isinstance(lab, str) for lab in labels):
        raise ParseError(f"{where}: element labels must be strings")
    order = _require(doc, "order", dict, where)
    kind = order.get("kind", "covers")
    if kind not in ("covers", "full"):
        raise ParseError(f"{where}: order kind must be 'covers' or 'full', got {kind!r}")
    pairs = _require(order, "pairs", list, f"{where} order")
    for p in pairs:
        if not (isinstance(p, list) and len(p) == 2 and all(isinstance(s, str) for s in p)):
            raise ParseError(f"{where}: malformed order pair {p!r}")
    return build_lattice(labels, [tuple(p) for p in pairs], kind)


def parse_domain(raw: Any) -> ValueDomain:
    if not isinstance(raw, dict):
        raise ParseError("value_domain must be an object")
    mode = raw.get("mode")
    if mode not in MODES:
        raise ParseError(f"unknown value-domain mode {mode!r}")
    if mode == "lex_tuple":
        length = raw.get("length")
        if not isinstance(length, int) or isinstance(length, bool) or length < 1:
            raise ParseError("lex_tuple domain needs a positive integer 'length'")
        domain = ValueDomain.lex_tuple(length)
    elif mode == "finite_poset":
        domain = ValueDomain.finite_poset(_parse_order(raw, "value_domain"))
    else:
        domain = ValueDomain(mode)
    if raw.get("reversed", False):
        domain = domain.dual()
    return domain


def parse_game(doc: Any) -> Game:
    """Build a game from a decoded JSON document."""
    if not isinstance(doc, dict):
        raise ParseError("a game file must be a JSON object")
    payoff = _require(doc, "payoff", dict)
    kind = payoff.get("kind")

    if kind == "module":
        factors = _require(payoff, "invariant_factors", list, "payoff")
        if not all(isinstance(f, int) and not isinstance(f, bool) for f in factors):
            raise ParseError("invariant_factors must be integers")
        return ass_payoff(FiniteAbelianModule(tuple(factors)))

    lattice = _parse_order(doc, "game file")
    domain = parse_domain(_require(doc, "value_domain", dict))

    if kind == "table":
        entries = _require(payoff, "entries", list, "payoff")
        table = {}
        for e in entries:
            if not (isinstance(e, list) and len(e) == 3 and isinstance(e[0], str) and isinstance(e[1], str)):
                raise ParseError(f"malformed payoff entry {e!r}")
            key = (lattice.index(e[0]), lattice.index(e[1]))
            if key in table:
                raise ParseError(f"duplicate payoff entry for ({e[0]}, {e[1]})")
            table[key] = domain.parse(e[2])
        return Game(lattice, domain, table)

    if kind == "degree_rank":
        degree = _require(payoff, "degree", dict, "payoff")
        rank = _require(payoff, "rank", dict, "payoff")
        data = DegreeRankData(
            {k: domain.parse(v) for k, v in degree.items()},
            {k: _parse_rational(v) for k, v in rank.items()},
        )
        return game_from_degree_rank(lattice, data, domain)

    raise ParseError(f"unknown payoff kind {kind!r}")


def dump_domain(domain: ValueDomain) -> dict:
    out: dict[str, Any] = {"mode": domain.mode}
    if domain.mode == "lex_tuple":
        out["length"] = domain.length
    if domain.mode == "finite_poset":
        lat = domain.lattice
        out["elements"] = list(lat.labels)
        out["order"] = {"kind": "covers",
                        "pairs": [[lat.label(a), lat.label(b)] for a, b in lat.covers()]}
    if domain.reversed:
        out["reversed"] = True
    return out


def dump_game(game: Game) -> dict:
    """A table-form document that :func:`parse_game` turns back into an equal game."""
    L, d = game.lattice, game.domain
    return {
        "elements": list(L.labels),
        "order": {"kind": "covers", "pairs": [[L.label(a), L.label(b)] for a, b in L.covers()]},
        "value_domain": dump_domain(d),
        "payoff": {
            "kind": "table",
            "entries": [[L.label(x), L.label(y), d.dump(game.payoff[(x, y)])]
                        for x, y in strict_pairs(L)],
        },
    }


def dumps_game(game: Game) -> str:
    return json.dumps(dump_game(game), indent=2, ensure_ascii=False) + "\n"


def loads_game(text: str) -> Game:
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ParseError(f"invalid JSON: {exc}") from None
    return parse_game(doc)


def load_game(path: Path | str) -> Game:
    try:
        text = Path(path).read_text(encoding="utf-8")
    except OSError as exc:
        raise ParseError(f"cannot read {path}: {exc}") from None
    return loads_game(text)
