"""Graphviz DOT rendering of a game's Hasse diagram."""

from __future__ import annotations

from .engine import Filtration, Game


def _quote(s: str) -> str:
    return '"' + s.replace("\\", "\\\\").replace('"', '\\"') + '"'


def to_dot(game: Game, filtration: Filtration | None = None, name: str = "game") -> str:
    """Hasse diagram with covers labelled by pay-off.

    Elements of ``filtration`` get a double border; each step's slope is shown
    as a cluster around the step's top element. Output is sorted by label.
    """
    L, d = game.lattice, game.domain
    on_chain = set(filtration.chain) if filtration else set()
    lines = [f"digraph {_quote(name)} {{", "  rankdir=BT;", "  node [shape=ellipse];"]

    step_of = {}
    if filtration:
        for i, (b, s) in enumerate(zip(filtration.chain[1:], filtration.slopes), start=1):
            step_of[b] = (i, s)

    for x in sorted(range(L.n), key=L.label):
        attrs = "peripheries=2" if x in on_chain else ""
        node = f"{_quote(L.label(x))}" + (f" [{attrs}]" if attrs else "") + ";"
        if x in step_of:
            i, s = step_of[x]
            lines.append(f"  subgraph {_quote(f'cluster_step{i}')} {{")
            lines.append(f"    label={_quote(f'step {i}: {d.format(s)}')};")
            lines.append(f"    {node}")
            lines.append("  }")
        else:
            lines.append(f"  {node}")

    for a, b in sorted(L.covers(), key=lambda e: (L.label(e[0]), L.label(e[1]))):
        weight = d.format(game.payoff[(a, b)])
        lines.append(f"  {_quote(L.label(a))} -> {_quote(L.label(b))} [label={_quote(weight)}];")
    lines.append("}")
    return "\n".join(lines) + "\n"
