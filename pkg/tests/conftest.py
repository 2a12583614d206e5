from fractions import Fraction
from pathlib import Path

import pytest
from hypothesis import strategies as st

from hngame.engine import Game
from hngame.gamefile import load_game
from hngame.lattice import build_lattice, strict_pairs
from hngame.oracle import RandomInstanceConfig, random_downset_lattice
from hngame.values import ValueDomain

FIXTURES = Path(__file__).resolve().parent.parent / "fixtures"
Q = Fraction


@pytest.fixture
def fixture_game():
    return lambda name: load_game(FIXTURES / name)


def chain(n):
    labels = [f"c{i}" for i in range(n)]
    return build_lattice(labels, list(zip(labels, labels[1:])))


def cube():
    return build_lattice(["∅", "{p}", "{q}", "{p,q}"],
                         [("∅", "{p}"), ("∅", "{q}"), ("{p}", "{p,q}"), ("{q}", "{p,q}")])


def table_game(lattice, values, domain=None):
    """Game with ``values[(xlabel, ylabel)]``."""
    idx = lattice.index
    return Game(lattice, domain or ValueDomain.rational(),
                {(idx(a), idx(b)): v for (a, b), v in values.items()})


def three_chain(a, b, c, domain=None):
    L = build_lattice(["⊥", "x", "⊤"], [("⊥", "x"), ("x", "⊤")])
    return table_game(L, {("⊥", "x"): a, ("x", "⊤"): b, ("⊥", "⊤"): c}, domain)


def four_chain(a, b, c, d, e, f):
    L = build_lattice(["⊥", "x", "y", "⊤"], [("⊥", "x"), ("x", "y"), ("y", "⊤")])
    return table_game(L, {("⊥", "x"): a, ("x", "y"): b, ("y", "⊤"): c,
                          ("⊥", "y"): d, ("x", "⊤"): e, ("⊥", "⊤"): f})


rationals = st.builds(Fraction, st.integers(-6, 6), st.integers(1, 4))


@st.composite
def lattices(draw, max_size=4):
    cfg = RandomInstanceConfig(seed=draw(st.integers(0, 10**6)),
                               poset_size=draw(st.integers(1, max_size)),
                               relation_density=draw(st.sampled_from([0.0, 0.3, 0.6])))
    return random_downset_lattice(cfg)


@st.composite
def table_games(draw, max_size=3, values=rationals):
    L = draw(lattices(max_size))
    pairs = strict_pairs(L)
    vs = draw(st.lists(values, min_size=len(pairs), max_size=len(pairs)))
    return Game(L, ValueDomain.rational(), dict(zip(pairs, vs)))


def pytest_terminal_summary(terminalreporter):
    import sys
    mod = sys.modules.get("test_acceptance")
    results = getattr(mod, "RESULTS", None)
    if results:
        terminalreporter.section("acceptance criteria")
        for n in sorted(results):
            terminalreporter.write_line(results[n])
