from fractions import Fraction

from hngame.dot import to_dot
from hngame.engine import hn_filtration
from hngame.gamefile import load_game
from hngame.lattice import build_lattice

from conftest import FIXTURES, table_game


def edges(text):
    return [line for line in text.splitlines() if "->" in line]


def nodes(text):
    return [line for line in text.splitlines() if line.strip().startswith('"') and "->" not in line]


def test_three_node():
    g = load_game(FIXTURES / "three_node.json")
    text = to_dot(g)
    assert len(nodes(text)) == 3
    assert edges(text) == ['  "x" -> "⊤" [label="2"];', '  "⊥" -> "x" [label="1"];']


def test_two_chain():
    text = to_dot(load_game(FIXTURES / "two_chain.json"))
    assert len(nodes(text)) == 2 and len(edges(text)) == 1


def test_module_highlights_coprimary_chain():
    g = load_game(FIXTURES / "module_12.json")
    text = to_dot(g, hn_filtration(g))
    assert len(nodes(text)) == 6 and len(edges(text)) == 7
    doubled = sorted(line.split('"')[1] for line in nodes(text) if "peripheries=2" in line)
    assert doubled == ["0", "M", "⟨4⟩"]
    assert 'label="step 1: {3}";' in text and 'label="step 2: {2}";' in text


def test_deterministic():
    g = load_game(FIXTURES / "cube_degree_rank.json")
    assert to_dot(g, hn_filtration(g)) == to_dot(load_game(FIXTURES / "cube_degree_rank.json"),
                                                 hn_filtration(g))


def test_quoting():
    L = build_lattice(['a"b', "c\\d"], [('a"b', "c\\d")])
    text = to_dot(table_game(L, {('a"b', "c\\d"): Fraction(1)}))
    assert '"a\\"b" -> "c\\\\d"' in text
