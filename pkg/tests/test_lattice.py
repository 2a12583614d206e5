import pytest
from hypothesis import given, settings

from hngame.errors import DuplicateLabel, NotALattice, NotAPartialOrder, NotStrictlyOrdered, TrivialLattice, UnknownLabel
from hngame.lattice import build_lattice, interval, strict_pairs, transitive_closure

from conftest import chain, cube, lattices


def test_three_chain_meet_join():
    L = chain(3)
    bot, x, top = L.bottom, L.index("c1"), L.top
    assert L.meet(bot, top) == bot
    assert L.join(bot, x) == x
    assert (L.label(bot), L.label(top)) == ("c0", "c2")


def test_two_chain_is_minimal():
    L = build_lattice(["⊥", "⊤"], [("⊥", "⊤")])
    assert L.n == 2 and L.covers() == [(0, 1)]


def test_cube_meet_is_intersection_join_is_union():
    L = cube()
    sets = {"∅": set(), "{p}": {"p"}, "{q}": {"q"}, "{p,q}": {"p", "q"}}
    by_set = {frozenset(v): k for k, v in sets.items()}
    for a in sets:
        for b in sets:
            i, j = L.index(a), L.index(b)
            assert L.label(L.meet(i, j)) == by_set[frozenset(sets[a] & sets[b])]
            assert L.label(L.join(i, j)) == by_set[frozenset(sets[a] | sets[b])]


def test_full_order_input_matches_covers():
    full = build_lattice(["a", "b", "c"], [("a", "b"), ("b", "c"), ("a", "c")], "full")
    covers = build_lattice(["a", "b", "c"], [("a", "b"), ("b", "c")])
    assert full == covers
    assert transitive_closure([0b010, 0b100, 0]) == [0b111, 0b110, 0b100]


def test_errors():
    with pytest.raises(NotALattice):
        build_lattice(["a", "b"], [])
    with pytest.raises(TrivialLattice):
        build_lattice(["a"], [])
    with pytest.raises(NotAPartialOrder):
        build_lattice(["a", "b", "c"], [("a", "b"), ("b", "a"), ("a", "c"), ("b", "c")])
    with pytest.raises(DuplicateLabel):
        build_lattice(["a", "a"], [])
    with pytest.raises(UnknownLabel):
        build_lattice(["a", "b"], [("a", "z")])
    with pytest.raises(ValueError):
        build_lattice(["a", "b"], [("a", "b")], "hasse")


def test_no_unique_join():
    # two maximal elements below a top are fine; two incomparable uppers of a,b are not
    labels = ["0", "a", "b", "c", "d", "1"]
    covers = [("0", "a"), ("0", "b"), ("a", "c"), ("a", "d"), ("b", "c"), ("b", "d"), ("c", "1"), ("d", "1")]
    with pytest.raises(NotALattice) as exc:
        build_lattice(labels, covers)
    assert set(exc.value.witness) in ({"a", "b"}, {"c", "d"})


def test_strict_pairs_counts():
    assert strict_pairs(chain(2)) == [(0, 1)]
    assert set(strict_pairs(chain(3))) == {(0, 1), (1, 2), (0, 2)}
    assert len(strict_pairs(cube())) == 5


def test_interval_examples():
    L = chain(3)
    assert interval(L, L.bottom, L.top).members == (0, 1, 2)
    assert interval(L, 1, 2).members == (1, 2)
    C = cube()
    iv = interval(C, C.index("∅"), C.index("{p}"))
    assert [C.label(m) for m in iv.members] == ["∅", "{p}"]
    with pytest.raises(NotStrictlyOrdered):
        interval(C, C.index("{p}"), C.index("{q}"))
    with pytest.raises(NotStrictlyOrdered):
        interval(C, 0, 0)


def test_dual_swaps_order():
    C = cube()
    D = C.dual()
    assert D.bottom == C.top and D.top == C.bottom
    assert all(D.leq(y, x) == C.leq(x, y) for x in range(4) for y in range(4))
    assert D.dual() == C


@settings(max_examples=60, deadline=None)
@given(lattices(max_size=4))
def test_meet_join_are_glb_lub(L):
    for x in range(L.n):
        assert L.leq(L.bottom, x) and L.leq(x, L.top)
        for y in range(L.n):
            m, j = L.meet(x, y), L.join(x, y)
            assert L.leq(m, x) and L.leq(m, y) and L.leq(x, j) and L.leq(y, j)
            for z in range(L.n):
                if L.leq(z, x) and L.leq(z, y):
                    assert L.leq(z, m)
                if L.leq(x, z) and L.leq(y, z):
                    assert L.leq(j, z)


@settings(max_examples=40, deadline=None)
@given(lattices(max_size=3))
def test_lattice_axioms(L):
    r = range(L.n)
    for x in r:
        assert L.meet(x, x) == x == L.join(x, x)
        for y in r:
            assert L.meet(x, y) == L.meet(y, x)
            assert L.join(x, L.meet(x, y)) == x == L.meet(x, L.join(x, y))
            for z in r:
                assert L.meet(L.meet(x, y), z) == L.meet(x, L.meet(y, z))
                assert L.join(L.join(x, y), z) == L.join(x, L.join(y, z))


@settings(max_examples=40, deadline=None)
@given(lattices(max_size=4))
def test_intervals_inherit_meet_join(L):
    pairs = set(strict_pairs(L))
    for x, y in pairs:
        iv = interval(L, x, y)
        sub = iv.as_lattice()
        m = iv.members
        for i in range(sub.n):
            for j in range(sub.n):
                assert m[sub.meet(i, j)] == L.meet(m[i], m[j])
                assert m[sub.join(i, j)] == L.join(m[i], m[j])
        assert {(m[a], m[b]) for a, b in strict_pairs(sub)} <= pairs
        assert len(strict_pairs(sub)) == sum(sub.leq(a, b) for a in range(sub.n) for b in range(sub.n)) - sub.n
