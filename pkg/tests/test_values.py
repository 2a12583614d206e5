from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from hngame.errors import EmptySet, ModeMismatch, ParseError
from hngame.values import (
    NEG_INF,
    POS_INF,
    LexTuple,
    Ordering,
    PosetPoint,
    PrimeSet,
    ValueDomain,
    compare,
    inf,
    sup,
)

from conftest import cube, rationals

Q = Fraction
RAT = ValueDomain.rational()
PRIMES = ValueDomain.prime_set()
LEX2 = ValueDomain.lex_tuple(2)


def diamond():
    return ValueDomain.finite_poset(cube())


def test_compare_examples():
    assert compare(RAT, Q(1, 2), Q(2, 3)) is Ordering.LESS
    assert compare(PRIMES, PrimeSet({2}), PrimeSet({2, 3})) is Ordering.LESS
    assert compare(PRIMES, PrimeSet({2}), PrimeSet({3})) is Ordering.LESS
    assert compare(LEX2, LexTuple((1, 5)), LexTuple((2, 0))) is Ordering.LESS
    d = diamond()
    assert d.compare(PosetPoint("{p}"), PosetPoint("{q}")) is Ordering.INCOMPARABLE


def test_extremes_bracket_everything():
    for d, v in [(RAT, Q(10**9)), (LEX2, LexTuple((5, 5))), (PRIMES, PrimeSet({997})),
                 (diamond(), PosetPoint("{p,q}"))]:
        assert d.lt(NEG_INF, v) and d.lt(v, POS_INF)


def test_sup_inf_examples():
    assert sup(RAT, [Q(1), Q(0), POS_INF]) == POS_INF
    a, b, c = Q(1), Q(3), Q(2)
    assert inf(RAT, [sup(RAT, [a, c]), b]) == Q(2)
    d = diamond()
    assert d.sup([PosetPoint("{p}"), PosetPoint("{q}")]) == PosetPoint("{p,q}")
    assert d.inf([PosetPoint("{p}"), PosetPoint("{q}")]) == PosetPoint("∅")
    with pytest.raises(EmptySet):
        sup(RAT, [])
    with pytest.raises(EmptySet):
        inf(RAT, [])


def test_mode_mismatch():
    with pytest.raises(ModeMismatch):
        RAT.compare(Q(1), LexTuple((1, 2)))
    with pytest.raises(ModeMismatch):
        LEX2.compare(LexTuple((1, 2)), LexTuple((1, 2, 3)))
    with pytest.raises(ModeMismatch):
        PRIMES.sup([PrimeSet({2}), Q(1)])


def test_reversed_domain_flips():
    r = RAT.dual()
    assert r.lt(Q(2), Q(1))
    assert r.sup([Q(1), Q(2)]) == Q(1)
    assert r.lt(POS_INF, NEG_INF)
    assert r.dual() == RAT


def test_prime_set_rejects_composites():
    with pytest.raises(ValueError):
        PrimeSet({4})


def test_parse_and_dump_round_trip():
    cases = [(RAT, "3/4"), (RAT, "-2"), (RAT, "+inf"), (LEX2, ["1", "-1/2"]),
             (PRIMES, [2, 5]), (diamond(), "{p}")]
    for d, raw in cases:
        assert d.dump(d.parse(raw)) == raw
    assert RAT.parse(7) == Q(7)


@pytest.mark.parametrize("d,raw", [
    (RAT, 0.5), (RAT, True), (RAT, "1/0"), (RAT, "x"), (RAT, None),
    (LEX2, ["1"]), (LEX2, "1"),
    (PRIMES, [2, 2]), (PRIMES, [4]), (PRIMES, "2"),
])
def test_parse_errors(d, raw):
    with pytest.raises(ParseError):
        d.parse(raw)


def test_parse_unknown_poset_label():
    with pytest.raises(ParseError):
        diamond().parse("zz")


def test_format():
    assert RAT.format(Q(1, 2)) == "1/2"
    assert LEX2.format(LexTuple((1, 5))) == "(1, 5)"
    assert PRIMES.format(PrimeSet({3, 2})) == "{2,3}"
    assert RAT.format(NEG_INF) == "-inf"


# -- properties --------------------------------------------------------------

extended = st.one_of(rationals, st.sampled_from([POS_INF, NEG_INF]))
lex_values = st.builds(lambda cs: LexTuple(tuple(cs)), st.lists(rationals, min_size=3, max_size=3))
small_primes = [2, 3, 5, 7, 11, 13]
prime_sets = st.builds(PrimeSet, st.frozensets(st.sampled_from(small_primes), max_size=4))
poset_points = st.sampled_from([PosetPoint(x) for x in ("∅", "{p}", "{q}", "{p,q}")])

DOMAINS = [
    (RAT, extended),
    (ValueDomain.lex_tuple(3), lex_values),
    (PRIMES, prime_sets),
    (diamond(), poset_points),
]


@pytest.mark.parametrize("d,values", DOMAINS, ids=["rational", "lex", "primes", "poset"])
def test_compare_is_a_partial_order(d, values):
    @settings(max_examples=150, deadline=None)
    @given(values, values, values)
    def check(u, v, w):
        o = d.compare(u, v)
        assert d.compare(v, u) is o.flip()
        assert (o is Ordering.EQUAL) == (u == v)
        if d.is_total:
            assert o is not Ordering.INCOMPARABLE
        if d.leq(u, v) and d.leq(v, w):
            assert d.leq(u, w)

    check()


@pytest.mark.parametrize("d,values", DOMAINS, ids=["rational", "lex", "primes", "poset"])
def test_sup_inf_are_bounds(d, values):
    @settings(max_examples=100, deadline=None)
    @given(st.lists(values, min_size=1, max_size=4), values)
    def check(vs, other):
        s, i = d.sup(vs), d.inf(vs)
        assert all(d.leq(v, s) and d.leq(i, v) for v in vs)
        if all(d.leq(v, other) for v in vs):
            assert d.leq(s, other)
        if all(d.leq(other, v) for v in vs):
            assert d.leq(other, i)
        assert d.sup(vs[::-1]) == s and d.sup(vs + vs) == s

    check()


@settings(max_examples=200, deadline=None)
@given(prime_sets, prime_sets)
def test_prime_order_extends_inclusion(a, b):
    if a.primes <= b.primes:
        assert PRIMES.leq(a, b)
    if len(a.primes) == len(b.primes) == 1:
        assert PRIMES.leq(a, b) == (min(a.primes) <= min(b.primes))


@settings(max_examples=200, deadline=None)
@given(lex_values, lex_values)
def test_lex_order_is_eventual_domination(u, v):
    # the difference polynomial's sign at a large argument decides the order
    diff = [a - b for a, b in zip(u.coords, v.coords)]
    bound = 1 + sum(abs(c) for c in diff) / min((abs(c) for c in diff if c), default=1)
    t = int(bound) + 1
    value = sum(c * t ** (len(diff) - 1 - k) for k, c in enumerate(diff))
    expected = Ordering.EQUAL if value == 0 else (Ordering.LESS if value < 0 else Ordering.GREATER)
    assert ValueDomain.lex_tuple(3).compare(u, v) is expected
