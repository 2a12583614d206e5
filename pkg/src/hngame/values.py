"""Ordered pay-off codomains.

A pay-off value is one of

* ``POS_INF`` / ``NEG_INF`` (adjoined to every domain),
* :class:`fractions.Fraction` (``rational`` mode),
* :class:`LexTuple` (``lex_tuple`` mode; polynomial coefficients, highest first),
* :class:`PrimeSet` (``prime_set`` mode),
* :class:`PosetPoint` (``finite_poset`` mode; an element of a user lattice).

All arithmetic is exact. A :class:`ValueDomain` knows how to compare, take
finite suprema/infima, and (de)serialize the values of its mode.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass
from fractions import Fraction
from functools import reduce
from typing import Any, Iterable, Union

from .errors import EmptySet, ModeMismatch, ParseError
from .lattice import FiniteLattice


class Ordering(enum.Enum):
    LESS = "<"
    EQUAL = "="
    GREATER = ">"
    INCOMPARABLE = "incomparable"

    def flip(self) -> "Ordering":
        return _FLIP[self]


_FLIP = {
    Ordering.LESS: Ordering.GREATER,
    Ordering.GREATER: Ordering.LESS,
    Ordering.EQUAL: Ordering.EQUAL,
    Ordering.INCOMPARABLE: Ordering.INCOMPARABLE,
}


@dataclass(frozen=True)
class Extreme:
    sign: int

    def __repr__(self):
        return "+inf" if self.sign > 0 else "-inf"


POS_INF = Extreme(1)
NEG_INF = Extreme(-1)


@dataclass(frozen=True)
class LexTuple:
    """Coefficients ``(c_{k-1}, ..., c_0)`` ordered by eventual domination."""

    coords: tuple[Fraction, ...]

    def __post_init__(self):
        object.__setattr__(self, "coords", tuple(Fraction(c) for c in self.coords))

    def __sub__(self, other: "LexTuple") -> "LexTuple":
        return LexTuple(tuple(a - b for a, b in zip(self.coords, other.coords)))

    def __add__(self, other: "LexTuple") -> "LexTuple":
        return LexTuple(tuple(a + b for a, b in zip(self.coords, other.coords)))

    def scale(self, factor: Fraction) -> "LexTuple":
        return LexTuple(tuple(c * factor for c in self.coords))

    def sign(self) -> int:
        for c in self.coords:
            if c:
                return 1 if c > 0 else -1
        return 0


def is_prime(p: int) -> bool:
    if p < 2:
        return False
    d = 2
    while d * d <= p:
        if p % d == 0:
            return False
        d += 1
    return True


@dataclass(frozen=True)
class PrimeSet:
    """A finite set of primes; ordered descending-lexicographically."""

    primes: frozenset[int]

    def __post_init__(self):
        object.__setattr__(self, "primes", frozenset(self.primes))
        bad = [p for p in self.primes if not is_prime(p)]
        if bad:
            raise ValueError(f"not prime: {sorted(bad)}")

    @property
    def key(self) -> tuple[int, ...]:
        return tuple(sorted(self.primes, reverse=True))


@dataclass(frozen=True)
class PosetPoint:
    label: str


Value = Union[Extreme, Fraction, LexTuple, PrimeSet, PosetPoint]

MODES = ("rational", "lex_tuple", "prime_set", "finite_poset")


class ValueDomain:
    """The codomain of a pay-off function.

    ``reversed=True`` flips the order (used for dual games); suprema and
    infima swap accordingly.
    """

    def __init__(self, mode: str, *, length: int | None = None,
                 lattice: FiniteLattice | None = None, reversed: bool = False):
        if mode not in MODES:
            raise ValueError(f"unknown value-domain mode {mode!r}")
        if mode == "lex_tuple" and (length is None or length < 1):
            raise ValueError("lex_tuple mode needs a positive length")
        if mode == "finite_poset" and lattice is None:
            raise ValueError("finite_poset mode needs a value lattice")
        self.mode = mode
        self.length = length if mode == "lex_tuple" else None
        self.lattice = lattice if mode == "finite_poset" else None
        self.reversed = reversed

    @classmethod
    def rational(cls) -> "ValueDomain":
        return cls("rational")

    @classmethod
    def lex_tuple(cls, length: int) -> "ValueDomain":
        return cls("lex_tuple", length=length)

    @classmethod
    def prime_set(cls) -> "ValueDomain":
        return cls("prime_set")

    @classmethod
    def finite_poset(cls, lattice: FiniteLattice) -> "ValueDomain":
        return cls("finite_poset", lattice=lattice)

    @property
    def is_total(self) -> bool:
        return self.mode != "finite_poset"

    def dual(self) -> "ValueDomain":
        return ValueDomain(self.mode, length=self.length, lattice=self.lattice,
                           reversed=not self.reversed)

    def __eq__(self, other):
        if not isinstance(other, ValueDomain):
            return NotImplemented
        return (self.mode, self.length, self.lattice, self.reversed) == (
            other.mode, other.length, other.lattice, other.reversed)

    def __hash__(self):
        return hash((self.mode, self.length, self.reversed))

    def __repr__(self):
        extra = f", length={self.length}" if self.length else ""
        return f"ValueDomain({self.mode!r}{extra}{', reversed' if self.reversed else ''})"

    # -- membership ----------------------------------------------------
    def contains(self, v: Any) -> bool:
        if isinstance(v, Extreme):
            return True
        if self.mode == "rational":
            return isinstance(v, Fraction)
        if self.mode == "lex_tuple":
            return isinstance(v, LexTuple) and len(v.coords) == self.length
        if self.mode == "prime_set":
            return isinstance(v, PrimeSet)
        return isinstance(v, PosetPoint) and v.label in self.lattice.labels

    def check(self, v: Any) -> None:
        if not self.contains(v):
            raise ModeMismatch(f"{v!r} is not a value of {self!r}", witness=v)

    # -- order ---------------------------------------------------------
    def _base_compare(self, u: Value, v: Value) -> Ordering:
        if u == v:
            return Ordering.EQUAL
        if isinstance(u, Extreme) or isinstance(v, Extreme):
            su = u.sign if isinstance(u, Extreme) else 0
            sv = v.sign if isinstance(v, Extreme) else 0
            return Ordering.LESS if su < sv else Ordering.GREATER
        if self.mode == "rational":
            return Ordering.LESS if u < v else Ordering.GREATER
        if self.mode == "lex_tuple":
            return Ordering.LESS if u.coords < v.coords else Ordering.GREATER
        if self.mode == "prime_set":
            return Ordering.LESS if u.key < v.key else Ordering.GREATER
        lat = self.lattice
        i, j = lat.index(u.label), lat.index(v.label)
        if lat.leq(i, j):
            return Ordering.LESS
        if lat.leq(j, i):
            return Ordering.GREATER
        return Ordering.INCOMPARABLE

    def compare(self, u: Value, v: Value) -> Ordering:
        self.check(u)
        self.check(v)
        order = self._base_compare(u, v)
        return order.flip() if self.reversed else order

    def leq(self, u: Value, v: Value) -> bool:
        return self.compare(u, v) in (Ordering.LESS, Ordering.EQUAL)

    def lt(self, u: Value, v: Value) -> bool:
        return self.compare(u, v) is Ordering.LESS

    def gt(self, u: Value, v: Value) -> bool:
        return self.compare(u, v) is Ordering.GREATER

    def _base_join(self, u: Value, v: Value) -> Value:
        order = self._base_compare(u, v)
        if order is Ordering.INCOMPARABLE:
            lat = self.lattice
            return PosetPoint(lat.label(lat.join(lat.index(u.label), lat.index(v.label))))
        return v if order is Ordering.LESS else u

    def _base_meet(self, u: Value, v: Value) -> Value:
        order = self._base_compare(u, v)
        if order is Ordering.INCOMPARABLE:
            lat = self.lattice
            return PosetPoint(lat.label(lat.meet(lat.index(u.label), lat.index(v.label))))
        return u if order is Ordering.LESS else v

    def sup(self, vs: Iterable[Value]) -> Value:
        vs = list(vs)
        if not vs:
            raise EmptySet("supremum of an empty set")
        for v in vs:
            self.check(v)
        return reduce(self._base_meet if self.reversed else self._base_join, vs)

    def inf(self, vs: Iterable[Value]) -> Value:
        vs = list(vs)
        if not vs:
            raise EmptySet("infimum of an empty set")
        for v in vs:
            self.check(v)
        return reduce(self._base_join if self.reversed else self._base_meet, vs)

    # -- serialization -------------------------------------------------
    def parse(self, raw: Any) -> Value:
        """Read a value from its JSON representation."""
        if raw == "+inf":
            return POS_INF
        if raw == "-inf":
            return NEG_INF
        try:
            if self.mode == "rational":
                return _parse_rational(raw)
            if self.mode == "lex_tuple":
                if not isinstance(raw, list) or len(raw) != self.length:
                    raise ParseError(f"expected a list of {self.length} rationals, got {raw!r}")
                return LexTuple(tuple(_parse_rational(c) for c in raw))
            if self.mode == "prime_set":
                if not isinstance(raw, list) or not all(
                        isinstance(p, int) and not isinstance(p, bool) for p in raw):
                    raise ParseError(f"expected a list of primes, got {raw!r}")
                if len(set(raw)) != len(raw):
                    raise ParseError(f"repeated prime in {raw!r}")
                return PrimeSet(frozenset(raw))
            if not isinstance(raw, str) or raw not in self.lattice.labels:
                raise ParseError(f"{raw!r} is not an element of the value lattice")
            return PosetPoint(raw)
        except ValueError as exc:
            raise ParseError(str(exc)) from None

    def dump(self, v: Value) -> Any:
        """JSON representation of a value (inverse of :meth:`parse`)."""
        if isinstance(v, Extreme):
            return repr(v)
        if isinstance(v, Fraction):
            return str(v)
        if isinstance(v, LexTuple):
            return [str(c) for c in v.coords]
        if isinstance(v, PrimeSet):
            return sorted(v.primes)
        return v.label

    def format(self, v: Value) -> str:
        """Human-readable rendering."""
        if isinstance(v, Extreme):
            return repr(v)
        if isinstance(v, Fraction):
            return str(v)
        if isinstance(v, LexTuple):
            return "(" + ", ".join(str(c) for c in v.coords) + ")"
        if isinstance(v, PrimeSet):
            return "{" + ",".join(str(p) for p in sorted(v.primes)) + "}"
        return v.label


def _parse_rational(raw: Any) -> Fraction:
    if isinstance(raw, bool) or isinstance(raw, float):
        raise ParseError(f"rationals must be integers or 'p/q' strings, got {raw!r}")
    if isinstance(raw, int):
        return Fraction(raw)
    if isinstance(raw, str):
        try:
            return Fraction(raw.strip())
        except (ValueError, ZeroDivisionError):
            raise ParseError(f"malformed rational {raw!r}") from None
    raise ParseError(f"malformed rational {raw!r}")


def compare(domain: ValueDomain, u: Value, v: Value) -> Ordering:
    return domain.compare(u, v)


def sup(domain: ValueDomain, vs: Iterable[Value]) -> Value:
    return domain.sup(vs)


def inf(domain: ValueDomain, vs: Iterable[Value]) -> Value:
    return domain.inf(vs)
