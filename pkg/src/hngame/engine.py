"""Harder-Narasimhan games on finite bounded lattices.

Alice picks ``x``, Bob picks ``y > x`` (or Bob goes first); Alice minimizes the
pay-off ``mu(x, y)``, Bob maximizes it. Everything here is computed exactly
from three dynamic-programming tables built once per game:

* ``mu_max(a, y) = sup { mu(a, b) : a < b <= y }``
* ``mu_min(x, y) = inf { mu(w, y) : x <= w < y }``
* ``mu_A(x, y)  = inf { mu_max(a, y) : x <= a < y }``

``mu_A(x, y)`` only looks at elements of ``[x, y]``, so it is the optimal
threshold of the game restricted to that interval. Chain conditions needed on
infinite lattices hold trivially here and are not checked.
"""

from __future__ import annotations

import builtins
from dataclasses import dataclass, field
from typing import Iterable, Mapping, Sequence

from .errors import (
    InfiniteTopSlope,
    InvariantViolation,
    MissingWeight,
    NoGreatestDestabilizer,
    NotAChain,
    NotConvex,
    NotSemistable,
    NotSlopeLike,
    NotStrictlyOrdered,
    PartialDomainUnsupported,
    TopNotAllowed,
    UnexpectedWeight,
)
from .lattice import FiniteLattice, interval, strict_pairs
from .values import POS_INF, Ordering, Value, ValueDomain


class Game:
    """A lattice, a value domain, and a pay-off on every strictly ordered pair.

    ``payoff`` is keyed by index pairs ``(x, y)`` with ``x < y``. Tables are
    built lazily and never mutated afterwards.
    """

    def __init__(self, lattice: FiniteLattice, domain: ValueDomain,
                 payoff: Mapping[tuple[int, int], Value]):
        self.lattice = lattice
        self.domain = domain
        pairs = strict_pairs(lattice)
        for x, y in pairs:
            if (x, y) not in payoff:
                raise MissingWeight(
                    f"no pay-off for ({lattice.label(x)}, {lattice.label(y)})",
                    witness=(lattice.label(x), lattice.label(y)),
                )
        if len(payoff) != len(pairs):
            extra = next(k for k in payoff if not (len(k) == 2 and lattice.lt(*k)))
            raise UnexpectedWeight(f"pay-off given on non-strict pair {extra!r}", witness=extra)
        for v in payoff.values():
            domain.check(v)
        self.payoff: dict[tuple[int, int], Value] = {p: payoff[p] for p in pairs}
        self._tables: dict[str, dict] | None = None

    def __eq__(self, other):
        if not isinstance(other, Game):
            return NotImplemented
        return (self.lattice, self.domain, self.payoff) == (other.lattice, other.domain, other.payoff)

    __hash__ = None

    def __repr__(self):
        return f"Game(n={self.lattice.n}, domain={self.domain!r})"

    @property
    def bottom(self) -> int:
        return self.lattice.bottom

    @property
    def top(self) -> int:
        return self.lattice.top

    def label(self, x: int) -> str:
        return self.lattice.label(x)

    def mu(self, x: int, y: int) -> Value:
        self._require_lt(x, y)
        return self.payoff[(x, y)]

    # -- tables ---------------------------------------------------------
    def _require_lt(self, x: int, y: int) -> None:
        if not self.lattice.lt(x, y):
            raise NotStrictlyOrdered(
                f"{self.label(x)!r} is not strictly below {self.label(y)!r}",
                witness=(self.label(x), self.label(y)),
            )

    @property
    def tables(self) -> dict[str, dict]:
        if self._tables is None:
            mu_max = self._build_mu_max()
            self._tables = {
                "mu_max": mu_max,
                "mu_min": self._build_mu_min(),
                "mu_A": self._build_mu_A(mu_max),
            }
        return self._tables

    def _build_mu_max(self) -> dict:
        L, d, p = self.lattice, self.domain, self.payoff
        return {
            (a, y): d.sup(p[(a, b)] for b in L.members(a, y) if b != a)
            for a, y in p
        }

    def _build_mu_min(self) -> dict:
        L, d, p = self.lattice, self.domain, self.payoff
        return {
            (x, y): d.inf(p[(w, y)] for w in L.members(x, y) if w != y)
            for x, y in p
        }

    def _build_mu_A(self, mu_max: dict) -> dict:
        L, d = self.lattice, self.domain
        return {
            (x, y): d.inf(mu_max[(a, y)] for a in L.members(x, y) if a != y)
            for x, y in self.payoff
        }

    def mu_max(self, x: int, y: int) -> Value:
        self._require_lt(x, y)
        return self.tables["mu_max"][(x, y)]

    def mu_min(self, x: int, y: int) -> Value:
        self._require_lt(x, y)
        return self.tables["mu_min"][(x, y)]

    def mu_A(self, x: int, y: int) -> Value:
        self._require_lt(x, y)
        return self.tables["mu_A"][(x, y)]


@dataclass(frozen=True)
class Check:
    """Outcome of a predicate; falsy on failure, with a witness."""

    ok: bool
    witness: tuple | None = None
    message: str = ""

    def __bool__(self):
        return self.ok


@dataclass(frozen=True)
class Filtration:
    """A chain ``bottom = a0 < a1 < ... < an = top`` with step thresholds."""

    chain: tuple[int, ...]
    slopes: tuple[Value, ...]
    lattice: FiniteLattice = field(compare=False, repr=False)

    @property
    def labels(self) -> tuple[str, ...]:
        return tuple(self.lattice.label(a) for a in self.chain)

    def __len__(self):
        return len(self.slopes)


@dataclass(frozen=True)
class GameReport:
    muA_star: Value
    muB_star: Value
    mu_top: Value
    mu_max_top: Value
    mu_min_top: Value
    st_set: frozenset[int]
    flags: dict[str, bool | None]
    statements: dict[str, bool]
    first_mover: Ordering


# -- thresholds -----------------------------------------------------------

def possible_payoffs(game: Game, x: int) -> frozenset:
    """Pay-offs Bob can reach after Alice picks ``x``."""
    if x == game.top:
        raise TopNotAllowed("Alice cannot pick the top element", witness=game.label(x))
    return frozenset(game.payoff[(x, y)] for y in game.lattice.strictly_above(x))


def mu_max(game: Game, x: int, y: int) -> Value:
    return game.mu_max(x, y)


def mu_min(game: Game, x: int, y: int) -> Value:
    return game.mu_min(x, y)


def mu_A(game: Game, x: int, y: int) -> Value:
    return game.mu_A(x, y)


def mu_A_attained(game: Game, x: int, y: int) -> bool:
    """Whether some ``a`` in ``[x, y)`` realizes the infimum defining ``mu_A(x, y)``.

    Always true for totally ordered domains; meaningful in ``finite_poset`` mode.
    """
    target = game.mu_A(x, y)
    mm = game.tables["mu_max"]
    return any(mm[(a, y)] == target for a in game.lattice.members(x, y) if a != y)


def mu_A_star(game: Game) -> Value:
    return game.mu_A(game.bottom, game.top)


def mu_B_star(game: Game) -> Value:
    L = game.lattice
    return game.domain.sup(game.mu_min(L.bottom, y) for y in L.strictly_above(L.bottom))


# -- derived games ----------------------------------------------------------

def restrict(game: Game, x: int, y: int) -> Game:
    """The game on the interval ``[x, y]`` (elements keep their labels)."""
    iv = interval(game.lattice, x, y)
    sub = iv.as_lattice()
    payoff = {
        (i, j): game.payoff[(iv.members[i], iv.members[j])]
        for i, j in strict_pairs(sub)
    }
    return Game(sub, game.domain, payoff)


def dualize(game: Game) -> Game:
    """Reverse both orders and transpose the pay-off."""
    payoff = {(y, x): v for (x, y), v in game.payoff.items()}
    return Game(game.lattice.dual(), game.domain.dual(), payoff)


def mu_max_game(game: Game) -> Game:
    """The game whose pay-off is ``mu_max`` of ``game``."""
    return Game(game.lattice, game.domain, dict(game.tables["mu_max"]))


# -- predicates ---------------------------------------------------------------

def _incomparable_pairs(L: FiniteLattice) -> Iterable[tuple[int, int]]:
    for x in range(L.n):
        for y in range(L.n):
            if x != y and not L.leq(x, y) and not L.leq(y, x):
                yield x, y


def is_convex(game: Game) -> Check:
    """``mu(x & y, x) <= mu(y, x | y)`` whenever ``x`` is not below ``y``.

    Pairs with ``y < x`` satisfy this trivially, so only incomparable pairs
    are examined.
    """
    L, d, p = game.lattice, game.domain, game.payoff
    for x, y in _incomparable_pairs(L):
        if not d.leq(p[(L.meet(x, y), x)], p[(y, L.join(x, y))]):
            return Check(False, (L.label(x), L.label(y)),
                         f"mu({L.label(L.meet(x, y))},{L.label(x)}) > "
                         f"mu({L.label(y)},{L.label(L.join(x, y))})")
    return Check(True)


def is_affine(game: Game) -> Check:
    L, d, p = game.lattice, game.domain, game.payoff
    for x, y in _incomparable_pairs(L):
        if d.compare(p[(L.meet(x, y), x)], p[(y, L.join(x, y))]) is not Ordering.EQUAL:
            return Check(False, (L.label(x), L.label(y)))
    if not is_convex(game):
        raise InvariantViolation("affine pay-off reported non-convex")
    return Check(True)


def is_slope_like(game: Game) -> Check:
    """Every ``x < y < z`` has ``mu(x,y), mu(x,z), mu(y,z)`` strictly monotone or constant."""
    d = game.domain
    if not d.is_total:
        raise PartialDomainUnsupported("slope-likeness needs a totally ordered value domain")
    L, p = game.lattice, game.payoff
    for x in range(L.n):
        for z in L.strictly_above(x):
            xz = p[(x, z)]
            for y in L.members(x, z):
                if y == x or y == z:
                    continue
                first = d.compare(p[(x, y)], xz)
                if first is not d.compare(xz, p[(y, z)]):
                    return Check(False, (L.label(x), L.label(y), L.label(z)))
    return Check(True)


def _st_from(game: Game, base: int) -> set[int]:
    """St of the game restricted to ``[base, top]``, as ambient indices."""
    L, d = game.lattice, game.domain
    above = L.strictly_above(base)
    table = game.tables["mu_A"]
    val = {z: table[(base, z)] for z in above}
    out = set()
    for x in above:
        ok = True
        for y in above:
            order = d.compare(val[y], val[x])
            if order is Ordering.GREATER or (order is Ordering.EQUAL and not L.leq(y, x)):
                ok = False
                break
        if ok:
            out.add(x)
    return out


def st_set(game: Game) -> frozenset[int]:
    """Elements ``x != bottom`` that maximize ``mu_A(bottom, .)`` with all ties below ``x``."""
    return frozenset(_st_from(game, game.bottom))


def _semistable_between(game: Game, lo: int, hi: int) -> Check:
    d, table = game.domain, game.tables["mu_A"]
    ref = table[(lo, hi)]
    for z in game.lattice.members(lo, hi):
        if z != lo and d.gt(table[(lo, z)], ref):
            return Check(False, (game.label(z),),
                         f"mu_A({game.label(lo)},{game.label(z)}) > mu_A({game.label(lo)},{game.label(hi)})")
    return Check(True)


def is_semistable(game: Game) -> Check:
    return _semistable_between(game, game.bottom, game.top)


def is_stable(game: Game) -> Check:
    """Semistable, and no proper element ties with the top threshold.

    Ties are only looked for on elements other than bottom and top.
    """
    semi = is_semistable(game)
    if not semi:
        return semi
    L, d = game.lattice, game.domain
    ref = game.mu_A(L.bottom, L.top)
    for x in L.strictly_above(L.bottom):
        if x != L.top and d.compare(game.mu_A(L.bottom, x), ref) is Ordering.EQUAL:
            return Check(False, (L.label(x),), "proper element attains mu_A(top)")
    return Check(True)


# -- filtrations ----------------------------------------------------------------

def _filtration(game: Game, chain: Sequence[int]) -> Filtration:
    slopes = tuple(game.mu_A(a, b) for a, b in zip(chain, chain[1:]))
    return Filtration(tuple(chain), slopes, game.lattice)


def hn_filtration(game: Game) -> Filtration:
    """The Harder-Narasimhan filtration.

    Each step jumps to the greatest element of St of the game restricted to
    ``[current, top]``.
    """
    convex = is_convex(game)
    if not convex:
        raise NotConvex(f"pay-off is not convex at {convex.witness}: {convex.message}",
                        witness=convex.witness)
    L = game.lattice
    chain = [L.bottom]
    while chain[-1] != L.top:
        st = _st_from(game, chain[-1])
        greatest = [s for s in st if all(L.leq(t, s) for t in st)]
        if not greatest:
            maximal = sorted(L.label(s) for s in st if not any(L.lt(s, t) for t in st))
            raise NoGreatestDestabilizer(
                f"St above {L.label(chain[-1])!r} has no greatest element; maximal: {maximal}",
                witness=tuple(maximal),
            )
        chain.append(greatest[0])
    return _filtration(game, chain)


def _as_chain(game: Game, chain: Filtration | Sequence[int]) -> list[int]:
    seq = list(chain.chain if isinstance(chain, Filtration) else chain)
    L = game.lattice
    if len(seq) < 2 or seq[0] != L.bottom or seq[-1] != L.top:
        raise NotAChain("a filtration must run from bottom to top", witness=tuple(seq))
    for a, b in zip(seq, seq[1:]):
        if not L.lt(a, b):
            raise NotAChain(f"{L.label(a)!r} is not strictly below {L.label(b)!r}",
                            witness=(L.label(a), L.label(b)))
    return seq


def verify_filtration(game: Game, chain: Filtration | Sequence[int]) -> Check:
    """Semistable steps with successive thresholds pairwise not increasing.

    In a totally ordered domain "not <=" is strict decrease.
    """
    seq = _as_chain(game, chain)
    d = game.domain
    for i, (a, b) in enumerate(zip(seq, seq[1:]), start=1):
        step = _semistable_between(game, a, b)
        if not step:
            return Check(False, (i,), f"step {i} [{game.label(a)},{game.label(b)}] is not semistable: "
                                      f"{step.message}")
    slopes = [game.mu_A(a, b) for a, b in zip(seq, seq[1:])]
    for i in range(1, len(slopes)):
        if d.leq(slopes[i - 1], slopes[i]):
            return Check(False, (i + 1,), f"slope of step {i + 1} ({d.format(slopes[i])}) does not "
                                          f"drop below step {i} ({d.format(slopes[i - 1])})")
    return Check(True)


def jordan_holder(game: Game, all: bool = False) -> list[Filtration]:
    """Jordan-Hölder filtrations of a semistable slope-like game.

    Every step ``[y_i, y_{i-1}]`` has pay-off ``mu(bottom, top)`` and every
    strict intermediate ``z`` has ``mu(y_i, z)`` strictly smaller. With
    ``all=False`` one filtration is built greedily (maximal candidates, lowest
    index first); with ``all=True`` every such chain is returned.
    """
    d, L, p = game.domain, game.lattice, game.payoff
    if not d.is_total:
        raise PartialDomainUnsupported("Jordan-Hölder filtrations need a totally ordered domain")
    sl = is_slope_like(game)
    if not sl:
        raise NotSlopeLike(f"pay-off is not slope-like at {sl.witness}", witness=sl.witness)
    semi = is_semistable(game)
    if not semi:
        raise NotSemistable(f"game is not semistable: {semi.message}", witness=semi.witness)
    target = p[(L.bottom, L.top)]
    if target == POS_INF:
        raise InfiniteTopSlope("mu(bottom, top) is +inf")

    def valid_step(lo: int, hi: int) -> bool:
        if d.compare(p[(lo, hi)], target) is not Ordering.EQUAL:
            return False
        return builtins.all(d.lt(p[(lo, z)], target) for z in L.members(lo, hi) if z not in (lo, hi))

    if not all:
        chain = [L.top]
        while chain[-1] != L.bottom:
            hi = chain[-1]
            cands = [x for x in L.members(L.bottom, hi) if x not in (L.bottom, hi)
                     and d.compare(p[(L.bottom, x)], target) is Ordering.EQUAL]
            maximal = [x for x in cands if not any(L.lt(x, c) for c in cands)]
            nxt = min(maximal) if maximal else L.bottom
            if not valid_step(nxt, hi):
                raise InvariantViolation(
                    f"greedy Jordan-Hölder step [{L.label(nxt)},{L.label(hi)}] is invalid")
            chain.append(nxt)
        return [_filtration(game, chain[::-1])]

    found: list[list[int]] = []

    def descend(path: list[int]) -> None:
        hi = path[-1]
        if hi == L.bottom:
            found.append(path[::-1])
            return
        for lo in L.strictly_below(hi):
            if valid_step(lo, hi):
                descend(path + [lo])

    descend([L.top])
    result = [_filtration(game, c) for c in sorted(found)]
    if result and is_affine(game) and len({len(f) for f in result}) > 1:
        raise InvariantViolation("Jordan-Hölder filtrations of an affine game differ in length")
    return result


# -- the equivalence report ----------------------------------------------------------

def equivalence_report(game: Game) -> GameReport:
    """Thresholds, St, predicate flags and the five stability statements.

    The statements are (a) ``mu_max(top) = mu(bottom, top)``, (b)
    ``mu_min(top) = mu(bottom, top)``, (c) ``mu_min(top) = mu_max(top)``,
    (d) Nash equilibrium ``mu_A* = mu_B*``, (e) semistability. When the
    pay-off is slope-like over a total order they must all agree.
    """
    L, d = game.lattice, game.domain
    a_star, b_star = mu_A_star(game), mu_B_star(game)
    top = game.payoff[(L.bottom, L.top)]
    hi, lo = game.mu_max(L.bottom, L.top), game.mu_min(L.bottom, L.top)
    eq = lambda u, v: d.compare(u, v) is Ordering.EQUAL  # noqa: E731
    semi = bool(is_semistable(game))
    statements = {
        "a": eq(hi, top),
        "b": eq(lo, top),
        "c": eq(lo, hi),
        "d": eq(a_star, b_star),
        "e": semi,
    }
    slope_like = bool(is_slope_like(game)) if d.is_total else None
    flags = {
        "convex": bool(is_convex(game)),
        "slope_like": slope_like,
        "affine": bool(is_affine(game)),
        "semistable": semi,
        "stable": bool(is_stable(game)),
        "nash": statements["d"],
    }
    if slope_like and len(set(statements.values())) != 1:
        raise InvariantViolation(f"stability statements disagree on a slope-like game: {statements}")
    return GameReport(a_star, b_star, top, hi, lo, st_set(game), flags, statements,
                      d.compare(a_star, b_star))

