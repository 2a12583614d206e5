"""Concrete game families.

* weighted DAGs: every strictly ordered pair carries an explicit weight;
* degree/rank slopes: ``mu(x, y) = (D(y) - D(x)) / (R(y) - R(x))``, ``+inf`` when
  ranks agree;
* finite abelian groups ``Z/d1 + ... + Z/dk`` with the associated-prime pay-off,
  whose HN filtration is the coprimary filtration.
"""

from __future__ import annotations

from collections import defaultdict
from dataclasses import dataclass, field
from fractions import Fraction
from functools import cached_property
from math import gcd, prod
from typing import Mapping, Sequence

from .engine import Filtration, Game, hn_filtration, is_slope_like
from .errors import (
    FreeRankUnsupported,
    InvariantFactorChain,
    InvariantViolation,
    MissingWeight,
    OrderCapExceeded,
    RankNotMonotone,
    UnexpectedWeight,
    ZeroRankNonPositiveDegree,
)
from .lattice import FiniteLattice, build_lattice, iter_bits, strict_pairs
from .values import POS_INF, LexTuple, PrimeSet, Value, ValueDomain

DEFAULT_ORDER_CAP = 512
SUBGROUP_CAP = 4096


# -- weighted DAGs ------------------------------------------------------------

def game_from_dag(labels: Sequence[str], edges: Sequence[tuple[str, str, Value]],
                  domain: ValueDomain) -> Game:
    """Game whose order is generated by the edges and whose weights are the edge values.

    A weight must be supplied for every strictly ordered pair, not only covers.
    """
    lattice = build_lattice(labels, [(a, b) for a, b, _ in edges], "covers")
    payoff = {}
    for a, b, v in edges:
        key = (lattice.index(a), lattice.index(b))
        if key in payoff or key[0] == key[1]:
            raise UnexpectedWeight(f"duplicate or reflexive edge ({a}, {b})", witness=(a, b))
        payoff[key] = v
    return Game(lattice, domain, payoff)


# -- degree / rank ------------------------------------------------------------

@dataclass(frozen=True)
class DegreeRankData:
    """Degree and rank potentials indexed by element label."""

    degree: Mapping[str, Value]
    rank: Mapping[str, Fraction]


def _slope(d: Value, r: Fraction) -> Value:
    if isinstance(d, LexTuple):
        return d.scale(1 / r)
    return d / r


def _positive(d: Value) -> bool:
    return d.sign() > 0 if isinstance(d, LexTuple) else d > 0


def game_from_degree_rank(lattice: FiniteLattice, data: DegreeRankData,
                          domain: ValueDomain | None = None) -> Game:
    for label in lattice.labels:
        if label not in data.degree or label not in data.rank:
            raise MissingWeight(f"no degree/rank for element {label!r}", witness=label)
    D = [data.degree[lab] for lab in lattice.labels]
    R = [Fraction(data.rank[lab]) for lab in lattice.labels]
    if domain is None:
        first = D[0]
        domain = ValueDomain.lex_tuple(len(first.coords)) if isinstance(first, LexTuple) \
            else ValueDomain.rational()
    for i, r in enumerate(R):
        if r < 0:
            raise RankNotMonotone(f"negative rank at {lattice.label(i)!r}", witness=lattice.label(i))
    payoff = {}
    for x, y in strict_pairs(lattice):
        dr, dd = R[y] - R[x], D[y] - D[x]
        if dr < 0:
            raise RankNotMonotone(f"rank decreases from {lattice.label(x)!r} to {lattice.label(y)!r}",
                                  witness=(lattice.label(x), lattice.label(y)))
        if dr == 0:
            if not _positive(dd):
                raise ZeroRankNonPositiveDegree(
                    f"rank is constant but degree does not increase on "
                    f"({lattice.label(x)}, {lattice.label(y)})",
                    witness=(lattice.label(x), lattice.label(y)))
            payoff[(x, y)] = POS_INF
        else:
            payoff[(x, y)] = _slope(dd, dr)
    game = Game(lattice, domain, payoff)
    check = is_slope_like(game)
    if not check:
        raise InvariantViolation(f"degree/rank pay-off is not slope-like at {check.witness}")
    return game


def join_irreducibles(lattice: FiniteLattice) -> list[int]:
    """Elements with exactly one lower cover."""
    lower = defaultdict(int)
    for _, y in lattice.covers():
        lower[y] += 1
    return [x for x in range(lattice.n) if lower[x] == 1]


def valuation(lattice: FiniteLattice, weights: Mapping[int, Value], zero: Value) -> list[Value]:
    """``f(x)`` = sum of the weights of join-irreducibles below ``x``.

    Modular on distributive lattices.
    """
    out = []
    for x in range(lattice.n):
        total = zero
        for j in iter_bits(lattice.down_mask(x)):
            if j in weights:
                total = total + weights[j]
        out.append(total)
    return out


# -- finite abelian groups -------------------------------------------------------

def prime_factors(n: int) -> dict[int, int]:
    out: dict[int, int] = {}
    d = 2
    while d * d <= n:
        while n % d == 0:
            out[d] = out.get(d, 0) + 1
            n //= d
        d += 1
    if n > 1:
        out[n] = out.get(n, 0) + 1
    return out


def canonical_invariant_factors(factors: Sequence[int]) -> list[int]:
    """Invariant factors ``d1 | d2 | ...`` of ``Z/f1 + Z/f2 + ...``."""
    powers: dict[int, list[int]] = defaultdict(list)
    for f in factors:
        for p, e in prime_factors(f).items():
            powers[p].append(p ** e)
    k = max((len(v) for v in powers.values()), default=0)
    out = [1] * k
    for plist in powers.values():
        for i, q in enumerate(sorted(plist, reverse=True)):
            out[k - 1 - i] *= q
    return out


def _fmt_element(g: tuple[int, ...]) -> str:
    return str(g[0]) if len(g) == 1 else "(" + ",".join(map(str, g)) + ")"


@dataclass(frozen=True)
class FiniteAbelianModule:
    """``Z/d1 + ... + Z/dk`` with ``d1 | d2 | ... | dk`` and each ``di >= 2``."""

    invariant_factors: tuple[int, ...]
    cap: int = field(default=DEFAULT_ORDER_CAP, compare=False)

    def __post_init__(self):
        fs = tuple(int(f) for f in self.invariant_factors)
        object.__setattr__(self, "invariant_factors", fs)
        if not fs:
            raise InvariantFactorChain("the zero module has a trivial subgroup lattice")
        if any(f == 0 for f in fs):
            raise FreeRankUnsupported("free summands give infinite submodule lattices")
        if any(f < 2 for f in fs):
            raise InvariantFactorChain(f"invariant factors must be >= 2, got {list(fs)}")
        if any(b % a for a, b in zip(fs, fs[1:])):
            canon = canonical_invariant_factors(fs)
            raise InvariantFactorChain(
                f"{list(fs)} is not a divisibility chain; the canonical form is {canon}",
                witness=tuple(canon))
        if self.order > self.cap:
            raise OrderCapExceeded(f"group order {self.order} exceeds the cap {self.cap}",
                                   witness=self.order)

    @property
    def order(self) -> int:
        return prod(self.invariant_factors)

    @property
    def zero(self) -> tuple[int, ...]:
        return (0,) * len(self.invariant_factors)

    def add(self, g, h):
        return tuple((a + b) % m for a, b, m in zip(g, h, self.invariant_factors))

    def elements(self) -> list[tuple[int, ...]]:
        out = [()]
        for m in self.invariant_factors:
            out = [g + (k,) for g in out for k in range(m)]
        return out

    def span(self, gens) -> frozenset:
        group = {self.zero}
        for g in gens:
            if g in group:
                continue
            grown = set(group)
            k = g
            while k not in group:
                grown.update(self.add(s, k) for s in group)
                k = self.add(k, g)
            group = grown
        return frozenset(group)

    def generators(self, subgroup: frozenset) -> list[tuple[int, ...]]:
        """Greedy generating set, scanning elements in lexicographic order."""
        gens, cur = [], frozenset({self.zero})
        for g in sorted(subgroup):
            if g not in cur:
                gens.append(g)
                cur = self.span(gens)
                if len(cur) == len(subgroup):
                    break
        return gens

    def cyclic_subgroups(self) -> set[frozenset]:
        """Each cyclic subgroup once; elements generating a known one are skipped."""
        done: set = set()
        out = set()
        for g in self.elements():
            if g in done:
                continue
            multiples = [self.zero]
            while True:
                nxt = self.add(multiples[-1], g)
                if nxt == self.zero:
                    break
                multiples.append(nxt)
            order = len(multiples)
            done.update(m for k, m in enumerate(multiples) if gcd(k, order) == 1)
            out.add(frozenset(multiples))
        return out

    @cached_property
    def _labels(self) -> dict[frozenset, str]:
        return {}

    def subgroup_label(self, subgroup: frozenset) -> str:
        if subgroup not in self._labels:
            if len(subgroup) == 1:
                label = "0"
            elif len(subgroup) == self.order:
                label = "M"
            else:
                label = "⟨" + ",".join(_fmt_element(g) for g in self.generators(subgroup)) + "⟩"
            self._labels[subgroup] = label
        return self._labels[subgroup]

    @cached_property
    def subgroups(self) -> tuple[frozenset, ...]:
        """All subgroups, sorted by (order, label).

        Every subgroup is a join of cyclic ones, so close the cyclic subgroups
        under joins until nothing new appears.
        """
        cyclic = self.cyclic_subgroups()
        gens = {c: self.generators(c) for c in cyclic}
        found = set(cyclic)
        frontier = set(cyclic)
        while frontier:
            fresh = set()
            for h in frontier:
                for c in cyclic:
                    if c <= h or h <= c:
                        continue
                    s = self.span(gens[h] + gens[c])
                    if s not in found and s not in fresh:
                        fresh.add(s)
                        gens[s] = self.generators(s)
            found |= fresh
            if len(found) > SUBGROUP_CAP:
                raise OrderCapExceeded(f"more than {SUBGROUP_CAP} subgroups")
            frontier = fresh
        return tuple(sorted(found, key=lambda s: (len(s), self.subgroup_label(s))))

    def quotient_order(self, sub: frozenset, sup: frozenset) -> int:
        return len(sup) // len(sub)


def subgroup_lattice(module: FiniteAbelianModule) -> FiniteLattice:
    subs = module.subgroups
    up = [sum(1 << j for j, t in enumerate(subs) if s <= t) for s in subs]
    return FiniteLattice.from_order([module.subgroup_label(s) for s in subs], up)


def ass_payoff(module: FiniteAbelianModule) -> Game:
    """Pay-off ``(N', N) -> Ass(N/N')``, the prime divisors of the index."""
    lattice = subgroup_lattice(module)
    subs = module.subgroups
    payoff = {
        (x, y): PrimeSet(frozenset(prime_factors(len(subs[y]) // len(subs[x]))))
        for x, y in strict_pairs(lattice)
    }
    return Game(lattice, ValueDomain.prime_set(), payoff)


def coprimary_filtration(module: FiniteAbelianModule) -> Filtration:
    """HN filtration of the associated-prime game: quotients are p-groups, primes decreasing."""
    return hn_filtration(ass_payoff(module))


def filtration_primes(filtration: Filtration) -> list[int]:
    """The single prime of each step of a coprimary filtration."""
    out = []
    for s in filtration.slopes:
        if not isinstance(s, PrimeSet) or len(s.primes) != 1:
            raise InvariantViolation(f"step threshold {s!r} is not a single prime")
        out.append(next(iter(s.primes)))
    return out
