"""Finite bounded lattices.

Elements are dense indices ``0..n-1`` with unique string labels. The order is
kept as one bitmask per element (bit ``j`` of ``up[i]`` is set iff ``i <= j``),
which makes closures, intervals and meet/join lookups cheap set operations.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Iterator, Sequence

from .errors import (
    DuplicateLabel,
    NotALattice,
    NotAPartialOrder,
    NotStrictlyOrdered,
    TrivialLattice,
    UnknownLabel,
)


def iter_bits(mask: int) -> Iterator[int]:
    """Yield the indices of set bits in increasing order."""
    while mask:
        low = mask & -mask
        yield low.bit_length() - 1
        mask ^= low


def transitive_closure(masks: Sequence[int]) -> list[int]:
    """Reflexive-transitive closure of a relation given as successor bitmasks."""
    reach = [m | (1 << i) for i, m in enumerate(masks)]
    for k in range(len(reach)):
        bit, row = 1 << k, reach[k]
        for i in range(len(reach)):
            if reach[i] & bit:
                reach[i] |= row
    return reach


def _check_unique(labels: Sequence[str]) -> None:
    seen: set[str] = set()
    for lab in labels:
        if lab in seen:
            raise DuplicateLabel(f"label {lab!r} declared twice", witness=lab)
        seen.add(lab)


class FiniteLattice:
    """An immutable finite bounded lattice with precomputed meet/join tables.

    Use :func:`build_lattice` or :meth:`from_order` rather than calling the
    constructor directly; both validate the lattice axioms.
    """

    __slots__ = ("labels", "n", "_index", "_up", "_down", "_meet", "_join", "bottom", "top")

    def __init__(self, labels, up, down, meet, join, bottom, top):
        self.labels: tuple[str, ...] = tuple(labels)
        self.n = len(self.labels)
        self._index = {lab: i for i, lab in enumerate(self.labels)}
        self._up: tuple[int, ...] = tuple(up)
        self._down: tuple[int, ...] = tuple(down)
        self._meet = meet
        self._join = join
        self.bottom: int = bottom
        self.top: int = top

    @classmethod
    def from_order(cls, labels: Sequence[str], up: Sequence[int]) -> "FiniteLattice":
        """Validate a reflexive-transitive order (as up-set masks) and build tables."""
        labels = [str(lab) for lab in labels]
        n = len(labels)
        _check_unique(labels)
        if n == 0:
            raise NotALattice("empty element set")
        if n == 1:
            raise TrivialLattice("a bounded lattice needs bottom != top", witness=labels[0])

        down = [0] * n
        for i in range(n):
            for j in iter_bits(up[i]):
                if j != i and up[j] >> i & 1:
                    raise NotAPartialOrder(
                        f"{labels[i]!r} and {labels[j]!r} are mutually below each other",
                        witness=(labels[i], labels[j]),
                    )
                down[j] |= 1 << i

        full = (1 << n) - 1
        bottoms = [i for i in range(n) if up[i] == full]
        tops = [i for i in range(n) if down[i] == full]
        if not bottoms:
            raise NotALattice("no least element")
        if not tops:
            raise NotALattice("no greatest element")

        by_down = {m: i for i, m in enumerate(down)}
        by_up = {m: i for i, m in enumerate(up)}
        meet = [[0] * n for _ in range(n)]
        join = [[0] * n for _ in range(n)]
        for x in range(n):
            for y in range(x, n):
                m = by_down.get(down[x] & down[y])
                if m is None:
                    raise NotALattice(
                        f"{labels[x]!r} and {labels[y]!r} have no greatest lower bound",
                        witness=(labels[x], labels[y]),
                    )
                j = by_up.get(up[x] & up[y])
                if j is None:
                    raise NotALattice(
                        f"{labels[x]!r} and {labels[y]!r} have no least upper bound",
                        witness=(labels[x], labels[y]),
                    )
                meet[x][y] = meet[y][x] = m
                join[x][y] = join[y][x] = j
        return cls(labels, up, down, meet, join, bottoms[0], tops[0])

    # -- order queries -------------------------------------------------
    def index(self, label: str) -> int:
        try:
            return self._index[label]
        except KeyError:
            raise UnknownLabel(f"unknown element {label!r}", witness=label) from None

    def label(self, i: int) -> str:
        return self.labels[i]

    def leq(self, x: int, y: int) -> bool:
        return bool(self._up[x] >> y & 1)

    def lt(self, x: int, y: int) -> bool:
        return x != y and bool(self._up[x] >> y & 1)

    def meet(self, x: int, y: int) -> int:
        return self._meet[x][y]

    def join(self, x: int, y: int) -> int:
        return self._join[x][y]

    def up_mask(self, x: int) -> int:
        return self._up[x]

    def down_mask(self, x: int) -> int:
        return self._down[x]

    def members(self, x: int, y: int) -> list[int]:
        """Elements ``z`` with ``x <= z <= y`` (empty when ``x`` is not below ``y``)."""
        return list(iter_bits(self._up[x] & self._down[y]))

    def strictly_above(self, x: int) -> list[int]:
        return list(iter_bits(self._up[x] & ~(1 << x)))

    def strictly_below(self, x: int) -> list[int]:
        return list(iter_bits(self._down[x] & ~(1 << x)))

    @property
    def leq_matrix(self) -> tuple[tuple[bool, ...], ...]:
        return tuple(tuple(self.leq(x, y) for y in range(self.n)) for x in range(self.n))

    def covers(self) -> list[tuple[int, int]]:
        """Hasse diagram edges ``(x, y)`` with ``y`` covering ``x``."""
        out = []
        for x in range(self.n):
            above = self._up[x] & ~(1 << x)
            for y in iter_bits(above):
                if not above & self._down[y] & ~(1 << y):
                    out.append((x, y))
        return out

    def is_chain(self) -> bool:
        return all(self.leq(x, y) or self.leq(y, x) for x in range(self.n) for y in range(x))

    def dual(self) -> "FiniteLattice":
        """The same elements under the reversed order."""
        swap = lambda t: [row[:] for row in t]  # noqa: E731
        return FiniteLattice(
            self.labels, self._down, self._up, swap(self._join), swap(self._meet), self.top, self.bottom
        )

    def sublattice(self, elements: Sequence[int]) -> "FiniteLattice":
        """The induced order on ``elements`` (which must be closed under meet and join)."""
        pos = {e: k for k, e in enumerate(elements)}
        up = []
        for e in elements:
            up.append(sum(1 << pos[f] for f in iter_bits(self._up[e]) if f in pos))
        return FiniteLattice.from_order([self.labels[e] for e in elements], up)

    def __eq__(self, other):
        if not isinstance(other, FiniteLattice):
            return NotImplemented
        return self.labels == other.labels and self._up == other._up

    def __hash__(self):
        return hash((self.labels, self._up))

    def __repr__(self):
        return f"FiniteLattice(n={self.n}, bottom={self.labels[self.bottom]!r}, top={self.labels[self.top]!r})"


@dataclass(frozen=True)
class Interval:
    """The closed interval ``[lo, hi]`` of an ambient lattice."""

    lattice: FiniteLattice
    lo: int
    hi: int
    members: tuple[int, ...]

    def as_lattice(self) -> FiniteLattice:
        return self.lattice.sublattice(self.members)


def build_lattice(
    elements: Sequence[str],
    relation: Iterable[tuple[str, str]],
    relation_kind: str = "covers",
) -> FiniteLattice:
    """Build and validate a lattice from labels and order pairs.

    ``relation_kind`` is ``"covers"`` (Hasse diagram edges) or ``"full"``
    (every comparable pair). In both cases the reflexive-transitive closure is
    taken, so a full order may omit reflexive pairs.
    """
    if relation_kind not in ("covers", "full"):
        raise ValueError(f"relation_kind must be 'covers' or 'full', got {relation_kind!r}")
    labels = [str(e) for e in elements]
    _check_unique(labels)
    index = {lab: i for i, lab in enumerate(labels)}
    succ = [0] * len(labels)
    for a, b in relation:
        for lab in (a, b):
            if lab not in index:
                raise UnknownLabel(f"relation references undeclared element {lab!r}", witness=lab)
        succ[index[a]] |= 1 << index[b]
    return FiniteLattice.from_order(labels, transitive_closure(succ))


def strict_pairs(lattice: FiniteLattice) -> list[tuple[int, int]]:
    """All ``(x, y)`` with ``x < y``, in lexicographic index order."""
    return [(x, y) for x in range(lattice.n) for y in lattice.strictly_above(x)]


def interval(lattice: FiniteLattice, x: int, y: int) -> Interval:
    if not lattice.lt(x, y):
        raise NotStrictlyOrdered(
            f"{lattice.label(x)!r} is not strictly below {lattice.label(y)!r}",
            witness=(lattice.label(x), lattice.label(y)),
        )
    return Interval(lattice, x, y, tuple(lattice.members(x, y)))
