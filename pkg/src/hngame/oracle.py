"""Brute-force references, random instances, and property audits.

Nothing here reads the engine's tables: ``brute_mu_A`` evaluates the
inf-sup literally from the order relation, and ``enumerate_hn_candidates``
checks every chain with those literal values. The ``audit_*`` functions
compare engine output against these references (or against the inequalities
the theory guarantees) and return human-readable failure lines.
"""

from __future__ import annotations

import json
import logging
import random
from math import gcd
from dataclasses import dataclass
from fractions import Fraction
from pathlib import Path
from typing import Callable

from .engine import (
    Game,
    dualize,
    equivalence_report,
    hn_filtration,
    is_convex,
    is_slope_like,
    mu_A_attained,
    mu_A_star,
    mu_B_star,
    mu_max_game,
)
from .errors import HNError, NotStrictlyOrdered, PartialDomainUnsupported, RejectionBudgetExceeded, SizeCap
from .instances import DegreeRankData, FiniteAbelianModule, game_from_degree_rank, join_irreducibles, valuation
from .lattice import FiniteLattice, strict_pairs, transitive_closure
from .values import LexTuple, Ordering, ValueDomain

log = logging.getLogger(__name__)

MAX_POSET_SIZE = 7
PAYOFF_KINDS = ("modular-degree-rank", "random-table-convex", "random-table-any")


@dataclass(frozen=True)
class RandomInstanceConfig:
    seed: int
    poset_size: int
    payoff_kind: str = "modular-degree-rank"
    domain_mode: str = "rational"
    rejection_budget: int = 20000
    relation_density: float = 0.35

    def __post_init__(self):
        if self.payoff_kind not in PAYOFF_KINDS:
            raise ValueError(f"unknown payoff kind {self.payoff_kind!r}")
        if self.domain_mode not in ("rational", "lex_tuple"):
            raise ValueError(f"random instances support rational or lex_tuple values, "
                             f"not {self.domain_mode!r}")


# -- generators -------------------------------------------------------------

def random_poset(rng: random.Random, size: int, density: float) -> list[int]:
    """Up-set masks of a random order on ``range(size)`` refining the index order."""
    succ = [0] * size
    for i in range(size):
        for j in range(i + 1, size):
            if rng.random() < density:
                succ[i] |= 1 << j
    return transitive_closure(succ)


def random_downset_lattice(cfg: RandomInstanceConfig) -> FiniteLattice:
    """Downsets of a random poset under inclusion (always a distributive lattice)."""
    if not 1 <= cfg.poset_size <= MAX_POSET_SIZE:
        raise SizeCap(f"poset size must be in 1..{MAX_POSET_SIZE}, got {cfg.poset_size}")
    rng = random.Random(cfg.seed)
    size = cfg.poset_size
    up = random_poset(rng, size, cfg.relation_density)
    down = [sum(1 << i for i in range(size) if up[i] >> j & 1) for j in range(size)]
    downsets = [s for s in range(1 << size)
                if all(down[j] & s == down[j] for j in range(size) if s >> j & 1)]
    downsets.sort(key=lambda s: (bin(s).count("1"), [j for j in range(size) if s >> j & 1]))
    names = "abcdefg"
    labels = ["{" + ",".join(names[j] for j in range(size) if s >> j & 1) + "}" for s in downsets]
    masks = [sum(1 << k for k, t in enumerate(downsets) if s & t == s) for s in downsets]
    return FiniteLattice.from_order(labels, masks)


def _rational(rng: random.Random, lo: int = -5, hi: int = 5) -> Fraction:
    return Fraction(rng.randint(lo, hi), rng.randint(1, 3))


def _domain(cfg: RandomInstanceConfig) -> ValueDomain:
    return ValueDomain.lex_tuple(2) if cfg.domain_mode == "lex_tuple" else ValueDomain.rational()


def random_payoff(cfg: RandomInstanceConfig, lattice: FiniteLattice) -> Game:
    """A random game on ``lattice`` of the configured kind.

    The modular kind puts random weights on join-irreducibles, so degree and
    rank are valuations on distributive lattices; a zero rank weight always
    comes with a positive degree weight.
    """
    rng = random.Random(cfg.seed * 7919 + 17)
    domain = _domain(cfg)
    lex = cfg.domain_mode == "lex_tuple"

    if cfg.payoff_kind == "modular-degree-rank":
        w_d, w_r = {}, {}
        for j in join_irreducibles(lattice):
            r = rng.choice((0, 1, 1, 2, 3))
            if lex:
                d = LexTuple((_rational(rng, -2, 2), _rational(rng)))
                if r == 0 and d.sign() <= 0:
                    d = LexTuple((Fraction(rng.randint(1, 3)), d.coords[1]))
            else:
                d = _rational(rng)
                if r == 0 and d <= 0:
                    d = Fraction(rng.randint(1, 5))
            w_d[j], w_r[j] = d, Fraction(r)
        zero = LexTuple((0, 0)) if lex else Fraction(0)
        D = valuation(lattice, w_d, zero)
        R = valuation(lattice, w_r, Fraction(0))
        data = DegreeRankData(dict(zip(lattice.labels, D)), dict(zip(lattice.labels, R)))
        return game_from_degree_rank(lattice, data, domain)

    pairs = strict_pairs(lattice)

    def draw() -> Game:
        if lex:
            values = [LexTuple((rng.randint(0, 1), rng.randint(0, 3))) for _ in pairs]
        else:
            values = [Fraction(rng.randint(0, 4)) for _ in pairs]
        return Game(lattice, domain, dict(zip(pairs, values)))

    if cfg.payoff_kind == "random-table-any":
        return draw()
    for _ in range(cfg.rejection_budget):
        game = draw()
        if is_convex(game):
            return game
    raise RejectionBudgetExceeded(f"no convex table after {cfg.rejection_budget} draws")


def random_instance(cfg: RandomInstanceConfig) -> Game:
    return random_payoff(cfg, random_downset_lattice(cfg))


# -- literal references ------------------------------------------------------------

def brute_mu_A(game: Game, x: int, y: int):
    """inf over ``x <= a < y`` of sup over ``a < b <= y`` of ``mu(a, b)``, read off the order."""
    L, d, p = game.lattice, game.domain, game.payoff
    if not L.lt(x, y):
        raise NotStrictlyOrdered(f"{L.label(x)!r} is not strictly below {L.label(y)!r}")
    outer = []
    for a in range(L.n):
        if L.leq(x, a) and L.lt(a, y):
            outer.append(d.sup([p[(a, b)] for b in range(L.n) if L.lt(a, b) and L.leq(b, y)]))
    return d.inf(outer)


def enumerate_hn_candidates(game: Game) -> list[tuple[int, ...]]:
    """Every chain bottom < ... < top with semistable steps and strictly falling thresholds.

    Semistability and the slope drop are prefix-closed, so invalid prefixes
    are pruned without losing candidates.
    """
    L, d = game.lattice, game.domain
    if not d.is_total:
        raise PartialDomainUnsupported("candidate enumeration needs a totally ordered domain")
    cache: dict[tuple[int, int], object] = {}

    def m(a, b):
        if (a, b) not in cache:
            cache[(a, b)] = brute_mu_A(game, a, b)
        return cache[(a, b)]

    def semistable(lo, hi):
        ref = m(lo, hi)
        return not any(d.gt(m(lo, z), ref) for z in range(L.n) if L.lt(lo, z) and L.leq(z, hi))

    found = []

    def extend(chain, last_slope):
        lo = chain[-1]
        for hi in range(L.n):
            if not L.lt(lo, hi):
                continue
            s = m(lo, hi)
            if last_slope is not None and not d.lt(s, last_slope):
                continue
            if not semistable(lo, hi):
                continue
            if hi == L.top:
                found.append(tuple(chain + [hi]))
            else:
                extend(chain + [hi], s)

    extend([L.bottom], None)
    return sorted(found)


def ass_brute(module: FiniteAbelianModule, sub: frozenset, sup: frozenset) -> frozenset[int]:
    """Primes ``p`` with ``p = {a : a*s in sub}`` for some ``s`` in ``sup``.

    The annihilator of ``s`` modulo ``sub`` is generated by the order of ``s``
    in the quotient, found by repeated addition. One walk along the multiples
    of ``s`` also gives the order ``k / gcd(j, k)`` of each multiple ``j*s``.
    """
    orders: dict = {}
    for s in sorted(sup):
        if s in orders or s in sub:
            continue
        multiples = [s]
        while multiples[-1] not in sub:
            multiples.append(module.add(multiples[-1], s))
        k = len(multiples)
        for j, m in enumerate(multiples, start=1):
            orders.setdefault(m, k // gcd(j, k))
    return frozenset(k for k in orders.values() if k > 1 and all(k % q for q in range(2, k)))


# -- audits ---------------------------------------------------------------

def audit_oracle_equivalence(game: Game) -> tuple[list[str], int]:
    """Engine mu_A against the literal inf-sup on every strict pair."""
    failures, count = [], 0
    for x, y in strict_pairs(game.lattice):
        count += 1
        fast, slow = game.mu_A(x, y), brute_mu_A(game, x, y)
        if fast != slow:
            failures.append(f"mu_A({game.label(x)},{game.label(y)}): engine {fast!r} != brute {slow!r}")
    return failures, count


def audit_uniqueness(game: Game) -> list[str]:
    hn = hn_filtration(game)
    cands = enumerate_hn_candidates(game)
    if cands != [hn.chain]:
        labels = [[game.label(a) for a in c] for c in cands]
        return [f"HN candidates {labels} != engine filtration {list(hn.labels)}"]
    return []


def audit_duality(game: Game) -> list[str]:
    from .gamefile import dump_game

    out = []
    dual = dualize(game)
    if mu_B_star(dual) != mu_A_star(game):
        out.append(f"dual mu_B* {mu_B_star(dual)!r} != mu_A* {mu_A_star(game)!r}")
    if mu_A_star(dual) != mu_B_star(game):
        out.append(f"dual mu_A* {mu_A_star(dual)!r} != mu_B* {mu_B_star(game)!r}")
    if dump_game(dualize(dual)) != dump_game(game):
        out.append("dualize twice does not round-trip the serialized game")
    return out


def audit_stability_equivalences(game: Game) -> list[str]:
    """On slope-like total games: the five statements agree and first-mover identities hold."""
    if not game.domain.is_total or not is_slope_like(game):
        return []
    try:
        rep = equivalence_report(game)
    except HNError as exc:
        return [f"equivalence report: {exc}"]
    out = []
    if rep.muA_star != rep.mu_min_top:
        out.append(f"mu_A* {rep.muA_star!r} != mu_min(top) {rep.mu_min_top!r}")
    if rep.muB_star != rep.mu_max_top:
        out.append(f"mu_B* {rep.muB_star!r} != mu_max(top) {rep.mu_max_top!r}")
    if not game.domain.leq(rep.muA_star, rep.muB_star):
        out.append(f"first mover not favoured: mu_A* {rep.muA_star!r} > mu_B* {rep.muB_star!r}")
    return out


def audit_convexity_inequalities(game: Game) -> list[str]:
    """Inequalities satisfied by mu_A; all but monotonicity assume a convex pay-off."""
    L, d = game.lattice, game.domain
    A = game.tables["mu_A"]
    le = d.leq
    lab = game.label
    out: list[str] = []
    convex = bool(is_convex(game))

    for x in range(L.n):
        for z in L.strictly_above(x):
            for y in L.members(x, z):
                if y in (x, z):
                    continue
                xy, yz, xz = A[(x, y)], A[(y, z)], A[(x, z)]
                where = f"({lab(x)},{lab(y)},{lab(z)})"
                if not le(xz, yz):
                    out.append(f"monotonicity fails at {where}")
                if not convex:
                    continue
                if not le(d.inf([xy, yz]), xz):
                    out.append(f"chain bound fails at {where}")
                comparable = d.compare(xy, yz) is not Ordering.INCOMPARABLE
                if comparable or mu_A_attained(game, x, z):
                    if not (xz == yz or (le(xy, xz) and d.lt(xz, yz))):
                        out.append(f"chain dichotomy fails at {where}")
    if not convex:
        return out

    for u in range(L.n):
        above = L.strictly_above(u)
        for i, x in enumerate(above):
            for y in above[i + 1:]:
                j = L.join(x, y)
                if not le(d.inf([A[(u, x)], A[(u, y)]]), A[(u, j)]):
                    out.append(f"join bound fails at u={lab(u)}, x={lab(x)}, y={lab(y)}")

    for x in range(L.n):
        for w in range(L.n):
            if x == L.bottom or w == L.bottom or L.leq(x, w):
                continue
            j, m = L.join(x, w), L.meet(x, w)
            for u in L.members(L.bottom, m):
                if not le(A[(u, x)], A[(w, j)]):
                    out.append(f"majoration fails at u={lab(u)}, x={lab(x)}, w={lab(w)}")

    derived = mu_max_game(game)
    if derived.tables["mu_A"] != A:
        out.append("mu_max game has different mu_A")
    if not is_convex(derived):
        out.append("mu_max game is not convex")
    return out


def audit_instance(game: Game) -> list[str]:
    """All oracle checks for one game; empty when everything holds."""
    failures, _ = audit_oracle_equivalence(game)
    failures += audit_duality(game)
    failures += audit_stability_equivalences(game)
    failures += audit_convexity_inequalities(game)
    if game.domain.is_total and is_convex(game):
        failures += audit_uniqueness(game)
    return failures


# -- fuzz driver ------------------------------------------------------------------

def instance_configs(seed: int, count: int, size: int) -> list[RandomInstanceConfig]:
    """Seeded configs; half use the full poset size so lattices are not all tiny."""
    rng = random.Random(seed)
    cfgs = []
    for i in range(count):
        cfgs.append(RandomInstanceConfig(
            seed=rng.getrandbits(63),
            poset_size=size if i % 2 == 0 else rng.randint(1, size),
            payoff_kind="modular-degree-rank",
            domain_mode="lex_tuple" if i % 4 == 3 else "rational",
            relation_density=rng.choice((0.1, 0.2, 0.35, 0.5)),
        ))
    return cfgs


def run_fuzz(seed: int, count: int, size: int, out_dir: Path | str = ".",
             audit: Callable[[Game], list[str]] = audit_instance) -> Path | None:
    """Audit ``count`` random instances; write the first failing game and return its path."""
    from .gamefile import dump_game

    for i, cfg in enumerate(instance_configs(seed, count, size)):
        game = random_instance(cfg)
        try:
            failures = audit(game)
        except HNError as exc:
            failures = [f"{exc.code}: {exc}"]
        if failures:
            path = Path(out_dir) / f"counterexample-seed{seed}-{i}.json"
            doc = dump_game(game)
            doc["failures"] = failures
            doc["config"] = {"seed": cfg.seed, "poset_size": cfg.poset_size,
                             "payoff_kind": cfg.payoff_kind, "domain_mode": cfg.domain_mode}
            path.write_text(json.dumps(doc, indent=2, ensure_ascii=False) + "\n", encoding="utf-8")
            for f in failures:
                log.error("instance %d: %s", i, f)
            return path
        log.debug("instance %d (n=%d) ok", i, game.lattice.n)
    return None
