"""Harder-Narasimhan games on finite bounded lattices."""

from .engine import (
    Check,
    Filtration,
    Game,
    GameReport,
    dualize,
    equivalence_report,
    hn_filtration,
    is_affine,
    is_convex,
    is_semistable,
    is_slope_like,
    is_stable,
    jordan_holder,
    mu_A_star,
    mu_B_star,
    restrict,
    st_set,
    verify_filtration,
)
from .errors import HNError, ParseError
from .gamefile import dump_game, load_game, parse_game
from .lattice import FiniteLattice, build_lattice
from .values import NEG_INF, POS_INF, LexTuple, Ordering, PosetPoint, PrimeSet, ValueDomain

__all__ = [
    "Check",
    "Filtration",
    "Game",
    "GameReport",
    "dualize",
    "equivalence_report",
    "hn_filtration",
    "is_affine",
    "is_convex",
    "is_semistable",
    "is_slope_like",
    "is_stable",
    "jordan_holder",
    "mu_A_star",
    "mu_B_star",
    "restrict",
    "st_set",
    "verify_filtration",
    "HNError",
    "ParseError",
    "dump_game",
    "load_game",
    "parse_game",
    "FiniteLattice",
    "build_lattice",
    "NEG_INF",
    "POS_INF",
    "LexTuple",
    "Ordering",
    "PosetPoint",
    "PrimeSet",
    "ValueDomain",
]

__version__ = "0.1.0"
