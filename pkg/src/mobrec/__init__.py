"""Multiplicative recurrence of Moebius ratio sets R(a,b,c,d), with certificates."""

from ._core import BACKEND
from .arith import Rat, ResourceLimitError, factorize, is_prime, vp
from .classify import Case, Classification, Verdict, classify
from .cliques import VerificationError, big_clique, construct_clique, reduce
from .colorings import Archimedean, PAdic, Parity, color, colors_on, derive_spec
from .graph import CliqueCert, adjacent, build_window, max_cliques, verify_coloring
from .multfun import (
    ArchChar, Custom, ModDirichlet, RootChar, aset_scan, dio_scan, evaluate,
    pigeonhole_pairs, witness_for,
)
from .ratio_sets import MoebiusParams, member, range_bounds, value_at

__version__ = "0.1.0"

__all__ = [
    "BACKEND", "Rat", "ResourceLimitError", "factorize", "is_prime", "vp",
    "Case", "Classification", "Verdict", "classify",
    "VerificationError", "big_clique", "construct_clique", "reduce",
    "Archimedean", "PAdic", "Parity", "color", "colors_on", "derive_spec",
    "CliqueCert", "adjacent", "build_window", "max_cliques", "verify_coloring",
    "ArchChar", "Custom", "ModDirichlet", "RootChar", "aset_scan", "dio_scan", "evaluate",
    "pigeonhole_pairs", "witness_for",
    "MoebiusParams", "member", "range_bounds", "value_at",
]
