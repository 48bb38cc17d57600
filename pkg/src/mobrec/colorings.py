"""Explicit proper colorings of the non-recurrent ratio graphs.

Three recipes:

``Archimedean(alpha, beta, k)``
    cell index of {t log n} among k equal cells, t = 1/log(alpha*beta).
``PAdic(p, k)``
    n with all factors of p removed, reduced mod p^(k+1).
``Parity(p, k)``
    floor(v_p(n)/k) mod 2.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Union

import mpmath
import numpy as np

from . import _core
from .arith import is_prime, strip_p, vp_int
from .ratio_sets import MoebiusParams, range_bounds

DEFAULT_PRECISION_BITS = 128
MAX_PRECISION_BITS = 2048
# float64 results this far from a cell boundary need no high-precision recheck
_FLOAT_MARGIN = 1e-6


class BoundaryAmbiguous(ArithmeticError):
    """{t log n} could not be separated from a cell boundary within the precision cap."""


@dataclass(frozen=True)
class Archimedean:
    alpha: Fraction
    beta: Fraction
    k: int

    def __post_init__(self):
        if not 1 < self.alpha < self.beta:
            raise ValueError("need 1 < alpha < beta")
        if self.k < archimedean_k(self.alpha, self.beta):
            raise ValueError("k below ceil(log(alpha*beta)/log(alpha))")

    @property
    def num_colors(self) -> int:
        return self.k


@dataclass(frozen=True)
class PAdic:
    p: int
    k: int

    def __post_init__(self):
        if not is_prime(self.p) or self.k < 0:
            raise ValueError("need a prime p and k >= 0")

    @property
    def num_colors(self) -> int:
        return self.p**self.k * (self.p - 1)


@dataclass(frozen=True)
class Parity:
    p: int
    k: int

    def __post_init__(self):
        if not is_prime(self.p) or self.k < 1:
            raise ValueError("need a prime p and k >= 1")

    @property
    def num_colors(self) -> int:
        return 2


ColoringSpec = Union[Archimedean, PAdic, Parity]


def archimedean_k(alpha: Fraction, beta: Fraction) -> int:
    """ceil(log(alpha*beta)/log(alpha)), decided exactly: least k with alpha^k >= alpha*beta."""
    target = alpha * beta
    k = max(1, int(math.log(target) / math.log(alpha)) - 1)
    while alpha**k >= target and k > 1:
        k -= 1
    while alpha**k < target:
        k += 1
    return k


def _arch_color_precise(spec: Archimedean, n: int, prec: int, max_prec: int) -> int:
    ab = spec.alpha * spec.beta
    k = spec.k
    while True:
        with mpmath.workprec(prec):
            x = mpmath.log(n) / mpmath.log(mpmath.mpf(ab.numerator) / ab.denominator)
            y = x * k
            nearest = int(mpmath.nint(y))
            dist = abs(y - nearest) / k
            if dist > mpmath.mpf(2) ** (-(prec // 4)):
                frac = x - mpmath.floor(x)
                return int(mpmath.floor(frac * k)) + 1
        # log n / log(ab) == nearest/k exactly iff n^k == ab^nearest
        if nearest >= 0 and Fraction(n) ** k == ab**nearest:
            return nearest % k + 1
        if prec >= max_prec:
            raise BoundaryAmbiguous(f"color of {n} undecided at {prec} bits")
        prec *= 2


def color(spec: ColoringSpec, n: int, precision_bits: int = DEFAULT_PRECISION_BITS,
          max_precision_bits: int = MAX_PRECISION_BITS) -> int:
    if n < 1:
        raise ValueError("n must be >= 1")
    if isinstance(spec, PAdic):
        _, m = strip_p(spec.p, n)
        return m % spec.p ** (spec.k + 1)
    if isinstance(spec, Parity):
        return (vp_int(spec.p, n) // spec.k) % 2
    if isinstance(spec, Archimedean):
        if n == 1:
            return 1
        return _arch_color_precise(spec, n, precision_bits, max_precision_bits)
    raise TypeError(f"unknown coloring {spec!r}")


def colors_on(spec: ColoringSpec, lo: int, hi: int,
              precision_bits: int = DEFAULT_PRECISION_BITS) -> np.ndarray:
    """Colors of lo..hi as an int64 array; -1 marks boundary-ambiguous vertices."""
    if isinstance(spec, PAdic):
        return _core.padic_colors(spec.p, spec.k, lo, hi)
    if isinstance(spec, Parity):
        return _core.parity_colors(spec.p, spec.k, lo, hi)
    if not isinstance(spec, Archimedean):
        raise TypeError(f"unknown coloring {spec!r}")
    ab = spec.alpha * spec.beta
    n = np.arange(lo, hi + 1, dtype=np.float64)
    x = np.log(n) / math.log(ab)
    if np.abs(x).max(initial=0.0) * spec.k > 1e6:
        suspect = np.ones(len(n), dtype=bool)
    else:
        y = x * spec.k
        suspect = np.abs(y - np.rint(y)) < _FLOAT_MARGIN * spec.k
    out = (np.floor((x - np.floor(x)) * spec.k)).astype(np.int64) + 1
    for i in np.flatnonzero(suspect).tolist():
        try:
            out[i] = color(spec, lo + i, precision_bits)
        except BoundaryAmbiguous:
            out[i] = -1
    return out


def derive_spec(params: MoebiusParams, case: str, p: int = 0) -> ColoringSpec:
    """Coloring recipe for a non-recurrent case label ``"i"``, ``"ii"`` or ``"iii"``."""
    if case == "i":
        rb = range_bounds(params)
        return Archimedean(rb.alpha, rb.beta, archimedean_k(rb.alpha, rb.beta))
    if params.a != params.c:
        raise ValueError("cases (ii)/(iii) need a == c")
    if case == "ii":
        return PAdic(p, vp_int(p, params.b - params.d))
    if case == "iii":
        return Parity(p, abs(vp_int(p, params.b) - vp_int(p, params.d)))
    raise ValueError(f"not a non-recurrent case: {case!r}")
