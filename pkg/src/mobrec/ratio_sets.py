"""The ratio set R(a,b,c,d) = {(an+b)/(cn+d) : n >= 1} restricted to positive
rationals other than 1, plus the auxiliary families used by the colorings."""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterator, Optional

from .arith import INFINITY, ceil_div, vp


@dataclass(frozen=True, order=True)
class MoebiusParams:
    a: int
    b: int
    c: int
    d: int

    def __post_init__(self):
        for name in ("a", "b", "c", "d"):
            if not isinstance(getattr(self, name), int):
                raise TypeError(f"{name} must be an integer")
        if self.a < 1 or self.c < 1:
            raise ValueError("a and c must be positive")

    def swapped(self) -> "MoebiusParams":
        """Parameters of the reciprocal set {1/r : r in R}."""
        return MoebiusParams(self.c, self.d, self.a, self.b)

    @property
    def determinant(self) -> int:
        return self.a * self.d - self.b * self.c

    def __str__(self):
        return f"({self.a},{self.b},{self.c},{self.d})"


@dataclass(frozen=True)
class RangeBounds:
    alpha: Fraction
    beta: Fraction

    def __post_init__(self):
        if not (1 < self.alpha < self.beta):
            raise ValueError("need 1 < alpha < beta")


def value_at(params: MoebiusParams, n: int) -> Optional[Fraction]:
    """(an+b)/(cn+d) reduced, or ``None`` when it is not an element of R."""
    if n < 1:
        raise ValueError("n must be >= 1")
    num = params.a * n + params.b
    den = params.c * n + params.d
    if den == 0 or num == den:
        return None
    r = Fraction(num, den)
    return r if r > 0 else None


def member(params: MoebiusParams, r: Fraction) -> Optional[int]:
    """Least n >= 1 with value_at(params, n) == r, or ``None``."""
    r = Fraction(r)
    if r <= 0:
        raise ValueError("member needs r > 0")
    if r == 1:
        return None
    u, v = r.numerator, r.denominator
    a, b, c, d = params.a, params.b, params.c, params.d
    # n (a v - c u) = d u - b v
    coef = a * v - c * u
    const = d * u - b * v
    if coef == 0:
        if const != 0:
            return None
        n = 1 if c + d != 0 else 2
        return n
    if const % coef:
        return None
    n = const // coef
    if n < 1:
        return None
    return n if value_at(params, n) == r else None


def is_empty(params: MoebiusParams) -> bool:
    return (params.a, params.b) == (params.c, params.d)


def _sym(r: Fraction) -> Fraction:
    return r if r >= 1 else 1 / r


def iter_values(params: MoebiusParams, n_max: int) -> Iterator[tuple]:
    for n in range(1, n_max + 1):
        r = value_at(params, n)
        if r is not None:
            yield n, r


def tail_start(params: MoebiusParams) -> int:
    """An index past which both terms are positive and the ratio stays on the
    same side of 1 as its limit a/c."""
    a, b, c, d = params.a, params.b, params.c, params.d
    n0 = max(ceil_div(abs(b), a), ceil_div(abs(d), c)) + 1
    if a != c:
        # crossing of 1 happens at n = (d - b)/(a - c)
        cross = Fraction(d - b, a - c)
        if cross > 0:
            n0 = max(n0, math.floor(cross) + 2)
    return n0


def range_bounds(params: MoebiusParams) -> RangeBounds:
    """Rationals 1 < alpha < beta with max(r, 1/r) in (alpha, beta) for all r in R."""
    if params.a == params.c:
        raise ValueError("range_bounds needs a != c")
    if is_empty(params):
        raise ValueError("R is empty")
    n1 = tail_start(params)
    attained = [_sym(r) for _, r in iter_values(params, n1)]
    limit = _sym(Fraction(params.a, params.c))
    # on the tail the ratio is monotone and never equal to 1, so its symmetric
    # value is monotone towards the (unattained unless constant) limit
    m = min(attained + [limit])
    big = max(attained + [limit])
    if params.determinant == 0:
        m_attained = True
    else:
        m_attained = m in attained
    alpha = (1 + m) / 2 if m_attained else m
    beta = Fraction(3, 2) * big
    return RangeBounds(alpha, beta)


def in_S(r: Fraction, bounds: RangeBounds) -> bool:
    r = Fraction(r)
    if r <= 0:
        raise ValueError("r must be positive")
    al, be = bounds.alpha, bounds.beta
    return (1 / be < r < 1 / al) or (al < r < be)


def in_T(r: Fraction, p: int, k: int) -> bool:
    r = Fraction(r)
    if r <= 0:
        raise ValueError("r must be positive")
    return vp(p, r) == 0 and vp(p, r - 1) <= k


def in_Tprime(r: Fraction, p: int, k: int) -> bool:
    r = Fraction(r)
    if r <= 0:
        raise ValueError("r must be positive")
    v = vp(p, r)
    return v != INFINITY and abs(v) == k
