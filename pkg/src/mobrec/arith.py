"""Exact integer and rational helpers.

Rationals are plain :class:`fractions.Fraction` values (always reduced, with a
positive denominator).  Valuations return an ``int`` or :data:`INFINITY`.
"""

from __future__ import annotations

import math
import sys
from fractions import Fraction
from typing import List, Optional, Sequence, Tuple, Union

Rat = Fraction
INFINITY = math.inf

DEFAULT_FACTORIAL_CAP = 10_000

IntOrRat = Union[int, Fraction]


class ResourceLimitError(RuntimeError):
    """A configured safety cap would be exceeded."""


def rat(num: int, den: int = 1) -> Fraction:
    if den == 0:
        raise ZeroDivisionError("zero denominator")
    return Fraction(num, den)


_SMALL_PRIMES = (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37)


def is_prime(n: int) -> bool:
    """Miller-Rabin with the first twelve prime bases.

    Deterministic below 3.3e24; a strong probable-prime test above that.
    """
    if n < 2:
        return False
    for p in _SMALL_PRIMES:
        if n % p == 0:
            return n == p
    d, s = n - 1, 0
    while d % 2 == 0:
        d //= 2
        s += 1
    for a in _SMALL_PRIMES:
        x = pow(a, d, n)
        if x == 1 or x == n - 1:
            continue
        for _ in range(s - 1):
            x = x * x % n
            if x == n - 1:
                break
        else:
            return False
    return True


def _check_prime(p: int) -> None:
    if not isinstance(p, int) or not is_prime(p):
        raise ValueError(f"{p!r} is not a prime")


def vp_int(p: int, n: int) -> Union[int, float]:
    """Valuation of an integer; sign ignored, ``vp_int(p, 0) == INFINITY``.

    No primality check (hot path); use :func:`vp` for checked calls.
    """
    if n == 0:
        return INFINITY
    n = abs(n)
    if n % p:
        return 0
    # square the divisor to strip big powers quickly on huge integers
    v = 0
    powers = [p]
    while n % (powers[-1] * powers[-1]) == 0:
        powers.append(powers[-1] * powers[-1])
    for i in range(len(powers) - 1, -1, -1):
        q = powers[i]
        if n % q == 0:
            n //= q
            v += 1 << i
    while n % p == 0:
        n //= p
        v += 1
    return v


def vp(p: int, x: IntOrRat) -> Union[int, float]:
    """p-adic valuation of an integer or rational."""
    _check_prime(p)
    x = Fraction(x)
    if x == 0:
        return INFINITY
    return vp_int(p, x.numerator) - vp_int(p, x.denominator)


def strip_p(p: int, n: int) -> Tuple[int, int]:
    """Return ``(v, m)`` with ``|n| = p**v * m`` and ``p`` not dividing ``m``."""
    if n == 0:
        raise ValueError("cannot strip a prime from 0")
    v = vp_int(p, n)
    return v, abs(n) // p**v


def lcm0(b: int, d: int) -> int:
    """lcm(|b|, |d|), with lcm(x, 0) = 0 so that every a divides it."""
    if b == 0 or d == 0:
        return 0
    return abs(b * d) // math.gcd(b, d)


def divides(a: int, n: int) -> bool:
    return n % a == 0


def egcd(x: int, y: int) -> Tuple[int, int, int]:
    """Return ``(g, s, t)`` with ``s*x + t*y == g == gcd(x, y)``."""
    if y == 0:
        return (x, 1, 0) if x >= 0 else (-x, -1, 0)
    g, s, t = egcd(y, x % y)
    return g, t, s - (x // y) * t


def factorial(n: int, cap: int = DEFAULT_FACTORIAL_CAP) -> int:
    if n < 0:
        raise ValueError("factorial of a negative integer")
    if n > cap:
        raise ResourceLimitError(f"factorial({n}) exceeds the factorial cap {cap}")
    return math.factorial(n)


def trial_factor(n: int) -> List[Tuple[int, int]]:
    factors = []
    for p in (2, 3):
        if n % p == 0:
            e = 0
            while n % p == 0:
                n //= p
                e += 1
            factors.append((p, e))
    f = 5
    step = 2
    while f * f <= n:
        if n % f == 0:
            e = 0
            while n % f == 0:
                n //= f
                e += 1
            factors.append((f, e))
        f += step
        step = 6 - step
    if n > 1:
        factors.append((n, 1))
    return factors


def factorize(
    n: int, method: str = "trial", spf: Optional[Sequence[int]] = None
) -> List[Tuple[int, int]]:
    """Prime factorization as increasing ``(prime, exponent)`` pairs.

    ``method="sieve"`` walks a smallest-prime-factor table (see
    :func:`mobrec._core.spf_sieve`), which must cover ``n``.
    """
    if n < 1:
        raise ValueError("factorize needs n >= 1")
    if method == "trial":
        return trial_factor(n)
    if method != "sieve":
        raise ValueError(f"unknown factorization method {method!r}")
    if spf is None or n >= len(spf):
        raise ResourceLimitError(f"{n} is beyond the sieve bound")
    out: List[Tuple[int, int]] = []
    while n > 1:
        p = int(spf[n])
        e = 0
        while n % p == 0:
            n //= p
            e += 1
        out.append((p, e))
    return out


def ceil_div(x: int, y: int) -> int:
    return -((-x) // y)


def to_decimal(n: int) -> str:
    """Decimal string of an integer of any size."""
    try:
        return str(n)
    except ValueError:
        sys.set_int_max_str_digits(0)
        return str(n)


def from_decimal(s: str) -> int:
    try:
        return int(s)
    except ValueError:
        if hasattr(sys, "set_int_max_str_digits"):
            sys.set_int_max_str_digits(0)
        return int(s)


def rat_to_str(x: Fraction) -> str:
    if x.denominator == 1:
        return to_decimal(x.numerator)
    return f"{to_decimal(x.numerator)}/{to_decimal(x.denominator)}"


def rat_from_str(s: str) -> Fraction:
    num, _, den = s.partition("/")
    return Fraction(from_decimal(num), from_decimal(den) if den else 1)
