"""Dirichlet characters modulo a prime power, with values as exact turns.

A character is identified by its exponent tuple in a fixed coordinate basis of
the unit group:

* odd p: (Z/p^e)^x is cyclic; coordinate = index w.r.t. the least primitive root.
* p = 2, e = 2: coordinate s with x = (-1)^s mod 4.
* p = 2, e >= 3: coordinates (s, t) with x = (-1)^s 5^t mod 2^e.

The character with exponents (u_1, ...) sends x to exp(2 pi i sum u_i x_i / o_i)
where o_i is the order of coordinate i.
"""

from __future__ import annotations

import itertools
import math
from fractions import Fraction
from functools import lru_cache
from typing import Iterator, Sequence, Tuple

import numpy as np

from .arith import is_prime, trial_factor

TABLE_LIMIT = 1 << 22


def _bsgs(g: int, h: int, mod: int, order: int) -> int:
    m = math.isqrt(order) + 1
    table = {}
    e = 1
    for j in range(m):
        table.setdefault(e, j)
        e = e * g % mod
    factor = pow(g, -m, mod)
    gamma = h
    for i in range(m):
        if gamma in table:
            return i * m + table[gamma]
        gamma = gamma * factor % mod
    raise ValueError("discrete log does not exist")


def discrete_log(g: int, h: int, mod: int, order: int) -> int:
    """x with g^x = h (mod mod), g of the given order (Pohlig-Hellman)."""
    residues, moduli = [], []
    for q, e in trial_factor(order):
        qe = q**e
        g_q = pow(g, order // qe, mod)
        h_q = pow(h, order // qe, mod)
        gamma = pow(g_q, q ** (e - 1), mod)
        x = 0
        for i in range(e):
            hk = pow(pow(g_q, -x, mod) * h_q % mod, q ** (e - 1 - i), mod)
            x += _bsgs(gamma, hk, mod, q) * q**i
        residues.append(x)
        moduli.append(qe)
    x, m = 0, 1
    for r, mq in zip(residues, moduli):
        # CRT merge
        t = (r - x) * pow(m, -1, mq) % mq
        x += m * t
        m *= mq
    return x % order


@lru_cache(maxsize=None)
def primitive_root_prime_power(p: int, e: int) -> int:
    """Least primitive root mod p, lifted to p^e (odd p)."""
    if p == 2 or not is_prime(p):
        raise ValueError("need an odd prime")
    factors = [q for q, _ in trial_factor(p - 1)]
    g = next(g for g in range(2, p) if all(pow(g, (p - 1) // q, p) != 1 for q in factors))
    if e >= 2 and pow(g, p - 1, p * p) == 1:
        g += p
    return g


class CharacterGroup:
    """Characters of (Z/p^e)^x."""

    def __init__(self, p: int, e: int):
        if not is_prime(p) or e < 1:
            raise ValueError("need a prime p and e >= 1")
        self.p = p
        self.e = e
        self.modulus = p**e
        if p == 2:
            if e == 1:
                self.orders: Tuple[int, ...] = ()
            elif e == 2:
                self.orders = (2,)
            else:
                self.orders = (2, 2 ** (e - 2))
            self.generator = None
        else:
            self.orders = (p ** (e - 1) * (p - 1),)
            self.generator = primitive_root_prime_power(p, e)
        self.exponent = math.lcm(*self.orders) if self.orders else 1

    def coordinates(self, x: int) -> Tuple[int, ...]:
        x %= self.modulus
        if x % self.p == 0:
            raise ValueError(f"{x} is not a unit mod {self.modulus}")
        if self.p != 2:
            return (discrete_log(self.generator, x, self.modulus, self.orders[0]),)
        if self.e == 1:
            return ()
        s = 0 if x % 4 == 1 else 1
        if self.e == 2:
            return (s,)
        y = x if s == 0 else (-x) % self.modulus
        return (s, discrete_log(5, y, self.modulus, self.orders[1]))

    def characters(self) -> Iterator[Tuple[int, ...]]:
        """All exponent tuples, lexicographically ordered (trivial first)."""
        return itertools.product(*(range(o) for o in self.orders))

    def turn(self, exps: Sequence[int], x: int) -> Fraction:
        coords = self.coordinates(x)
        return Fraction(self.turn_numerator(exps, coords), self.exponent)

    def turn_numerator(self, exps: Sequence[int], coords: Sequence[int]) -> int:
        """Numerator of the turn over the group exponent."""
        total = 0
        for u, c, o in zip(exps, coords, self.orders):
            total += u * c * (self.exponent // o)
        return total % self.exponent

    def residue_table(self, exps: Sequence[int]) -> np.ndarray:
        """Array ``tbl[x mod M]`` of turn numerators (units only; others -1)."""
        if self.modulus > TABLE_LIMIT:
            raise ValueError("modulus too large for a residue table")
        M = self.modulus
        tbl = np.full(M, -1, dtype=np.int64)
        if self.p != 2:
            (o,) = self.orders
            step = self.exponent // o * exps[0]
            x = 1
            for i in range(o):
                tbl[x] = i * step % self.exponent
                x = x * self.generator % M
        elif self.e == 1:
            tbl[1] = 0
        elif self.e == 2:
            tbl[1] = 0
            tbl[3] = exps[0] * (self.exponent // 2) % self.exponent
        else:
            o = self.orders[1]
            x = 1
            for t in range(o):
                for s in (0, 1):
                    y = x if s == 0 else (-x) % M
                    tbl[y] = self.turn_numerator(exps, (s, t))
                x = x * 5 % M
        return tbl

    def separating(self, b: int, d: int) -> Tuple[int, ...]:
        """First character (in enumeration order) with chi(b) != chi(d)."""
        cb, cd = self.coordinates(b), self.coordinates(d)
        for exps in self.characters():
            if self.turn_numerator(exps, cb) != self.turn_numerator(exps, cd):
                return exps
        raise ValueError(f"no character mod {self.modulus} separates {b} and {d}")
