"""Explicit arbitrarily-large cliques in G(a,b,a,d) when a | lcm(b, d).

Pipeline: :func:`normalize` (swap so b > d, strip gcd) -> :func:`reduce`
(affine embedding of R(A,B,A,B-1), A = B(B-1), into R(a,b,a,d)) ->
:func:`construct_clique` (recursive construction in G(a,b,a,b-1) with
a = b(b-1)).  Every returned clique is re-verified exactly.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import List, Optional, Tuple

from .arith import DEFAULT_FACTORIAL_CAP, ResourceLimitError, egcd, factorial, lcm0
from .graph import CliqueCert, clique_cert
from .ratio_sets import MoebiusParams, value_at

DEFAULT_LEVEL_CAP = 3
IDENTITY_CHECKS = 100


class VerificationError(AssertionError):
    """An internally produced certificate failed its exact re-check."""


@dataclass(frozen=True)
class Normalized:
    a: int
    b: int
    d: int
    g: int
    swapped: bool


def normalize(a: int, b: int, d: int) -> Normalized:
    """Same graph, with b > d and gcd(a, b - d) = 1."""
    if a < 1:
        raise ValueError("a must be positive")
    if b == d:
        raise ValueError("b == d gives an empty ratio set")
    if lcm0(b, d) % a:
        raise ValueError(f"{a} does not divide lcm({b}, {d})")
    swapped = b < d
    if swapped:
        b, d = d, b
    g = math.gcd(a, math.gcd(b, d))
    out = Normalized(a // g, b // g, d // g, g, swapped)
    if math.gcd(out.a, out.b - out.d) != 1 or lcm0(out.b, out.d) % out.a:
        raise VerificationError(f"normalization of {(a, b, d)} left gcd(a, b-d) != 1")
    return out


@dataclass(frozen=True)
class ReductionCert:
    """n = C*m + D maps witnesses of R(A,B,A,B-1) to witnesses of R(a,b,a,d),
    where (a,b,d) are the normalized parameters."""

    a: int
    b: int
    d: int
    g: int
    swapped: bool
    j: int
    k_bez: int
    T: int
    A: int
    B: int
    J: int
    C: int
    D: int

    @property
    def params(self) -> MoebiusParams:
        return MoebiusParams(self.a, self.b, self.a, self.d)

    @property
    def target(self) -> MoebiusParams:
        return MoebiusParams(self.A, self.B, self.A, self.B - 1)

    def check_identity(self, m_max: int = IDENTITY_CHECKS) -> bool:
        """value_at((a,b,a,d), Cm+D) == value_at((A,B,A,B-1), m) for m = 1..m_max."""
        src, dst = self.params, self.target
        for m in range(1, m_max + 1):
            left = value_at(src, self.C * m + self.D)
            if left is None or left != value_at(dst, m):
                return False
        return True


def reduce(a: int, b: int, d: int, normalized: Optional[Normalized] = None) -> ReductionCert:
    """Reduction data for normalized parameters (b > d, gcd(a, b-d) = 1, a | bd)."""
    if not (b > d and math.gcd(a, b - d) == 1 and (b * d) % a == 0):
        raise ValueError("reduce needs b > d, gcd(a, b - d) = 1 and a | bd")
    g, j, k = egcd(a, b - d)
    assert g == 1
    # shift along the solution line j -> j - s(b-d), k -> k + s*a until b*j <= 0
    if b * j > 0:
        if b > 0:
            s = -(-j // (b - d))  # least s >= 0 with j - s(b-d) <= 0
            j, k = j - s * (b - d), k + s * a
        else:
            s = -(j // (b - d))  # least s >= 0 with j + s(b-d) >= 0
            j, k = j + s * (b - d), k - s * a
    assert a * j + (b - d) * k == 1 and b * j <= 0
    bk = b * k
    T = 0 if bk >= 2 else -(-(2 - bk) // a)
    B = a * T + bk
    A = B * (B - 1)
    if A % a:
        raise VerificationError("a does not divide B(B-1)")
    J = A // a
    C = (b - d) * J
    D = (b - d) * T - b * j
    nz = normalized or Normalized(a, b, d, 1, False)
    cert = ReductionCert(a, b, d, nz.g, nz.swapped, j, k, T, A, B, J, C, D)
    if not cert.check_identity():
        raise VerificationError(f"reduction identity failed for {(a, b, d)}")
    return cert


@dataclass
class Level:
    """One step of the recursive construction (clique of size ``k``)."""

    k: int
    H: int
    vertices: Tuple[int, ...]
    M: Optional[int] = None
    r: Optional[int] = None
    multiplier: Optional[int] = None
    multiplier_expr: str = ""
    ell: Optional[int] = None
    offsets: Tuple[int, ...] = ()


def level_two_window(b: int) -> int:
    return b * (b - 1) + b


_MAX_PRODUCT_TERMS = 10**6


def _M(b: int, H: int) -> int:
    if H > _MAX_PRODUCT_TERMS:
        raise ResourceLimitError(f"M = prod_(1<=h<={H}) (bh+1) is too large to evaluate")
    out = 1
    for h in range(1, H + 1):
        out *= b * h + 1
    return out


def _build(b: int, k: int, base: int, factorial_cap: int, multiplier: str,
           levels: List[Level]) -> Level:
    a = b * (b - 1)
    if k == 2:
        # least n >= 1 with a*n + b - 1 > base
        n = max(1, (base - b + 1) // a + 1)
        lv = Level(2, level_two_window(b), (a * n + b - 1, a * n + b), ell=n)
        levels.append(lv)
        return lv

    inner_H = _window_size(b, k - 1, factorial_cap, multiplier)
    M = _M(b, inner_H)
    r = (M - 1) // b
    assert (M - 1) % b == 0
    inner = _build(b, k - 1, (b - 1) * r, factorial_cap, multiplier, levels)
    offsets = tuple(v - (b - 1) * r for v in inner.vertices)
    assert all(1 <= h <= inner_H for h in offsets)

    X, expr = _multiplier(b, inner_H, M, factorial_cap, multiplier)
    step = a * b * X
    # least ell >= 1 placing a*n_ell + b - 1 above base
    ell = max(1, (base - b + 1 - a * r) // step + 1)
    n_ell = b * X * ell + r
    verts = (a * n_ell + b - 1,) + tuple(a * n_ell + b * h for h in offsets)
    H = _window_size(b, k, factorial_cap, multiplier)
    lv = Level(k, H, tuple(sorted(verts)), M, r, X, expr, ell, offsets)
    levels.append(lv)
    return lv


def _multiplier(b: int, inner_H: int, M: int, factorial_cap: int, mode: str) -> Tuple[int, str]:
    """The spacing factor: (M + H)! when affordable, else lcm(1..bH+1)."""
    if mode not in ("auto", "factorial", "lcm"):
        raise ValueError(f"unknown multiplier mode {mode!r}")
    if mode == "factorial" or (mode == "auto" and M + inner_H <= factorial_cap):
        return factorial(M + inner_H, factorial_cap), f"({M + inner_H})!"
    top = b * inner_H + 1
    return math.lcm(*range(1, top + 1)), f"lcm(1..{top})"


def _window_size(b: int, k: int, factorial_cap: int, multiplier: str) -> int:
    """H_k: every window of this length holds a k-clique of the construction."""
    a = b * (b - 1)
    if k == 2:
        return level_two_window(b)
    inner_H = _window_size(b, k - 1, factorial_cap, multiplier)
    M = _M(b, inner_H)
    X, _ = _multiplier(b, inner_H, M, factorial_cap, multiplier)
    if multiplier != "lcm" and (multiplier == "factorial" or M + inner_H <= factorial_cap):
        return 2 * a * b * X
    return a * (b * X + (M - 1) // b) + b * inner_H


def construct_clique(
    b: int,
    k: int,
    base: int = 0,
    factorial_cap: int = DEFAULT_FACTORIAL_CAP,
    level_cap: int = DEFAULT_LEVEL_CAP,
    multiplier: str = "auto",
    crosscheck: bool = False,
) -> CliqueCert:
    """A k-clique of G(a,b,a,b-1), a = b(b-1), inside (base, base + H_k].

    With ``crosscheck=True`` every inner window small enough for exhaustive
    search is also searched with :func:`mobrec.graph.max_cliques`.
    """
    if b < 2:
        raise ValueError("b must be >= 2")
    if k < 2:
        raise ValueError("k must be >= 2")
    if base < 0:
        raise ValueError("base must be >= 0")
    if k > level_cap:
        raise ResourceLimitError(
            f"k = {k} exceeds the level cap {level_cap}; "
            f"H_{k} = 2ab(M_{k-1} + H_{k-1})! with M_{k-1} = prod_(1<=h<=H_{k-1}) (bh+1)"
        )
    levels: List[Level] = []
    top = _build(b, k, base, factorial_cap, multiplier, levels)
    params = MoebiusParams(b * (b - 1), b, b * (b - 1), b - 1)
    cert = clique_cert(params, top.vertices)
    if not cert.verify():
        raise VerificationError("constructed clique failed verification")
    if not all(base < v <= base + top.H for v in top.vertices):
        raise VerificationError("constructed clique left its window")
    if crosscheck:
        _crosscheck_levels(params, levels)
    cert.meta.update(
        construction="recursive", b=b, k=k, base=base, H=top.H, levels=levels,
        multiplier=top.multiplier_expr or None,
    )
    return cert


CROSSCHECK_WINDOW = 5_000


def _crosscheck_levels(params: MoebiusParams, levels: List[Level]) -> None:
    from .graph import build_window, max_cliques

    b = params.b
    # levels are stored innermost first
    for inner, lv in zip(levels, levels[1:]):
        lo = (b - 1) * lv.r + 1
        hi = (b - 1) * lv.r + inner.H
        if hi - lo + 1 > CROSSCHECK_WINDOW:
            continue
        found = max_cliques(build_window(params, lo, hi), size_limit=inner.k)
        if len(found[0]) < inner.k:
            raise VerificationError(f"no {inner.k}-clique found in [{lo}, {hi}]")


def big_clique(
    a: int, b: int, d: int, k: int,
    factorial_cap: int = DEFAULT_FACTORIAL_CAP,
    level_cap: int = DEFAULT_LEVEL_CAP,
    multiplier: str = "auto",
    base: int = 0,
) -> CliqueCert:
    """A verified k-clique of G(a,b,a,d) for a | lcm(b,d), b != d."""
    nz = normalize(a, b, d)
    red = reduce(nz.a, nz.b, nz.d, nz)
    inner = construct_clique(red.B, k, base, factorial_cap, level_cap, multiplier)
    params = MoebiusParams(a, b, a, d)
    cert = clique_cert(params, inner.vertices)
    if not cert.verify():
        raise VerificationError("clique failed verification against the original parameters")
    cert.meta.update(inner.meta)
    cert.meta["reduction"] = red
    return cert
