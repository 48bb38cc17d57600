"""Unit-modulus completely multiplicative functions and Diophantine scans.

Values are *turns*: f(n) = exp(2 pi i * turn).  Exact turns are Fractions in
[0, 1); real turns are mpmath numbers.  |f(x) - f(y)| = 2|sin(pi (s - t))|.
"""

from __future__ import annotations

import math
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from typing import Dict, List, Optional, Sequence, Tuple, Union

import mpmath
import numpy as np

from . import _core
from .arith import factorize, to_decimal, vp_int
from .characters import TABLE_LIMIT, CharacterGroup
from .ratio_sets import MoebiusParams, value_at

DEFAULT_PRECISION_BITS = 128

Turn = Union[Fraction, mpmath.mpf]


@dataclass(frozen=True)
class ArchChar:
    """f(n) = n^(it)."""

    t: mpmath.mpf
    label: str = ""

    @classmethod
    def of(cls, t, label: str = "") -> "ArchChar":
        with mpmath.workprec(DEFAULT_PRECISION_BITS):
            return cls(mpmath.mpf(t), label or str(t))


@dataclass(frozen=True)
class ModDirichlet:
    """A character mod p^e (exponent tuple ``exps``) redefined to be 1 at p."""

    p: int
    e: int
    exps: Tuple[int, ...]

    @property
    def modulus(self) -> int:
        return self.p**self.e

    @property
    def group(self) -> CharacterGroup:
        return _group(self.p, self.e)


@dataclass(frozen=True)
class RootChar:
    """f(p) = exp(pi i / k), f(q) = 1 for every other prime q."""

    p: int
    k: int


@dataclass(frozen=True)
class Custom:
    """Values on primes given explicitly; ``default`` for all other primes."""

    assignments: Tuple[Tuple[int, Turn], ...] = ()
    default: Turn = Fraction(0)

    @classmethod
    def of(cls, assignments: Optional[Dict[int, Turn]] = None, default: Turn = Fraction(0)):
        items = tuple(sorted((q, _norm_turn(t)) for q, t in (assignments or {}).items()))
        return cls(items, _norm_turn(default))

    def value(self, q: int) -> Turn:
        for prime, t in self.assignments:
            if prime == q:
                return t
        return self.default

    @property
    def exact(self) -> bool:
        return all(isinstance(t, Fraction) for _, t in self.assignments) and isinstance(
            self.default, Fraction
        )


CMFSpec = Union[ArchChar, ModDirichlet, RootChar, Custom]


@lru_cache(maxsize=64)
def _group(p: int, e: int) -> CharacterGroup:
    return CharacterGroup(p, e)


def _norm_turn(t) -> Turn:
    if isinstance(t, (int, Fraction)):
        return Fraction(t) % 1
    x = mpmath.mpf(t)
    return x - mpmath.floor(x)


CONSTANT_ONE = Custom.of({}, Fraction(0))


def _real(t: Turn):
    return mpmath.mpf(t.numerator) / t.denominator if isinstance(t, Fraction) else t


def add_turns(s: Turn, t: Turn) -> Turn:
    if isinstance(s, Fraction) and isinstance(t, Fraction):
        return (s + t) % 1
    with mpmath.workprec(DEFAULT_PRECISION_BITS):
        return _norm_turn(_real(s) + _real(t))


def sub_turns(s: Turn, t: Turn) -> Turn:
    if isinstance(s, Fraction) and isinstance(t, Fraction):
        return (s - t) % 1
    with mpmath.workprec(DEFAULT_PRECISION_BITS):
        return _norm_turn(_real(s) - _real(t))


def circular(s: Turn) -> Turn:
    """Distance of a turn to the nearest integer."""
    s = _norm_turn(s)
    return min(s, 1 - s)


def chord(s: Turn) -> float:
    """|exp(2 pi i s) - 1|."""
    if isinstance(s, Fraction):
        c = circular(s)
        if c == Fraction(1, 2):
            return 2.0
        if c == 0:
            return 0.0
        return 2 * math.sin(math.pi * float(c))
    with mpmath.workprec(DEFAULT_PRECISION_BITS):
        return float(2 * abs(mpmath.sin(mpmath.pi * s)))


def evaluate(f: CMFSpec, n: int, precision_bits: int = DEFAULT_PRECISION_BITS) -> Turn:
    """The turn of f(n)."""
    if n < 1:
        raise ValueError("n must be >= 1")
    if isinstance(f, RootChar):
        return Fraction(vp_int(f.p, n), 2 * f.k) % 1
    if isinstance(f, ModDirichlet):
        v = vp_int(f.p, n)
        m = n // f.p**v
        return f.group.turn(f.exps, m)
    if isinstance(f, ArchChar):
        if n == 1:
            return Fraction(0)
        with mpmath.workprec(precision_bits):
            x = f.t * mpmath.log(n) / (2 * mpmath.pi)
            return x - mpmath.floor(x)
    if isinstance(f, Custom):
        total: Turn = Fraction(0)
        for q, e in factorize(n):
            for _ in range(e):
                total = add_turns(total, f.value(q))
        return total
    raise TypeError(f"unknown function spec {f!r}")


def gap(f: CMFSpec, x: int, y: int) -> float:
    """|f(x) - f(y)|."""
    return chord(sub_turns(evaluate(f, x), evaluate(f, y)))


# --------------------------------------------------------------------------
# witnesses


def witness_for(params: MoebiusParams, case=None) -> CMFSpec:
    """A function with liminf |f(an+b) - f(cn+d)| > 0 (non-recurrent params only)."""
    from .classify import determine_case

    if case is None:
        case = determine_case(params)
    if case is None:
        raise ValueError(f"{params} is empty or recurrent; no witness exists")
    a, b, c, d = params.a, params.b, params.c, params.d
    if case.label == "i":
        with mpmath.workprec(DEFAULT_PRECISION_BITS):
            t = mpmath.pi / mpmath.log(mpmath.mpf(a) / c)
        return ArchChar(t, f"pi/log({a}/{c})")
    p = case.p
    if case.label == "iii":
        return RootChar(p, abs(vp_int(p, b) - vp_int(p, d)))
    v = vp_int(p, b)
    b1, d1 = b // p**v, d // p**v
    k = vp_int(p, b1 - d1)
    grp = _group(p, k + 1)
    exps = grp.separating(b1, d1)
    return ModDirichlet(p, k + 1, tuple(exps))


def constant_gap(f: CMFSpec, params: MoebiusParams) -> Optional[Fraction]:
    """Circular turn distance of the gap when it is provably constant in n."""
    from .classify import determine_case

    case = determine_case(params)
    if case is None:
        return None
    if isinstance(f, RootChar) and case.label == "iii":
        return Fraction(1, 2)
    if isinstance(f, ModDirichlet) and case.label == "ii":
        v = vp_int(f.p, params.b)
        b1, d1 = params.b // f.p**v, params.d // f.p**v
        return circular(f.group.turn(f.exps, b1) - f.group.turn(f.exps, d1))
    return None


# --------------------------------------------------------------------------
# bulk evaluation


def _prime_numerators(f: CMFSpec, spf: np.ndarray) -> Tuple[np.ndarray, int]:
    size = len(spf)
    idx = np.arange(size, dtype=np.int64)
    primes = idx[(spf == idx) & (idx >= 2)]
    vals = np.zeros(size, dtype=np.int64)
    if isinstance(f, RootChar):
        D = 2 * f.k
        if f.p < size:
            vals[f.p] = 1
        return vals, D
    if isinstance(f, ModDirichlet):
        grp = f.group
        D = grp.exponent
        M = grp.modulus
        if M <= TABLE_LIMIT:
            tbl = grp.residue_table(f.exps)
            vals[primes] = tbl[primes % M]
        else:
            for q in primes.tolist():
                if q != f.p:
                    vals[q] = grp.turn_numerator(f.exps, grp.coordinates(q))
        if f.p < size:
            vals[f.p] = 0
        return vals, D
    if isinstance(f, Custom):
        D = math.lcm(f.default.denominator, *(t.denominator for _, t in f.assignments))
        vals[primes] = f.default.numerator * (D // f.default.denominator)
        for q, t in f.assignments:
            if q < size:
                vals[q] = t.numerator * (D // t.denominator)
        return vals, D
    raise TypeError(f"{f!r} has no exact bulk evaluation")


def exact_turn_table(f: CMFSpec, limit: int) -> Tuple[np.ndarray, int]:
    """Numerators h[n] (n <= limit) with f(n) = exp(2 pi i h[n]/D), via the sieve."""
    spf = _core.spf_sieve(limit)
    vals, D = _prime_numerators(f, spf)
    return _core.additive_table(spf, vals, D), D


def _is_exact(f: CMFSpec) -> bool:
    return isinstance(f, (RootChar, ModDirichlet)) or (isinstance(f, Custom) and f.exact)


def _gaps(f: CMFSpec, X: np.ndarray, Y: np.ndarray):
    """(chord array, exact circular numerators or None, D)."""
    if len(X) == 0:
        return np.zeros(0), None, None
    if _is_exact(f):
        h, D = exact_turn_table(f, int(max(X.max(), Y.max())))
        delta = (h[X] - h[Y]) % D
        circ = np.minimum(delta, D - delta)
        chords = 2 * np.sin(np.pi * circ / D)
        chords[2 * circ == D] = 2.0
        return chords, circ, D
    if isinstance(f, ArchChar):
        ratio = np.log1p((X - Y).astype(np.float64) / Y.astype(np.float64))
        phase = float(f.t) * ratio / (2 * math.pi)
        return 2 * np.abs(np.sin(np.pi * phase)), None, None
    chords = np.array([gap(f, int(x), int(y)) for x, y in zip(X.tolist(), Y.tolist())])
    return chords, None, None


def _progressions(params: MoebiusParams, lo: int, hi: int):
    n = np.arange(lo, hi + 1, dtype=np.int64)
    X = params.a * n + params.b
    Y = params.c * n + params.d
    ok = (X >= 1) & (Y >= 1)
    return n[ok], X[ok], Y[ok]


@dataclass
class ScanReport:
    params: MoebiusParams
    spec: CMFSpec
    N: int
    start: int
    count: int
    min_gap: float
    argmin: Optional[int]
    max_gap: float
    tail_min: float
    tail_argmin: Optional[int]
    min_gap_turn: Optional[Fraction] = None
    tail_min_turn: Optional[Fraction] = None

    @property
    def exact(self) -> bool:
        return self.min_gap_turn is not None


def _scan_block(args):
    f, params, lo, hi = args
    n, X, Y = _progressions(params, lo, hi)
    chords, circ, D = _gaps(f, X, Y)
    return n, chords, circ, D


def _blocks(lo: int, hi: int, workers: int) -> List[Tuple[int, int]]:
    if workers <= 1 or hi - lo < 10_000:
        return [(lo, hi)]
    edges = np.linspace(lo, hi + 1, workers + 1).astype(np.int64).tolist()
    return [(s, e - 1) for s, e in zip(edges[:-1], edges[1:]) if e > s]


def _run_blocks(f, params, lo, hi, workers):
    jobs = [(f, params, s, e) for s, e in _blocks(lo, hi, workers)]
    if len(jobs) == 1:
        parts = [_scan_block(jobs[0])]
    else:
        with ProcessPoolExecutor(max_workers=workers) as ex:
            parts = list(ex.map(_scan_block, jobs))
    n = np.concatenate([p[0] for p in parts])
    chords = np.concatenate([p[1] for p in parts])
    Ds = {p[3] for p in parts if p[3] is not None}
    if parts and all(p[2] is not None for p in parts) and len(Ds) == 1:
        circ = np.concatenate([p[2] for p in parts])
        D = Ds.pop()
    else:
        circ, D = None, None
    return n, chords, circ, D


def dio_scan(f: CMFSpec, params: MoebiusParams, N: int, start: int = 1,
             workers: int = 1) -> ScanReport:
    """min of |f(an+b) - f(cn+d)| over start <= n <= N with both arguments >= 1."""
    if N < start or start < 1:
        raise ValueError("need 1 <= start <= N")
    n, chords, circ, D = _run_blocks(f, params, start, N, workers)
    if len(n) == 0:
        return ScanReport(params, f, N, start, 0, math.nan, None, math.nan, math.nan, None)
    tail = n >= max(start, N // 2)
    if circ is not None:
        # exact ordering by circular distance; chord is monotone in it
        i = int(np.argmin(circ))
        ti = int(np.flatnonzero(tail)[np.argmin(circ[tail])])
        min_turn, tail_turn = Fraction(int(circ[i]), D), Fraction(int(circ[ti]), D)
    else:
        i = int(np.argmin(chords))
        ti = int(np.flatnonzero(tail)[np.argmin(chords[tail])])
        min_turn = tail_turn = None
    return ScanReport(
        params, f, N, start, len(n),
        float(chords[i]), int(n[i]), float(chords.max()),
        float(chords[ti]), int(n[ti]), min_turn, tail_turn,
    )


# --------------------------------------------------------------------------
# density of the approximation set


def cells_for(eps: float) -> int:
    """Cell count k: same cell for every function forces |f(x)/f(y) - 1| < eps."""
    if eps <= 0:
        raise ValueError("eps must be positive")
    if eps > 2:
        return 1
    k = 2
    while not _chord_of_cell(k) < eps:
        k += 1
    return k


def _chord_of_cell(k: int):
    """|exp(2 pi i/k) - 1|; exact where it is rational (k = 2, 6)."""
    if k == 2:
        return Fraction(2)
    if k == 6:
        return Fraction(1)
    with mpmath.workprec(DEFAULT_PRECISION_BITS):
        return 2 * mpmath.sin(mpmath.pi / k)


@dataclass
class SymbolicBound:
    """Lower density bound 1/(C * H_K^2), K = k^r + 1, kept symbolic."""

    k: int
    r: int
    K: int
    A: int
    B: int
    C: int

    @property
    def expression(self) -> str:
        return (
            f"1/({self.C} * H_{self.K}^2), H_2 = {self.A + self.B}, "
            f"H_(j+1) = {2 * self.A * self.B}*(M_j + H_j)!, "
            f"M_j = prod_(1<=h<=H_j) ({self.B}h+1)"
        )


def symbolic_bound(params: MoebiusParams, r: int, eps: float) -> Optional[SymbolicBound]:
    from .classify import Verdict, classify

    cl = classify(params)
    if cl.verdict is not Verdict.RECURRENT:
        return None
    red = cl.reduction
    k = cells_for(eps)
    return SymbolicBound(k, r, k**r + 1, red.A, red.B, red.C)


@dataclass
class DensityReport:
    params: MoebiusParams
    specs: Sequence[CMFSpec]
    eps: float
    N: int
    count: int
    density: float
    block_bounds: List[Tuple[int, int]]
    block_counts: List[int]
    bound: Optional[SymbolicBound] = None

    @property
    def block_densities(self) -> List[float]:
        return [c / (hi - lo + 1) if hi >= lo else 0.0
                for c, (lo, hi) in zip(self.block_counts, self.block_bounds)]


def aset_scan(fs: Sequence[CMFSpec], eps: float, params: MoebiusParams, N: int,
              workers: int = 1, blocks: int = 10) -> DensityReport:
    """|{n <= N : |f_j(an+b) - f_j(cn+d)| < eps for all j}| and block densities."""
    if not fs:
        raise ValueError("need at least one function")
    inside = None
    n = None
    for f in fs:
        n_f, chords, _, _ = _run_blocks(f, params, 1, N, workers)
        hit = chords < eps
        if inside is None:
            n, inside = n_f, hit
        else:
            inside &= hit
    members = n[inside]
    cuts = [max(1, i * N // blocks) for i in range(blocks)] + [N + 1]
    bounds = [(cuts[i], cuts[i + 1] - 1) for i in range(blocks)]
    counts = [int(((members >= lo) & (members <= hi)).sum()) for lo, hi in bounds]
    return DensityReport(
        params, list(fs), eps, N, int(len(members)), len(members) / N, bounds, counts,
        symbolic_bound(params, len(fs), eps),
    )


# --------------------------------------------------------------------------
# pigeonhole pairs


def cell(turn: Turn, k: int) -> int:
    turn = _norm_turn(turn)
    if isinstance(turn, Fraction):
        return math.floor(turn * k) + 1
    return int(mpmath.floor(turn * k)) + 1


@dataclass
class PigeonholeResult:
    window: Tuple[int, int]
    needed: int
    clique: Tuple[int, ...] = ()
    pair: Optional[Tuple[int, int, int]] = None  # (x, y, n): x/y = value_at(n)
    max_gap: Optional[float] = None
    guaranteed: bool = False
    obstruction: str = ""


def pigeonhole_pairs(fs: Sequence[CMFSpec], eps: float, params: MoebiusParams,
                     windows: Sequence[Tuple[int, int]]) -> List[PigeonholeResult]:
    """In each window, a same-colored adjacent pair inside a maximum clique."""
    from .classify import criterion_holds
    from .graph import build_window, max_cliques

    if params.a != params.c or not criterion_holds(params):
        raise ValueError("pigeonhole pairs need recurrent parameters with a == c")
    k = cells_for(eps)
    needed = k ** len(fs) + 1
    out = []
    for lo, hi in windows:
        res = PigeonholeResult((lo, hi), needed)
        g = build_window(params, lo, hi)
        cliques = [c for c in max_cliques(g) if len(c) >= 2]
        for cert in cliques:
            vs = cert.vertices
            colors = [tuple(cell(evaluate(f, v), k) for f in fs) for v in vs]
            hit = next(((i, j) for i in range(len(vs)) for j in range(i + 1, len(vs))
                        if colors[i] == colors[j]), None)
            if hit is None:
                continue
            i, j = hit
            w = cert.witnesses[(i, j)]
            x, y = (vs[j], vs[i]) if w.forward else (vs[i], vs[j])
            assert value_at(params, w.n) == Fraction(x, y)
            res.clique = vs
            res.pair = (x, y, w.n)
            res.max_gap = max(gap(f, x, y) for f in fs)
            res.guaranteed = len(vs) >= needed
            break
        if res.pair is None:
            omega = len(cliques[0]) if cliques else 1
            res.obstruction = (
                f"no same-colored adjacent pair among maximum cliques (omega = {omega}); "
                f"a clique of size {needed} is needed to force one"
            )
        out.append(res)
    return out


def describe(f: CMFSpec) -> Dict[str, object]:
    """Structured, JSON-ready description of a function spec."""
    if isinstance(f, ArchChar):
        return {"kind": "ArchChar", "t": mpmath.nstr(f.t, 40), "label": f.label}
    if isinstance(f, ModDirichlet):
        return {"kind": "ModDirichlet", "p": f.p, "modulus": to_decimal(f.modulus),
                "exponents": list(f.exps), "value_at_p": 1}
    if isinstance(f, RootChar):
        return {"kind": "RootChar", "p": f.p, "k": f.k, "value_at_p": f"exp(pi i/{f.k})"}
    if isinstance(f, Custom):
        return {"kind": "Custom",
                "assignments": {str(q): str(t) for q, t in f.assignments},
                "default": str(f.default)}
    raise TypeError(f)
