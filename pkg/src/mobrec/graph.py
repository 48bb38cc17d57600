"""Windowed ratio graphs: adjacency, edge enumeration, cliques and coloring checks.

Vertices are positive integers; ``{m, n}`` is an edge when ``m/n`` or ``n/m``
lies in R(a,b,c,d).  An edge is stored as ``(small, large, witness, forward)``
where ``forward`` means ``large/small == value_at(witness)`` and otherwise
``small/large == value_at(witness)``.
"""

from __future__ import annotations

import math
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from typing import Dict, Iterator, List, NamedTuple, Optional, Sequence, Set, Tuple

import numpy as np
from scipy import sparse

from . import _core
from .ratio_sets import MoebiusParams, is_empty, member, tail_start, value_at

DEFAULT_WINDOW_CAP = 2_000_000
_INT64_SAFE = 1 << 62


class PairWitness(NamedTuple):
    forward: bool
    n: int


def _member_reduced(params: MoebiusParams, u: int, v: int) -> Optional[int]:
    """member() for an already reduced u/v, without Fraction overhead."""
    a, b, c, d = params.a, params.b, params.c, params.d
    coef = a * v - c * u
    const = d * u - b * v
    if coef == 0:
        if const != 0 or u == v:
            return None
        return 1 if c + d != 0 else 2
    if const % coef:
        return None
    n = const // coef
    if n < 1:
        return None
    num, den = a * n + b, c * n + d
    # n solves the linear equation, so the ratio is u/v unless a term vanishes
    if den == 0 or num == 0 or (num > 0) != (den > 0) or num == den:
        return None
    return n


def adjacent(params: MoebiusParams, m: int, n: int) -> Optional[PairWitness]:
    """Witness that {m, n} is an edge, preferring the forward orientation."""
    if m < 1 or n < 1:
        raise ValueError("vertices must be positive")
    if m == n:
        return None
    big, small = (m, n) if m > n else (n, m)
    g = math.gcd(big, small)
    u, v = big // g, small // g
    w = _member_reduced(params, u, v)
    if w is not None:
        return PairWitness(True, w)
    w = _member_reduced(params, v, u)
    if w is not None:
        return PairWitness(False, w)
    return None


def check_pair(params: MoebiusParams, small: int, large: int, wit: PairWitness) -> bool:
    """Exact re-verification of one stored pair witness."""
    r = value_at(params, wit.n)
    if r is None:
        return False
    if wit.forward:
        return r.numerator * small == r.denominator * large
    return r.numerator * large == r.denominator * small


@dataclass
class CliqueCert:
    params: MoebiusParams
    vertices: Tuple[int, ...]
    witnesses: Dict[Tuple[int, int], PairWitness] = field(default_factory=dict)
    meta: Dict[str, object] = field(default_factory=dict)

    def __len__(self):
        return len(self.vertices)

    def verify(self, params: Optional[MoebiusParams] = None) -> bool:
        """Every pair adjacent, using the stored witnesses (exact)."""
        params = params or self.params
        vs = self.vertices
        if list(vs) != sorted(set(vs)) or any(v < 1 for v in vs):
            return False
        for i in range(len(vs)):
            for j in range(i + 1, len(vs)):
                wit = self.witnesses.get((i, j))
                if wit is None or not check_pair(params, vs[i], vs[j], wit):
                    return False
        return True


def clique_cert(params: MoebiusParams, vertices: Sequence[int], **meta) -> CliqueCert:
    vs = tuple(sorted(vertices))
    wits = {}
    for i in range(len(vs)):
        for j in range(i + 1, len(vs)):
            w = adjacent(params, vs[i], vs[j])
            if w is None:
                raise ValueError(f"{vs[i]} and {vs[j]} are not adjacent in G{params}")
            wits[(i, j)] = w
    return CliqueCert(params, vs, wits, dict(meta))


@dataclass
class WindowGraph:
    params: MoebiusParams
    lo: int
    hi: int
    small: np.ndarray
    large: np.ndarray
    witness: np.ndarray
    forward: np.ndarray
    _adj: Optional[Dict[int, Set[int]]] = field(default=None, repr=False)

    @property
    def edge_count(self) -> int:
        return len(self.small)

    def edges(self) -> Iterator[Tuple[int, int]]:
        return zip(self.small.tolist(), self.large.tolist())

    def edge_set(self) -> Set[Tuple[int, int]]:
        return set(self.edges())

    def vertices(self) -> range:
        return range(self.lo, self.hi + 1)

    def adjacency(self) -> Dict[int, Set[int]]:
        if self._adj is None:
            adj: Dict[int, Set[int]] = {}
            for s, t in self.edges():
                adj.setdefault(s, set()).add(t)
                adj.setdefault(t, set()).add(s)
            self._adj = adj
        return self._adj

    def to_sparse(self) -> sparse.csr_matrix:
        size = self.hi - self.lo + 1
        i = self.small - self.lo
        j = self.large - self.lo
        data = np.ones(2 * len(i), dtype=np.int64)
        return sparse.csr_matrix(
            (data, (np.concatenate([i, j]), np.concatenate([j, i]))), shape=(size, size)
        )

    def edge_lines(self) -> Iterator[str]:
        """``m n witness`` lines with m/n = value_at(witness)."""
        for s, t, w, f in zip(
            self.small.tolist(), self.large.tolist(), self.witness.tolist(), self.forward.tolist()
        ):
            yield f"{t} {s} {w}" if f else f"{s} {t} {w}"


def _empty_arrays():
    z = np.zeros(0, dtype=np.int64)
    return z, z.copy(), z.copy(), np.zeros(0, dtype=np.uint8)


def _witness_range(params: MoebiusParams, hi: int) -> Tuple[int, int]:
    a, b, c, d = params.a, params.b, params.c, params.d
    if params.determinant == 0:
        n = 1 if value_at(params, 1) is not None else 2
        return n, n
    # gcd(an+b, cn+d) divides ad - bc, so reduced terms are >= max(an+b, cn+d)/G
    G = abs(params.determinant)
    n_hi = (G * hi + max(abs(b), abs(d))) // max(a, c) + 1
    return 1, max(n_hi, tail_start(params))


def _dedupe(small, large, wit, fwd):
    if len(small) == 0:
        return small, large, wit, fwd
    # forward orientation first, then least witness
    order = np.lexsort((wit, 1 - fwd.astype(np.int64), large, small))
    small, large, wit, fwd = small[order], large[order], wit[order], fwd[order]
    keep = np.ones(len(small), dtype=bool)
    keep[1:] = (small[1:] != small[:-1]) | (large[1:] != large[:-1])
    return small[keep], large[keep], wit[keep], fwd[keep]


def _edges_chunk(args):
    a, b, c, d, lo, hi, n_lo, n_hi = args
    return _core.window_edges(a, b, c, d, lo, hi, n_lo, n_hi)


def build_window(
    params: MoebiusParams,
    lo: int,
    hi: int,
    method: str = "witness",
    cap: int = DEFAULT_WINDOW_CAP,
    workers: int = 1,
) -> WindowGraph:
    """All edges of G(R) inside [lo, hi].

    ``method="witness"`` enumerates witnesses n and scales the reduced ratio;
    ``method="pairs"`` tests every pair with :func:`adjacent` (slow oracle).
    """
    if not 1 <= lo <= hi:
        raise ValueError("need 1 <= lo <= hi")
    if hi - lo + 1 > cap:
        from .arith import ResourceLimitError

        raise ResourceLimitError(f"window of {hi - lo + 1} vertices exceeds cap {cap}")
    if is_empty(params):
        return WindowGraph(params, lo, hi, *_empty_arrays())
    if method == "pairs":
        rows = []
        for m in range(lo, hi + 1):
            for n in range(m + 1, hi + 1):
                w = adjacent(params, m, n)
                if w is not None:
                    rows.append((m, n, w.n, int(w.forward)))
        if not rows:
            return WindowGraph(params, lo, hi, *_empty_arrays())
        arr = np.array(rows, dtype=np.int64)
        return WindowGraph(params, lo, hi, arr[:, 0], arr[:, 1], arr[:, 2], arr[:, 3].astype(np.uint8))
    if method != "witness":
        raise ValueError(f"unknown method {method!r}")

    n_lo, n_hi = _witness_range(params, hi)
    a, b, c, d = params.a, params.b, params.c, params.d
    if max(a, c) * n_hi + max(abs(b), abs(d)) >= _INT64_SAFE or hi >= _INT64_SAFE:
        from .arith import ResourceLimitError

        raise ResourceLimitError("window enumeration would overflow 64-bit integers")
    if workers > 1 and n_hi - n_lo > 10_000:
        bounds = np.linspace(n_lo, n_hi + 1, workers + 1).astype(np.int64)
        jobs = [(a, b, c, d, lo, hi, int(s), int(e) - 1) for s, e in zip(bounds[:-1], bounds[1:]) if e > s]
        with ProcessPoolExecutor(max_workers=workers) as ex:
            parts = list(ex.map(_edges_chunk, jobs))
        arrays = [np.concatenate([p[i] for p in parts]) for i in range(4)]
    else:
        arrays = _core.window_edges(a, b, c, d, lo, hi, n_lo, n_hi)
    return WindowGraph(params, lo, hi, *_dedupe(*arrays))


def _bk_max(adj: Dict[int, Set[int]], size_limit: int) -> List[Tuple[int, ...]]:
    best = [0]
    found: List[Tuple[int, ...]] = []
    stop = [False]

    def expand(R: List[int], P: Set[int], X: Set[int]):
        if stop[0]:
            return
        if not P and not X:
            if len(R) > best[0]:
                best[0] = len(R)
                found.clear()
            if len(R) == best[0]:
                found.append(tuple(sorted(R)))
            if size_limit and len(R) >= size_limit:
                stop[0] = True
            return
        if len(R) + len(P) < best[0]:
            return
        pivot = max(P | X, key=lambda u: (len(P & adj[u]), -u))
        for v in sorted(P - adj[pivot]):
            expand(R + [v], P & adj[v], X & adj[v])
            if stop[0]:
                return
            P.discard(v)
            X.add(v)

    expand([], set(adj), set())
    return found


def max_cliques(g: WindowGraph, size_limit: int = 0) -> List[CliqueCert]:
    """All maximum cliques (lexicographic order), or the first clique of size
    ``size_limit`` when one exists and ``size_limit > 0``."""
    adj = g.adjacency()
    if not adj:
        return [CliqueCert(g.params, (v,)) for v in g.vertices()]
    cliques = _bk_max(adj, size_limit)
    if size_limit:
        hit = [c for c in cliques if len(c) >= size_limit]
        if hit:
            cliques = hit[:1]
    return [clique_cert(g.params, c) for c in sorted(set(cliques))]


def omega_window(params: MoebiusParams, lo: int, hi: int) -> int:
    g = build_window(params, lo, hi)
    return len(max_cliques(g)[0].vertices)


def greedy_chi_upper(g: WindowGraph) -> int:
    adj = g.adjacency()
    colors: Dict[int, int] = {}
    used = 0
    for v in g.vertices():
        taken = {colors[u] for u in adj.get(v, ()) if u in colors}
        c = 0
        while c in taken:
            c += 1
        colors[v] = c
        used = max(used, c + 1)
    return used


def count_triangles(g: WindowGraph) -> int:
    if g.edge_count == 0:
        return 0
    A = g.to_sparse()
    return int((A @ A).multiply(A).sum()) // 6


@dataclass
class ColoringCheck:
    edges: int
    violations: List[Tuple[int, int]]
    ambiguous: List[int]
    colors_used: int

    @property
    def ok(self) -> bool:
        return not self.violations and not self.ambiguous


def verify_coloring(g: WindowGraph, spec) -> ColoringCheck:
    """Edges whose endpoints share a color; ambiguous vertices listed apart."""
    from .colorings import colors_on

    colors = colors_on(spec, g.lo, g.hi)
    amb = np.flatnonzero(colors < 0) + g.lo
    cs = colors[g.small - g.lo]
    cl = colors[g.large - g.lo]
    bad = (cs == cl) & (cs >= 0)
    viol = list(zip(g.small[bad].tolist(), g.large[bad].tolist()))
    used = len(np.unique(colors[colors >= 0]))
    return ColoringCheck(g.edge_count, viol, amb.tolist(), used)
