"""Pure Python / numpy versions of the compiled kernels in ``_kernels.pyx``.

Both implementations return identical arrays (same dtype, same order).
"""

from __future__ import annotations

import numpy as np


def spf_sieve(limit: int) -> np.ndarray:
    spf = np.zeros(limit + 1, dtype=np.int64)
    if limit >= 1:
        spf[1] = 1
    for i in range(2, int(limit**0.5) + 1):
        if spf[i] == 0:
            block = spf[i * i :: i]
            block[block == 0] = i
    rest = np.flatnonzero(spf == 0)
    rest = rest[rest >= 2]
    spf[rest] = rest
    return spf


def window_edges(a, b, c, d, lo, hi, n_lo, n_hi):
    n = np.arange(n_lo, n_hi + 1, dtype=np.int64)
    num = a * n + b
    den = c * n + d
    ok = (den != 0) & (num != den) & (num != 0) & ((num > 0) == (den > 0))
    n, num, den = n[ok], num[ok], den[ok]
    g = np.gcd(num, den)
    u = np.abs(num // g)
    v = np.abs(den // g)
    fwd = u > v
    top = np.where(fwd, u, v)
    bot = np.where(fwd, v, u)
    qlo = (lo + bot - 1) // bot
    qhi = hi // top
    cnt = np.maximum(qhi - qlo + 1, 0)
    keep = cnt > 0
    n, top, bot, qlo, cnt, fwd = n[keep], top[keep], bot[keep], qlo[keep], cnt[keep], fwd[keep]
    total = int(cnt.sum())
    idx = np.repeat(np.arange(len(cnt)), cnt)
    starts = np.cumsum(cnt) - cnt
    q = qlo[idx] + (np.arange(total, dtype=np.int64) - starts[idx])
    return (
        q * bot[idx],
        q * top[idx],
        n[idx].astype(np.int64),
        fwd[idx].astype(np.uint8),
    )


def padic_colors(p, k, lo, hi):
    m = np.arange(lo, hi + 1, dtype=np.int64)
    mask = m % p == 0
    while mask.any():
        m[mask] //= p
        mask = m % p == 0
    return m % (p ** (k + 1))


def parity_colors(p, k, lo, hi):
    m = np.arange(lo, hi + 1, dtype=np.int64)
    v = np.zeros_like(m)
    mask = m % p == 0
    while mask.any():
        m[mask] //= p
        v[mask] += 1
        mask = m % p == 0
    return (v // k) & 1


def additive_table(spf, prime_vals, modulus):
    size = len(spf)
    h = [0] * size
    s = spf.tolist()
    pv = prime_vals.tolist()
    for n in range(2, size):
        q = s[n]
        h[n] = (h[n // q] + pv[q]) % modulus
    return np.array(h, dtype=np.int64)
