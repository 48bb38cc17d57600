# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled inner loops.  Signatures mirror :mod:`mobrec._pykernels`."""

import numpy as np
cimport numpy as cnp
from libc.stdint cimport int64_t

cnp.import_array()


cdef inline int64_t _gcd(int64_t x, int64_t y) nogil:
    cdef int64_t t
    if x < 0:
        x = -x
    if y < 0:
        y = -y
    while y:
        t = x % y
        x = y
        y = t
    return x


def spf_sieve(Py_ssize_t limit):
    cdef cnp.ndarray[int64_t, ndim=1] spf = np.zeros(limit + 1, dtype=np.int64)
    cdef int64_t[::1] s = spf
    cdef Py_ssize_t i, j
    if limit >= 1:
        s[1] = 1
    for i in range(2, limit + 1):
        if s[i] == 0:
            s[i] = i
            if i <= limit // i:
                j = i * i
                while j <= limit:
                    if s[j] == 0:
                        s[j] = i
                    j += i
    return spf


def window_edges(int64_t a, int64_t b, int64_t c, int64_t d,
                 int64_t lo, int64_t hi, int64_t n_lo, int64_t n_hi):
    cdef int64_t n, num, den, g, u, v, top, bot, qlo, qhi, total = 0, pos = 0, q
    cdef bint fwd
    for n in range(n_lo, n_hi + 1):
        num = a * n + b
        den = c * n + d
        if den == 0 or num == den:
            continue
        if (num > 0) != (den > 0) or num == 0:
            continue
        g = _gcd(num, den)
        u = num // g
        v = den // g
        if u < 0:
            u = -u
            v = -v
        if u > v:
            top = u
            bot = v
        else:
            top = v
            bot = u
        qlo = (lo + bot - 1) // bot
        qhi = hi // top
        if qhi >= qlo:
            total += qhi - qlo + 1

    small_arr = np.empty(total, dtype=np.int64)
    large_arr = np.empty(total, dtype=np.int64)
    wit_arr = np.empty(total, dtype=np.int64)
    fwd_arr = np.empty(total, dtype=np.uint8)
    cdef int64_t[::1] sm = small_arr
    cdef int64_t[::1] lg = large_arr
    cdef int64_t[::1] wt = wit_arr
    cdef unsigned char[::1] fw = fwd_arr

    for n in range(n_lo, n_hi + 1):
        num = a * n + b
        den = c * n + d
        if den == 0 or num == den:
            continue
        if (num > 0) != (den > 0) or num == 0:
            continue
        g = _gcd(num, den)
        u = num // g
        v = den // g
        if u < 0:
            u = -u
            v = -v
        fwd = u > v
        if fwd:
            top = u
            bot = v
        else:
            top = v
            bot = u
        qlo = (lo + bot - 1) // bot
        qhi = hi // top
        q = qlo
        while q <= qhi:
            sm[pos] = q * bot
            lg[pos] = q * top
            wt[pos] = n
            fw[pos] = fwd
            pos += 1
            q += 1
    return small_arr, large_arr, wit_arr, fwd_arr


def padic_colors(int64_t p, int64_t k, int64_t lo, int64_t hi):
    cdef int64_t mod = 1, n, m
    cdef Py_ssize_t i
    for i in range(k + 1):
        mod *= p
    out = np.empty(hi - lo + 1, dtype=np.int64)
    cdef int64_t[::1] o = out
    for n in range(lo, hi + 1):
        m = n
        while m % p == 0:
            m //= p
        o[n - lo] = m % mod
    return out


def parity_colors(int64_t p, int64_t k, int64_t lo, int64_t hi):
    cdef int64_t n, m, v
    out = np.empty(hi - lo + 1, dtype=np.int64)
    cdef int64_t[::1] o = out
    for n in range(lo, hi + 1):
        m = n
        v = 0
        while m % p == 0:
            m //= p
            v += 1
        o[n - lo] = (v // k) & 1
    return out


def additive_table(cnp.ndarray[int64_t, ndim=1] spf,
                   cnp.ndarray[int64_t, ndim=1] prime_vals, int64_t modulus):
    cdef Py_ssize_t size = spf.shape[0], n
    cdef int64_t q
    out = np.zeros(size, dtype=np.int64)
    cdef int64_t[::1] h = out
    cdef int64_t[::1] s = spf
    cdef int64_t[::1] pv = prime_vals
    for n in range(2, size):
        q = s[n]
        h[n] = (h[n // q] + pv[q]) % modulus
    return out
