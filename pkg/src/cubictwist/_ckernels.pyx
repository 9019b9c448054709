# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled kernels: Hecke coefficient sieve and exponentially smoothed sums."""

import numpy as np
cimport numpy as cnp
from libc.math cimport exp, fabs

ctypedef long long i64

cdef double UNIT_ROUNDOFF = 1.1102230246251565e-16
cdef int ANCHOR = 512


cdef inline i64 _powmod(i64 b, i64 e, i64 m) nogil:
    cdef i64 r = 1
    b %= m
    if b < 0:
        b += m
    while e:
        if e & 1:
            r = (r * b) % m
        b = (b * b) % m
        e >>= 1
    return r


def hecke_table(i64 D, i64 limit, const int[::1] spf, const i64[::1] split_p,
                const i64[::1] split_r, const i64[:, ::1] split_tr):
    """Coefficients ``a_0..a_limit`` of L(E_D, s); ``a_0 = 0``."""
    if limit >= spf.shape[0]:
        raise ValueError("prime tables are too small for this limit")
    out = np.zeros(limit + 1, dtype=np.int64)
    cdef i64[::1] a = out
    cdef Py_ssize_t i, nsplit = split_p.shape[0]
    cdef i64 p, r, c, k, dm, n, m, pk, absd = D if D >= 0 else -D
    if limit >= 1:
        a[1] = 1
    with nogil:
        for i in range(nsplit):
            p = split_p[i]
            if p > limit:
                break
            dm = absd % p
            if dm == 0:
                continue
            c = _powmod(dm, (p - 1) // 3, p)
            r = split_r[i]
            if c == 1:
                k = 0
            elif c == r:
                k = 1
            else:
                k = 2
            a[p] = split_tr[i, k]
        for n in range(2, limit + 1):
            p = spf[n]
            if p == n:
                continue
            if p == 3 or absd % p == 0:
                a[n] = 0
                continue
            m = n // p
            pk = p
            while m % p == 0:
                m = m // p
                pk = pk * p
            if m == 1:
                if pk == p * p:
                    a[n] = a[p] * a[p] - p
                else:
                    a[n] = a[p] * a[n // p] - p * a[n // (p * p)]
            else:
                a[n] = a[pk] * a[m]
    return out


def smoothed_sum(const i64[::1] a, double scale, i64 nmax):
    """``sum_{n<=nmax} a_n/n * exp(-scale*n)`` and a bound on its rounding error."""
    cdef i64 n, top = nmax
    cdef double q, x, term, s = 0.0, comp = 0.0, y, t, sabs = 0.0
    if top > a.shape[0] - 1:
        top = a.shape[0] - 1
    q = exp(-scale)
    x = 1.0
    with nogil:
        for n in range(1, top + 1):
            if n % ANCHOR == 0:
                x = exp(-scale * n)
            else:
                x = x * q
            if a[n] == 0:
                continue
            term = (<double> a[n]) / n * x
            sabs += fabs(term)
            # Neumaier compensated summation
            t = s + term
            if fabs(s) >= fabs(term):
                comp += (s - t) + term
            else:
                comp += (term - t) + s
            s = t
    return s + comp, (ANCHOR + 4) * UNIT_ROUNDOFF * sabs
