"""Pure-Python twins of the compiled kernels in ``_ckernels.pyx``."""

import math

import numpy as np

UNIT_ROUNDOFF = 2.0**-53
ANCHOR = 512


def hecke_table(D, limit, spf, split_p, split_r, split_tr):
    if limit >= len(spf):
        raise ValueError("prime tables are too small for this limit")
    D, limit = int(D), int(limit)
    absd = abs(D)
    spf = spf.tolist() if hasattr(spf, "tolist") else list(spf)
    a = [0] * (limit + 1)
    if limit >= 1:
        a[1] = 1
    for i, p in enumerate(split_p.tolist()):
        if p > limit:
            break
        dm = absd % p
        if dm == 0:
            continue
        c = pow(dm, (p - 1) // 3, p)
        r = int(split_r[i])
        k = 0 if c == 1 else (1 if c == r else 2)
        a[p] = int(split_tr[i, k])
    for n in range(2, limit + 1):
        p = spf[n]
        if p == n:
            continue
        if p == 3 or absd % p == 0:
            continue
        m, pk = n // p, p
        while m % p == 0:
            m //= p
            pk *= p
        if m == 1:
            if pk == p * p:
                a[n] = a[p] * a[p] - p
            else:
                a[n] = a[p] * a[n // p] - p * a[n // (p * p)]
        else:
            a[n] = a[pk] * a[m]
    return np.array(a, dtype=np.int64)


def smoothed_sum(a, scale, nmax):
    top = min(int(nmax), len(a) - 1)
    if top < 1:
        return 0.0, 0.0
    n = np.arange(1, top + 1, dtype=np.float64)
    coeff = np.asarray(a[1 : top + 1], dtype=np.float64)
    terms = coeff / n * np.exp(-scale * n)
    terms = terms[coeff != 0]
    sabs = float(np.abs(terms).sum())
    return math.fsum(terms.tolist()), (ANCHOR + 4) * UNIT_ROUNDOFF * sabs
