"""Statistics over families of central values L(E_D, 1).

Every function reads L-values through an ``LValueCache`` so that repeated
scans reuse earlier work.  Tables are built by a single pass over ``D`` in
increasing order, so identical inputs and cache contents give identical output.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Iterable, Optional, Sequence

import numpy as np
from sympy import factorint, isprime, primerange

from .curves import cubefree_part, is_cubefree, require_cubefree
from .errors import DomainError
from .lfunctions import DEFAULT_CUTOFF_MULT, UNDETERMINED, LValueCache, LValueEstimate


# ---------------------------------------------------------------------------
# family filters


@dataclass(frozen=True)
class Filter:
    """Which cube-free ``D`` enter a sum: ``all``, ``class`` (D = c mod p), ``primes`` or ``prime-squares``."""

    kind: str = "all"
    residue: int = 0
    modulus: int = 0

    def __post_init__(self):
        if self.kind not in ("all", "class", "primes", "prime-squares"):
            raise DomainError(f"unknown filter {self.kind!r}")
        if self.kind == "class":
            if not isprime(self.modulus) or self.modulus == 3:
                raise DomainError("class filter needs a prime modulus p != 3")

    @classmethod
    def congruence(cls, c: int, p: int) -> "Filter":
        return cls("class", c % p if p else c, p)

    def members(self, Xmax: int, Xmin: int = 1) -> list[int]:
        lo = max(1, int(Xmin))
        hi = int(Xmax)
        if hi < lo:
            return []
        if self.kind == "primes":
            return [p for p in primerange(lo, hi + 1) if p != 3]
        if self.kind == "prime-squares":
            return [p * p for p in primerange(2, math.isqrt(hi) + 1) if p != 3 and p * p >= lo]
        Ds = [D for D in range(lo, hi + 1) if is_cubefree(D)]
        if self.kind == "class":
            Ds = [D for D in Ds if D % self.modulus == self.residue]
        return Ds


def _cache(cache: Optional[LValueCache]) -> LValueCache:
    return cache if cache is not None else LValueCache()


def checkpoints(Xmax: int, Xmin: int = 3) -> list[int]:
    """``ceil(Xmax / 2^k)`` for k = 0, 1, ... down to ``Xmin``, ascending."""
    pts = set()
    k = 0
    while True:
        x = -(-int(Xmax) // (1 << k))
        if x < Xmin:
            break
        pts.add(x)
        if x == Xmin or x == 1:
            break
        k += 1
    return sorted(pts)


# ---------------------------------------------------------------------------
# partial sums and growth


def sum_central_values(
    Xmax: int,
    flt: Filter = Filter(),
    cache: Optional[LValueCache] = None,
    Xmin: int = 1,
    points: Optional[Sequence[int]] = None,
    cutoff_mult: float = DEFAULT_CUTOFF_MULT,
    recompute: bool = False,
) -> list[tuple[int, float]]:
    """Rows ``(X, S(X))`` with ``S(X)`` the sum of L(E_D, 1) over filtered ``Xmin <= D <= X``."""
    if Xmax < 3:
        return []
    cache = _cache(cache)
    pts = sorted(set(points)) if points is not None else checkpoints(Xmax)
    Ds = flt.members(Xmax, Xmin)
    rows = []
    i, acc = 0, []
    for X in pts:
        while i < len(Ds) and Ds[i] <= X:
            acc.append(cache.get(Ds[i], cutoff_mult, recompute).value)
            i += 1
        rows.append((X, math.fsum(acc)))
    return rows


@dataclass(frozen=True)
class GrowthFit:
    exponent: float
    constant: float
    log_preferred: bool
    residual: float  # RMS log-residual of c * X^beta
    sample_range: tuple[int, int]
    log_constant: float = float("nan")  # c in c * X log X
    log_residual: float = float("nan")
    degenerate: bool = False
    samples: tuple = field(default=(), repr=False)


def growth_fit(table: Sequence[tuple[float, float]]) -> GrowthFit:
    """Fit ``S(X)`` by ``c X^beta`` and by ``c X log X`` in log space."""
    if len(table) < 4:
        raise DomainError("growth_fit needs at least 4 samples")
    X = np.array([float(r[0]) for r in table])
    S = np.array([float(r[1]) for r in table])
    if np.any(np.diff(X) <= 0):
        raise DomainError("sample X values must be increasing")
    rng = (int(X[0]), int(X[-1]))
    samples = tuple((float(x), float(s)) for x, s in zip(X, S))
    spread = float(np.ptp(S))
    if np.any(S <= 0) or spread <= 1e-12 * float(np.max(np.abs(S))):
        # constant or non-positive data carries no growth information
        const = float(np.mean(S))
        return GrowthFit(0.0, const, False, math.inf, rng, math.nan, math.inf, True, samples)
    lx, ls = np.log(X), np.log(S)
    A = np.vstack([lx, np.ones_like(lx)]).T
    (beta, logc), *_ = np.linalg.lstsq(A, ls, rcond=None)
    res_pow = float(np.sqrt(np.mean((ls - (beta * lx + logc)) ** 2)))
    shifted = ls - np.log(X * np.log(X))
    logc2 = float(np.mean(shifted))
    res_log = float(np.sqrt(np.mean((shifted - logc2) ** 2)))
    return GrowthFit(
        float(beta), float(math.exp(logc)), res_log < res_pow, res_pow, rng,
        float(math.exp(logc2)), res_log, False, samples,
    )


# ---------------------------------------------------------------------------
# vanishing frequency


@dataclass(frozen=True)
class ZKStats:
    fraction: float
    fraction_half: float
    counts: dict
    counts_half: dict


def _sign_counts(ests: Iterable[LValueEstimate]) -> dict:
    c = {"total": 0, "even": 0, "even_vanished": 0, "odd": 0, "undetermined": 0}
    for e in ests:
        c["total"] += 1
        if e.sign == UNDETERMINED:
            c["undetermined"] += 1
        elif e.sign == 1:
            c["even"] += 1
            c["even_vanished"] += int(e.vanished)
        else:
            c["odd"] += 1
    return c


def _fraction(c: dict) -> float:
    return c["even_vanished"] / c["even"] if c["even"] else 0.0


def zk_vanishing_stats(
    Xmax: int,
    cache: Optional[LValueCache] = None,
    cutoff_mult: float = DEFAULT_CUTOFF_MULT,
    recompute: bool = False,
) -> ZKStats:
    """Share of vanishing central values among even-sign cube-free ``D <= Xmax`` (and ``<= Xmax/2``)."""
    if Xmax < 100:
        raise DomainError("zk_vanishing_stats needs Xmax >= 100")
    cache = _cache(cache)
    Ds = Filter().members(Xmax)
    ests = [cache.get(D, cutoff_mult, recompute) for D in Ds]
    half = [e for e in ests if e.D <= Xmax // 2]
    full_c, half_c = _sign_counts(ests), _sign_counts(half)
    return ZKStats(_fraction(full_c), _fraction(half_c), full_c, half_c)


def gv_probe(
    Xmax: int,
    cache: Optional[LValueCache] = None,
    cutoff_mult: float = DEFAULT_CUTOFF_MULT,
    recompute: bool = False,
) -> list[tuple[int, float]]:
    """Rows ``(X, sum_{p < X, p != 3} L(E_p,1) L(E_{p^2},1) / X)`` at powers of two."""
    if Xmax < 50:
        raise DomainError("gv_probe needs Xmax >= 50")
    cache = _cache(cache)
    marks = [1 << j for j in range(1, int(Xmax).bit_length()) if (1 << j) <= Xmax]
    rows, acc = [], []
    primes = [p for p in primerange(2, int(Xmax)) if p != 3]
    i = 0
    for X in marks:
        while i < len(primes) and primes[i] < X:
            p = primes[i]
            acc.append(cache.get(p, cutoff_mult, recompute).value * cache.get(p * p, cutoff_mult, recompute).value)
            i += 1
        rows.append((X, math.fsum(acc) / X))
    return rows


# ---------------------------------------------------------------------------
# cube-free tail


@dataclass(frozen=True)
class TailCheck:
    partial_sum: float
    decay_flag: bool
    weight: float
    blocks: tuple  # dyadic block sums over m^2 n in [2^j, 2^(j+1))
    slope: float  # least-squares log2 decay per dyadic block


def _square_divisor_count(fac: dict) -> int:
    out = 1
    for e in fac.values():
        out *= e // 2 + 1
    return out


def tail_check(
    k: int,
    w: float,
    bound: int,
    cache: Optional[LValueCache] = None,
    cutoff_mult: float = DEFAULT_CUTOFF_MULT,
) -> TailCheck:
    """Partial sum of ``|L(E_k,1)| / (m^2 n)^w`` over pairs with cube-free part of ``m^2 n`` equal to ``k``.

    Pairs run over ``m^2 n <= max(bound, k)``; each ``N = k f^3`` contributes
    once for every ``m`` with ``m^2 | N``.
    """
    require_cubefree(k)
    if k < 1:
        raise DomainError("k must be positive")
    if w <= 42 / 45:
        raise DomainError("w must exceed 42/45")
    weight = abs(_cache(cache).get(k, cutoff_mult).value)
    top = max(int(bound), k)
    kfac = factorint(k)
    blocks: dict[int, list[float]] = {}
    f = 1
    while k * f**3 <= top:
        N = k * f**3
        assert cubefree_part(N) == (k, f)
        fac = dict(kfac)
        for p, e in factorint(f).items():
            fac[p] = fac.get(p, 0) + 3 * e
        term = weight * _square_divisor_count(fac) * N ** (-w)
        blocks.setdefault(N.bit_length() - 1, []).append(term)
        f += 1
    last = top.bit_length() - 1
    # only dyadic blocks lying entirely inside the range count toward decay
    full = [j for j in sorted(blocks) if (1 << (j + 1)) - 1 <= top or j < last]
    sums = tuple((j, math.fsum(blocks[j])) for j in sorted(blocks))
    total = math.fsum(t for j in blocks for t in blocks[j])
    pts = [(j, s) for j, s in sums if j in full and s > 0]
    slope = math.nan
    flag = weight == 0.0
    if len(pts) >= 3:
        js = np.array([p[0] for p in pts], dtype=float)
        ls = np.log2([p[1] for p in pts])
        slope = float(np.polyfit(js, ls, 1)[0])
        flag = flag or slope < 0
    return TailCheck(total, bool(flag), weight, sums, slope)
