"""Coefficients and central values of L(E_D, s) for E_D : x^3 + y^3 = D.

The Dirichlet coefficients come from the Hecke character
``a -> (D/a)_3 * conj(a)`` on primary ``a``.  Two evaluators exist: a direct
sum over the primary elements of a given norm (``hecke_coefficient``) and a
multiplicative sieve in ``kernels`` used for L-values.  ``pointcount_ap`` is
an independent oracle counting points on ``y^2 = x^3 - 432 D^2`` over F_p.

Central values use the smoothed series

    L(1) = F(t) = f(t) + eps * f(1/t),   f(t) = sum a_n/n * exp(-2 pi n t / sqrt(N)),

which is independent of ``t > 0`` exactly when ``(N, eps)`` are the true
conductor and sign.  That independence is how ``N`` and ``eps`` are chosen.
"""

from __future__ import annotations

import csv
import math
import os
import threading
from dataclasses import dataclass, field
from math import isqrt
from typing import Iterable, Optional

import numpy as np
from sympy import factorint, isprime

from . import kernels
from .curves import is_trivial_D, require_cubefree
from .errors import DomainError
from .rings import E, QuadInt, is_primary, primary_associate
from .symbols import cubic_exponent

CACHE_ENV = "CUBICTWIST_CACHE"
DEFAULT_CUTOFF_MULT = 20.0
DEFAULT_VANISH_THRESHOLD = 1e-3
SIGN_TOLERANCE = 1e-8
SPLIT_T = 1.2
UNDETERMINED = 0


@dataclass(frozen=True)
class TwistCurve:
    D: int
    weierstrass_c: int = field(init=False)
    torsion_trivial: bool = field(init=False)

    def __post_init__(self):
        require_cubefree(self.D)
        object.__setattr__(self, "weierstrass_c", -432 * self.D * self.D)
        object.__setattr__(self, "torsion_trivial", not is_trivial_D(self.D))


@dataclass(frozen=True)
class HeckeCoefficient:
    n: int
    a_n: int


@dataclass(frozen=True)
class LValueEstimate:
    D: int
    value: float
    error_bound: float
    sign: int  # +1, -1 or UNDETERMINED (0)
    conductor_used: int
    cutoff: float
    vanished: bool
    value_half: float = float("nan")  # estimate at half the cutoff
    discrepancy: float = float("nan")  # |F(1) - F(SPLIT_T)| at the chosen (N, eps)
    candidates: tuple = ()  # ((N, eps, discrepancy, value), ...) when undetermined

    @property
    def sign_label(self) -> str:
        return {1: "+1", -1: "-1"}.get(self.sign, "undetermined")


# ---------------------------------------------------------------------------
# direct evaluation of the character sum


def elements_of_norm(n: int) -> list[QuadInt]:
    """All ``x + y*w`` with ``x^2 - xy + y^2 = n``."""
    out = []
    ymax = isqrt(4 * n // 3) + 1
    for y in range(-ymax, ymax + 1):
        disc = 4 * n - 3 * y * y  # (2x - y)^2
        if disc < 0:
            continue
        r = isqrt(disc)
        if r * r != disc:
            continue
        for u in {r, -r}:
            if (u + y) % 2 == 0:
                out.append(QuadInt((u + y) // 2, y, E))
    return out


def hecke_coefficient(D: int, n: int) -> HeckeCoefficient:
    """``a_n`` as the sum of ``(D/a)_3 * conj(a)`` over primary ``a`` of norm ``n``."""
    require_cubefree(D)
    if n < 1:
        raise DomainError("n must be >= 1")
    total = QuadInt(0, 0, E)
    Dq = QuadInt(D, 0, E)
    for a in elements_of_norm(n):
        if not is_primary(a):
            continue
        k = cubic_exponent(Dq, a)
        if k is None:
            continue
        total = total + QuadInt(0, 1, E) ** k * a.conj()
    if total.y != 0:
        raise AssertionError(f"character sum for n={n} is not rational: {total}")  # pragma: no cover
    return HeckeCoefficient(n, total.x)


def pointcount_ap(D: int, p: int) -> int:
    """``p + 1 - #E(F_p)`` for ``E : y^2 = x^3 - 432 D^2``."""
    if not isprime(p):
        raise DomainError(f"{p} is not prime")
    if (6 * D) % p == 0:
        raise DomainError(f"p = {p} divides 6D")
    x = np.arange(p, dtype=np.int64)
    chi = np.full(p, -1, dtype=np.int64)
    chi[(x * x) % p] = 1
    chi[0] = 0
    c = (-432 * D * D) % p
    rhs = ((x * x % p) * x + c) % p
    # #E = p + 1 + sum_x chi(x^3 + c)
    return -int(chi[rhs].sum())


# ---------------------------------------------------------------------------
# prime tables feeding the sieve


def _cube_root_of_unity(p: int) -> int:
    g = 2
    while True:
        r = pow(g, (p - 1) // 3, p)
        if r != 1:
            return r
        g += 1


def _reduced_prime(p: int, r: int) -> tuple[int, int]:
    """Shortest vector of the ideal ``(p, w - r)``: a prime of norm ``p``."""
    def q(a, b):
        return a * a - a * b + b * b

    def b2(u, v):  # twice the bilinear form
        return 2 * u[0] * v[0] - u[0] * v[1] - u[1] * v[0] + 2 * u[1] * v[1]

    u, v = (p, 0), (-r, 1)
    if q(*u) > q(*v):
        u, v = v, u
    while True:
        m = (b2(u, v) + q(*u)) // (2 * q(*u))  # round(B(u,v)/Q(u))
        v = (v[0] - m * u[0], v[1] - m * u[1])
        if q(*v) >= q(*u):
            return u
        u, v = v, u


@dataclass
class PrimeTables:
    limit: int
    spf: np.ndarray
    split_p: np.ndarray
    split_r: np.ndarray
    split_tr: np.ndarray  # row i: Tr(w^k * conj(pi_i)) for k = 0, 1, 2


def _build_tables(limit: int) -> PrimeTables:
    spf = np.zeros(limit + 1, dtype=np.int32)
    for p in range(2, isqrt(limit) + 1):
        if spf[p] == 0:
            block = spf[p * p :: p]
            block[block == 0] = p
    idx = np.nonzero(spf == 0)[0]
    spf[idx] = idx
    primes = idx[idx >= 2]
    split = primes[primes % 3 == 1]
    rs = np.empty(len(split), dtype=np.int64)
    trs = np.empty((len(split), 3), dtype=np.int64)
    for i, p in enumerate(split.tolist()):
        r = _cube_root_of_unity(p)
        x, y = _reduced_prime(p, r)
        pi = primary_associate(QuadInt(x, y, E))
        cx, cy = pi.x - pi.y, -pi.y  # conj(pi)
        for k in range(3):
            trs[i, k] = 2 * cx - cy
            cx, cy = -cy, cx - cy  # multiply by w
        rs[i] = r
    return PrimeTables(limit, spf, split.astype(np.int64), rs, trs)


_tables: Optional[PrimeTables] = None
_tables_lock = threading.Lock()


def prime_tables(limit: int) -> PrimeTables:
    global _tables
    with _tables_lock:
        if _tables is None or _tables.limit < limit:
            size = 1 << max(12, (int(limit) - 1).bit_length())
            _tables = _build_tables(size)
        return _tables


def coefficient_table(D: int, limit: int) -> np.ndarray:
    """``a_0..a_limit`` (``a_0 = 0``) through the multiplicative sieve."""
    require_cubefree(D)
    t = prime_tables(limit)
    return kernels.hecke_table(int(D), int(limit), t.spf, t.split_p, t.split_r, t.split_tr)


# ---------------------------------------------------------------------------
# central values


def conductor_candidates(D: int) -> list[int]:
    """``3^e * prod(p^2 : p | D, p != 3)`` for ``e`` in 2..5."""
    rad = 1
    for p in factorint(abs(D)):
        if p != 3:
            rad *= p
    return [3**e * rad * rad for e in range(2, 6)]


def _tail_bound(scale: float, start: int) -> float:
    # |a_n| <= d(n) sqrt(n) <= 2n, so each term is at most 2 exp(-scale*n)
    if start < 1:
        start = 1
    return 2.0 * math.exp(-scale * start) / (-math.expm1(-scale))


def _f(a: np.ndarray, N: int, t: float, nmax: int) -> tuple[float, float]:
    scale = 2.0 * math.pi * t / math.sqrt(N)
    s, err = kernels.smoothed_sum(a, scale, nmax)
    return s, err + _tail_bound(scale, nmax + 1)


def _nmax_for(N: int, t: float) -> int:
    # exp(-2 pi n t / sqrt N) < 1e-18 beyond this
    return int(math.ceil(41.5 * math.sqrt(N) / (2.0 * math.pi * t))) + 1


def l_value(
    D: int,
    cutoff_mult: float = DEFAULT_CUTOFF_MULT,
    vanish_threshold: float = DEFAULT_VANISH_THRESHOLD,
) -> LValueEstimate:
    """Smoothed estimate of L(E_D, 1) with a self-consistent conductor and sign."""
    D = require_cubefree(D)
    if cutoff_mult <= 0:
        raise DomainError("cutoff_mult must be positive")
    conds = conductor_candidates(D)
    cut = {N: int(math.ceil(cutoff_mult * math.sqrt(N))) for N in conds}
    limit = max(max(cut.values()), max(_nmax_for(N, 1.0 / SPLIT_T) for N in conds))
    a = coefficient_table(D, limit)

    scan = []
    for N in conds:
        f1, e1 = _f(a, N, 1.0, _nmax_for(N, 1.0))
        fT, eT = _f(a, N, SPLIT_T, _nmax_for(N, SPLIT_T))
        fiT, eiT = _f(a, N, 1.0 / SPLIT_T, _nmax_for(N, 1.0 / SPLIT_T))
        for eps in (1, -1):
            F1, FT = (1 + eps) * f1, fT + eps * fiT
            disc = abs(F1 - FT)
            scan.append((disc, N, eps, F1, 2 * e1 + eT + eiT))
    scan.sort(key=lambda row: (row[0], row[1], -row[2]))
    disc, N, eps, _, scan_err = scan[0]

    M = cut[N]
    if eps == -1:
        value = value_half = 0.0
        round_err = 0.0
    else:
        scale = 2.0 * math.pi / math.sqrt(N)
        v, r1 = kernels.smoothed_sum(a, scale, M)
        vh, r2 = kernels.smoothed_sum(a, scale, max(1, M // 2))
        value, value_half = 2 * v, 2 * vh
        round_err = 2 * (r1 + r2) + 2 * _tail_bound(scale, M + 1)
    error = abs(value - value_half) + disc + scan_err + round_err

    if disc > SIGN_TOLERANCE:
        cands = tuple((n_, e_, d_, v_) for d_, n_, e_, v_, _ in scan[:2])
        return LValueEstimate(D, value, error, UNDETERMINED, N, float(M), False, value_half, disc, cands)
    vanished = abs(value) <= vanish_threshold and error <= vanish_threshold
    return LValueEstimate(D, value, error, eps, N, float(M), vanished, value_half, disc)


def root_number(D: int) -> int:
    """Empirical sign: +1, -1 or ``UNDETERMINED`` (0)."""
    return l_value(D).sign


# ---------------------------------------------------------------------------
# append-only cache


CACHE_COLUMNS = ("D", "sign", "value", "error", "conductor", "cutoff")


def _sign_text(sign: int) -> str:
    return {1: "+1", -1: "-1"}.get(sign, "undetermined")


def _sign_parse(text: str) -> int:
    return {"+1": 1, "1": 1, "-1": -1}.get(text.strip(), UNDETERMINED)


class LValueCache:
    """CSV-backed store of ``LValueEstimate`` rows, keyed by ``(D, cutoff)``.

    Writes append one line each and go through a lock.  ``vanished`` is not
    stored; it is rebuilt from ``value`` and ``error`` using the same rule as
    ``l_value``.
    """

    def __init__(self, path: Optional[str] = None, vanish_threshold: float = DEFAULT_VANISH_THRESHOLD):
        self.path = path if path is not None else os.environ.get(CACHE_ENV)
        self.vanish_threshold = vanish_threshold
        self._rows: dict[tuple[int, int], LValueEstimate] = {}
        self._lock = threading.Lock()
        if self.path and os.path.exists(self.path):
            with open(self.path, newline="") as fh:
                for row in csv.DictReader(fh):
                    est = self._from_row(row)
                    self._rows[(est.D, int(est.cutoff))] = est

    def _from_row(self, row: dict) -> LValueEstimate:
        D = int(row["D"])
        sign = _sign_parse(row["sign"])
        value, error = float(row["value"]), float(row["error"])
        vanished = sign != UNDETERMINED and abs(value) <= self.vanish_threshold and error <= self.vanish_threshold
        return LValueEstimate(D, value, error, sign, int(row["conductor"]), float(row["cutoff"]), vanished)

    @staticmethod
    def _key(D: int, cutoff_mult: float) -> tuple[int, list[int]]:
        return D, [int(math.ceil(cutoff_mult * math.sqrt(N))) for N in conductor_candidates(D)]

    def lookup(self, D: int, cutoff_mult: float = DEFAULT_CUTOFF_MULT) -> Optional[LValueEstimate]:
        D, cuts = self._key(D, cutoff_mult)
        for N, c in zip(conductor_candidates(D), cuts):
            est = self._rows.get((D, c))
            if est is not None and est.conductor_used == N:
                return est
        return None

    def store(self, est: LValueEstimate) -> None:
        with self._lock:
            self._rows[(est.D, int(est.cutoff))] = est
            if not self.path:
                return
            new = not os.path.exists(self.path) or os.path.getsize(self.path) == 0
            with open(self.path, "a", newline="") as fh:
                w = csv.writer(fh, lineterminator="\n")
                if new:
                    w.writerow(CACHE_COLUMNS)
                w.writerow(
                    [est.D, _sign_text(est.sign), repr(est.value), repr(est.error_bound),
                     est.conductor_used, repr(est.cutoff)]
                )

    def get(self, D: int, cutoff_mult: float = DEFAULT_CUTOFF_MULT, recompute: bool = False) -> LValueEstimate:
        if not recompute:
            hit = self.lookup(D, cutoff_mult)
            if hit is not None:
                return hit
        est = l_value(D, cutoff_mult, self.vanish_threshold)
        self.store(est)
        return est

    def get_many(self, Ds: Iterable[int], cutoff_mult: float = DEFAULT_CUTOFF_MULT,
                 recompute: bool = False) -> list[LValueEstimate]:
        return [self.get(D, cutoff_mult, recompute) for D in Ds]
