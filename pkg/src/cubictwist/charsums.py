"""Additive characters of K = Q(sqrt(-3)), cubic Gauss sums and the polynomial T(w)_{m,n}.

The additive character is ``e(z) = exp(2 pi i Tr(z / sqrt(-3)))``, trivial
exactly on O because ``(1/sqrt(-3)) O`` is the inverse different.  Phases are
kept as exact rationals: for ``z = u/v`` with ``u, v`` in O,

    Tr(z / sqrt(-3)) = -Tr(u * conj(v) * (1 + 2w)) / (3 N(v)),

using ``1/sqrt(-3) = -(1 + 2w)/3``.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Optional

import numpy as np

from .errors import DomainError
from .rings import E, QuadInt, as_quad, inverse_mod, is_primary, residues_mod
from .symbols import cubic_exponent

SQRT_M3 = QuadInt(1, 2, E)
OMEGA = cmath.exp(2j * math.pi / 3)
_U = 2.0**-53


def _tr(z: QuadInt) -> int:
    return 2 * z.x - z.y


def phase(num, den=1) -> Fraction:
    """``Tr(num / (den * sqrt(-3)))`` reduced into ``[0, 1)``."""
    num, den = as_quad(num, E), as_quad(den, E)
    if den.is_zero():
        raise DomainError("additive character with zero denominator")
    t = Fraction(-_tr(num * den.conj() * SQRT_M3), 3 * den.norm())
    return t - math.floor(t)


@dataclass(frozen=True)
class AdditiveCharacter:
    """``z -> exp(2 pi i Tr(z / sqrt(-3)))`` on K; swap ``phase`` to renormalize."""

    def phase(self, num, den=1) -> Fraction:
        return phase(num, den)

    def __call__(self, num, den=1) -> complex:
        return cmath.exp(2j * math.pi * self.phase(num, den))


E_CHAR = AdditiveCharacter()


def additive_character(num, den=1) -> complex:
    """``e(num/den)``."""
    return E_CHAR(num, den)


def gauss_sum(c, n=1) -> complex:
    """``sum_{b mod c} (b/c)_3 e(n b / c)`` for primary ``c``."""
    c, n = as_quad(c, E), as_quad(n, E)
    if c.is_zero() or not is_primary(c):
        raise DomainError(f"{c} is not a non-zero primary element")
    N = c.norm()
    if N == 1:
        return 1.0 + 0j
    total = 0j
    for b in residues_mod(c):
        k = cubic_exponent(b, c)
        if k is None:
            continue
        total += OMEGA**k * additive_character(n * b, c)
    return total


# ---------------------------------------------------------------------------
# T(w)_{m,n}


@dataclass(frozen=True)
class DirichletPolynomialTerm:
    summand: int  # 1, 2 or 3 for the three displayed parts
    alpha: int
    delta: int
    value: complex
    error_bound: float


def _prime_to_3(m: QuadInt) -> QuadInt:
    r = QuadInt(1, -1, E)  # the prime above 3
    while r.divides(m):
        m = m.exact_div(r)
    return m


def _sym3(a: QuadInt, b: QuadInt) -> Optional[int]:
    # (a/b)_3 for b in O; (1/b) = 1 for every b, NotCoprime as None otherwise
    if a == 1:
        return 0
    if b.norm() % 3 == 0:
        return None
    return cubic_exponent(a, b)


class _Residues:
    """Residues mod 3^k with exact phase coefficients, memoized per k."""

    _cache: dict[int, tuple] = {}

    @classmethod
    def get(cls, k: int):
        if k not in cls._cache:
            mod = QuadInt(3**k, 0, E)
            res = list(residues_mod(mod))
            # -Tr(u * C * (1+2w)) = u.x * K1[C] + u.y * K2[C]
            k1 = np.array([-_tr(c * SQRT_M3) for c in res], dtype=np.int64)
            k2 = np.array([-_tr(c * QuadInt(0, 1, E) * SQRT_M3) for c in res], dtype=np.int64)
            cls._cache[k] = (res, k1, k2)
        return cls._cache[k]


def _character_sum(k: int, delta: int, u: QuadInt) -> complex:
    """``sum_{C mod 3^k} (3^delta / C)_3 e(u C / 3^delta)``."""
    res, k1, k2 = _Residues.get(k)
    exps = _symbol_exponents(k, delta)
    mask = exps >= 0
    q = 3 ** (delta + 1)
    ph = (u.x * k1 + u.y * k2) % q
    vals = np.exp(2j * np.pi * (ph / q + exps / 3.0))
    return complex(vals[mask].sum())


_SYM_CACHE: dict[tuple[int, int], np.ndarray] = {}


def _symbol_exponents(k: int, power: int) -> np.ndarray:
    """``(3^power / C)_3`` exponents over residues mod 3^k; -1 marks NotCoprime."""
    key = (k, power)
    if key not in _SYM_CACHE:
        res, _, _ = _Residues.get(k)
        num = QuadInt(3**power, 0, E)
        out = []
        for c in res:
            if power == 0:
                out.append(0)
                continue
            s = _sym3(num, c) if not c.is_zero() else None
            out.append(-1 if s is None else s)
        _SYM_CACHE[key] = np.array(out, dtype=np.int64)
    return _SYM_CACHE[key]


def _b2_sum(k: int, n: QuadInt, inner) -> tuple[complex, int]:
    """``sum_{b2 mod 3^k} (3^k / b2)_3 e(n b2 / 3^k) inner(b2)``; returns value and term count."""
    res, k1, k2 = _Residues.get(k)
    exps = _symbol_exponents(k, k)
    q = 3 ** (k + 1)
    ph = (n.x * k1 + n.y * k2) % q
    total, count = 0j, 0
    for idx, b2 in enumerate(res):
        if exps[idx] < 0:
            continue
        w = inner(b2)
        if w is None:
            continue
        total += cmath.exp(2j * math.pi * (ph[idx] / q + exps[idx] / 3.0)) * w
        count += 1
    return total, count


def t_polynomial_terms(m, n, w: complex, alpha_max: int) -> list[DirichletPolynomialTerm]:
    m, n = as_quad(m, E), as_quad(n, E)
    if m.is_zero() or n.is_zero():
        raise DomainError("m and n must be non-zero")
    if alpha_max < 0:
        raise DomainError("alpha_max must be >= 0")
    mp = _prime_to_3(m)
    chi3 = _sym3(QuadInt(3, 0, E), mp)  # (3/m')_3, m' coprime to 3
    terms: list[DirichletPolynomialTerm] = []
    for alpha in range(alpha_max + 1):
        scale = 3.0 ** (alpha * (-1 - 3 * w))
        for delta in range(alpha + 1):
            outer = 3.0 ** ((alpha - 2 * delta + 1) // 3) * OMEGA ** ((chi3 * (alpha - 2 * delta)) % 3)
            memo: dict[tuple[int, int], complex] = {}
            mod_d = QuadInt(3**delta, 0, E)

            def inner(b2: QuadInt, delta=delta, mod_d=mod_d, memo=memo):
                if delta == 0:
                    u = QuadInt(0, 0, E)
                elif b2.norm() % 3 == 0:
                    return None  # b2 has no inverse mod 3^delta
                else:
                    u = (m * inverse_mod(b2, mod_d)) % mod_d
                key = (u.x, u.y)
                if key not in memo:
                    memo[key] = _character_sum(alpha, delta, u)
                return memo[key]

            s, count = _b2_sum(alpha - delta, n, inner)
            val = outer * scale * s
            err = 16 * _U * abs(outer * scale) * count * 9**alpha
            terms.append(DirichletPolynomialTerm(1, alpha, delta, val, err))
        outer = 3.0 ** ((alpha + 1) // 3) * OMEGA ** ((chi3 * alpha) % 3)
        s, count = _b2_sum(alpha, n, lambda b2: 1.0)
        terms.append(DirichletPolynomialTerm(2, alpha, alpha, 3 * outer * scale * s, 16 * _U * 3 * abs(outer * scale) * count))
    terms.append(DirichletPolynomialTerm(3, 0, 0, 9.0 + 0j, 0.0))
    return terms


def t_polynomial(m, n, w: complex, alpha_max: int) -> complex:
    """``T(w)_{m,n}`` truncated to ``alpha <= alpha_max``."""
    terms = t_polynomial_terms(m, n, w, alpha_max)
    return complex(math.fsum(t.value.real for t in terms), math.fsum(t.value.imag for t in terms))
