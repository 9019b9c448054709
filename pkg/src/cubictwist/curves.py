"""Rational points on x^3 + y^3 = D and cube-free bookkeeping.

A rational point with common denominator q is ``(a/q, b/q)`` where
``a^3 + b^3 = D q^3``.  Writing ``s = a + b`` and ``t = a^2 - ab + b^2``, the
factorization ``a^3 + b^3 = s t`` over Z mirrors ``(a + b)(a + bw)(a + bw^2)``
over Z[w]: for coprime ``a, b`` we have ``gcd(s, t) | 3`` and no prime
``= 2 mod 3`` divides ``t``.  That leaves finitely many candidate values of ``s``
per ``q``, each of which determines ``{a, b}`` through a quadratic.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from math import gcd, isqrt
from typing import Iterator

from sympy import factorint

from .errors import DomainError


def icbrt(n: int) -> int:
    """Floor of the real cube root of ``n >= 0``."""
    if n < 0:
        raise ValueError("icbrt needs n >= 0")
    r = int(round(n ** (1.0 / 3.0)))
    while r * r * r > n:
        r -= 1
    while (r + 1) ** 3 <= n:
        r += 1
    return r


def cubefree_part(k: int) -> tuple[int, int]:
    """Return ``(c, f)`` with ``k = c * f**3`` and ``c`` cube-free."""
    if k < 1:
        raise DomainError("cubefree_part needs k >= 1")
    c = f = 1
    for p, e in factorint(k).items():
        f *= p ** (e // 3)
        c *= p ** (e % 3)
    return c, f


def is_cubefree(D: int) -> bool:
    if D == 0:
        return False
    return all(e < 3 for e in factorint(abs(D)).values())


def require_cubefree(D: int) -> int:
    D = int(D)
    if not is_cubefree(D):
        raise DomainError(f"D must be cube-free (got {D})")
    return D


def is_trivial_D(D: int) -> bool:
    """True for the twists with non-trivial torsion: D in {0, +-1, +-2}."""
    return abs(D) <= 2


@dataclass(frozen=True, order=True)
class RationalPoint:
    x: Fraction
    y: Fraction

    @classmethod
    def on_curve(cls, x, y, D: int) -> "RationalPoint":
        pt = cls(Fraction(x), Fraction(y))
        if pt.x**3 + pt.y**3 != D:
            raise DomainError(f"({pt.x}, {pt.y}) is not on x^3 + y^3 = {D}")
        return pt

    @property
    def denominator(self) -> int:
        return self.x.denominator * self.y.denominator // gcd(self.x.denominator, self.y.denominator)

    def __str__(self):
        return f"{self.x},{self.y}"


@lru_cache(maxsize=None)
def _factor(n: int) -> tuple[tuple[int, int], ...]:
    return tuple(sorted(factorint(n).items()))


def _s_candidates(M: int, fac: dict[int, int]) -> Iterator[int]:
    """Positive ``s`` with ``s | M``, compatible with ``M = s t``, ``t = a^2-ab+b^2``.

    ``fac`` is the prime factorization of ``M``.
    """
    # t is the norm of a + b*w, so an inert prime dividing t divides both a
    # and b.  Split primes cannot divide both s and t since gcd(s, t) | 3.
    base = 1
    choices: list[int] = []
    for p, e in sorted(fac.items()):
        if p == 3:
            if e == 1:
                return  # 3 | t forces 3 | s, so 9 | M
            base *= 3 ** (e - 1)  # v_3(t) = 1 exactly
        elif p % 3 == 2:
            base *= p**e
        else:
            choices.append(p**e)
    limit = icbrt(4 * M) + 1  # t >= s^2 / 4
    if base > limit:
        return
    k = len(choices)
    for mask in range(1 << k):
        s = base
        for i in range(k):
            if mask >> i & 1:
                s *= choices[i]
                if s > limit:
                    break
        else:
            yield s


def _primitive_solutions(M: int, fac: dict[int, int]) -> Iterator[tuple[int, int]]:
    """All coprime ``(a, b)`` with ``a^3 + b^3 = M`` (``M > 0``, factored as ``fac``)."""
    for s in sorted(set(_s_candidates(M, fac))):
        t = M // s
        # 4t - s^2 = 3 (a - b)^2
        rem = 4 * t - s * s
        if rem < 0 or rem % 3:
            continue
        m2 = rem // 3
        m = isqrt(m2)
        if m * m != m2:
            continue
        for diff in {m, -m}:
            if (s + diff) % 2:
                continue
            a, b = (s + diff) // 2, (s - diff) // 2
            if gcd(a, b) == 1 and a**3 + b**3 == M:
                yield a, b


def solutions_with_denominator(D: int, q: int) -> list[tuple[int, int]]:
    """Integer ``(a, b)`` with ``a^3 + b^3 = D q^3`` and ``gcd(a, q) = gcd(b, q) = 1``."""
    if D == 0:
        raise DomainError("D must be non-zero")
    sign = 1 if D > 0 else -1
    absd = abs(D)
    out = set()
    g = 1
    qfac = _factor(q)
    while g * g * g <= absd:
        if absd % (g * g * g) == 0:
            D0 = absd // (g * g * g)
            fac = dict(_factor(D0))
            for p, e in qfac:
                fac[p] = fac.get(p, 0) + 3 * e
            for a, b in _primitive_solutions(D0 * q**3, fac):
                A, B = sign * g * a, sign * g * b
                if gcd(A, q) == 1 and gcd(B, q) == 1:
                    out.add((A, B))
        g += 1
    return sorted(out)


def search_points(D: int, height_bound: int) -> list[RationalPoint]:
    """Every rational point on x^3 + y^3 = D whose common denominator is at most ``height_bound``.

    Points come sorted by denominator, then by x.
    """
    D = int(D)
    if D == 0:
        raise DomainError("D must be non-zero")
    if height_bound < 1:
        raise DomainError("height_bound must be >= 1")
    pts: list[RationalPoint] = []
    for q in range(1, int(height_bound) + 1):
        for a, b in solutions_with_denominator(D, q):
            pts.append(RationalPoint.on_curve(Fraction(a, q), Fraction(b, q), D))
    return pts


def brute_force_points(D: int, height_bound: int) -> list[RationalPoint]:
    """Oracle for ``search_points`` by direct enumeration of numerators (slow)."""
    pts = []
    for q in range(1, height_bound + 1):
        M = D * q**3
        # a^2 - ab + b^2 >= 3a^2/4 and it divides |M|, so |a| <= sqrt(4|M|/3)
        bound = isqrt(4 * abs(M)) + 2
        for a in range(-bound, bound + 1):
            r = M - a**3
            b = icbrt(abs(r)) * (1 if r >= 0 else -1)
            for bb in (b - 1, b, b + 1):
                if a**3 + bb**3 == M and gcd(a, q) == 1 and gcd(bb, q) == 1:
                    pts.append(RationalPoint(Fraction(a, q), Fraction(bb, q)))
    return sorted(set(pts), key=lambda p: (p.denominator, p.x, p.y))
