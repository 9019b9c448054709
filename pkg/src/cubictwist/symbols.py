"""Quadratic residue symbols over Z[i] and cubic residue symbols over Z[w].

Each symbol has two evaluators: a reciprocity-based one that runs like the
binary Jacobi algorithm (reduce, strip the ramified prime and the unit, flip),
and an Euler-criterion oracle valid at prime denominators.

Values are exponents: ``(a/b)_3 = w**k`` and ``(a/b)_2 = (-1)**k``.  The
complex embedding used elsewhere is ``w = exp(2*pi*i/3)``.
"""

from __future__ import annotations

import cmath
import enum
from dataclasses import dataclass
from functools import lru_cache
from math import isqrt
from typing import Optional

from sympy import isprime

from .errors import DomainError, RingMismatchError
from .rings import E, G, QuadInt, Ring, as_quad, is_primary, primary_associate, units


class SymbolKind(enum.Enum):
    QUADRATIC = 2
    CUBIC = 3


@dataclass(frozen=True)
class SymbolValue:
    kind: SymbolKind
    exponent: Optional[int]  # None encodes NotCoprime

    def __post_init__(self):
        if self.exponent is not None:
            object.__setattr__(self, "exponent", self.exponent % self.kind.value)

    @property
    def order(self) -> int:
        return self.kind.value

    @property
    def not_coprime(self) -> bool:
        return self.exponent is None

    def root(self) -> complex:
        """The value as a complex root of unity (0 for NotCoprime)."""
        if self.exponent is None:
            return 0j
        return cmath.exp(2j * cmath.pi * self.exponent / self.order)

    def __mul__(self, other: "SymbolValue") -> "SymbolValue":
        if self.kind is not other.kind:
            raise ValueError("cannot multiply symbols of different orders")
        if self.exponent is None or other.exponent is None:
            return SymbolValue(self.kind, None)
        return SymbolValue(self.kind, self.exponent + other.exponent)

    def inverse(self) -> "SymbolValue":
        if self.exponent is None:
            return self
        return SymbolValue(self.kind, -self.exponent)

    def __str__(self):
        if self.exponent is None:
            return "NotCoprime"
        if self.kind is SymbolKind.QUADRATIC:
            return "1" if self.exponent == 0 else "-1"
        return ("1", "w", "w^2")[self.exponent]


def _quad(a, ring: Ring) -> QuadInt:
    z = as_quad(a, ring)
    if z.ring is not ring:
        raise RingMismatchError(f"{z} is not in {ring.name}")
    return z


# ---------------------------------------------------------------------------
# cubic symbol, integer-pair arithmetic on x + y*w


def _e_mod(ax: int, ay: int, bx: int, by: int) -> tuple[int, int]:
    n = bx * bx - bx * by + by * by
    cx, cy = bx - by, -by  # conj(b)
    nx = ax * cx - ay * cy
    ny = ax * cy + ay * cx - ay * cy
    qx = (2 * nx + n) // (2 * n)
    qy = (2 * ny + n) // (2 * n)
    return ax - (qx * bx - qy * by), ay - (qx * by + qy * bx - qy * by)


def _cubic_unit_exp(bx: int, by: int) -> int:
    # (w / b)_3 = w^((1 - c - d)/3) for primary b = c + d*w
    return ((1 - bx - by) // 3) % 3


def _cubic_ramified_exp(bx: int, by: int) -> int:
    # (1-w / b)_3 = w^(2(1 - c)/3) for primary b = c + d*w
    return (2 * (1 - bx) // 3) % 3


def cubic_exponent(a: QuadInt, b: QuadInt) -> Optional[int]:
    """Exponent of ``(a/b)_3`` for any ``b`` coprime to 3; ``None`` if not coprime.

    The symbol depends only on the ideal (b), so ``b`` is first replaced by its
    primary associate.  A unit denominator gives exponent 0.
    """
    if b.is_zero():
        raise DomainError("cubic symbol with zero denominator")
    if b.norm() % 3 == 0:
        raise DomainError(f"denominator {b} is not coprime to 3")
    if not is_primary(b):
        b = primary_associate(b)
    ax, ay, bx, by = a.x, a.y, b.x, b.y
    acc = 0
    while True:
        if bx == 1 and by == 0:
            return acc % 3
        ax, ay = _e_mod(ax, ay, bx, by)
        if ax == 0 and ay == 0:
            return None
        # strip powers of 1-w; divisible iff x + y == 0 mod 3
        k = 0
        while (ax + ay) % 3 == 0:
            ax, ay = (2 * ax - ay) // 3, (ax + ay) // 3
            k += 1
        # a = u * a' with a' primary, u = s * w^(-j)
        j = 0
        while ay % 3 != 0:
            ax, ay = -ay, ax - ay
            j += 1
        if ax % 3 != 1:
            ax, ay = -ax, -ay
        acc += k * _cubic_ramified_exp(bx, by) - j * _cubic_unit_exp(bx, by)
        # cubic reciprocity for coprime primary elements
        ax, ay, bx, by = bx, by, ax, ay


def cubic_symbol(a, b) -> SymbolValue:
    """``(a/b)_3`` for primary ``b`` in Z[w]."""
    a, b = _quad(a, E), _quad(b, E)
    if b.is_zero():
        raise DomainError("cubic symbol with zero denominator")
    if not is_primary(b):
        raise DomainError(f"denominator {b} is not primary (== 1 mod 3)")
    return SymbolValue(SymbolKind.CUBIC, cubic_exponent(a, b))


# ---------------------------------------------------------------------------
# quadratic symbol, integer-pair arithmetic on x + y*i


def _g_mod(ax: int, ay: int, bx: int, by: int) -> tuple[int, int]:
    n = bx * bx + by * by
    nx = ax * bx + ay * by
    ny = ay * bx - ax * by
    qx = (2 * nx + n) // (2 * n)
    qy = (2 * ny + n) // (2 * n)
    return ax - (qx * bx - qy * by), ay - (qx * by + qy * bx)


def _quad_unit_exp(bx: int, by: int) -> int:
    # (i / b)_2 = (-1)^((N(b) - 1)/4) for odd b
    return ((bx * bx + by * by - 1) // 4) % 2


def _quad_lambda_exp(bx: int, by: int) -> int:
    # (1+i / b)_2 = (-1)^((c - d - d^2 - 1)/4) for primary b = c + d*i
    return ((bx - by - by * by - 1) // 4) % 2


def quadratic_exponent(a: QuadInt, b: QuadInt) -> Optional[int]:
    """Exponent of ``(a/b)_2`` for odd ``b``; ``None`` if not coprime."""
    if b.is_zero():
        raise DomainError("quadratic symbol with zero denominator")
    if b.norm() % 2 == 0:
        raise DomainError(f"denominator {b} is even (divisible by 1+i)")
    if not is_primary(b):
        b = primary_associate(b)
    ax, ay, bx, by = a.x, a.y, b.x, b.y
    acc = 0
    while True:
        if bx == 1 and by == 0:
            return acc % 2
        ax, ay = _g_mod(ax, ay, bx, by)
        if ax == 0 and ay == 0:
            return None
        k = 0
        while (ax + ay) % 2 == 0:
            # divide by 1+i
            ax, ay = (ax + ay) // 2, (ay - ax) // 2
            k += 1
        # a = i^(-j) * a' with a' primary
        j = 0
        while not (ay % 2 == 0 and (ax + ay) % 4 == 1):
            ax, ay = -ay, ax
            j += 1
        acc += k * _quad_lambda_exp(bx, by) - j * _quad_unit_exp(bx, by)
        ax, ay, bx, by = bx, by, ax, ay


def quadratic_symbol(a, b) -> SymbolValue:
    """``(a/b)_2`` for odd ``b`` in Z[i]."""
    a, b = _quad(a, G), _quad(b, G)
    return SymbolValue(SymbolKind.QUADRATIC, quadratic_exponent(a, b))


# ---------------------------------------------------------------------------
# Euler-criterion oracle


def _e_mul(ax: int, ay: int, bx: int, by: int) -> tuple[int, int]:
    return ax * bx - ay * by, ax * by + ay * bx - ay * by


def _g_mul(ax: int, ay: int, bx: int, by: int) -> tuple[int, int]:
    return ax * bx - ay * by, ax * by + ay * bx


def _pow_mod(a: QuadInt, k: int, p: QuadInt) -> QuadInt:
    mul, mod = (_e_mul, _e_mod) if a.ring is E else (_g_mul, _g_mod)
    rx, ry = 1, 0
    bx, by = mod(a.x, a.y, p.x, p.y)
    while k:
        if k & 1:
            rx, ry = mod(*mul(rx, ry, bx, by), p.x, p.y)
        bx, by = mod(*mul(bx, by, bx, by), p.x, p.y)
        k >>= 1
    return QuadInt(rx, ry, a.ring)


@lru_cache(maxsize=4096)
def is_ring_prime(p: QuadInt) -> bool:
    n = p.norm()
    if n < 2:
        return False
    if isprime(n):
        return True
    # inert rational prime q: N = q^2 and p an associate of q
    r = isqrt(n)
    if r * r != n or not isprime(r):
        return False
    return any(u * p == r for u in units(p.ring))


def euler_symbol(a, p, order: int) -> SymbolValue:
    """Oracle: the root of unity congruent to ``a^((N(p)-1)/order)`` modulo the prime ``p``."""
    if order not in (2, 3):
        raise DomainError("order must be 2 or 3")
    ring = p.ring if isinstance(p, QuadInt) else (E if order == 3 else G)
    if (order == 3) != (ring is E):
        raise DomainError("order 3 lives in Z[w], order 2 in Z[i]")
    a, p = _quad(a, ring), _quad(p, ring)
    if not is_ring_prime(p):
        raise DomainError(f"{p} is not prime in {ring.name}")
    n = p.norm()
    if (n - 1) % order:
        raise DomainError(f"N({p}) - 1 is not divisible by {order}")
    kind = SymbolKind(order)
    if p.divides(a):
        return SymbolValue(kind, None)
    t = _pow_mod(a, (n - 1) // order, p)
    root = QuadInt(1, 0, ring)
    zeta = QuadInt(0, 1, E) if order == 3 else QuadInt(-1, 0, G)
    for k in range(order):
        if p.divides(t - root):
            return SymbolValue(kind, k)
        root = root * zeta
    raise AssertionError(f"Euler criterion gave a non-root of unity for {a} mod {p}")  # pragma: no cover
