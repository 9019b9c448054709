"""Exact arithmetic in the Eisenstein integers Z[w] and the Gaussian integers Z[i].

Elements are stored as an integer pair ``(x, y)`` meaning ``x + y*w`` with
``w**2 + w + 1 == 0`` or ``x + y*i`` with ``i**2 == -1``.  Both rings are
Euclidean, so gcds come from rounded division and factorization reduces to
factoring the norm over Z.
"""

from __future__ import annotations

import enum
import re
from dataclasses import dataclass
from functools import lru_cache
from math import gcd as igcd
from typing import Iterator, Union

from sympy import factorint
from sympy.ntheory import sqrt_mod

from .errors import DomainError, RingMismatchError


class Ring(enum.Enum):
    EISENSTEIN = "w"
    GAUSSIAN = "i"


E = Ring.EISENSTEIN
G = Ring.GAUSSIAN


def _div_round(a: int, b: int) -> int:
    # nearest integer to a/b for b > 0, ties rounded up
    return (2 * a + b) // (2 * b)


class QuadInt:
    """An element ``x + y*w`` of Z[w] or ``x + y*i`` of Z[i]. Immutable."""

    __slots__ = ("x", "y", "ring")

    def __init__(self, x: int, y: int = 0, ring: Ring = E):
        object.__setattr__(self, "x", int(x))
        object.__setattr__(self, "y", int(y))
        object.__setattr__(self, "ring", Ring(ring))

    def __setattr__(self, name, value):
        raise AttributeError("QuadInt is immutable")

    def __reduce__(self):
        return (QuadInt, (self.x, self.y, self.ring))

    # -- coercion -----------------------------------------------------------

    def _coerce(self, other) -> "QuadInt":
        if isinstance(other, QuadInt):
            if other.ring is not self.ring:
                raise RingMismatchError(
                    f"cannot combine {self.ring.name} and {other.ring.name} elements"
                )
            return other
        if isinstance(other, int):
            return QuadInt(other, 0, self.ring)
        return NotImplemented

    # -- arithmetic ---------------------------------------------------------

    def __add__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return QuadInt(self.x + o.x, self.y + o.y, self.ring)

    __radd__ = __add__

    def __neg__(self):
        return QuadInt(-self.x, -self.y, self.ring)

    def __sub__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return QuadInt(self.x - o.x, self.y - o.y, self.ring)

    def __rsub__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return o - self

    def __mul__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        a, b, c, d = self.x, self.y, o.x, o.y
        if self.ring is E:
            return QuadInt(a * c - b * d, a * d + b * c - b * d, E)
        return QuadInt(a * c - b * d, a * d + b * c, G)

    __rmul__ = __mul__

    def __pow__(self, k: int):
        if k < 0:
            raise ValueError("negative exponent")
        result = QuadInt(1, 0, self.ring)
        base = self
        while k:
            if k & 1:
                result = result * base
            base = base * base
            k >>= 1
        return result

    def conj(self) -> "QuadInt":
        if self.ring is E:
            return QuadInt(self.x - self.y, -self.y, E)
        return QuadInt(self.x, -self.y, G)

    def norm(self) -> int:
        x, y = self.x, self.y
        if self.ring is E:
            return x * x - x * y + y * y
        return x * x + y * y

    def trace(self) -> int:
        if self.ring is E:
            return 2 * self.x - self.y
        return 2 * self.x

    def divmod_round(self, other) -> tuple["QuadInt", "QuadInt"]:
        """Euclidean division: ``self = q*other + r`` with ``N(r) < N(other)``."""
        o = self._coerce(other)
        n = o.norm()
        if n == 0:
            raise ZeroDivisionError("division by zero in quadratic ring")
        num = self * o.conj()
        q = QuadInt(_div_round(num.x, n), _div_round(num.y, n), self.ring)
        return q, self - q * o

    def __mod__(self, other):
        return self.divmod_round(other)[1]

    def exact_div(self, other) -> "QuadInt":
        o = self._coerce(other)
        n = o.norm()
        if n == 0:
            raise ZeroDivisionError("division by zero in quadratic ring")
        num = self * o.conj()
        if num.x % n or num.y % n:
            raise DomainError(f"{o} does not divide {self}")
        return QuadInt(num.x // n, num.y // n, self.ring)

    def divides(self, other) -> bool:
        """True if ``self`` divides ``other``."""
        o = self._coerce(other)
        n = self.norm()
        if n == 0:
            return o.is_zero()
        num = o * self.conj()
        return num.x % n == 0 and num.y % n == 0

    # -- predicates ---------------------------------------------------------

    def is_zero(self) -> bool:
        return self.x == 0 and self.y == 0

    def is_unit(self) -> bool:
        return self.norm() == 1

    def __bool__(self):
        return not self.is_zero()

    # -- dunder protocol ----------------------------------------------------

    def __eq__(self, other):
        if isinstance(other, int):
            return self.x == other and self.y == 0
        if not isinstance(other, QuadInt):
            return NotImplemented
        return self.x == other.x and self.y == other.y and self.ring is other.ring

    def __hash__(self):
        if self.y == 0:
            return hash(self.x)
        return hash((self.x, self.y, self.ring.value))

    def __str__(self):
        return format_literal(self)

    def __repr__(self):
        return f"QuadInt({format_literal(self)!r})"


IntOrQuad = Union[int, QuadInt]


def as_quad(z: IntOrQuad, ring: Ring = E) -> QuadInt:
    if isinstance(z, QuadInt):
        return z
    return QuadInt(int(z), 0, ring)


def _same_ring(a: QuadInt, b: QuadInt) -> None:
    if a.ring is not b.ring:
        raise RingMismatchError(f"cannot combine {a.ring.name} and {b.ring.name} elements")


def units(ring: Ring) -> tuple[QuadInt, ...]:
    if ring is E:
        return tuple(QuadInt(x, y, E) for x, y in ((1, 0), (0, 1), (-1, -1), (-1, 0), (0, -1), (1, 1)))
    return tuple(QuadInt(x, y, G) for x, y in ((1, 0), (0, 1), (-1, 0), (0, -1)))


# sqrt(-3) = 1 + 2w; lambda = 1 + i
SQRT_MINUS_3 = QuadInt(1, 2, E)
RAMIFIED_E = QuadInt(1, -1, E)
LAMBDA = QuadInt(1, 1, G)


def norm(z: QuadInt) -> int:
    return z.norm()


# ---------------------------------------------------------------------------
# primary normalization


def is_primary(z: QuadInt) -> bool:
    """``z == 1 mod 3`` in Z[w]; ``z == 1 mod (1+i)^3`` in Z[i]."""
    if z.ring is E:
        return z.x % 3 == 1 and z.y % 3 == 0
    return z.y % 2 == 0 and (z.x + z.y) % 4 == 1


def primary_associate(z: QuadInt) -> QuadInt:
    """The unique unit multiple of ``z`` that is primary."""
    if z.is_zero():
        raise DomainError("0 has no primary associate")
    if z.ring is E and z.norm() % 3 == 0:
        raise DomainError(f"{z} is divisible by the ramified prime 1-w")
    if z.ring is G and z.norm() % 2 == 0:
        raise DomainError(f"{z} is divisible by 1+i")
    for u in units(z.ring):
        c = u * z
        if is_primary(c):
            return c
    raise AssertionError("no primary associate found")  # pragma: no cover


def canonical_associate(z: QuadInt) -> QuadInt:
    """Primary associate when one exists, else the associate in the fundamental sector.

    Sector: ``0 <= y < x`` for Z[w] (argument in [0, 60) degrees),
    ``x > 0, y >= 0`` for Z[i] (first quadrant).
    """
    if z.is_zero():
        return z
    n = z.norm()
    if (z.ring is E and n % 3) or (z.ring is G and n % 2):
        return primary_associate(z)
    for u in units(z.ring):
        c = u * z
        if z.ring is E and 0 <= c.y < c.x:
            return c
        if z.ring is G and c.x > 0 and c.y >= 0:
            return c
    raise AssertionError("no canonical associate found")  # pragma: no cover


def unit_part(z: QuadInt, assoc: QuadInt) -> QuadInt:
    """The unit ``u`` with ``z == u * assoc``."""
    return z.exact_div(assoc)


# ---------------------------------------------------------------------------
# gcd


def _raw_gcd(a: QuadInt, b: QuadInt) -> QuadInt:
    while not b.is_zero():
        a, b = b, a.divmod_round(b)[1]
    return a


def gcd(z1: IntOrQuad, z2: IntOrQuad) -> QuadInt:
    """Greatest common divisor, normalized by :func:`canonical_associate`."""
    if isinstance(z1, int) and isinstance(z2, QuadInt):
        z1 = as_quad(z1, z2.ring)
    if isinstance(z2, int) and isinstance(z1, QuadInt):
        z2 = as_quad(z2, z1.ring)
    z1, z2 = as_quad(z1), as_quad(z2)
    _same_ring(z1, z2)
    return canonical_associate(_raw_gcd(z1, z2))


def xgcd(a: QuadInt, b: QuadInt) -> tuple[QuadInt, QuadInt, QuadInt]:
    """Return ``(g, s, t)`` with ``s*a + t*b == g`` (g not normalized)."""
    _same_ring(a, b)
    one, zero = QuadInt(1, 0, a.ring), QuadInt(0, 0, a.ring)
    r0, r1, s0, s1, t0, t1 = a, b, one, zero, zero, one
    while not r1.is_zero():
        q, r = r0.divmod_round(r1)
        r0, r1 = r1, r
        s0, s1 = s1, s0 - q * s1
        t0, t1 = t1, t0 - q * t1
    return r0, s0, t0


def inverse_mod(a: QuadInt, m: QuadInt) -> QuadInt:
    """Inverse of ``a`` modulo ``m``; raises DomainError if not coprime."""
    g, s, _ = xgcd(a, m)
    if not g.is_unit():
        raise DomainError(f"{a} is not invertible modulo {m}")
    # g is a unit: s*a == g, so (s * g^-1) * a == 1
    ginv = g.conj()
    return (s * ginv) % m


# ---------------------------------------------------------------------------
# factorization


@dataclass(frozen=True)
class Factorization:
    unit: QuadInt
    factors: tuple[tuple[QuadInt, int], ...]

    def expand(self) -> QuadInt:
        out = self.unit
        for p, e in self.factors:
            out = out * p**e
        return out


@lru_cache(maxsize=None)
def split_prime(p: int, ring: Ring = E) -> QuadInt:
    """A primary prime of norm ``p`` for a rational prime that splits in ``ring``."""
    if ring is E:
        if p % 3 != 1:
            raise DomainError(f"{p} does not split in Z[w]")
        r = sqrt_mod(-3 % p, p)
        w0 = (r - 1) * pow(2, -1, p) % p
        g = _raw_gcd(QuadInt(p, 0, E), QuadInt(-w0, 1, E))
    else:
        if p % 4 != 1:
            raise DomainError(f"{p} does not split in Z[i]")
        r = sqrt_mod(p - 1, p)
        g = _raw_gcd(QuadInt(p, 0, G), QuadInt(-r, 1, G))
    if g.norm() != p:  # pragma: no cover
        raise AssertionError(f"split search failed for {p}")
    return primary_associate(g)


def primes_over(p: int, ring: Ring = E) -> tuple[QuadInt, ...]:
    """Representatives of the primes of ``ring`` lying over the rational prime ``p``."""
    if ring is E:
        if p == 3:
            return (RAMIFIED_E,)
        if p % 3 == 2:
            return (QuadInt(-p, 0, E),)
    else:
        if p == 2:
            return (LAMBDA,)
        if p % 4 == 3:
            return (QuadInt(-p, 0, G),)
    pi = split_prime(p, ring)
    return (pi, pi.conj())


def factor(z: QuadInt) -> Factorization:
    if z.is_zero():
        raise DomainError("cannot factor 0")
    rest = z
    found: list[tuple[QuadInt, int]] = []
    for p in sorted(factorint(z.norm())):
        for pi in primes_over(p, z.ring):
            e = 0
            while pi.divides(rest):
                rest = rest.exact_div(pi)
                e += 1
            if e:
                found.append((pi, e))
    if not rest.is_unit():  # pragma: no cover
        raise AssertionError(f"factorization of {z} left cofactor {rest}")
    found.sort(key=lambda pe: (pe[0].norm(), pe[0].x, pe[0].y))
    return Factorization(rest, tuple(found))


# ---------------------------------------------------------------------------
# residue systems


def residues_mod(m: QuadInt) -> Iterator[QuadInt]:
    """A complete residue system modulo ``m``, of size ``N(m)``.

    The ideal (m) is a sublattice of Z^2 whose image on the second coordinate
    is ``g*Z`` with ``g = gcd(x, y)``; the box ``[0, N/g) x [0, g)`` is then a
    fundamental domain.
    """
    if m.is_zero():
        raise DomainError("residues modulo 0")
    n = m.norm()
    g = igcd(m.x, m.y)
    n1 = n // g
    for b in range(g):
        for a in range(n1):
            yield QuadInt(a, b, m.ring)


def congruent(a: QuadInt, b: QuadInt, m: QuadInt) -> bool:
    return m.divides(a - b)


# ---------------------------------------------------------------------------
# literals

_TERM = re.compile(r"\s*([+-]?)\s*(\d*)\s*\*?\s*([wi]?)\s*")


def parse_literal(text: str, ring: Ring | None = None) -> QuadInt:
    """Parse ``a+bw`` / ``a+bi`` style literals such as ``1+3w``, ``-2-3w``, ``i``."""
    s = text.strip()
    if not s:
        raise DomainError("empty literal")
    pos, x, y, letter, first = 0, 0, 0, None, True
    while pos < len(s):
        m = _TERM.match(s, pos)
        if m is None or m.end() == pos:
            raise DomainError(f"cannot parse literal {text!r}")
        sign, digits, unit = m.groups()
        if not sign and not first:
            raise DomainError(f"cannot parse literal {text!r}")
        if not digits and not unit:
            raise DomainError(f"cannot parse literal {text!r}")
        coeff = int(digits) if digits else 1
        if sign == "-":
            coeff = -coeff
        if unit:
            if letter is not None and letter != unit:
                raise DomainError(f"mixed ring letters in {text!r}")
            letter = unit
            y += coeff
        else:
            x += coeff
        pos, first = m.end(), False
    lit_ring = Ring(letter) if letter else None
    if ring is not None and lit_ring is not None and lit_ring is not ring:
        raise RingMismatchError(f"literal {text!r} is not in {ring.name}")
    return QuadInt(x, y, ring or lit_ring or E)


def format_literal(z: QuadInt) -> str:
    x, y, letter = z.x, z.y, z.ring.value
    if y == 0:
        return str(x)
    if y == 1:
        ypart = letter
    elif y == -1:
        ypart = "-" + letter
    else:
        ypart = f"{y}{letter}"
    if x == 0:
        return ypart
    return f"{x}{ypart}" if ypart.startswith("-") else f"{x}+{ypart}"
