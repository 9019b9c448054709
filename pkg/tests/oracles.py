"""Independent reference implementations used only by the tests."""

import cmath
import math

from sympy import primerange

from cubictwist.rings import E, G, QuadInt, primes_over

OMEGA = cmath.exp(2j * math.pi / 3)


def embed(z: QuadInt) -> complex:
    """Complex embedding with w = exp(2 pi i / 3) and i = 1j."""
    return z.x + z.y * (OMEGA if z.ring is E else 1j)


def elements_up_to(ring, bound):
    r = math.isqrt(4 * bound) + 2
    out = []
    for x in range(-r, r + 1):
        for y in range(-r, r + 1):
            z = QuadInt(x, y, ring)
            if z.norm() <= bound:
                out.append(z)
    return out


def eisenstein_primes(bound):
    """Primary primes of Z[w] with norm <= bound (3 excluded)."""
    out = []
    for p in primerange(2, bound + 1):
        if p % 3 == 1:
            out += list(primes_over(p, E))
        elif p % 3 == 2 and p * p <= bound:
            out.append(QuadInt(-p, 0, E))
    return out


def gaussian_primes(bound):
    """Primary primes of Z[i] with norm <= bound (1+i excluded)."""
    out = []
    for p in primerange(3, bound + 1):
        if p % 4 == 1:
            out += list(primes_over(p, G))
        elif p % 4 == 3 and p * p <= bound:
            out.append(QuadInt(-p, 0, G))
    return out


def naive_point_count(c: int, p: int) -> int:
    """Projective points on y^2 = x^3 + c over F_p by double loop."""
    squares = {}
    for y in range(p):
        squares[y * y % p] = squares.get(y * y % p, 0) + 1
    return 1 + sum(squares.get((x * x * x + c) % p, 0) for x in range(p))
