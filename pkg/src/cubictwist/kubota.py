"""Kubota homomorphisms on congruence subgroups of SL(2, Z[i]) and SL(3, Z[w]).

GL(2): kappa on Gamma(lambda^3), lambda = 1+i, valued in {+1, -1}.
GL(3): kappa on Gamma = {g in SL(3, Z[w]) : g == I mod 3}, valued in the cube
roots of unity, computed from the bottom rows of ``g`` and of
``iota(g) = J * g^-T * J`` after factoring out ``r1, r2``.
"""

from __future__ import annotations

import enum
import itertools
import random
from dataclasses import dataclass
from typing import Iterator, Optional, Sequence

from .errors import DomainError
from .rings import E, G, LAMBDA, QuadInt, Ring, canonical_associate, factor, gcd, units, xgcd
from .symbols import SymbolKind, SymbolValue, cubic_exponent, quadratic_exponent

LAMBDA3 = LAMBDA**3


class Convention(enum.Enum):
    PAPER_LITERAL = "paper"  # (a/b)_2 when c != 0
    STANDARD = "standard"  # (c/d)_2 when c != 0


@dataclass(frozen=True)
class IntMatrix:
    """Square matrix over Z[w] or Z[i] with determinant 1."""

    rows: tuple[tuple[QuadInt, ...], ...]
    ring: Ring

    def __post_init__(self):
        n = len(self.rows)
        if n not in (2, 3) or any(len(r) != n for r in self.rows):
            raise DomainError("matrices must be 2x2 or 3x3")
        for r in self.rows:
            for z in r:
                if z.ring is not self.ring:
                    raise DomainError("matrix entries must share the matrix ring")
        if self.det() != 1:
            raise DomainError(f"determinant is {self.det()}, not 1")

    @classmethod
    def from_entries(cls, entries: Sequence, ring: Ring) -> "IntMatrix":
        k = len(entries)
        n = {4: 2, 9: 3}.get(k)
        if n is None:
            raise DomainError("expected 4 or 9 entries")
        zs = [e if isinstance(e, QuadInt) else QuadInt(int(e), 0, ring) for e in entries]
        return cls(tuple(tuple(zs[i * n : (i + 1) * n]) for i in range(n)), ring)

    @classmethod
    def identity(cls, n: int, ring: Ring) -> "IntMatrix":
        one, zero = QuadInt(1, 0, ring), QuadInt(0, 0, ring)
        return cls(tuple(tuple(one if i == j else zero for j in range(n)) for i in range(n)), ring)

    @property
    def n(self) -> int:
        return len(self.rows)

    def __getitem__(self, ij: tuple[int, int]) -> QuadInt:
        return self.rows[ij[0]][ij[1]]

    def det(self) -> QuadInt:
        m = self.rows
        if len(m) == 2:
            return m[0][0] * m[1][1] - m[0][1] * m[1][0]
        return (
            m[0][0] * (m[1][1] * m[2][2] - m[1][2] * m[2][1])
            - m[0][1] * (m[1][0] * m[2][2] - m[1][2] * m[2][0])
            + m[0][2] * (m[1][0] * m[2][1] - m[1][1] * m[2][0])
        )

    def __matmul__(self, other: "IntMatrix") -> "IntMatrix":
        if self.ring is not other.ring or self.n != other.n:
            raise DomainError("incompatible matrices")
        n, zero = self.n, QuadInt(0, 0, self.ring)
        rows = []
        for i in range(n):
            row = []
            for j in range(n):
                s = zero
                for k in range(n):
                    s = s + self.rows[i][k] * other.rows[k][j]
                row.append(s)
            rows.append(tuple(row))
        return IntMatrix(tuple(rows), self.ring)

    def transpose(self) -> "IntMatrix":
        return IntMatrix(tuple(zip(*self.rows)), self.ring)

    def inverse(self) -> "IntMatrix":
        """Adjugate, which is the inverse because det = 1."""
        m = self.rows
        if self.n == 2:
            return IntMatrix(((m[1][1], -m[0][1]), (-m[1][0], m[0][0])), self.ring)

        def cof(i, j):
            r = [k for k in range(3) if k != i]
            c = [k for k in range(3) if k != j]
            minor = m[r[0]][c[0]] * m[r[1]][c[1]] - m[r[0]][c[1]] * m[r[1]][c[0]]
            return minor if (i + j) % 2 == 0 else -minor

        return IntMatrix(tuple(tuple(cof(j, i) for j in range(3)) for i in range(3)), self.ring)

    def entries(self) -> list[QuadInt]:
        return [z for r in self.rows for z in r]

    def __str__(self):
        return ",".join(str(z) for z in self.entries())


def elementary(n: int, i: int, j: int, x: QuadInt) -> IntMatrix:
    """``I + x * E_ij``."""
    rows = [list(r) for r in IntMatrix.identity(n, x.ring).rows]
    rows[i][j] = rows[i][j] + x
    return IntMatrix(tuple(tuple(r) for r in rows), x.ring)


_J = ((0, 0, 1), (0, 1, 0), (1, 0, 0))


def involution(g: IntMatrix) -> IntMatrix:
    """``iota(g) = J * transpose(g^-1) * J`` with J the antidiagonal permutation."""
    if g.n != 3:
        raise DomainError("the involution is defined on 3x3 matrices")
    m = g.inverse().transpose().rows
    # (J M J)_{ij} = M_{2-i, 2-j}
    return IntMatrix(tuple(tuple(m[2 - i][2 - j] for j in range(3)) for i in range(3)), g.ring)


# ---------------------------------------------------------------------------
# GL(2)


def in_gamma_lambda3(g: IntMatrix) -> bool:
    if g.n != 2 or g.ring is not G:
        return False
    a, b, c, d = g.entries()
    return all(LAMBDA3.divides(z) for z in (a - 1, d - 1, b, c))


def gl2_kappa(gamma: IntMatrix, convention: Convention = Convention.STANDARD) -> SymbolValue:
    if not in_gamma_lambda3(gamma):
        raise DomainError("matrix is not in Gamma(lambda^3)")
    a, b, c, d = gamma.entries()
    if c.is_zero():
        return SymbolValue(SymbolKind.QUADRATIC, 0)
    if convention is Convention.STANDARD:
        num, den = c, d
    else:
        num, den = a, b
    if den.is_zero() or den.norm() % 2 == 0:
        raise DomainError(
            f"({num}/{den})_2 is undefined: the denominator is not coprime to 1+i"
        )
    return SymbolValue(SymbolKind.QUADRATIC, quadratic_exponent(num, den))


# ---------------------------------------------------------------------------
# GL(3)


def in_gamma3(g: IntMatrix) -> bool:
    if g.n != 3 or g.ring is not E:
        return False
    for i, row in enumerate(g.rows):
        for j, z in enumerate(row):
            v = z - 1 if i == j else z
            if v.x % 3 or v.y % 3:
                return False
    return True


@dataclass(frozen=True)
class KubotaInvariants:
    A1: QuadInt
    B1: QuadInt
    C1: QuadInt
    A2: QuadInt
    B2: QuadInt
    C2: QuadInt
    r1: QuadInt
    r2: QuadInt
    B1p: QuadInt
    B2p: QuadInt
    C1p: QuadInt
    C2p: QuadInt

    def check(self) -> None:
        """Raise DomainError if any structural relation fails."""
        A1, B1, C1, A2, B2, C2 = self.A1, self.B1, self.C1, self.A2, self.B2, self.C2
        if not gcd(gcd(A1, B1), C1).is_unit() or not gcd(gcd(A2, B2), C2).is_unit():
            raise DomainError("bottom rows are not primitive")
        if not (A1 * C2 + B1 * B2 + C1 * A2).is_zero():
            raise DomainError("A1*C2 + B1*B2 + C1*A2 != 0")
        for z in (A1, A2, B1, B2):
            if z.x % 3 or z.y % 3:
                raise DomainError("A and B invariants must be divisible by 3")
        for z in (C1, C2, self.r1, self.r2):
            if z.x % 3 != 1 or z.y % 3:
                raise DomainError("C invariants and r1, r2 must be == 1 mod 3")
        r12 = self.r1 * self.r2
        if (
            B1 != self.r1 * self.B1p
            or B2 != self.r2 * self.B2p
            or C1 != r12 * self.C1p
            or C2 != r12 * self.C2p
        ):
            raise DomainError("factorization does not reproduce the invariants")
        if not gcd(self.C1p, self.C2p).is_unit():
            raise DomainError("C1' and C2' are not coprime")


def bottom_rows(g: IntMatrix) -> tuple[QuadInt, ...]:
    if not in_gamma3(g):
        raise DomainError("matrix is not in Gamma (SL(3, Z[w]), == I mod 3)")
    A1, B1, C1 = g.rows[2]
    A2, B2, C2 = involution(g).rows[2]
    return A1, B1, C1, A2, B2, C2


def _valuation(z: QuadInt, pi: QuadInt) -> float:
    if z.is_zero():
        return float("inf")
    v = 0
    while pi.divides(z):
        z = z.exact_div(pi)
        v += 1
    return v


def _with_r1(rows: tuple[QuadInt, ...], common: QuadInt, r1: QuadInt) -> KubotaInvariants:
    A1, B1, C1, A2, B2, C2 = rows
    r2 = common.exact_div(r1)
    if not r2.divides(B2):
        raise DomainError("no valid factorization: r2 does not divide B2")
    r12 = r1 * r2
    inv = KubotaInvariants(
        A1, B1, C1, A2, B2, C2, r1, r2,
        B1.exact_div(r1), B2.exact_div(r2), C1.exact_div(r12), C2.exact_div(r12),
    )
    inv.check()
    return inv


def gl3_invariants(gamma: IntMatrix) -> KubotaInvariants:
    """Bottom-row invariants with the factorization that gives r1 as much as possible."""
    rows = bottom_rows(gamma)
    _, B1, C1, _, _, C2 = rows
    common = canonical_associate(gcd(C1, C2))
    r1 = canonical_associate(gcd(common, B1))
    return _with_r1(rows, common, r1)


def all_factorizations(gamma: IntMatrix, limit: int = 64) -> list[KubotaInvariants]:
    """Every valid ``(r1, r2)`` split of ``gcd(C1, C2)``, up to ``limit`` of them.

    r1 * r2 must equal the primary gcd of C1 and C2 for C1', C2' to be
    coprime, so the choices are the per-prime splits with ``r1 | B1``, ``r2 | B2``.
    """
    rows = bottom_rows(gamma)
    _, B1, C1, _, B2, C2 = rows
    common = canonical_associate(gcd(C1, C2))
    if common.is_unit():
        return [_with_r1(rows, common, common)]
    choices = []
    for pi, e in factor(common).factors:
        v1, v2 = _valuation(B1, pi), _valuation(B2, pi)
        lo, hi = max(0, e - v2), min(e, v1)
        if lo > hi:
            raise DomainError("no valid factorization for this matrix")
        choices.append([pi**k for k in range(int(lo), int(hi) + 1)])
    out = []
    for combo in itertools.product(*choices):
        r1 = QuadInt(1, 0, E)
        for part in combo:
            r1 = r1 * part
        out.append(_with_r1(rows, common, r1))
        if len(out) >= limit:
            break
    return out


def kappa_from_invariants(inv: KubotaInvariants) -> SymbolValue:
    parts = (
        (inv.B1p, inv.C1p, 1),
        (inv.B2p, inv.C2p, 1),
        (inv.C1p, inv.C2p, -1),
        (inv.A1, inv.r1, 1),
        (inv.A2, inv.r2, 1),
    )
    total = 0
    for num, den, sign in parts:
        k = cubic_exponent(num, den)
        if k is None:
            raise DomainError(f"({num}/{den})_3 is not coprime; invariants are degenerate")
        total += sign * k
    return SymbolValue(SymbolKind.CUBIC, total)


def gl3_kappa(gamma: IntMatrix) -> SymbolValue:
    return kappa_from_invariants(gl3_invariants(gamma))


# ---------------------------------------------------------------------------
# sampling


def complete_bottom_row(c: QuadInt, d: QuadInt, level: QuadInt) -> IntMatrix:
    """A matrix ``[[a, b], [c, d]]`` of determinant 1 congruent to I modulo ``level``.

    Needs ``c == 0`` and ``d == 1`` modulo ``level`` and ``gcd(c, d) = 1``.
    From ``a0*d - b0*c = 1`` one gets ``a0 == 1`` automatically; shifting by
    ``t = -b0`` makes ``b`` divisible by ``level`` as well.
    """
    g, s, t = xgcd(d, c)
    if not g.is_unit():
        raise DomainError(f"{c} and {d} are not coprime")
    ginv = g.conj()  # g is a unit
    a0, b0 = s * ginv, -(t * ginv)
    a, b = a0 - b0 * c, b0 - b0 * d
    m = IntMatrix(((a, b), (c, d)), c.ring)
    for z, target in ((a, 1), (b, 0), (c, 0), (d, 1)):
        if not level.divides(z - target):
            raise DomainError("bottom row is not congruent to (0, 1) modulo the level")
    return m


def embed(m: IntMatrix, i: int, j: int) -> IntMatrix:
    """Place a 2x2 matrix on rows/columns ``(i, j)`` of the 3x3 identity."""
    rows = [list(r) for r in IntMatrix.identity(3, m.ring).rows]
    idx = (i, j)
    for r in range(2):
        for c in range(2):
            rows[idx[r]][idx[c]] = m.rows[r][c]
    return IntMatrix(tuple(tuple(r) for r in rows), m.ring)


# Bottom rows (c, d) for the non-elementary generators.  Elementary matrices
# alone generate a subgroup on which kappa is trivial, so words in them would
# make every homomorphism check vacuous.
_GL2_ROWS = [(LAMBDA3 * QuadInt(x, y, G), QuadInt(1, 0, G) + LAMBDA3 * QuadInt(u, v, G))
             for x, y, u, v in ((1, 0, 1, 0), (0, 1, 1, 1), (1, 1, 0, 1), (1, 0, -1, 1), (2, 1, 1, -1))]
_GL3_ROWS = [(QuadInt(3 * x, 3 * y, E), QuadInt(1 + 3 * u, 3 * v, E))
             for x, y, u, v in ((1, 0, 0, 1), (0, 1, 1, 0), (1, 1, 1, 1), (1, -1, 0, 1), (2, 1, -1, 1))]


def generators(n: int) -> list[IntMatrix]:
    """Fixed generators of Gamma(lambda^3) (n=2) or Gamma (n=3).

    Elementary matrices ``I + lambda^3 u E_ij`` / ``I + 3u E_ij`` plus a few
    completed bottom rows (embedded in each 2x2 block for n=3), and inverses.
    """
    if n == 2:
        gens = [elementary(2, i, j, LAMBDA3 * u) for i, j in ((0, 1), (1, 0)) for u in units(G)]
        extra = [complete_bottom_row(c, d, LAMBDA3) for c, d in _GL2_ROWS]
    elif n == 3:
        gens = [
            elementary(3, i, j, 3 * u)
            for i in range(3)
            for j in range(3)
            if i != j
            for u in units(E)
        ]
        extra = [
            embed(complete_bottom_row(c, d, QuadInt(3, 0, E)), i, j)
            for c, d in _GL3_ROWS
            for i, j in ((0, 1), (1, 2), (0, 2))
        ]
    else:
        raise DomainError("n must be 2 or 3")
    return gens + extra + [m.inverse() for m in extra]


_GENERATORS: dict[int, list[IntMatrix]] = {}


def sample_gamma(ring: Optional[Ring], n: int, word_length: int, seed) -> IntMatrix:
    """A deterministic pseudo-random word of ``word_length`` generators from :func:`generators`."""
    expected = G if n == 2 else E
    if ring is not None and ring is not expected:
        raise DomainError(f"n={n} matrices live over {expected.name}")
    if word_length < 0:
        raise DomainError("word_length must be non-negative")
    gens = _GENERATORS.setdefault(n, generators(n))
    rng = seed if isinstance(seed, random.Random) else random.Random(seed)
    g = IntMatrix.identity(n, expected)
    for _ in range(word_length):
        g = g @ rng.choice(gens)
    return g


def sample_embedded_sl2(word_length: int, seed) -> IntMatrix:
    """Words in the copy of SL(2) on coordinates (1, 3); these have B1 = B2 = 0."""
    rng = seed if isinstance(seed, random.Random) else random.Random(seed)
    gens = [elementary(3, i, j, 3 * u) for i, j in ((0, 2), (2, 0)) for u in units(E)]
    g = IntMatrix.identity(3, E)
    for _ in range(word_length):
        g = g @ rng.choice(gens)
    return g


def iter_multi_factorization(seed, count: int, max_tries: int = 200000) -> Iterator[IntMatrix]:
    """Yield ``count`` matrices in Gamma admitting at least two valid factorizations."""
    rng = random.Random(seed)
    found = tries = 0
    while found < count and tries < max_tries:
        tries += 1
        kind = rng.random()
        if kind < 0.5:
            g = sample_gamma(E, 3, rng.randint(2, 5), rng)
        else:
            # conjugate an embedded SL(2) word by a short word of Gamma
            h = sample_gamma(E, 3, rng.randint(0, 2), rng)
            g = h @ sample_embedded_sl2(rng.randint(2, 4), rng) @ h.inverse()
        try:
            if len(all_factorizations(g, limit=2)) >= 2:
                found += 1
                yield g
        except DomainError:
            continue


def check_homomorphism(
    n: int,
    samples: int,
    seed,
    convention: Convention = Convention.STANDARD,
    word_length: int = 3,
) -> dict:
    """Count ``kappa(g1 g2) == kappa(g1) kappa(g2)`` over sampled pairs."""
    rng = random.Random(seed)
    passed = failed = undefined = 0
    for _ in range(samples):
        g1 = sample_gamma(None, n, word_length, rng)
        g2 = sample_gamma(None, n, word_length, rng)
        try:
            if n == 2:
                lhs = gl2_kappa(g1 @ g2, convention)
                rhs = gl2_kappa(g1, convention) * gl2_kappa(g2, convention)
            else:
                lhs = gl3_kappa(g1 @ g2)
                rhs = gl3_kappa(g1) * gl3_kappa(g2)
        except DomainError:
            undefined += 1
            continue
        if lhs == rhs:
            passed += 1
        else:
            failed += 1
    out = {"n": n, "samples": samples, "passed": passed, "failed": failed, "undefined": undefined}
    if n == 2:
        out["convention"] = convention.value
    return out
