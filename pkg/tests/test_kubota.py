import random

import pytest
from hypothesis import given
from hypothesis import strategies as st

from cubictwist.errors import DomainError
from cubictwist.kubota import (
    LAMBDA3, Convention, IntMatrix, all_factorizations, check_homomorphism, elementary,
    gl2_kappa, gl3_invariants, gl3_kappa, in_gamma3, involution, iter_multi_factorization,
    kappa_from_invariants, sample_gamma,
)
from cubictwist.rings import E, G, QuadInt

I3 = IntMatrix.identity(3, E)
I2 = IntMatrix.identity(2, G)
seeds = st.integers(0, 2**32)


def test_determinant_checked():
    with pytest.raises(DomainError):
        IntMatrix.from_entries([1, 1, 1, 1], G)


def test_involution_examples():
    assert involution(I3) == I3
    g = elementary(3, 2, 0, QuadInt(3, 0, E))
    assert involution(g) == elementary(3, 2, 0, QuadInt(-3, 0, E))


@given(seeds, seeds)
def test_involution_is_a_multiplicative_involution(s1, s2):
    g, h = sample_gamma(E, 3, 4, s1), sample_gamma(E, 3, 4, s2)
    assert involution(involution(g)) == g
    assert involution(g @ h) == involution(g) @ involution(h)


def test_gl2_examples():
    assert gl2_kappa(I2).exponent == 0
    upper = IntMatrix.from_entries([1, LAMBDA3, 0, 1], G)
    for conv in Convention:
        assert gl2_kappa(upper, conv).exponent == 0
    with pytest.raises(DomainError):
        gl2_kappa(IntMatrix.from_entries([1, 1, 0, 1], G))  # not in Gamma(lambda^3)


def test_gl2_paper_literal_is_undefined_off_the_upper_triangle():
    # b == 0 mod lambda^3 is even, so (a/b)_2 has no meaning once c != 0
    g = sample_gamma(G, 2, 5, 11)
    while g.rows[1][0].is_zero():
        g = g @ sample_gamma(G, 2, 1, 3)
    with pytest.raises(DomainError):
        gl2_kappa(g, Convention.PAPER_LITERAL)


def test_gl3_examples():
    inv = gl3_invariants(I3)
    assert (inv.A1, inv.B1, inv.C1, inv.A2, inv.B2, inv.C2) == (0, 0, 1, 0, 0, 1)
    assert inv.r1 == 1 and inv.r2 == 1
    assert gl3_kappa(I3).exponent == 0
    g = elementary(3, 2, 0, QuadInt(3, 0, E))
    inv = gl3_invariants(g)
    assert (inv.A1, inv.B1, inv.C1, inv.A2, inv.B2, inv.C2) == (3, 0, 1, -3, 0, 1)
    assert inv.A1 * inv.C2 + inv.B1 * inv.B2 + inv.C1 * inv.A2 == 0
    assert gl3_kappa(g).exponent == 0


def test_sampling_determinism_and_congruence():
    assert sample_gamma(E, 3, 0, 5) == I3
    assert sample_gamma(E, 3, 6, 5) == sample_gamma(E, 3, 6, 5)
    rng = random.Random(0)
    for _ in range(1000):
        assert in_gamma3(sample_gamma(E, 3, rng.randint(0, 6), rng))
    with pytest.raises(DomainError):
        sample_gamma(G, 3, 2, 0)


@given(seeds)
def test_invariants_hold_on_samples(seed):
    inv = gl3_invariants(sample_gamma(E, 3, 5, seed))
    inv.check()
    assert inv.A1 * inv.C2 + inv.B1 * inv.B2 + inv.C1 * inv.A2 == 0


def test_kappa_takes_every_value():
    # guards against a vacuous homomorphism check
    rng = random.Random(1)
    seen3 = {gl3_kappa(sample_gamma(E, 3, 4, rng)).exponent for _ in range(200)}
    seen2 = {gl2_kappa(sample_gamma(G, 2, 4, rng)).exponent for _ in range(200)}
    assert seen3 == {0, 1, 2} and seen2 == {0, 1}


def test_homomorphism_small():
    assert check_homomorphism(3, 60, 7)["failed"] == 0
    r = check_homomorphism(2, 100, 7, Convention.STANDARD)
    assert r["failed"] == 0 and r["undefined"] == 0


def test_homomorphism_check_detects_a_broken_kappa():
    # an alternative assembly of the five symbols must fail the same test
    from cubictwist.symbols import SymbolKind, SymbolValue, cubic_exponent

    def wrong(g):
        inv = gl3_invariants(g)
        return SymbolValue(SymbolKind.CUBIC, cubic_exponent(inv.B1p, inv.C1p) + cubic_exponent(inv.B2p, inv.C2p))

    rng = random.Random(3)
    bad = 0
    for _ in range(100):
        g, h = sample_gamma(E, 3, 3, rng), sample_gamma(E, 3, 3, rng)
        if wrong(g @ h) != wrong(g) * wrong(h):
            bad += 1
    assert bad > 0


def test_factorization_independence_small():
    for g in iter_multi_factorization(2, 10):
        facs = all_factorizations(g)
        assert len(facs) >= 2
        assert len({kappa_from_invariants(f).exponent for f in facs}) == 1
