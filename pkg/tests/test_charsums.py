import cmath
import math
from fractions import Fraction

import pytest
from hypothesis import given
from hypothesis import strategies as st

from cubictwist.charsums import additive_character, gauss_sum, phase, t_polynomial, t_polynomial_terms
from cubictwist.errors import DomainError
from cubictwist.rings import E, QuadInt
from cubictwist.symbols import cubic_exponent
from oracles import OMEGA, eisenstein_primes, embed

elem = st.tuples(st.integers(-50, 50), st.integers(-50, 50)).map(lambda t: QuadInt(*t, E))
den = elem.filter(lambda z: not z.is_zero())


def test_character_examples():
    assert additive_character(0) == 1
    assert abs(additive_character(1) - 1) < 1e-15
    assert abs(additive_character(QuadInt(0, 1, E), 3) - cmath.exp(2j * math.pi / 3)) < 1e-12
    assert phase(QuadInt(0, 1, E), 3) == Fraction(1, 3)
    with pytest.raises(DomainError):
        additive_character(1, 0)


@given(elem)
def test_trivial_on_integers_exactly(z):
    assert phase(z) == 0


@given(elem, den, elem, den)
def test_homomorphism(a, b, c, d):
    lhs = additive_character(a * d + c * b, b * d)
    rhs = additive_character(a, b) * additive_character(c, d)
    assert abs(lhs - rhs) < 1e-12


@given(elem, den)
def test_phase_against_floating_trace(a, b):
    # Tr(z / sqrt(-3)) = 2 Re(z / sqrt(-3)) under the embedding w = exp(2 pi i / 3)
    z = embed(a) / embed(b) / (1j * math.sqrt(3))
    d = (2 * z.real - float(phase(a, b))) % 1.0
    assert min(d, 1.0 - d) < 1e-9


def test_gauss_examples():
    c = QuadInt(1, 3, E)
    assert abs(gauss_sum(c, 0)) < 1e-12
    assert abs(abs(gauss_sum(c, 1)) ** 2 - 7) < 1e-9
    assert gauss_sum(1, 5) == 1
    with pytest.raises(DomainError):
        gauss_sum(QuadInt(2, 3, E))


def test_gauss_norm_and_twisting():
    for pi in eisenstein_primes(500):
        g1 = gauss_sum(pi, 1)
        assert abs(abs(g1) ** 2 - pi.norm()) < 1e-9
        for n in (QuadInt(2, 0, E), QuadInt(0, 1, E), QuadInt(1, -1, E), QuadInt(5, 7, E)):
            k = cubic_exponent(n, pi)
            if k is None:
                continue
            assert abs(gauss_sum(pi, n) - OMEGA ** (-k) * g1) < 1e-8


def test_t_polynomial_alpha_zero():
    for m, n in ((1, 1), (QuadInt(1, 3, E), 2), (QuadInt(-2, -3, E), QuadInt(5, 1, E))):
        for w in (1.0, 0.3 + 2j, -4j):
            assert abs(t_polynomial(m, n, w, 0) - 13) < 1e-12


def test_constant_summand_is_nine():
    for a in range(4):
        terms = t_polynomial_terms(QuadInt(1, 3, E), 2, 1.0, a)
        const = [t for t in terms if t.summand == 3]
        assert len(const) == 1 and const[0].value == 9


def test_converges_at_w_one():
    m, n = QuadInt(1, 3, E), QuadInt(2, 0, E)
    vals = [t_polynomial(m, n, 1.0, a) for a in range(5)]
    diffs = [abs(vals[i + 1] - vals[i]) for i in range(4)]
    assert diffs[3] < 1e-3
    assert diffs[3] < max(diffs[:3])


def test_t_polynomial_preconditions():
    with pytest.raises(DomainError):
        t_polynomial(0, 1, 1.0, 1)
    with pytest.raises(DomainError):
        t_polynomial(1, 1, 1.0, -1)
