import pytest
from hypothesis import given
from hypothesis import strategies as st

from cubictwist.errors import DomainError
from cubictwist.rings import E, G, QuadInt, primary_associate
from cubictwist.symbols import (
    SymbolKind, SymbolValue, cubic_exponent, cubic_symbol, euler_symbol,
    quadratic_exponent, quadratic_symbol,
)
from oracles import eisenstein_primes, elements_up_to, gaussian_primes

SMALL_E_PRIMES = eisenstein_primes(400)
SMALL_G_PRIMES = gaussian_primes(400)


def test_cubic_examples():
    b = QuadInt(1, 3, E)
    assert cubic_symbol(2, b).exponent == 2
    assert cubic_symbol(8, b).exponent == 0
    assert cubic_symbol(b, b).not_coprime
    assert str(cubic_symbol(b, b)) == "NotCoprime"
    assert euler_symbol(2, b, 3).exponent == 2


def test_quadratic_examples():
    assert quadratic_symbol(QuadInt(0, 1, G), 3).exponent == 0
    assert quadratic_symbol(QuadInt(1, 1, G), 3).exponent == 1
    assert str(quadratic_symbol(QuadInt(1, 1, G), 3)) == "-1"


def test_preconditions():
    with pytest.raises(DomainError):
        cubic_symbol(2, QuadInt(2, 3, E))  # not primary
    with pytest.raises(DomainError):
        cubic_symbol(2, 0)
    with pytest.raises(DomainError):
        quadratic_symbol(1, QuadInt(1, 1, G))
    with pytest.raises(DomainError):
        euler_symbol(2, QuadInt(1, 3, E), 2)
    with pytest.raises(DomainError):
        euler_symbol(2, QuadInt(-2, 0, E) * QuadInt(1, 3, E), 3)


@pytest.mark.parametrize("p", SMALL_E_PRIMES[:40], ids=str)
def test_cubic_matches_euler_oracle_small(p):
    for a in elements_up_to(E, 60):
        assert cubic_exponent(a, p) == euler_symbol(a, p, 3).exponent


@pytest.mark.parametrize("p", SMALL_G_PRIMES[:40], ids=str)
def test_quadratic_matches_euler_oracle_small(p):
    for a in elements_up_to(G, 60):
        assert quadratic_exponent(a, p) == euler_symbol(a, p, 2).exponent


def test_supplementary_laws_against_oracle():
    for p in eisenstein_primes(3000):
        assert cubic_exponent(QuadInt(0, 1, E), p) == euler_symbol(QuadInt(0, 1, E), p, 3).exponent
        assert cubic_exponent(QuadInt(1, -1, E), p) == euler_symbol(QuadInt(1, -1, E), p, 3).exponent
        assert cubic_exponent(QuadInt(-1, 0, E), p) == 0
    for p in gaussian_primes(3000):
        assert quadratic_exponent(QuadInt(0, 1, G), p) == euler_symbol(QuadInt(0, 1, G), p, 2).exponent
        assert quadratic_exponent(QuadInt(1, 1, G), p) == euler_symbol(QuadInt(1, 1, G), p, 2).exponent


e_elem = st.tuples(st.integers(-300, 300), st.integers(-300, 300)).map(lambda t: QuadInt(*t, E))
e_den = e_elem.filter(lambda z: z.norm() % 3 != 0).map(primary_associate)
g_elem = st.tuples(st.integers(-300, 300), st.integers(-300, 300)).map(lambda t: QuadInt(*t, G))
g_den = g_elem.filter(lambda z: z.norm() % 2 != 0).map(primary_associate)


@given(e_elem, e_elem, e_den)
def test_cubic_multiplicative_in_numerator(a, b, c):
    lhs = SymbolValue(SymbolKind.CUBIC, cubic_exponent(a * b, c))
    rhs = SymbolValue(SymbolKind.CUBIC, cubic_exponent(a, c)) * SymbolValue(SymbolKind.CUBIC, cubic_exponent(b, c))
    assert lhs == rhs


@given(e_elem, e_den, e_den)
def test_cubic_multiplicative_in_denominator(a, b, c):
    lhs = SymbolValue(SymbolKind.CUBIC, cubic_exponent(a, b * c))
    rhs = SymbolValue(SymbolKind.CUBIC, cubic_exponent(a, b)) * SymbolValue(SymbolKind.CUBIC, cubic_exponent(a, c))
    assert lhs == rhs


@given(e_elem, e_den)
def test_cubic_depends_on_residue_class(a, b):
    assert cubic_exponent(a, b) == cubic_exponent(a + b * QuadInt(3, -7, E), b)


@given(e_den, e_den)
def test_cubic_reciprocity(a, b):
    x, y = cubic_exponent(a, b), cubic_exponent(b, a)
    assert x == y


@given(g_elem, g_elem, g_den)
def test_quadratic_multiplicative(a, b, c):
    lhs = SymbolValue(SymbolKind.QUADRATIC, quadratic_exponent(a * b, c))
    rhs = SymbolValue(SymbolKind.QUADRATIC, quadratic_exponent(a, c)) * SymbolValue(SymbolKind.QUADRATIC, quadratic_exponent(b, c))
    assert lhs == rhs


@given(g_den, g_den)
def test_quadratic_reciprocity(a, b):
    assert quadratic_exponent(a, b) == quadratic_exponent(b, a)


def test_rational_integers_are_cubes_mod_inert_rational_primes():
    # residue field is F_{p^2} and F_p^* sits inside its cubes because 3 | p + 1
    for p in (2, 5, 11):
        for a in range(1, 40):
            if a % p:
                assert cubic_exponent(QuadInt(a, 0, E), QuadInt(-p, 0, E)) == 0
