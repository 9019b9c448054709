from fractions import Fraction

import pytest
from hypothesis import given
from hypothesis import strategies as st

from cubictwist.curves import (
    RationalPoint, brute_force_points, cubefree_part, is_cubefree, is_trivial_D, search_points,
)
from cubictwist.errors import DomainError


def test_examples():
    pts = search_points(9, 10)
    assert RationalPoint(Fraction(1), Fraction(2)) in pts
    assert RationalPoint(Fraction(2), Fraction(1)) in pts
    assert RationalPoint(Fraction(17, 21), Fraction(37, 21)) in search_points(6, 30)
    assert 17**3 + 37**3 == 6 * 21**3


def test_trivial_solutions_reported_for_cubes():
    assert RationalPoint(Fraction(2), Fraction(0)) in search_points(8, 1)
    assert RationalPoint(Fraction(1), Fraction(0)) in search_points(1, 1)


@pytest.mark.parametrize("D", [d for d in range(-40, 41) if d])
def test_matches_brute_force(D):
    assert sorted(search_points(D, 12)) == sorted(brute_force_points(D, 12))


@given(st.integers(-500, 500).filter(bool), st.integers(1, 40), st.integers(1, 40))
def test_monotone_and_exact(D, h1, h2):
    lo, hi = sorted((h1, h2))
    small, big = search_points(D, lo), search_points(D, hi)
    assert set(small) <= set(big)
    for p in big:
        assert p.x**3 + p.y**3 == D
        assert p.denominator <= hi


def test_on_curve_rejects_bad_points():
    with pytest.raises(DomainError):
        RationalPoint.on_curve(1, 1, 3)


def test_preconditions():
    with pytest.raises(DomainError):
        search_points(0, 5)
    with pytest.raises(DomainError):
        search_points(5, 0)


def test_cubefree_examples():
    assert cubefree_part(24) == (3, 2)
    assert cubefree_part(7) == (7, 1)
    assert cubefree_part(72) == (9, 2)
    with pytest.raises(DomainError):
        cubefree_part(0)


@given(st.integers(1, 10**9))
def test_cubefree_part_properties(k):
    c, f = cubefree_part(k)
    assert c * f**3 == k
    assert is_cubefree(c)
    assert cubefree_part(c) == (c, 1)


def test_trivial_D():
    assert is_trivial_D(1) and is_trivial_D(-2) and is_trivial_D(0)
    assert not is_trivial_D(3) and not is_trivial_D(-3)
