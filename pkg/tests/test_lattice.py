from fractions import Fraction
from math import gcd

import pytest
from hypothesis import given, strategies as st

from bicontact.lattice import (
    IDENTITY, MULAMBDA, BasisMismatch, H1Class, NotPrimitive, as_matrix, extended_gcd,
    fraction_from_json, fraction_to_json, intersection, is_primitive, mat_apply, mat_det,
    mat_inv, mat_mul, mat_pow, once_intersecting_complement, parse_fraction, reduced_slope,
)
from conftest import primitive_pairs, unimodular


def test_intersection_examples():
    assert intersection(H1Class(1, 0), H1Class(0, 1)) == 1
    assert intersection(H1Class(3, 7), H1Class(3, 7)) == 0
    assert intersection(H1Class(-1, 3), H1Class(0, 1)) == -1


def test_intersection_basis_mismatch():
    with pytest.raises(BasisMismatch):
        intersection(H1Class(1, 0), H1Class(0, 1, MULAMBDA))


@given(st.integers(-50, 50), st.integers(-50, 50), st.integers(-50, 50), st.integers(-50, 50))
def test_intersection_antisymmetric_bilinear(a, b, c, d):
    x, y = H1Class(a, b), H1Class(c, d)
    assert intersection(x, y) == -intersection(y, x)
    assert intersection(x + y, y) == intersection(x, y)
    assert intersection(3 * x, y) == 3 * intersection(x, y)


def test_is_primitive_examples():
    assert is_primitive(H1Class(1, 0))
    assert not is_primitive(H1Class(2, 4))
    assert is_primitive(H1Class(-1, 3))
    assert not is_primitive(H1Class(0, 0))


@given(st.integers(-10**6, 10**6), st.integers(-10**6, 10**6))
def test_extended_gcd_bezout(a, b):
    g, u, v = extended_gcd(a, b)
    assert g == gcd(a, b)
    assert a * u + b * v == g


@pytest.mark.parametrize("x, shift, want", [
    ((1, 0), 0, (0, 1)),
    ((-1, 3), 0, (0, 1)),
    ((1, 1), 1, (0, 1)),
])
def test_complement_examples(x, shift, want):
    assert once_intersecting_complement(H1Class(*x), shift).pair() == want


@pytest.mark.parametrize("n", range(0, 9))
def test_complement_reaches_longitude(n):
    """(1, n) has a complement equal to (0, 1) for a suitable shift."""
    x = H1Class(1, n, MULAMBDA)
    base = once_intersecting_complement(x)
    # the shift is the coefficient of x separating base from (0, 1)
    shift = -base.a
    assert once_intersecting_complement(x, shift) == H1Class(0, 1, MULAMBDA)


def _box_oracle(x, bound=60):
    """Brute force: all once-intersecting classes in a box."""
    return {(a, b) for a in range(-bound, bound + 1) for b in range(-bound, bound + 1)
            if abs(x[0] * b - x[1] * a) == 1}


@given(primitive_pairs(bound=12), st.integers(-4, 4))
def test_complement_against_box_search(x, shift):
    """Shift 0 picks the box minimiser of (|b|, b<0, pairing<0, |a|, a<0)."""
    def key(c):
        a, b = c
        return (abs(b), b < 0, x[0] * b - x[1] * a < 0, abs(a), a < 0)
    best = min(_box_oracle(x, 40), key=key)
    y0 = once_intersecting_complement(H1Class(*x))
    assert y0.pair() == best
    y = once_intersecting_complement(H1Class(*x), shift)
    assert y == y0 + shift * H1Class(*x)
    assert abs(intersection(H1Class(*x), y)) == 1


def test_complement_rejects_non_primitive():
    with pytest.raises(NotPrimitive):
        once_intersecting_complement(H1Class(2, 4))


def test_slope_and_fraction_json():
    assert reduced_slope(-4, 6) == Fraction(-2, 3)
    assert fraction_to_json(Fraction(-2, 3)) == [-2, 3]
    assert fraction_from_json([6, -4]) == Fraction(-3, 2)
    assert parse_fraction("3/2") == Fraction(3, 2)
    with pytest.raises(ValueError):
        parse_fraction("1.5")


@given(unimodular(), unimodular())
def test_matrix_group_laws(m, n):
    assert mat_det(m) == 1
    assert mat_mul(m, mat_inv(m)) == IDENTITY
    assert mat_det(mat_mul(m, n)) == 1
    assert mat_pow(m, -2) == mat_inv(mat_mul(m, m))


@given(unimodular(), primitive_pairs())
def test_unimodular_preserves_primitivity(m, x):
    assert is_primitive(mat_apply(m, H1Class(*x)))


def test_as_matrix_rejects_non_integers():
    with pytest.raises(ValueError):
        as_matrix([[1, 0.5], [0, 1]])


def test_sign_normalized():
    assert H1Class(-1, 3).sign_normalized() == H1Class(1, -3)
    assert H1Class(0, -2).sign_normalized() == H1Class(0, 2)
    assert H1Class(2, -5).sign_normalized() == H1Class(2, -5)
