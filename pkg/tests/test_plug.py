from fractions import Fraction
from math import gcd

import pytest
from hypothesis import given, strategies as st

from bicontact.lattice import H1Class, intersection
from bicontact.plug import BoundaryTorus, InvalidFiber, Plug, boundary_torus, new_plug, reeb_hits_once
from bicontact.surface import Fiber, torus_fiber


def test_torus_plug():
    p = new_plug(torus_fiber(1), 1)
    (b,) = p.boundaries
    assert (b.h, b.orbit_count, b.orbit_class.pair()) == (-1, 2, (-1, 1))
    assert b.orbit_slope == Fraction(-1)
    assert b.reeb_class == H1Class(1, 0)


def test_genus_two_plug():
    p = new_plug(Fiber(2, (-1, -1)), 6)
    assert [b.h for b in p.boundaries] == [-2, -2]
    assert [b.orbit_count for b in p.boundaries] == [4, 4]


def test_invalid_fiber_and_k():
    with pytest.raises(InvalidFiber):
        new_plug(Fiber(2, (-1,)), 1)
    with pytest.raises(ValueError):
        new_plug(torus_fiber(1), 0)


@given(st.integers(1, 30), st.integers(-30, -1))
def test_boundary_torus_data(k, h):
    b = boundary_torus(0, h, k)
    g = gcd(k, -h)
    assert b.orbit_count == 2 * g
    assert b.orbit_class.pair() == (h // g, k // g)
    assert b.orbit_slope == Fraction(h, k)
    # the orbit class is primitive and pairs with the Reeb class to -k/g
    assert intersection(b.orbit_class, b.reeb_class) == -(k // g)


@pytest.mark.parametrize("k, h, want", [(3, -3, True), (2, -1, False), (1, -7, True), (1, -1, True)])
def test_reeb_hits_once(k, h, want):
    assert reeb_hits_once(boundary_torus(0, h, k)) is want


@given(st.integers(1, 20), st.integers(-20, -1))
def test_reeb_hits_once_iff_divides(k, h):
    assert reeb_hits_once(boundary_torus(0, h, k)) is (h % k == 0)


def test_plug_json_roundtrip():
    p = new_plug(Fiber(2, (-1, -1)), 6, "P")
    q = Plug.from_json(p.to_json())
    assert q == p
    assert q.to_json() == p.to_json()
    b = p.boundaries[0]
    assert BoundaryTorus.from_json(b.to_json()) == b


def test_boundary_lookup():
    p = new_plug(torus_fiber(2), 2)
    assert p.boundary(1).id == 1
    with pytest.raises(KeyError):
        p.boundary(5)
