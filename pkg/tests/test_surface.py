import math
from fractions import Fraction

import pytest
from hypothesis import assume, given, settings, strategies as st

from bicontact.surface import (
    DegenerateCurve, Fiber, PLCurve, WindingObstruction, min_twisting, torus_fiber,
    validate_fiber, winding_profile,
)

TRANSVERSE = PLCurve(((0, 0), (0, Fraction(1, 2))), True, (0, 1))
FINGER = PLCurve(((0, 0), (0, 2), (1, 1), (2, 3)), True, (0, 4))
HEXAGON = PLCurve(((2, 0), (1, 2), (-1, 2), (-2, 0), (-1, -2), (1, -2)))


def curl(x, y, side):
    """Loop of the curve around a point, two tangencies of equal sign."""
    return [(x + 2 * side, y + 1), (x + side, y + Fraction(1, 4)), (x + side, y + 2)]


def finger(x, y):
    return [(x, y + 2), (x + 1, y + 1), (x + 2, y + 3)]


def vertical_curve(parts):
    """Chain pieces upward from the origin and close with a vertical translation."""
    verts = [(0, 0)]
    for part in parts:
        verts += part(*verts[-1])
    return PLCurve(tuple(verts), True, (0, verts[-1][1] + 1))


def deep_finger(depth):
    """``depth`` curls, a finger, then ``depth`` opposite curls: dW = 2 depth + 1."""
    return vertical_curve([lambda x, y: curl(x, y, 1)] * depth + [finger]
                          + [lambda x, y: curl(x, y, -1)] * depth)


@pytest.mark.parametrize("g, idx, ok", [
    (2, (-1, -1), True),
    (1, (0, 0, 0), True),
    (2, (-1,), False),
    (0, (-1, -1), False),
    (1, (), False),
    (1, (1, -1), False),
    (-1, (0,), False),
])
def test_validate_fiber_examples(g, idx, ok):
    assert bool(validate_fiber(Fiber(g, idx))) is ok


def test_validate_fiber_reasons():
    assert validate_fiber(Fiber(1, (1, -1))).reason == "positive-index"
    assert validate_fiber(Fiber(2, (-1,))).reason == "index-sum"
    assert validate_fiber(Fiber(1, ())).reason == "no-punctures"


def test_fiber_boundary_data():
    f = Fiber(2, (-1, -1))
    assert f.punctures == 2
    assert f.boundary_h == (-2, -2)
    assert torus_fiber(3).indices == (0, 0, 0)


def test_transverse_curve():
    assert winding_profile(TRANSVERSE).as_tuple() == ([], 0, 0)


def test_finger_curve():
    assert winding_profile(FINGER).as_tuple() == ([1, -1], 0, 1)


def test_ccw_hexagon():
    assert winding_profile(HEXAGON).as_tuple() == ([-1, -1], -2, 2)


def test_reversal_flips_values():
    """Reversing orientation moves the flowline to the other side of the curve."""
    assert winding_profile(HEXAGON.reversed()).wind == 2


def test_min_twisting_examples():
    assert min_twisting([FINGER, FINGER]) == 4
    assert min_twisting([TRANSVERSE]) == 1
    assert min_twisting([]) == 1
    assert winding_profile(deep_finger(1)).as_tuple() == ([1, 1, 1, -1, -1, -1], 0, 3)
    assert min_twisting([FINGER, deep_finger(1)]) == 8
    with pytest.raises(WindingObstruction):
        min_twisting([HEXAGON])


def test_degenerate_edge():
    with pytest.raises(DegenerateCurve):
        winding_profile(PLCurve(((0, 0), (0, 0), (1, 1))))


def test_closed_leaf():
    leaf = PLCurve(((0, 0), (Fraction(1, 2), 0)), True, (1, 0))
    assert winding_profile(leaf).as_tuple() == ([], 0, 0)


def test_curve_json_roundtrip():
    for c in (TRANSVERSE, FINGER, HEXAGON):
        assert PLCurve.from_json(c.to_json()) == c


# -- brute-force oracle ------------------------------------------------------------------


def _inside(poly, pt):
    """Even-odd ray casting to the right."""
    x, y = pt
    inside = False
    for (x1, y1), (x2, y2) in zip(poly, poly[1:] + poly[:1]):
        if (y1 > y) != (y2 > y):
            xc = x1 + (y - y1) * (x2 - x1) / (y2 - y1)
            if xc > x:
                inside = not inside
    return inside


def _oracle(poly):
    """Tangency values of a simple polygon by probing beside each vertical extremum.

    At a maximum the flowline through the vertex lies above the curve, at a
    minimum below; the value is +1 when that side is on the left, and the left
    of the polygon is its interior exactly when it runs counterclockwise.
    """
    n = len(poly)
    area2 = sum(poly[i][0] * poly[(i + 1) % n][1] - poly[(i + 1) % n][0] * poly[i][1] for i in range(n))
    ccw = area2 > 0
    values = []
    for i in range(n):
        y_prev, y, y_next = poly[i - 1][1], poly[i][1], poly[(i + 1) % n][1]
        if y > y_prev and y > y_next:
            probe = (poly[i][0], y + Fraction(1, 10**6))
        elif y < y_prev and y < y_next:
            probe = (poly[i][0], y - Fraction(1, 10**6))
        else:
            continue
        left = _inside(poly, probe) == ccw
        values.append(1 if left else -1)
    return values


def _cross(a, b, c):
    return (b[0] - a[0]) * (c[1] - b[1]) - (b[1] - a[1]) * (c[0] - b[0])


@st.composite
def star_polygons(draw):
    """Simple star-shaped polygons with rational vertices and no horizontal edges."""
    n = draw(st.integers(3, 12))
    angles = sorted(draw(st.lists(st.integers(0, 359), min_size=n, max_size=n, unique=True)))
    pts = []
    for a in angles:
        r = draw(st.integers(5, 20))
        t = math.radians(a)
        pts.append((Fraction(round(r * math.cos(t) * 64), 64), Fraction(round(r * math.sin(t) * 64), 64)))
    gaps = [(angles[(i + 1) % n] - angles[i]) % 360 for i in range(n)]
    assume(max(gaps) < 180)
    assume(all(pts[i][1] != pts[i - 1][1] for i in range(n)))
    assume(all(_cross(pts[i - 1], pts[i], pts[(i + 1) % n]) != 0 for i in range(n)))
    if draw(st.booleans()):
        pts.reverse()
    return pts


@settings(max_examples=300, deadline=None)
@given(star_polygons())
def test_winding_matches_edge_scan_oracle(poly):
    prof = winding_profile(PLCurve(tuple(poly)))
    assert list(prof.tangency_values) == _oracle(poly)


@settings(max_examples=200, deadline=None)
@given(star_polygons(), st.integers(0, 11))
def test_wind_basepoint_independent(poly, i):
    c = PLCurve(tuple(poly))
    i %= len(poly)
    a, b = winding_profile(c), winding_profile(c.rebased(i))
    assert a.wind == b.wind
    assert sorted(a.tangency_values) == sorted(b.tangency_values)


def test_curls_carry_winding():
    assert winding_profile(vertical_curve([lambda x, y: curl(x, y, 1)])).as_tuple() == ([1, 1], 2, 2)
    assert winding_profile(vertical_curve([lambda x, y: curl(x, y, -1)])).as_tuple() == ([-1, -1], -2, 2)


@given(st.integers(0, 4), st.integers(1, 4))
def test_fingers_in_series(depth, count):
    """Alternating fingers keep dW = 1; nesting curls deepens it by 2 each."""
    assert winding_profile(deep_finger(depth)).delta_w == 2 * depth + 1
    train = vertical_curve([finger] * count)
    prof = winding_profile(train)
    assert (prof.wind, prof.delta_w) == (0, 1)
    assert list(prof.tangency_values) == [1, -1] * count


@given(st.integers(0, 3), st.data())
def test_delta_w_basepoint_independent_when_wind_zero(depth, data):
    c = deep_finger(depth)
    i = data.draw(st.integers(0, len(c.vertices) - 1))
    assert winding_profile(c.rebased(i)).delta_w == 2 * depth + 1
