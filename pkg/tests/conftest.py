from hypothesis import strategies as st

@st.composite
def primitive_pairs(draw, bound=40):
    from math import gcd
    a = draw(st.integers(-bound, bound))
    b = draw(st.integers(-bound, bound))
    if gcd(a, b) != 1:
        g = gcd(a, b) or 1
        a, b = (a // g, b // g) if (a, b) != (0, 0) else (1, 0)
    return a, b


@st.composite
def unimodular(draw, bound=6):
    """Random SL(2,Z) matrix built from elementary factors."""
    m = ((1, 0), (0, 1))
    for _ in range(draw(st.integers(0, 5))):
        t = draw(st.integers(-bound, bound))
        e = ((1, t), (0, 1)) if draw(st.booleans()) else ((1, 0), (t, 1))
        m = ((m[0][0] * e[0][0] + m[0][1] * e[1][0], m[0][0] * e[0][1] + m[0][1] * e[1][1]),
             (m[1][0] * e[0][0] + m[1][1] * e[1][0], m[1][0] * e[0][1] + m[1][1] * e[1][1]))
    return m

