"""Integer homology of boundary tori.

A class on a torus is a pair ``(a, b)`` of integers in a named basis, e.g.
``("w", "theta")`` (Reeb orbit, boundary of the fiber) or ``("mu", "lambda")``
(meridian, longitude).  The orientation convention used everywhere in the
package is

    intersection((1, 0), (0, 1)) == +1

Rational slopes are plain :class:`fractions.Fraction` values, which are always
kept reduced with a positive denominator.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import gcd

WTHETA = "w,theta"
MULAMBDA = "mu,lambda"


class BasisMismatch(ValueError):
    """Raised when classes living on different tori (or bases) are paired."""


class NotPrimitive(ValueError):
    pass


@dataclass(frozen=True)
class H1Class:
    a: int
    b: int
    basis: str = WTHETA

    def __post_init__(self):
        if not isinstance(self.a, int) or not isinstance(self.b, int):
            raise TypeError("H1Class coefficients must be integers")

    def __add__(self, other: "H1Class") -> "H1Class":
        _check_basis(self, other)
        return H1Class(self.a + other.a, self.b + other.b, self.basis)

    def __sub__(self, other: "H1Class") -> "H1Class":
        return self + (-other)

    def __neg__(self) -> "H1Class":
        return H1Class(-self.a, -self.b, self.basis)

    def __rmul__(self, n: int) -> "H1Class":
        return H1Class(n * self.a, n * self.b, self.basis)

    def pair(self) -> tuple[int, int]:
        return (self.a, self.b)

    def with_basis(self, basis: str) -> "H1Class":
        return H1Class(self.a, self.b, basis)

    def sign_normalized(self) -> "H1Class":
        """Representative of ``{x, -x}`` whose first nonzero coordinate is positive."""
        if self.a < 0 or (self.a == 0 and self.b < 0):
            return -self
        return self

    def to_json(self) -> list[int]:
        return [self.a, self.b]


def _check_basis(x: H1Class, y: H1Class) -> None:
    if x.basis != y.basis:
        raise BasisMismatch(f"classes on incompatible tori: {x.basis!r} vs {y.basis!r}")


def intersection(x: H1Class, y: H1Class) -> int:
    """Algebraic intersection number ``x.a*y.b - x.b*y.a``."""
    _check_basis(x, y)
    return x.a * y.b - x.b * y.a


def is_primitive(x: H1Class) -> bool:
    return gcd(x.a, x.b) == 1


def extended_gcd(a: int, b: int) -> tuple[int, int, int]:
    """Return ``(g, u, v)`` with ``a*u + b*v == g == gcd(a, b) >= 0``."""
    old_r, r = a, b
    old_u, u = 1, 0
    old_v, v = 0, 1
    while r:
        q = old_r // r
        old_r, r = r, old_r - q * r
        old_u, u = u, old_u - q * u
        old_v, v = v, old_v - q * v
    if old_r < 0:
        old_r, old_u, old_v = -old_r, -old_u, -old_v
    return old_r, old_u, old_v


def _complement_key(x: H1Class, y: H1Class):
    # min |b|, then b >= 0, then positive pairing with x, then min |a|, then a >= 0
    return (abs(y.b), y.b < 0, intersection(x, y) < 0, abs(y.a), y.a < 0)


def _coset_candidates(x: H1Class, y0: H1Class) -> list[H1Class]:
    """Members of ``y0 + Z x`` near the minimum of |b| (or |a| when x.b == 0)."""
    if x.b != 0:
        t0 = -y0.b // x.b
    else:
        t0 = -y0.a // x.a
    return [y0 + t * x for t in range(t0 - 2, t0 + 3)]


def once_intersecting_complement(x: H1Class, shift: int = 0) -> H1Class:
    """A class meeting ``x`` exactly once, shifted by ``shift * x``.

    The classes ``y`` with ``|intersection(x, y)| == 1`` form the two cosets
    ``±y0 + Z x``.  The canonical choice minimises ``|y.b|``; ties are broken
    by ``y.b >= 0``, then by ``intersection(x, y) > 0``, then by the smallest
    ``|y.a|``.  Adding ``shift * x`` keeps the pairing unchanged, so every
    shift is again a valid complement.
    """
    if not is_primitive(x):
        raise NotPrimitive(f"{x.pair()} is not primitive")
    _, u, v = extended_gcd(x.a, x.b)
    y0 = H1Class(-v, u, x.basis)  # intersection(x, y0) == a*u + b*v == 1
    candidates = _coset_candidates(x, y0) + _coset_candidates(x, -y0)
    best = min(candidates, key=lambda y: _complement_key(x, y))
    return best + shift * x


def reduced_slope(p: int, q: int) -> Fraction:
    """The slope ``p/q`` as a reduced fraction (``q`` must be nonzero)."""
    return Fraction(p, q)


def fraction_to_json(x: Fraction) -> list[int]:
    return [x.numerator, x.denominator]


def fraction_from_json(data) -> Fraction:
    if isinstance(data, (list, tuple)):
        num, den = data
        if not isinstance(num, int) or not isinstance(den, int):
            raise ValueError(f"rational must be an integer pair, got {data!r}")
        return Fraction(num, den)
    if isinstance(data, int):
        return Fraction(data)
    raise ValueError(f"cannot read a rational from {data!r}")


def parse_fraction(text: str) -> Fraction:
    """Parse ``"3"``, ``"-2/5"`` (no floats)."""
    text = text.strip()
    if "." in text or "e" in text.lower():
        raise ValueError(f"{text!r}: rationals must be written as p/q")
    return Fraction(text)


Matrix = tuple[tuple[int, int], tuple[int, int]]

IDENTITY: Matrix = ((1, 0), (0, 1))


def mat_mul(m: Matrix, n: Matrix) -> Matrix:
    return (
        (m[0][0] * n[0][0] + m[0][1] * n[1][0], m[0][0] * n[0][1] + m[0][1] * n[1][1]),
        (m[1][0] * n[0][0] + m[1][1] * n[1][0], m[1][0] * n[0][1] + m[1][1] * n[1][1]),
    )


def mat_det(m: Matrix) -> int:
    return m[0][0] * m[1][1] - m[0][1] * m[1][0]


def mat_inv(m: Matrix) -> Matrix:
    """Inverse of a unimodular integer matrix."""
    d = mat_det(m)
    if d not in (1, -1):
        raise ValueError(f"matrix {m} is not invertible over Z (det {d})")
    return ((d * m[1][1], -d * m[0][1]), (-d * m[1][0], d * m[0][0]))


def mat_pow(m: Matrix, k: int) -> Matrix:
    if k < 0:
        return mat_pow(mat_inv(m), -k)
    out, base = IDENTITY, m
    while k:
        if k & 1:
            out = mat_mul(out, base)
        base = mat_mul(base, base)
        k >>= 1
    return out


def mat_apply(m: Matrix, x: H1Class, basis: str | None = None) -> H1Class:
    return H1Class(
        m[0][0] * x.a + m[0][1] * x.b,
        m[1][0] * x.a + m[1][1] * x.b,
        x.basis if basis is None else basis,
    )


def mat_trace(m: Matrix) -> int:
    return m[0][0] + m[1][1]


def as_matrix(rows) -> Matrix:
    (a, b), (c, d) = rows
    for entry in (a, b, c, d):
        if not isinstance(entry, int):
            raise ValueError(f"matrix entries must be integers, got {rows!r}")
    return ((a, b), (c, d))


def matrix_to_json(m: Matrix) -> list[list[int]]:
    return [list(m[0]), list(m[1])]
