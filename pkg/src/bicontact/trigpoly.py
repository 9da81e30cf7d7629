"""Exact trigonometric polynomials in a fixed set of coordinates.

An expression is a finite sum of terms

    c * x^m * cos(f . x)     or     c * x^m * sin(f . x)

with ``c`` rational, ``m`` a vector of exponents and ``f`` an integer
frequency vector.  Products are reduced with the product-to-sum identities
and frequencies are normalised so that the first nonzero entry is positive.
The resulting representation is canonical, so an expression is identically
zero iff it has no terms, and ``sin^2 + cos^2`` collapses to 1 exactly.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Mapping

import numpy as np


class GrammarError(ValueError):
    """Expression outside constants, coordinates, +, *, sin, cos of integer-linear forms."""


Key = tuple[tuple[int, ...], str, tuple[int, ...]]


def _normal(kind: str, freq: tuple[int, ...], coef: Fraction):
    """Canonical (kind, freq, coef); returns None for the zero term sin(0)."""
    nz = next((f for f in freq if f), 0)
    if nz == 0:
        return None if kind == "s" else ("c", freq, coef)
    if nz < 0:
        freq = tuple(-f for f in freq)
        if kind == "s":
            coef = -coef
    return kind, freq, coef


@dataclass(frozen=True)
class Expr:
    coords: tuple[str, ...]
    terms: tuple[tuple[Key, Fraction], ...] = ()

    @classmethod
    def _build(cls, coords, acc: Mapping[Key, Fraction]) -> "Expr":
        items = tuple(sorted((k, v) for k, v in acc.items() if v != 0))
        return cls(tuple(coords), items)

    # construction
    @classmethod
    def const(cls, coords, value) -> "Expr":
        n = len(coords)
        return cls._build(coords, {((0,) * n, "c", (0,) * n): Fraction(value)})

    @classmethod
    def coord(cls, coords, name: str) -> "Expr":
        n = len(coords)
        mono = tuple(int(c == name) for c in coords)
        if name not in coords:
            raise GrammarError(f"unknown coordinate {name!r}")
        return cls._build(coords, {(mono, "c", (0,) * n): Fraction(1)})

    def _lift(self, other) -> "Expr":
        if isinstance(other, Expr):
            if other.coords != self.coords:
                raise GrammarError("expressions over different charts")
            return other
        if isinstance(other, (int, Fraction)):
            return Expr.const(self.coords, other)
        raise GrammarError(f"cannot combine an expression with {type(other).__name__}")

    # algebra
    def __add__(self, other) -> "Expr":
        other = self._lift(other)
        acc = dict(self.terms)
        for k, v in other.terms:
            acc[k] = acc.get(k, Fraction(0)) + v
        return Expr._build(self.coords, acc)

    __radd__ = __add__

    def __neg__(self) -> "Expr":
        return Expr(self.coords, tuple((k, -v) for k, v in self.terms))

    def __sub__(self, other) -> "Expr":
        return self + (-self._lift(other))

    def __rsub__(self, other) -> "Expr":
        return self._lift(other) - self

    def __mul__(self, other) -> "Expr":
        other = self._lift(other)
        acc: dict[Key, Fraction] = {}

        def put(mono, kind, freq, coef):
            t = _normal(kind, freq, coef)
            if t is not None:
                key = (mono, t[0], t[1])
                acc[key] = acc.get(key, Fraction(0)) + t[2]

        for (m1, k1, f1), c1 in self.terms:
            for (m2, k2, f2), c2 in other.terms:
                mono = tuple(a + b for a, b in zip(m1, m2))
                plus = tuple(a + b for a, b in zip(f1, f2))
                minus = tuple(a - b for a, b in zip(f1, f2))
                half = c1 * c2 / 2
                if k1 == "c" and k2 == "c":
                    put(mono, "c", minus, half)
                    put(mono, "c", plus, half)
                elif k1 == "s" and k2 == "s":
                    put(mono, "c", minus, half)
                    put(mono, "c", plus, -half)
                elif k1 == "s":  # sin a cos b
                    put(mono, "s", plus, half)
                    put(mono, "s", minus, half)
                else:  # cos a sin b
                    put(mono, "s", plus, half)
                    put(mono, "s", minus, -half)
        return Expr._build(self.coords, acc)

    __rmul__ = __mul__

    # queries
    def is_zero(self) -> bool:
        return not self.terms

    def constant_value(self) -> Fraction | None:
        if not self.terms:
            return Fraction(0)
        if len(self.terms) == 1:
            (mono, kind, freq), c = self.terms[0]
            if kind == "c" and not any(mono) and not any(freq):
                return c
        return None

    def has_trig(self) -> bool:
        return any(any(freq) for (_, _, freq), _ in self.terms)

    def linear_form(self) -> tuple[int, ...]:
        """Integer coefficients if this is ``sum f_i x_i`` with no constant term."""
        freq = [0] * len(self.coords)
        for (mono, kind, f), c in self.terms:
            if kind != "c" or any(f) or sum(mono) != 1 or c.denominator != 1:
                raise GrammarError("trig arguments must be integer-linear in the coordinates")
            freq[mono.index(1)] += int(c)
        return tuple(freq)

    def diff(self, name: str) -> "Expr":
        i = self.coords.index(name)
        acc: dict[Key, Fraction] = {}

        def put(mono, kind, freq, coef):
            key = (mono, kind, freq)
            acc[key] = acc.get(key, Fraction(0)) + coef

        for (mono, kind, freq), c in self.terms:
            if mono[i]:
                lowered = mono[:i] + (mono[i] - 1,) + mono[i + 1:]
                put(lowered, kind, freq, c * mono[i])
            if freq[i]:
                if kind == "c":
                    put(mono, "s", freq, -c * freq[i])
                else:
                    put(mono, "c", freq, c * freq[i])
        return Expr._build(self.coords, acc)

    # evaluation
    def evaluate(self, point: Mapping[str, object]):
        """Numeric value; ``point`` maps coordinates to floats or numpy arrays (real or complex)."""
        xs = [point[c] for c in self.coords]
        total = 0
        for (mono, kind, freq), c in self.terms:
            term = float(c)
            for x, e in zip(xs, mono):
                if e:
                    term = term * x**e
            if any(freq):
                phase = sum(f * x for f, x in zip(freq, xs) if f)
                term = term * (np.cos(phase) if kind == "c" else np.sin(phase))
            total = total + term
        return total

    def evaluate_exact(self, point: Mapping[str, Fraction]) -> Fraction:
        """Exact value at a rational point (polynomial expressions only)."""
        if self.has_trig():
            raise GrammarError("exact evaluation needs a trig-free expression")
        xs = [Fraction(point[c]) for c in self.coords]
        total = Fraction(0)
        for (mono, _, _), c in self.terms:
            term = c
            for x, e in zip(xs, mono):
                term *= x**e
            total += term
        return total

    def __str__(self) -> str:
        if not self.terms:
            return "0"
        parts = []
        for (mono, kind, freq), c in self.terms:
            factors = [] if c == 1 and (any(mono) or any(freq)) else [str(c)]
            factors += [n if e == 1 else f"{n}^{e}" for n, e in zip(self.coords, mono) if e]
            if any(freq):
                arg = "+".join(f"{f}*{n}" for f, n in zip(freq, self.coords) if f).replace("+-", "-")
                factors.append(f"{'cos' if kind == 'c' else 'sin'}({arg})")
            parts.append("*".join(factors))
        return " + ".join(parts)


def sin(arg: Expr) -> Expr:
    freq = arg.linear_form()
    t = _normal("s", freq, Fraction(1))
    if t is None:
        return Expr(arg.coords)
    n = len(arg.coords)
    return Expr._build(arg.coords, {((0,) * n, t[0], t[1]): t[2]})


def cos(arg: Expr) -> Expr:
    freq = arg.linear_form()
    t = _normal("c", freq, Fraction(1))
    n = len(arg.coords)
    return Expr._build(arg.coords, {((0,) * n, t[0], t[1]): t[2]})


class Chart:
    """Named coordinates with their sampling ranges."""

    def __init__(self, coords, ranges: Mapping[str, tuple[float, float]] | None = None):
        self.coords = tuple(coords)
        self.ranges = {c: (0.0, 2 * np.pi) for c in self.coords}
        self.ranges.update(ranges or {})

    def __getitem__(self, name: str) -> Expr:
        return Expr.coord(self.coords, name)

    def const(self, value) -> Expr:
        return Expr.const(self.coords, value)

    def zero(self) -> Expr:
        return Expr(self.coords)

    def __eq__(self, other):
        return isinstance(other, Chart) and self.coords == other.coords

    def __hash__(self):
        return hash(self.coords)

    def __repr__(self):
        return f"Chart{self.coords}"
