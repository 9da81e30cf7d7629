"""Dehn-twist words and their action on the homology of the torus.

Twist convention: the positive twist about a class ``c`` acts by the
transvection

    x  ->  x + intersection(c, x) * c

so the twist about ``a = (1, 0)`` is ``[[1, 1], [0, 1]]`` and about
``b = (0, 1)`` is ``[[1, 0], [-1, 1]]``.  With this choice the product of the
two positive twists has trace 1 and order 6, which is what the chain relation
``(t_a t_b)^6 = t_boundary`` requires once the boundary twist is invisible
in the homology of the closed torus.

A word is a list of ``(generator, power, level)`` entries.  Levels are
rationals in ``(0, 2*pi)`` and determine the order of composition: the word
evaluates to the product of twist matrices in ascending level order, no
matter in which order the entries were inserted.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Sequence

from .lattice import (
    IDENTITY,
    H1Class,
    Matrix,
    fraction_from_json,
    fraction_to_json,
    intersection,
    is_primitive,
    mat_det,
    mat_mul,
    mat_pow,
    mat_trace,
    once_intersecting_complement,
)

TWO_PI = 2 * math.pi


class DuplicateLevel(ValueError):
    pass


class NoH1Representation(ValueError):
    """The word involves curves without a torus homology class."""


@dataclass(frozen=True)
class TwistGenerator:
    id: str
    h1_class: H1Class | None = None

    def __post_init__(self):
        if self.h1_class is not None and not is_primitive(self.h1_class):
            raise ValueError(f"twist curve {self.id} has non-primitive class {self.h1_class.pair()}")


def torus_generators(punctures: int = 1) -> dict[str, TwistGenerator]:
    """Generators ``c1 .. c_{b+1}`` of the pure mapping class group of ``T^2_b``.

    ``c1 .. cb`` are transverse to the linear foliation and all represent
    ``(1, 0)`` in the closed torus; ``c_{b+1}`` is a closed leaf, class ``(0, 1)``.
    """
    gens = {f"c{i}": TwistGenerator(f"c{i}", H1Class(1, 0)) for i in range(1, punctures + 1)}
    last = f"c{punctures + 1}"
    gens[last] = TwistGenerator(last, H1Class(0, 1))
    return gens


def twist_matrix(g: TwistGenerator | H1Class, power: int = 1) -> Matrix:
    c = g.h1_class if isinstance(g, TwistGenerator) else g
    if c is None:
        raise NoH1Representation(f"generator {g.id} has no torus homology class")
    c1, c2 = c.a, c.b
    # (c ⊗ r)^2 = 0 for r = (-c2, c1), so the power is linear in `power`
    return (
        (1 - power * c1 * c2, power * c1 * c1),
        (-power * c2 * c2, 1 + power * c1 * c2),
    )


@dataclass(frozen=True)
class WordEntry:
    generator: TwistGenerator
    power: int
    level: Fraction

    def to_json(self) -> dict:
        out = {"curve": self.generator.id, "power": self.power, "level": fraction_to_json(self.level)}
        if self.generator.h1_class is not None:
            out["class"] = self.generator.h1_class.to_json()
        return out


def _check_level(level: Fraction) -> None:
    if not (0 < level < TWO_PI):
        raise ValueError(f"level {level} outside (0, 2*pi)")


@dataclass(frozen=True)
class TwistWord:
    entries: tuple[WordEntry, ...] = ()

    def __post_init__(self):
        entries = tuple(sorted(self.entries, key=lambda e: e.level))
        levels = [e.level for e in entries]
        if len(set(levels)) != len(levels):
            raise DuplicateLevel(f"levels must be distinct, got {sorted(levels)}")
        for e in entries:
            _check_level(e.level)
            if e.power == 0:
                raise ValueError("twist powers must be nonzero")
        object.__setattr__(self, "entries", entries)

    @classmethod
    def from_entries(cls, entries: Iterable[tuple[TwistGenerator, int, Fraction]]) -> "TwistWord":
        return cls(tuple(WordEntry(g, int(p), Fraction(w)) for g, p, w in entries))

    def __len__(self):
        return len(self.entries)

    def levels(self) -> list[Fraction]:
        return [e.level for e in self.entries]

    def inserted(self, g: TwistGenerator, power: int, level: Fraction) -> "TwistWord":
        return TwistWord(self.entries + (WordEntry(g, int(power), Fraction(level)),))

    def below(self, level: Fraction) -> "TwistWord":
        return TwistWord(tuple(e for e in self.entries if e.level < level))

    def to_json(self) -> list[dict]:
        return [e.to_json() for e in self.entries]

    @classmethod
    def from_json(cls, data: list[dict], generators: dict[str, TwistGenerator] | None = None) -> "TwistWord":
        generators = generators or {}
        out = []
        for item in data:
            name = item["curve"]
            if "class" in item:
                a, b = item["class"]
                g = TwistGenerator(name, H1Class(int(a), int(b)))
            elif name in generators:
                g = generators[name]
            else:
                g = TwistGenerator(name)
            out.append(WordEntry(g, int(item["power"]), fraction_from_json(item["level"])))
        return cls(tuple(out))


def word_matrix(w: TwistWord | Sequence[WordEntry]) -> Matrix:
    """Product of twist matrices in ascending level order."""
    if not isinstance(w, TwistWord):
        w = TwistWord(tuple(w))
    m = IDENTITY
    for e in w.entries:
        m = mat_mul(m, twist_matrix(e.generator, e.power))
    return m


def even_levels(r: int) -> list[Fraction]:
    """``r`` distinct increasing rational levels spread over ``(0, 6]``."""
    return [Fraction(6 * i, r) for i in range(1, r + 1)]


def word_from_letters(letters: Sequence[tuple[TwistGenerator, int]]) -> TwistWord:
    """Word whose entries occur in the given order (levels assigned increasingly)."""
    levels = even_levels(len(letters))
    return TwistWord.from_entries((g, p, w) for (g, p), w in zip(letters, levels))


def cat_map_word() -> TwistWord:
    """``t_a t_b^-1``, acting on H1 as the Arnold cat map ``[[2, 1], [1, 1]]``."""
    gens = torus_generators(1)
    return TwistWord.from_entries([(gens["c1"], 1, Fraction(1)), (gens["c2"], -1, Fraction(2))])


def check_chain_relation(max_power: int = 6) -> dict:
    """Verify ``(t1 t2)^6 = 1`` on H1 with no smaller power trivial.

    Also checks the factorisation ``(t1 t2)^6 = (t1 t2)^4 (t1 t2)^2`` and
    that the 12-letter word evaluated through levels gives the identity.
    """
    gens = torus_generators(1)
    t1, t2 = gens["c1"], gens["c2"]
    ab = mat_mul(twist_matrix(t1), twist_matrix(t2))
    powers = {k: mat_pow(ab, k) for k in range(1, max_power + 1)}
    failures = []
    first_trivial = next((k for k in range(1, max_power + 1) if powers[k] == IDENTITY), None)
    if first_trivial != 6:
        failures.append(f"(t1 t2)^k first trivial at k={first_trivial}, expected 6")
    if mat_mul(mat_pow(ab, 4), mat_pow(ab, 2)) != mat_pow(ab, 6):
        failures.append("factorisation (t1 t2)^4 (t1 t2)^2 failed")
    word = word_from_letters([(t1, 1), (t2, 1)] * 6)
    if word_matrix(word) != IDENTITY:
        failures.append("level-ordered 12-letter word is not the identity")
    if mat_pow(ab, 3) != ((-1, 0), (0, -1)):
        failures.append("(t1 t2)^3 is not -I")
    return {
        "check": "chain-relation",
        "status": "pass" if not failures else "fail",
        "t1t2": [list(r) for r in ab],
        "trace": mat_trace(ab),
        "order": first_trivial,
        "powers": {str(k): [list(r) for r in m] for k, m in powers.items()},
        "failures": failures,
    }


def self_surgery_quadruple(p: int, q: int) -> dict:
    """Second chain ``(c3, c4)`` with ``c3 = (p, q)`` cancelling the first on H1.

    ``c4`` is a once-intersecting partner of ``c3`` chosen different from the
    other three curves.  Returns the four classes and whether ``(t1 t2)^6 (t3 t4)^-6`` is trivial,
    both chains have trace-1 products, and the four curves are pairwise
    non-isotopic (distinct up to sign).
    """
    c1, c2 = H1Class(1, 0), H1Class(0, 1)
    c3 = H1Class(p, q)
    taken = {c.sign_normalized() for c in (c1, c2, c3)}
    # walk the coset c4 + Z c3 until the fourth curve is new
    for t in (0, 1, -1, 2, -2, 3, -3):
        c4 = once_intersecting_complement(c3, t)
        if intersection(c3, c4) < 0:
            c4 = -c4
        if c4.sign_normalized() not in taken:
            break
    t12 = mat_mul(twist_matrix(c1), twist_matrix(c2))
    t34 = mat_mul(twist_matrix(c3), twist_matrix(c4))
    total = mat_mul(mat_pow(t12, 6), mat_pow(t34, -6))
    classes = [c.sign_normalized().pair() for c in (c1, c2, c3, c4)]
    distinct = len(set(classes)) == 4
    ok = total == IDENTITY and mat_trace(t34) == 1 and distinct and mat_det(t34) == 1
    return {
        "check": "self-surgery",
        "status": "pass" if ok else "fail",
        "classes": [list(c.pair()) for c in (c1, c2, c3, c4)],
        "pairwise_non_isotopic": distinct,
        "t3t4_trace": mat_trace(t34),
        "product_is_identity": total == IDENTITY,
    }
