"""Gluing plugs along compatible boundary tori, and classifying the results.

Each boundary torus that has been prepared by boundary surgery carries the
collar basis ``(reeb, orbit)``: the Reeb class and the closed-orbit class meet
once, so together they form a basis of H1 of the torus.  The standard gluing
identifies the collars by ``w1 -> w2 + pi``, ``s1 -> -s2``, i.e. it sends
``reeb -> reeb`` and ``orbit -> -orbit``.  In the declared bases of the two
tori this is ``P2 diag(1, -1) P1^-1`` with ``P = [reeb | orbit]``.
"""
from __future__ import annotations

import json
from dataclasses import dataclass
from fractions import Fraction
from math import gcd
from typing import Sequence

from .lattice import (
    MULAMBDA,
    H1Class,
    Matrix,
    as_matrix,
    mat_apply,
    mat_det,
    mat_inv,
    mat_mul,
    matrix_to_json,
)
from .mcg import cat_map_word
from .plug import BoundaryTorus, Plug, new_plug
from .surface import Fiber, torus_fiber
from .surgery import boundary_surgery, shift_for_reeb


class IncompatibleBoundaries(ValueError):
    pass


class InvalidModel(ValueError):
    pass


@dataclass(frozen=True)
class GluingMap:
    matrix: Matrix

    def __post_init__(self):
        object.__setattr__(self, "matrix", as_matrix(self.matrix))
        d = mat_det(self.matrix)
        if d != -1:
            raise InvalidModel(f"gluing map must reverse orientation (det -1), got det {d}")

    def __call__(self, x: H1Class, basis: str | None = None) -> H1Class:
        return mat_apply(self.matrix, x, basis)


def compatible(b1: BoundaryTorus, b2: BoundaryTorus) -> bool:
    return b1.orbit_count == b2.orbit_count


def collar_basis(b: BoundaryTorus) -> Matrix:
    """Columns ``reeb`` and ``orbit``; unimodular once the Reeb orbits meet ``orbit`` once."""
    m = ((b.reeb_class.a, b.orbit_class.a), (b.reeb_class.b, b.orbit_class.b))
    if abs(mat_det(m)) != 1:
        raise IncompatibleBoundaries(
            f"boundary {b.id}: Reeb class {b.reeb_class.pair()} meets the orbit "
            f"{b.orbit_class.pair()} {abs(mat_det(m))} times; run boundary surgery first"
        )
    return m


def standard_gluing(b1: BoundaryTorus, b2: BoundaryTorus) -> GluingMap:
    if not compatible(b1, b2):
        raise IncompatibleBoundaries(f"orbit counts differ: {b1.orbit_count} vs {b2.orbit_count}")
    p1, p2 = collar_basis(b1), collar_basis(b2)
    # reeb -> reeb, orbit -> -orbit when the collar bases are equally oriented;
    # otherwise orbit -> orbit already reverses orientation
    eps = -1 if mat_det(p1) == mat_det(p2) else 1
    f = mat_mul(mat_mul(p2, ((1, 0), (0, eps))), mat_inv(p1))
    gm = GluingMap(f)
    problems = gluing_problems(b1, b2, gm)
    if problems:
        raise IncompatibleBoundaries("; ".join(problems))
    return gm


def gluing_problems(b1: BoundaryTorus, b2: BoundaryTorus, gm: GluingMap) -> list[str]:
    problems = []
    if not compatible(b1, b2):
        problems.append(f"orbit counts differ: {b1.orbit_count} vs {b2.orbit_count}")
    img = gm(b1.orbit_class, b2.basis)
    if img not in (b2.orbit_class, -b2.orbit_class):
        problems.append(f"orbit {b1.orbit_class.pair()} maps to {img.pair()}, not ±{b2.orbit_class.pair()}")
    img = gm(b1.reeb_class, b2.basis)
    if img not in (b2.reeb_class, -b2.reeb_class):
        problems.append(f"Reeb {b1.reeb_class.pair()} maps to {img.pair()}, not ±{b2.reeb_class.pair()}")
    return problems


@dataclass(frozen=True)
class Gluing:
    piece1: int
    boundary1: int
    piece2: int
    boundary2: int
    map: GluingMap

    def to_json(self) -> dict:
        return {
            "from": [self.piece1, self.boundary1],
            "to": [self.piece2, self.boundary2],
            "matrix": matrix_to_json(self.map.matrix),
        }

    @classmethod
    def from_json(cls, data: dict) -> "Gluing":
        (i, bi), (j, bj) = data["from"], data["to"]
        return cls(int(i), int(bi), int(j), int(bj), GluingMap(as_matrix(data["matrix"])))


@dataclass(frozen=True)
class ClosedModel:
    pieces: tuple[Plug, ...]
    gluings: tuple[Gluing, ...]

    def __post_init__(self):
        object.__setattr__(self, "pieces", tuple(self.pieces))
        object.__setattr__(self, "gluings", tuple(self.gluings))
        seen: dict[tuple[int, int], int] = {}
        for g in self.gluings:
            for side in ((g.piece1, g.boundary1), (g.piece2, g.boundary2)):
                seen[side] = seen.get(side, 0) + 1
        needed = {(i, b.id) for i, p in enumerate(self.pieces) for b in p.boundaries}
        unknown = set(seen) - needed
        if unknown:
            raise InvalidModel(f"gluings refer to unknown boundaries {sorted(unknown)}")
        unmatched = sorted(s for s in needed if seen.get(s, 0) == 0)
        if unmatched:
            raise InvalidModel(f"unmatched boundaries {unmatched}")
        doubled = sorted(s for s, n in seen.items() if n > 1)
        if doubled:
            raise InvalidModel(f"boundaries glued more than once {doubled}")
        for g in self.gluings:
            b1 = self.pieces[g.piece1].boundary(g.boundary1)
            b2 = self.pieces[g.piece2].boundary(g.boundary2)
            problems = gluing_problems(b1, b2, g.map)
            if problems:
                raise InvalidModel("; ".join(problems))

    def to_json(self) -> dict:
        return {"pieces": [p.to_json() for p in self.pieces], "gluings": [g.to_json() for g in self.gluings]}

    @classmethod
    def from_json(cls, data: dict) -> "ClosedModel":
        return cls(
            tuple(Plug.from_json(p) for p in data["pieces"]),
            tuple(Gluing.from_json(g) for g in data["gluings"]),
        )


def glue(p1: Plug, b1: int, p2: Plug, b2: int) -> ClosedModel:
    gm = standard_gluing(p1.boundary(b1), p2.boundary(b2))
    return ClosedModel((p1, p2), (Gluing(0, b1, 1, b2, gm),))


# -- figure-eight family ------------------------------------------------------


def psi(k: int) -> GluingMap:
    """``mu -> -mu - 2k lambda``, ``lambda -> lambda``."""
    return GluingMap(((-1, 0), (-2 * k, 1)))


def figure_eight_piece(n: int) -> Plug:
    """Figure-eight complement with twisting ``n`` and Reeb orbits along the longitude.

    The boundary is in the (meridian, longitude) basis with closed orbits
    ``mu + n*lambda``.  For ``n >= 1`` the Reeb orbits start parallel to the
    meridian and boundary surgery moves them to the longitude.  ``n = 0`` is
    the untwisted end of the family: the orbits are meridians and the Reeb
    class is set to the longitude directly.
    """
    if n < 0:
        raise ValueError("n must be non-negative")
    longitude = H1Class(0, 1, MULAMBDA)
    b = BoundaryTorus(
        id=0,
        h=-1,
        orbit_class=H1Class(1, n, MULAMBDA),
        orbit_count=2 * gcd(n, 1),
        reeb_class=H1Class(1, 0, MULAMBDA) if n else longitude,
        orbit_slope=Fraction(1, n) if n else None,
    )
    plug = Plug(Fiber(1, (0,)), n, (b,), cat_map_word(), (), "M8")
    if n == 0:
        return plug
    return boundary_surgery(plug, 0, shift_for_reeb(plug, 0, longitude))


def fig8_model(n: int, m: int) -> ClosedModel:
    if (n + m) % 2:
        raise ValueError(f"n + m must be even, got {n} + {m}")
    k = (n + m) // 2
    gm = psi(k)
    image = gm(H1Class(1, n, MULAMBDA))
    if image != -H1Class(1, 2 * k - n, MULAMBDA):
        raise AssertionError(f"Psi_{k}(1, {n}) = {image.pair()}")
    pieces = (figure_eight_piece(n), figure_eight_piece(m))
    return ClosedModel(pieces, (Gluing(0, 0, 1, 0, gm),))


def fig8_family(k: int) -> list[ClosedModel]:
    return [fig8_model(n, 2 * k - n) for n in range(2 * k + 1)]


def ht_model(k1: int, k2: int) -> ClosedModel:
    """Once-punctured-torus plugs with twistings ``k1``, ``k2`` glued along their boundary."""
    pieces = []
    for k in (k1, k2):
        p = new_plug(torus_fiber(1), k)
        pieces.append(boundary_surgery(p, 0, 0))
    return glue(pieces[0], 0, pieces[1], 0)


# -- classification -----------------------------------------------------------


@dataclass(frozen=True)
class FlowInvariant:
    records: tuple

    def canonical(self) -> str:
        return json.dumps(self.records, separators=(",", ":"))


def flow_invariant(model: ClosedModel) -> FlowInvariant:
    """Multiset of (topology tag, twisting, boundary orbit classes up to sign)."""
    records = []
    for p in model.pieces:
        classes = sorted([b.basis, *b.orbit_class.sign_normalized().pair()] for b in p.boundaries)
        records.append([p.tag, p.k, classes])
    records.sort(key=lambda r: json.dumps(r))
    return FlowInvariant(tuple(json.loads(json.dumps(records))))


def classify_keys(models: Sequence[ClosedModel]) -> dict[str, list[int]]:
    """Model indices grouped by canonical invariant, keys in sorted order."""
    groups: dict[str, list[int]] = {}
    for i, m in enumerate(models):
        groups.setdefault(flow_invariant(m).canonical(), []).append(i)
    return {key: groups[key] for key in sorted(groups)}


def classify(models: Sequence[ClosedModel]) -> list[list[int]]:
    """Partition of model indices by equal flow invariant, ordered by first member."""
    return sorted(classify_keys(models).values())
