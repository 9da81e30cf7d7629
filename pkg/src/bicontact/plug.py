"""Bicontact plugs over fibered 3-manifolds, recorded combinatorially.

For a boundary component with ``h = ind - 1 < 0`` and twisting ``k``, the
closed orbits of the supported flow on the boundary torus have class
``(h/g, k/g)`` in the basis ``([w], [theta])`` where ``g = gcd(k, |h|)``;
there are ``2g`` of them.  Reeb orbits start out as ``[w] = (1, 0)``.
"""
from __future__ import annotations

from dataclasses import dataclass, field, replace
from fractions import Fraction
from math import gcd

from .lattice import (
    WTHETA,
    H1Class,
    fraction_from_json,
    fraction_to_json,
    intersection,
)
from .mcg import TwistGenerator, TwistWord, torus_generators
from .surface import Fiber, validate_fiber


class InvalidFiber(ValueError):
    pass


@dataclass(frozen=True)
class BoundaryTorus:
    id: int
    h: int
    orbit_class: H1Class
    orbit_count: int
    reeb_class: H1Class
    orbit_slope: Fraction | None

    @property
    def basis(self) -> str:
        return self.orbit_class.basis

    def to_json(self) -> dict:
        return {
            "id": self.id,
            "h": self.h,
            "basis": self.basis,
            "orbit_class": self.orbit_class.to_json(),
            "orbit_count": self.orbit_count,
            "reeb_class": self.reeb_class.to_json(),
            "orbit_slope": None if self.orbit_slope is None else fraction_to_json(self.orbit_slope),
        }

    @classmethod
    def from_json(cls, data: dict) -> "BoundaryTorus":
        basis = data.get("basis", WTHETA)
        slope = data.get("orbit_slope")
        return cls(
            id=int(data["id"]),
            h=int(data["h"]),
            orbit_class=H1Class(*map(int, data["orbit_class"]), basis),
            orbit_count=int(data["orbit_count"]),
            reeb_class=H1Class(*map(int, data["reeb_class"]), basis),
            orbit_slope=None if slope is None else fraction_from_json(slope),
        )


def boundary_torus(id: int, h: int, k: int) -> BoundaryTorus:
    """Boundary record for index datum ``h < 0`` and twisting ``k >= 0``."""
    if h >= 0:
        raise ValueError(f"boundary datum h must be negative, got {h}")
    if k < 0:
        raise ValueError(f"twisting must be non-negative, got {k}")
    g = gcd(k, -h)
    return BoundaryTorus(
        id=id,
        h=h,
        orbit_class=H1Class(h // g, k // g),
        orbit_count=2 * g,
        reeb_class=H1Class(1, 0),
        orbit_slope=Fraction(h, k) if k else None,
    )


@dataclass(frozen=True)
class Plug:
    fiber: Fiber
    k: int
    boundaries: tuple[BoundaryTorus, ...]
    monodromy: TwistWord = TwistWord()
    surgeries: tuple[dict, ...] = ()
    tag: str = ""

    def __post_init__(self):
        if self.k < 0:
            raise ValueError("twisting must be non-negative")
        if len(self.boundaries) != self.fiber.punctures:
            raise ValueError("need exactly one boundary torus per puncture")
        if not self.tag:
            object.__setattr__(self, "tag", self.fiber.tag())

    def boundary(self, boundary_id: int) -> BoundaryTorus:
        for b in self.boundaries:
            if b.id == boundary_id:
                return b
        raise KeyError(f"plug has no boundary {boundary_id}")

    def with_boundary(self, new: BoundaryTorus) -> "Plug":
        self.boundary(new.id)
        return replace(self, boundaries=tuple(new if b.id == new.id else b for b in self.boundaries))

    def generators(self) -> dict[str, TwistGenerator]:
        if self.fiber.genus == 1:
            return torus_generators(self.fiber.punctures)
        return {}

    def to_json(self) -> dict:
        return {
            "tag": self.tag,
            "genus": self.fiber.genus,
            "punctures": self.fiber.punctures,
            "indices": list(self.fiber.indices),
            "k": self.k,
            "boundaries": [b.to_json() for b in self.boundaries],
            "monodromy": self.monodromy.to_json(),
            "surgeries": list(self.surgeries),
        }

    @classmethod
    def from_json(cls, data: dict) -> "Plug":
        fiber = Fiber(int(data["genus"]), tuple(int(i) for i in data["indices"]))
        if int(data.get("punctures", fiber.punctures)) != fiber.punctures:
            raise ValueError("punctures does not match the number of indices")
        gens = torus_generators(fiber.punctures) if fiber.genus == 1 else {}
        return cls(
            fiber=fiber,
            k=int(data["k"]),
            boundaries=tuple(BoundaryTorus.from_json(b) for b in data["boundaries"]),
            monodromy=TwistWord.from_json(data.get("monodromy", []), gens),
            surgeries=tuple(data.get("surgeries", [])),
            tag=data.get("tag", ""),
        )


def new_plug(fiber: Fiber, k: int, tag: str = "") -> Plug:
    check = validate_fiber(fiber)
    if not check:
        raise InvalidFiber(f"fiber fails the index check ({check.reason})")
    if k < 1:
        raise ValueError(f"twisting k must be a positive integer, got {k}")
    bounds = tuple(boundary_torus(i, h, k) for i, h in enumerate(fiber.boundary_h))
    return Plug(fiber, k, bounds, TwistWord(), (), tag)


def reeb_hits_once(b: BoundaryTorus, k: int | None = None) -> bool:
    """Do the Reeb orbits meet each closed boundary orbit exactly once?

    For the initial Reeb class ``(1, 0)`` this is the divisibility ``k | h``.
    ``k`` is optional and only cross-checked against the orbit class.
    """
    if k is not None and b.orbit_class.b and k % b.orbit_class.b:
        raise ValueError(f"k={k} is inconsistent with orbit class {b.orbit_class.pair()}")
    return abs(intersection(b.orbit_class, b.reeb_class)) == 1
