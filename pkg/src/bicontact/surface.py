"""Fibers with a singular vector field, and winding data of curves.

Curves live in a single flow-box chart in which the vector field ``V`` is the
first coordinate direction, so flowlines are the horizontal lines.  A closed
curve may carry a ``translation``: its closing edge then runs from the last
vertex to ``vertices[0] + translation``.  This models curves that close up on
a torus or annulus chart (e.g. a transverse ``(0, 1)`` curve) without
leaving the chart.

Tangency sign convention.  At a tangency point the flowline through the point
(minus the point) lies on one side of the oriented curve.  The value is +1
when it lies on the left and -1 when on the right, so a local maximum of the
height traversed left-to-right scores +1 and every counterclockwise turn at
an extremum scores -1.  A horizontal run that the curve crosses monotonically
scores 0.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Sequence

from .lattice import fraction_from_json, fraction_to_json

Point = tuple[Fraction, Fraction]


class DegenerateCurve(ValueError):
    pass


class WindingObstruction(ValueError):
    """A curve with nonzero winding number cannot be made biLegendrian."""


# -- fibers -----------------------------------------------------------------


@dataclass(frozen=True)
class Fiber:
    genus: int
    indices: tuple[int, ...]

    def __post_init__(self):
        object.__setattr__(self, "indices", tuple(int(i) for i in self.indices))

    @property
    def punctures(self) -> int:
        return len(self.indices)

    @property
    def boundary_h(self) -> tuple[int, ...]:
        """``h_i = ind_i - 1`` for each boundary component."""
        return tuple(i - 1 for i in self.indices)

    def tag(self) -> str:
        return f"Sigma_{self.genus},{self.punctures}"


@dataclass(frozen=True)
class FiberCheck:
    ok: bool
    reason: str | None = None

    def __bool__(self):
        return self.ok


def validate_fiber(f: Fiber) -> FiberCheck:
    """Poincare-Hopf gate: every index is <= 0 and they sum to ``2 - 2g``."""
    if f.genus < 0:
        return FiberCheck(False, "negative-genus")
    if f.punctures < 1:
        return FiberCheck(False, "no-punctures")
    if any(i > 0 for i in f.indices):
        return FiberCheck(False, "positive-index")
    if sum(f.indices) != 2 - 2 * f.genus:
        return FiberCheck(False, "index-sum")
    return FiberCheck(True)


def torus_fiber(punctures: int = 1) -> Fiber:
    return Fiber(1, (0,) * punctures)


# -- PL curves --------------------------------------------------------------


@dataclass(frozen=True)
class PLCurve:
    vertices: tuple[Point, ...]
    closed: bool = True
    translation: Point = (Fraction(0), Fraction(0))

    def __post_init__(self):
        verts = tuple((Fraction(x), Fraction(y)) for x, y in self.vertices)
        object.__setattr__(self, "vertices", verts)
        tx, ty = self.translation
        object.__setattr__(self, "translation", (Fraction(tx), Fraction(ty)))
        if len(verts) < 2:
            raise DegenerateCurve("a curve needs at least two vertices")

    def edges(self) -> list[tuple[Fraction, Fraction]]:
        """Edge vectors; for a closed curve the last one is the closing edge."""
        pts = list(self.vertices)
        if self.closed:
            x0, y0 = pts[0]
            tx, ty = self.translation
            pts.append((x0 + tx, y0 + ty))
        out = []
        for (x0, y0), (x1, y1) in zip(pts, pts[1:]):
            if x0 == x1 and y0 == y1:
                raise DegenerateCurve(f"zero-length edge at {(x0, y0)}")
            out.append((x1 - x0, y1 - y0))
        return out

    def rebased(self, i: int) -> "PLCurve":
        """Same closed curve with the basepoint moved to vertex ``i``."""
        if not self.closed:
            raise ValueError("only closed curves can be rebased")
        tx, ty = self.translation
        head = self.vertices[i:]
        tail = tuple((x + tx, y + ty) for x, y in self.vertices[:i])
        return PLCurve(head + tail, True, self.translation)

    def reversed(self) -> "PLCurve":
        if not self.closed:
            return PLCurve(self.vertices[::-1], False)
        tx, ty = self.translation
        x0, y0 = self.vertices[0]
        # start from the translated copy of vertex 0 so the closing edge is preserved
        verts = ((x0 + tx, y0 + ty),) + self.vertices[:0:-1]
        return PLCurve(verts, True, (-tx, -ty))

    def to_json(self) -> dict:
        out = {
            "vertices": [[fraction_to_json(x), fraction_to_json(y)] for x, y in self.vertices],
            "closed": self.closed,
        }
        if any(self.translation):
            out["translation"] = [fraction_to_json(t) for t in self.translation]
        return out

    @classmethod
    def from_json(cls, data: dict) -> "PLCurve":
        verts = [(fraction_from_json(x), fraction_from_json(y)) for x, y in data["vertices"]]
        trans = data.get("translation", [0, 0])
        return cls(
            tuple(verts),
            bool(data.get("closed", True)),
            (fraction_from_json(trans[0]), fraction_from_json(trans[1])),
        )


def _sign(x) -> int:
    return (x > 0) - (x < 0)


def _cross(u, v):
    return u[0] * v[1] - u[1] * v[0]


def _in_left_sector(u_in, u_out, d) -> bool:
    """Is direction ``d`` on the left of a polygonal corner?

    The left side of the corner is the sector swept counterclockwise from the
    outgoing direction to the reversed incoming direction.
    """
    start = u_out
    end = (-u_in[0], -u_in[1])
    c = _cross(start, end)
    if c > 0:
        return _cross(start, d) > 0 and _cross(d, end) > 0
    if c < 0:
        return not (_cross(end, d) >= 0 and _cross(d, start) >= 0)
    # straight-through corner: the left half-plane of u_out
    return _cross(start, d) > 0


@dataclass(frozen=True)
class WindingProfile:
    tangency_values: tuple[int, ...]
    wind: int
    delta_w: int
    positions: tuple[int, ...] = field(default=(), compare=False)

    def as_tuple(self):
        return (list(self.tangency_values), self.wind, self.delta_w)


def winding_profile(c: PLCurve) -> WindingProfile:
    """Signed tangencies with the horizontal foliation, winding number and spread.

    ``positions`` records the vertex index at which each tangency sits (the
    start of a horizontal run for flat tangencies).  ``delta_w`` is the spread
    ``max - min`` of the running sums of the tangency values, starting from 0
    at the basepoint; for a curve of winding number 0 it does not depend on
    the basepoint.
    """
    if not c.closed:
        raise ValueError("winding profile needs a closed curve")
    edges = c.edges()
    m = len(edges)
    signs = [_sign(dy) for _, dy in edges]
    sloped = [i for i in range(m) if signs[i] != 0]
    if not sloped:
        # a closed leaf of V: tangent everywhere, no isolated tangencies
        return WindingProfile((), 0, 0)

    events = []  # (vertex position, value)
    for n, i in enumerate(sloped):
        j = sloped[(n + 1) % len(sloped)]
        flat = [(i + t) % m for t in range(1, (j - i) % m or m)]
        pos = (i + 1) % m
        if flat:
            dx = sum(edges[e][0] for e in flat)
            if any(_sign(edges[e][0]) != _sign(dx) for e in flat):
                raise DegenerateCurve(f"horizontal run at vertex {pos} backtracks")
            if signs[i] == signs[j]:
                continue  # a flat step of a monotone stretch, not an extremum
            is_max = signs[i] > 0
            rightward = dx > 0
            value = 1 if is_max == rightward else -1
        elif signs[i] == signs[j]:
            continue
        else:
            value = 1 if _in_left_sector(edges[i], edges[j], (1, 0)) else -1
        events.append((pos, value))

    events.sort(key=lambda e: e[0])
    values = tuple(v for _, v in events)
    run, lo, hi = 0, 0, 0
    for v in values:
        run += v
        lo, hi = min(lo, run), max(hi, run)
    return WindingProfile(values, run, hi - lo, tuple(p for p, _ in events))


def min_twisting(curves: Sequence[PLCurve]) -> int:
    """Twisting needed to realise the curves as closed orbits: ``max(1, 2 * sum dW)``."""
    total = 0
    for n, c in enumerate(curves):
        prof = winding_profile(c)
        if prof.wind != 0:
            raise WindingObstruction(f"curve {n} has winding number {prof.wind}")
        total += prof.delta_w
    return max(1, 2 * total)
