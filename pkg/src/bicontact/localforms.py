"""Explicit contact forms of the plug construction and their verification.

A :class:`OneForm` is ``f0 dx0 + f1 dx1 + f2 dx2`` in a chart whose coordinate
order fixes the orientation (volume ``dx0 ^ dx1 ^ dx2``).  Collar charts are
``(w, s, v)``, boundary charts ``(w, theta, r)`` and interior charts
``(x, y, w)``; all are right-handed by convention and every sign claim below
is relative to that choice.

With ``F = (f0, f1, f2)``, ``alpha ^ d alpha = (F . curl F) vol`` and the Reeb
field is ``curl F / (F . curl F)``.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from math import gcd

import numpy as np

from .trigpoly import Chart, Expr, cos, sin

COLLAR = Chart(("w", "s", "v"), {"v": (-0.5, 0.0)})
BOUNDARY = Chart(("w", "theta", "r"), {"r": (-0.5, 0.0)})
INTERIOR = Chart(("x", "y", "w"))

ZERO_TOL = 1e-9


class DegenerateForm(ValueError):
    """The form is not contact where it was required to be."""


@dataclass(frozen=True)
class OneForm:
    chart: Chart
    coeffs: tuple[Expr, Expr, Expr]
    name: str = ""

    def __post_init__(self):
        coeffs = tuple(self.chart.const(c) if not isinstance(c, Expr) else c for c in self.coeffs)
        if len(coeffs) != 3 or any(c.coords != self.chart.coords for c in coeffs):
            raise ValueError("a one-form needs three coefficients over its chart")
        object.__setattr__(self, "coeffs", coeffs)

    def curl(self) -> tuple[Expr, Expr, Expr]:
        x0, x1, x2 = self.chart.coords
        f0, f1, f2 = self.coeffs
        return (
            f2.diff(x1) - f1.diff(x2),
            f0.diff(x2) - f2.diff(x0),
            f1.diff(x0) - f0.diff(x1),
        )

    def d_matrix(self) -> list[list[Expr]]:
        """``d alpha`` as the antisymmetric matrix ``d_i f_j - d_j f_i``."""
        cs = self.chart.coords
        return [[self.coeffs[j].diff(cs[i]) - self.coeffs[i].diff(cs[j]) for j in range(3)] for i in range(3)]

    def on(self, vector) -> Expr:
        return sum((f * v for f, v in zip(self.coeffs, vector)), self.chart.zero())

    def evaluate(self, point) -> list:
        return [f.evaluate(point) for f in self.coeffs]

    def __str__(self):
        parts = [f"({c}) d{x}" for c, x in zip(self.coeffs, self.chart.coords) if not c.is_zero()]
        return " + ".join(parts) or "0"


# -- the forms of the construction --------------------------------------------


def collar_negative() -> OneForm:
    c = COLLAR
    return OneForm(c, (c.const(1), c["v"], c.zero()), "dw + v ds")


def collar_positive(n: int) -> OneForm:
    c = COLLAR
    nw = n * c["w"]
    return OneForm(c, (c.zero(), sin(nw), cos(nw)), f"sin({n}w) ds + cos({n}w) dv")


def boundary_negative(k: int, h: int) -> OneForm:
    c = BOUNDARY
    t = Fraction(h, k)
    name = f"dw + (r {'-' if t >= 0 else '+'} {abs(t)}) dtheta"
    return OneForm(c, (c.const(1), c["r"] - t, c.zero()), name)


def boundary_positive(k: int, h: int) -> OneForm:
    c = BOUNDARY
    phase = k * c["w"] - h * c["theta"]
    arg = f"{k}w {'-' if h >= 0 else '+'} {abs(h)}theta"
    return OneForm(c, (c.zero(), sin(phase), cos(phase)), f"sin({arg}) dtheta + cos({arg}) dr")


def interior_negative() -> OneForm:
    c = INTERIOR
    return OneForm(c, (c["y"], c.zero(), c.const(1)), "dw + y dx")


def interior_positive(k: int) -> OneForm:
    c = INTERIOR
    kw = k * c["w"]
    return OneForm(c, (sin(kw), cos(kw), c.zero()), f"sin({k}w) dx + cos({k}w) dy")


def plug_form_pairs(plug) -> list[tuple[str, OneForm, OneForm]]:
    """The (negative, positive) pairs a plug is built from: interior, then each boundary collar."""
    pairs = [("interior", interior_negative(), interior_positive(plug.k))]
    for b in plug.boundaries:
        if b.basis == "w,theta":
            pairs.append((f"boundary {b.id}", boundary_negative(plug.k, b.h), boundary_positive(plug.k, b.h)))
    return pairs


# -- checks ------------------------------------------------------------------------


def contact_volume(a: OneForm) -> Expr:
    """Coefficient of ``alpha ^ d alpha`` on the chart volume form."""
    return sum((f * c for f, c in zip(a.coeffs, a.curl())), a.chart.zero())


def sample_grid(chart: Chart, n: int) -> dict[str, np.ndarray]:
    axes = []
    for c in chart.coords:
        lo, hi = chart.ranges[c]
        if hi - lo >= 2 * math.pi - 1e-12:
            axes.append(np.linspace(lo, hi, n, endpoint=False))
        else:
            axes.append(np.linspace(lo, hi, n))
    mesh = np.meshgrid(*axes, indexing="ij")
    return dict(zip(chart.coords, mesh))


def sample_random(chart: Chart, n: int, rng: np.random.Generator) -> dict[str, np.ndarray]:
    return {c: rng.uniform(*chart.ranges[c], size=n) for c in chart.coords}


def contact_sign(a: OneForm, grid: int = 16) -> int:
    """+1 / -1 if ``alpha ^ d alpha`` has that sign everywhere on a sample grid, else 0."""
    vol = contact_volume(a)
    const = vol.constant_value()
    if const is not None:
        return (const > 0) - (const < 0)
    vals = np.broadcast_to(vol.evaluate(sample_grid(a.chart, grid)), (grid,) * 3)
    if np.all(vals > ZERO_TOL):
        return 1
    if np.all(vals < -ZERO_TOL):
        return -1
    return 0


def numeric_contact_volume(a: OneForm, points: dict[str, np.ndarray], step: float = 1e-30) -> np.ndarray:
    """``F . curl F`` with derivatives taken by complex-step differentiation.

    Uses only numeric evaluation of the coefficients, not the symbolic
    derivative, so it is an independent check of :func:`contact_volume`.
    """
    cs = a.chart.coords
    shape = np.broadcast(*points.values()).shape
    f = [np.broadcast_to(np.real(e.evaluate(points)), shape) for e in a.coeffs]
    jac = [[None] * 3 for _ in range(3)]  # jac[i][j] = d_i f_j
    for i, name in enumerate(cs):
        shifted = dict(points)
        shifted[name] = points[name] + 1j * step
        for j, e in enumerate(a.coeffs):
            jac[i][j] = np.broadcast_to(np.imag(e.evaluate(shifted)) / step, shape)
    curl = (jac[1][2] - jac[2][1], jac[2][0] - jac[0][2], jac[0][1] - jac[1][0])
    return f[0] * curl[0] + f[1] * curl[1] + f[2] * curl[2]


@dataclass(frozen=True)
class ReebField:
    chart: Chart
    numerators: tuple[Expr, Expr, Expr]
    denominator: Expr

    def components(self) -> tuple[Expr, Expr, Expr] | None:
        """Exact components when the contact volume is a constant."""
        d = self.denominator.constant_value()
        if d is None:
            return None
        return tuple(n * (1 / d) for n in self.numerators)

    def evaluate(self, point) -> list:
        den = self.denominator.evaluate(point)
        return [n.evaluate(point) / den for n in self.numerators]

    def __str__(self):
        comps = self.components()
        if comps is None:
            return f"curl / ({self.denominator})"
        parts = [f"({c}) d/d{x}" for c, x in zip(comps, self.chart.coords) if not c.is_zero()]
        return " + ".join(parts) or "0"


def reeb_field(a: OneForm, grid: int = 16) -> ReebField:
    vol = contact_volume(a)
    const = vol.constant_value()
    if const == 0:
        raise DegenerateForm(f"{a.name or a}: alpha ^ d alpha vanishes identically")
    if const is None:
        pts = sample_grid(a.chart, grid)
        vals = np.asarray(vol.evaluate(pts))
        if np.any(np.abs(vals) < ZERO_TOL):
            idx = np.unravel_index(np.argmin(np.abs(vals)), vals.shape)
            where = {c: float(pts[c][idx]) for c in a.chart.coords}
            raise DegenerateForm(f"{a.name or a}: Reeb system degenerate near {where}")
    return ReebField(a.chart, a.curl(), vol)


def check_reeb_exact(a: OneForm, r: ReebField, point: dict[str, Fraction]) -> tuple[Fraction, list[Fraction]]:
    """``alpha(R)`` and the row ``d alpha(R, .)`` at a rational point, exactly."""
    comps = r.components()
    if comps is None:
        raise DegenerateForm("exact check needs a constant contact volume")
    rv = [c.evaluate_exact(point) for c in comps]
    alpha_r = sum(f.evaluate_exact(point) * x for f, x in zip(a.coeffs, rv))
    dm = [[e.evaluate_exact(point) for e in row] for row in a.d_matrix()]
    row = [sum(rv[i] * dm[i][j] for i in range(3)) for j in range(3)]
    return alpha_r, row


def strong_adaptedness_expr(neg: OneForm, pos: OneForm) -> Expr:
    """Numerator of ``alpha_+(R_-)``; the denominator is the constant-sign volume of ``alpha_-``."""
    if neg.chart != pos.chart:
        raise ValueError("forms live on different charts")
    return pos.on(neg.curl())


def strong_adaptedness_check(neg: OneForm, pos: OneForm) -> bool:
    """Is the Reeb field of ``neg`` tangent to ``ker pos``?"""
    if contact_sign(neg) != -1:
        raise DegenerateForm(f"{neg.name or neg} is not a negative contact form")
    if contact_sign(pos) != 1:
        raise DegenerateForm(f"{pos.name or pos} is not a positive contact form")
    return strong_adaptedness_expr(neg, pos).is_zero()


def boundary_foliation_slope(k: int, h: int) -> Fraction:
    """Slope ``h/k`` of the leaves ``w = (h/k) theta`` of the characteristic foliation."""
    return Fraction(h, k)


# -- tangency locus on the boundary torus -----------------------------------------


class UnionFind:
    def __init__(self, n: int):
        self.parent = list(range(n))
        self.rank = [0] * n

    def find(self, i: int) -> int:
        root = i
        while self.parent[root] != root:
            root = self.parent[root]
        while self.parent[i] != root:
            self.parent[i], i = root, self.parent[i]
        return root

    def union(self, i: int, j: int) -> None:
        ri, rj = self.find(i), self.find(j)
        if ri == rj:
            return
        if self.rank[ri] < self.rank[rj]:
            ri, rj = rj, ri
        self.parent[rj] = ri
        if self.rank[ri] == self.rank[rj]:
            self.rank[ri] += 1


class ResolutionTooCoarse(ValueError):
    pass


def tangency_components(k: int, h: int, n: int | None = None) -> int:
    """Components of ``{sin(k w - h theta) = 0}`` on the torus, by union-find on an n x n grid.

    A cell is in the zero band when ``|sin| < sin(pi (k + |h|) / n)``;
    adjacency is 8-connected with wrap-around.
    """
    if k == 0 and h == 0:
        raise ValueError("(k, h) must not both vanish")
    need = 8 * (abs(k) + abs(h))
    n = need if n is None else n
    if n < need:
        raise ResolutionTooCoarse(f"grid {n} < 8(k+|h|) = {need}")
    axis = np.arange(n) * (2 * np.pi / n)
    w, theta = np.meshgrid(axis, axis, indexing="ij")
    band = np.abs(np.sin(k * w - h * theta)) < np.sin(np.pi * (abs(k) + abs(h)) / n)
    cells = np.flatnonzero(band)
    uf = UnionFind(n * n)
    inband = band.ravel()
    for cell in cells:
        i, j = divmod(int(cell), n)
        for di, dj in ((0, 1), (1, -1), (1, 0), (1, 1)):
            other = ((i + di) % n) * n + (j + dj) % n
            if inband[other]:
                uf.union(int(cell), other)
    return len({uf.find(int(c)) for c in cells})


def expected_orbit_count(k: int, h: int) -> int:
    return 2 * gcd(k, abs(h))


# -- reports -------------------------------------------------------------------------


def _report(check: str, ok: bool, worst: float | None = None, location=None, **extra) -> dict:
    out = {"check": check, "status": "pass" if ok else "fail", "worst_error": worst, "location": location}
    out.update(extra)
    return out


def _worst(err: np.ndarray, pts: dict[str, np.ndarray]) -> tuple[float, dict]:
    idx = np.unravel_index(int(np.argmax(err)), err.shape)
    return float(err[idx]), {c: float(np.broadcast_to(v, err.shape)[idx]) for c, v in pts.items()}


def volume_report(a: OneForm, expected: Fraction, grid: int = 64) -> dict:
    """Exact coefficient of ``alpha ^ d alpha`` plus a complex-step grid check."""
    vol = contact_volume(a)
    exact = vol.constant_value()
    pts = sample_grid(a.chart, grid)
    err = np.abs(numeric_contact_volume(a, pts) - float(expected))
    worst, loc = _worst(err, pts)
    ok = exact == expected and worst < ZERO_TOL
    return _report(
        f"contact-volume[{a.name}]", ok, worst, loc,
        expected=str(expected), symbolic=str(vol), grid=grid,
    )


def reeb_report(a: OneForm, expected: tuple[Expr, Expr, Expr] | None = None) -> dict:
    try:
        r = reeb_field(a)
    except DegenerateForm as exc:
        return _report(f"reeb[{a.name}]", False, location=None, error=str(exc))
    comps = r.components()
    ok = comps is not None and (expected is None or tuple(comps) == tuple(expected))
    return _report(f"reeb[{a.name}]", ok, 0.0 if ok else None, None, field=str(r))


def adaptedness_report(neg: OneForm, pos: OneForm, grid: int = 64) -> dict:
    name = f"strongly-adapted[{neg.name} | {pos.name}]"
    try:
        ok = strong_adaptedness_check(neg, pos)
    except DegenerateForm as exc:
        return _report(name, False, error=str(exc))
    # grid evaluation of alpha_+(R_-) as an independent confirmation
    r = reeb_field(neg)
    pts = sample_grid(neg.chart, grid)
    shape = (grid,) * 3
    rv = [np.broadcast_to(np.real(x), shape) for x in r.evaluate(pts)]
    fv = [np.broadcast_to(np.real(x), shape) for x in pos.evaluate(pts)]
    err = np.abs(sum(f * x for f, x in zip(fv, rv)))
    worst, loc = _worst(err, pts)
    return _report(name, ok and worst < ZERO_TOL, worst, loc, symbolic=str(strong_adaptedness_expr(neg, pos)))


def verify_forms(k: int, h: int, grid: int | None = None, volume_grid: int = 32) -> list[dict]:
    """All local checks for a boundary collar with twisting ``k`` and datum ``h``."""
    if k < 1:
        raise ValueError("k must be a positive integer")
    neg, pos = boundary_negative(k, h), boundary_positive(k, h)
    reports = [
        volume_report(neg, Fraction(-1), volume_grid),
        volume_report(pos, Fraction(k), volume_grid),
        reeb_report(neg, (BOUNDARY.const(1), BOUNDARY.zero(), BOUNDARY.zero())),
        adaptedness_report(neg, pos, volume_grid),
    ]
    slope = boundary_foliation_slope(k, h)
    g = gcd(k, abs(h))
    want = Fraction(h // g, k // g)
    reports.append(_report("foliation-slope", slope == want, 0.0, None, slope=[slope.numerator, slope.denominator]))
    n = grid if grid is not None else 8 * (k + abs(h))
    comps = tangency_components(k, h, n)
    expected = expected_orbit_count(k, h)
    reports.append(_report("tangency-components", comps == expected, float(abs(comps - expected)), None,
                           components=comps, expected=expected, grid=n))
    return reports


# -- gluing collars --------------------------------------------------------------------


def glued_collar_check(
    n: int,
    shift: float | None = None,
    samples: int = 10_000,
    seed: int = 0,
    tol: float = ZERO_TOL,
) -> dict:
    """Pull the canonical collar forms of one side back through the gluing map.

    The map is ``(w, s, v) -> (w + shift, -s, -v)`` with default shift
    ``pi / n``.  Both forms must pull back to themselves within ``tol`` at
    random sample points, and the map must preserve orientation so that the
    signs of the two contact structures survive.
    """
    if n < 1:
        raise ValueError("n must be a positive integer")
    shift = math.pi / n if shift is None else shift
    rng = np.random.default_rng(seed)
    pts = sample_random(COLLAR, samples, rng)
    for c in COLLAR.coords:  # anchor the first sample at the origin of the collar
        pts[c][0] = 0.0
    image = {"w": pts["w"] + shift, "s": -pts["s"], "v": -pts["v"]}
    jac_diag = (1.0, -1.0, -1.0)
    orientation = jac_diag[0] * jac_diag[1] * jac_diag[2]

    worst, where, form = 0.0, None, None
    for a in (collar_negative(), collar_positive(n)):
        here = [np.broadcast_to(np.real(x), (samples,)) for x in a.evaluate(pts)]
        there = [np.broadcast_to(np.real(x), (samples,)) for x in a.evaluate(image)]
        pulled = [t * d for t, d in zip(there, jac_diag)]
        err = np.max(np.abs(np.stack(pulled) - np.stack(here)), axis=0)
        i = int(np.argmax(err))
        if err[i] > worst or where is None:
            worst, where, form = float(err[i]), {c: float(pts[c][i]) for c in COLLAR.coords}, a.name
    signs_ok = orientation > 0 and contact_sign(collar_negative()) == -1 and contact_sign(collar_positive(n)) == 1
    ok = worst < tol and signs_ok
    return _report(
        "glued-collar", ok, worst, where,
        n=n, shift=shift, samples=samples, worst_form=form,
        orientation_preserved=orientation > 0,
        convention="chart (w,s,v) right-handed; alpha_- ^ d alpha_- = -1, alpha_+ ^ d alpha_+ = n",
    )
