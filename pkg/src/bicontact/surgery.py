"""Boundary and interior bicontact surgeries on plug records.

Boundary surgery replaces the Reeb class of a boundary torus by a class that
meets the closed boundary orbits once; the coefficient ``(q - 1)/q + shift``
is logged, where ``q`` is the old number of intersections.

Interior surgery along a biLegendrian curve at level ``w`` inserts a twist
into the monodromy word.  In a sequence, an entry re-using a curve that is
already in the word is transported: it twists about the image of its curve
under the part of the word strictly below its level.
"""
from __future__ import annotations

from dataclasses import replace
from fractions import Fraction
from typing import Sequence

from .lattice import (
    H1Class,
    NotPrimitive,
    fraction_to_json,
    intersection,
    is_primitive,
    mat_apply,
    mat_inv,
    mat_mul,
    mat_pow,
    mat_trace,
    matrix_to_json,
    once_intersecting_complement,
)
from .mcg import TwistGenerator, twist_matrix, word_matrix
from .plug import Plug
from .surface import PLCurve, WindingObstruction, winding_profile


class TwistingBudgetExceeded(ValueError):
    pass


def boundary_surgery(p: Plug, boundary_id: int, shift: int = 0) -> Plug:
    b = p.boundary(boundary_id)
    if not is_primitive(b.orbit_class):
        raise NotPrimitive(f"orbit class {b.orbit_class.pair()} is not primitive")
    q = abs(intersection(b.orbit_class, b.reeb_class))
    if q == 0:
        raise ValueError("Reeb orbits are parallel to the boundary orbits; no finite coefficient")
    new_reeb = once_intersecting_complement(b.orbit_class, shift)
    coefficient = Fraction(q - 1, q) + shift
    log = {
        "type": "boundary",
        "boundary": boundary_id,
        "reeb_before": b.reeb_class.to_json(),
        "reeb_after": new_reeb.to_json(),
        "q": q,
        "shift": shift,
        "coefficient": fraction_to_json(coefficient),
    }
    out = p.with_boundary(replace(b, reeb_class=new_reeb))
    return replace(out, surgeries=p.surgeries + (log,))


def shift_for_reeb(p: Plug, boundary_id: int, target: H1Class) -> int:
    """The shift making :func:`boundary_surgery` produce ``target`` (if reachable)."""
    b = p.boundary(boundary_id)
    x = b.orbit_class
    if abs(intersection(x, target)) != 1:
        raise ValueError(f"{target.pair()} does not meet the orbit {x.pair()} once")
    base = once_intersecting_complement(x)
    diff = target - base
    if intersection(x, diff) != 0:
        raise ValueError(f"{target.pair()} lies in the opposite coset; use {(-target).pair()}")
    # diff is an integer multiple of the primitive class x
    return diff.a // x.a if x.a else diff.b // x.b


def _resolve(p: Plug, curve: TwistGenerator | str) -> TwistGenerator:
    if isinstance(curve, TwistGenerator):
        return curve
    gens = p.generators()
    if curve in gens:
        return gens[curve]
    return TwistGenerator(curve)


def _budget_used(p: Plug) -> int:
    return sum(s.get("delta_w", 0) for s in p.surgeries if s.get("type") == "interior")


def interior_surgery(
    p: Plug,
    curve: TwistGenerator | str,
    power: int,
    level: Fraction,
    realization: PLCurve | None = None,
) -> Plug:
    """Surgery along a biLegendrian copy of ``curve`` at ``level``.

    With a PL ``realization`` attached the winding number must vanish and the
    accumulated ``2 * sum(dW)`` must not exceed the twisting ``k``.
    """
    g = _resolve(p, curve)
    level = Fraction(level)
    log = {"type": "interior", "curve": g.id, "power": int(power), "level": fraction_to_json(level)}
    if g.h1_class is not None:
        log["class"] = g.h1_class.to_json()
    if realization is not None:
        prof = winding_profile(realization)
        if prof.wind != 0:
            raise WindingObstruction(f"curve {g.id} has winding number {prof.wind}")
        needed = 2 * (_budget_used(p) + prof.delta_w)
        if needed > p.k:
            raise TwistingBudgetExceeded(f"needs twisting {needed} > k = {p.k}")
        log["delta_w"] = prof.delta_w
    word = p.monodromy.inserted(g, power, level)
    return replace(p, monodromy=word, surgeries=p.surgeries + (log,))


def _is_double_chain_pattern(seq) -> bool:
    if len(seq) != 3:
        return False
    (c1, q1, _), (c2, q2, _), (c3, q3, _) = seq
    return c1 == c3 and c1 != c2 and q1 == q2 == q3 == 1


def surgery_sequence(p: Plug, seq: Sequence[tuple]) -> tuple[Plug, dict]:
    """Apply ``(curve, power, level)`` entries in order, with curve transport.

    The report lists the twist class actually used by every entry and the
    resulting change of monodromy on H1.  For the three-entry pattern
    ``(ci, 1), (cj, 1), (ci, 1)`` it compares that change with
    ``(ti tj)^2`` and records agreement or mismatch; nothing is asserted.
    """
    seq = [(c if isinstance(c, str) else c.id, int(q), Fraction(w)) for c, q, w in seq]
    last_level: dict[str, Fraction] = {}
    for name, _, w in seq:
        if name in last_level and w <= last_level[name]:
            raise ValueError(f"re-surgery on {name} must happen at a higher level")
        last_level[name] = w

    evaluable = p.fiber.genus == 1
    before = word_matrix(p.monodromy) if evaluable else None
    used = {e.generator.id.rstrip("'") for e in p.monodromy.entries}
    steps = []
    for name, power, level in seq:
        g = _resolve(p, name)
        transported = False
        if name in used and g.h1_class is not None:
            lower = word_matrix(p.monodromy.below(level))
            image = mat_apply(lower, g.h1_class)
            transported = image != g.h1_class
            g = TwistGenerator(name + "'", image)
        p = interior_surgery(p, g, power, level)
        used.add(name)
        steps.append({
            "curve": name,
            "power": power,
            "level": fraction_to_json(level),
            "twist_class": None if g.h1_class is None else g.h1_class.to_json(),
            "transported": transported,
        })

    report = {"check": "surgery-sequence", "steps": steps}
    if evaluable:
        after = word_matrix(p.monodromy)
        change = mat_mul(mat_inv(before), after)
        report["monodromy"] = matrix_to_json(after)
        report["change"] = matrix_to_json(change)
        if _is_double_chain_pattern(seq):
            gi, gj = _resolve(p, seq[0][0]), _resolve(p, seq[1][0])
            claim = mat_pow(mat_mul(twist_matrix(gi), twist_matrix(gj)), 2)
            naive = mat_mul(mat_mul(twist_matrix(gi), twist_matrix(gj)), twist_matrix(gi))
            agree = change == claim
            report["double_chain"] = {
                "claimed": matrix_to_json(claim),
                "claimed_trace": mat_trace(claim),
                "transported": matrix_to_json(change),
                "transported_trace": mat_trace(change),
                "untransported": matrix_to_json(naive),
                "status": "agreement" if agree else "mismatch",
            }
    return p, report
