"""Command-line interface: ``bicontact <command> [<subcommand>] ...``.

Exit codes: 0 success, 1 validation failure, 2 usage error.  Artifacts are
written as canonical JSON (sorted keys, rationals as ``[num, den]``).
"""
from __future__ import annotations

import argparse
import json
import random
import re
import sys
from fractions import Fraction

from . import assembly, localforms, mcg, surgery
from .lattice import H1Class, mat_det, mat_trace, parse_fraction
from .plug import Plug, new_plug, reeb_hits_once
from .surface import Fiber, PLCurve, min_twisting, validate_fiber, winding_profile


class ValidationFailure(Exception):
    pass


def dumps(obj) -> str:
    return json.dumps(obj, indent=2, sort_keys=True) + "\n"


def _emit(text: str, output: str | None) -> None:
    if output:
        with open(output, "w") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def _load_json(path: str | None):
    if path in (None, "-"):
        return json.load(sys.stdin)
    with open(path) as fh:
        return json.load(fh)


def _load_plug(path: str) -> Plug:
    return Plug.from_json(_load_json(path))


def _table(rows: list[list], header: list[str]) -> str:
    cells = [header] + [[str(c) for c in r] for r in rows]
    widths = [max(len(r[i]) for r in cells) for i in range(len(header))]
    lines = ["  ".join(c.ljust(w) for c, w in zip(r, widths)).rstrip() for r in cells]
    return "\n".join(lines) + "\n"


def _int_list(values: list[str]) -> list[int]:
    out = []
    for v in values:
        out.extend(int(x) for x in v.split(",") if x.strip())
    return out


def _matrix_text(m) -> str:
    return f"[[{m[0][0]}, {m[0][1]}], [{m[1][0]}, {m[1][1]}]]  det {mat_det(m)}  trace {mat_trace(m)}\n"


# -- plug ------------------------------------------------------------------------


def cmd_plug_new(args) -> int:
    indices = _int_list(args.indices)
    if args.punctures is not None and args.punctures != len(indices):
        raise ValidationFailure(f"--punctures {args.punctures} but {len(indices)} indices given")
    fiber = Fiber(args.genus, tuple(indices))
    check = validate_fiber(fiber)
    if not check:
        raise ValidationFailure(f"invalid fiber: {check.reason}")
    p = new_plug(fiber, args.k, args.tag or "")
    _emit(dumps(p.to_json()), args.output)
    return 0


def _plug_text(p: Plug) -> str:
    out = f"plug {p.tag}  genus {p.fiber.genus}  punctures {p.fiber.punctures}  k {p.k}\n"
    rows = []
    for b in p.boundaries:
        rows.append([b.id, b.h, b.basis, b.orbit_class.pair(), b.orbit_count, b.reeb_class.pair(),
                     "-" if b.orbit_slope is None else str(b.orbit_slope), reeb_hits_once(b)])
    out += _table(rows, ["id", "h", "basis", "orbit", "count", "reeb", "slope", "once"])
    out += f"monodromy: {len(p.monodromy)} entries\n"
    if p.fiber.genus == 1 and len(p.monodromy):
        out += "H1 matrix: " + _matrix_text(mcg.word_matrix(p.monodromy))
    return out


def cmd_plug_show(args) -> int:
    p = _load_plug(args.file)
    _emit(dumps(p.to_json()) if args.json else _plug_text(p), args.output)
    return 0


# -- surgery -----------------------------------------------------------------------


def cmd_surgery_boundary(args) -> int:
    p = surgery.boundary_surgery(_load_plug(args.file), args.boundary, args.shift)
    _emit(dumps(p.to_json()), args.output)
    return 0


def cmd_surgery_interior(args) -> int:
    real = PLCurve.from_json(_load_json(args.realization)) if args.realization else None
    p = surgery.interior_surgery(_load_plug(args.file), args.curve, args.power, parse_fraction(args.level), real)
    _emit(dumps(p.to_json()), args.output)
    return 0


def _parse_entry(text: str):
    try:
        curve, power, level = text.split(":")
        return curve, int(power), parse_fraction(level)
    except ValueError as exc:
        raise argparse.ArgumentTypeError(f"entry must be curve:power:level, got {text!r}") from exc


def cmd_surgery_sequence(args) -> int:
    p, report = surgery.surgery_sequence(_load_plug(args.file), args.entry)
    if args.output:
        _emit(dumps(p.to_json()), args.output)
    sys.stdout.write(dumps(report))
    return 0


# -- words -----------------------------------------------------------------------------


def cmd_monodromy_matrix(args) -> int:
    if args.word:
        word = mcg.TwistWord.from_json(_load_json(args.word), mcg.torus_generators(args.punctures))
    else:
        word = _load_plug(args.file).monodromy
    m = mcg.word_matrix(word)
    _emit(dumps({"matrix": [list(r) for r in m], "det": mat_det(m), "trace": mat_trace(m)})
          if args.json else _matrix_text(m), args.output)
    return 0


def cmd_mcg_check_chain(args) -> int:
    report = mcg.check_chain_relation()
    if args.json:
        sys.stdout.write(dumps(report))
    else:
        rows = [[k, m, m[0][0] + m[1][1]] for k, m in report["powers"].items()]
        sys.stdout.write(_table(rows, ["k", "(t1 t2)^k", "trace"]))
        sys.stdout.write(f"order {report['order']}: {report['status']}\n")
    if report["status"] != "pass":
        raise ValidationFailure("; ".join(report["failures"]))
    return 0


def cmd_mcg_self_surgery(args) -> int:
    report = mcg.self_surgery_quadruple(args.p, args.q)
    sys.stdout.write(dumps(report))
    return 0 if report["status"] == "pass" else 1


def cmd_mcg_fuzz(args) -> int:
    """Random words evaluated in shuffled insertion orders must agree."""
    rng = random.Random(args.seed)
    gens = list(mcg.torus_generators(2).values())
    mismatches = 0
    for _ in range(args.count):
        r = rng.randint(0, 8)
        levels = sorted(rng.sample(range(1, 600), r))
        entries = [mcg.WordEntry(rng.choice(gens), rng.choice([-3, -2, -1, 1, 2, 3]), Fraction(l, 100))
                   for l in levels]
        ref = mcg.word_matrix(mcg.TwistWord(tuple(entries)))
        rng.shuffle(entries)
        w = mcg.TwistWord()
        for e in entries:
            w = w.inserted(e.generator, e.power, e.level)
        mismatches += mcg.word_matrix(w) != ref
    sys.stdout.write(dumps({"check": "level-ordering", "words": args.count, "seed": args.seed,
                            "mismatches": mismatches, "status": "pass" if not mismatches else "fail"}))
    return 0 if not mismatches else 1


# -- assembly -----------------------------------------------------------------------


def cmd_glue(args) -> int:
    model = assembly.glue(_load_plug(args.first), args.boundary1, _load_plug(args.second), args.boundary2)
    _emit(dumps(model.to_json()), args.output)
    return 0


def cmd_assemble_fig8(args) -> int:
    if args.sweep:
        if args.k is None:
            raise ValidationFailure("--sweep needs --k")
        out = [m.to_json() for m in assembly.fig8_family(args.k)]
    else:
        if args.n is None:
            raise ValidationFailure("give --n and --m, or --k --sweep")
        m = args.m if args.m is not None else 2 * args.k - args.n
        out = assembly.fig8_model(args.n, m).to_json()
    _emit(dumps(out), args.output)
    return 0


def cmd_assemble_ht(args) -> int:
    _emit(dumps(assembly.ht_model(args.k1, args.k2).to_json()), args.output)
    return 0


def cmd_classify(args) -> int:
    data = _load_json(args.file)
    items = data if isinstance(data, list) else [data]
    models = [assembly.ClosedModel.from_json(d) for d in items]
    keys = assembly.classify_keys(models)
    if args.json:
        sys.stdout.write(dumps({"classes": len(keys), "partition": sorted(keys.values()),
                                "invariants": list(keys.keys())}))
    else:
        sys.stdout.write(f"{len(keys)} class{'' if len(keys) == 1 else 'es'}\n")
        rows = [[i, members, key] for i, (key, members) in enumerate(keys.items())]
        sys.stdout.write(_table(rows, ["class", "models", "invariant"]))
    return 0


def cmd_wind(args) -> int:
    curves = [PLCurve.from_json(_load_json(path)) for path in args.files]
    profiles = [winding_profile(c) for c in curves]
    out = {"curves": [{"file": f, "tangency_values": list(pr.tangency_values), "wind": pr.wind,
                       "delta_w": pr.delta_w} for f, pr in zip(args.files, profiles)]}
    if args.min_twisting:
        out["min_twisting"] = min_twisting(curves)
    if args.json:
        sys.stdout.write(dumps(out))
    else:
        rows = [[c["file"], c["tangency_values"], c["wind"], c["delta_w"]] for c in out["curves"]]
        sys.stdout.write(_table(rows, ["curve", "tangencies", "wind", "dW"]))
        if args.min_twisting:
            sys.stdout.write(f"min twisting k = {out['min_twisting']}\n")
    return 0


# -- verification -------------------------------------------------------------------


def _verify_out(reports: list[dict], args) -> int:
    ok = all(r["status"] == "pass" for r in reports)
    if args.json:
        _emit(dumps({"status": "pass" if ok else "fail", "reports": reports}), args.output)
    else:
        rows = [[r["check"], r["status"], "-" if r.get("worst_error") is None else f"{r['worst_error']:.3e}"]
                for r in reports]
        _emit(_table(rows, ["check", "status", "worst_error"]), args.output)
    return 0 if ok else 1


def cmd_verify_forms(args) -> int:
    return _verify_out(localforms.verify_forms(args.k, args.h, args.grid), args)


def cmd_verify_collar(args) -> int:
    shift = None if args.shift is None else float(args.shift)
    report = localforms.glued_collar_check(args.n, shift, args.samples, args.seed)
    return _verify_out([report], args)


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="bicontact", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)

    def leaf(subparsers, name, func, help_=None):
        p = subparsers.add_parser(name, help=help_)
        p.set_defaults(func=func)
        p.add_argument("-o", "--output", help="write the result to this file")
        p.add_argument("--json", action="store_true", help="JSON output")
        return p

    plug = sub.add_parser("plug", help="create and inspect plug records").add_subparsers(dest="sub", required=True)
    p = leaf(plug, "new", cmd_plug_new)
    p.add_argument("--genus", type=int, required=True)
    p.add_argument("--punctures", type=int)
    p.add_argument("--indices", nargs="+", required=True)
    p.add_argument("--k", type=int, required=True)
    p.add_argument("--tag")
    p = leaf(plug, "show", cmd_plug_show)
    p.add_argument("file")

    surg = sub.add_parser("surgery", help="bicontact surgeries").add_subparsers(dest="sub", required=True)
    p = leaf(surg, "boundary", cmd_surgery_boundary)
    p.add_argument("file")
    p.add_argument("--boundary", type=int, default=0)
    p.add_argument("--shift", type=int, default=0)
    p = leaf(surg, "interior", cmd_surgery_interior)
    p.add_argument("file")
    p.add_argument("--curve", required=True)
    p.add_argument("--power", type=int, default=1)
    p.add_argument("--level", required=True, help="rational level in (0, 2pi), e.g. 3/2")
    p.add_argument("--realization", help="PL curve JSON realising the curve")
    p = leaf(surg, "sequence", cmd_surgery_sequence)
    p.add_argument("file")
    p.add_argument("--entry", type=_parse_entry, action="append", required=True, help="curve:power:level")

    mono = sub.add_parser("monodromy", help="monodromy words").add_subparsers(dest="sub", required=True)
    p = leaf(mono, "matrix", cmd_monodromy_matrix)
    p.add_argument("file", nargs="?")
    p.add_argument("--word", help="word JSON instead of a plug file")
    p.add_argument("--punctures", type=int, default=1)

    m = sub.add_parser("mcg", help="mapping class group checks").add_subparsers(dest="sub", required=True)
    leaf(m, "check-chain", cmd_mcg_check_chain)
    p = leaf(m, "self-surgery", cmd_mcg_self_surgery)
    p.add_argument("--p", type=int, required=True)
    p.add_argument("--q", type=int, required=True)
    p = leaf(m, "fuzz", cmd_mcg_fuzz)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--count", type=int, default=1000)

    p = leaf(sub, "glue", cmd_glue, "glue two plugs along compatible boundaries")
    p.add_argument("first")
    p.add_argument("second")
    p.add_argument("--boundary1", type=int, default=0)
    p.add_argument("--boundary2", type=int, default=0)

    asm = sub.add_parser("assemble", help="closed models").add_subparsers(dest="sub", required=True)
    p = leaf(asm, "fig8", cmd_assemble_fig8)
    p.add_argument("--k", type=int)
    p.add_argument("--n", type=int)
    p.add_argument("--m", type=int)
    p.add_argument("--sweep", action="store_true", help="all n in 0..2k")
    p = leaf(asm, "ht", cmd_assemble_ht)
    p.add_argument("--k1", type=int, required=True)
    p.add_argument("--k2", type=int, required=True)

    p = leaf(sub, "classify", cmd_classify, "group closed models by boundary-slope invariant")
    p.add_argument("file", nargs="?", default="-")

    p = leaf(sub, "wind", cmd_wind, "winding profiles of PL curves")
    p.add_argument("files", nargs="+")
    p.add_argument("--min-twisting", action="store_true")

    ver = sub.add_parser("verify", help="contact-form checks").add_subparsers(dest="sub", required=True)
    p = leaf(ver, "forms", cmd_verify_forms)
    p.add_argument("--k", type=int, required=True)
    p.add_argument("--h", type=int, required=True)
    p.add_argument("--grid", type=int)
    p = leaf(ver, "collar", cmd_verify_collar)
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--shift", help="override the w-shift (default pi/n)")
    p.add_argument("--samples", type=int, default=10_000)
    p.add_argument("--seed", type=int, default=0)
    return parser


_INT_LIST = re.compile(r"^-\d+(,-?\d+)+$")


def main(argv=None) -> int:
    argv = sys.argv[1:] if argv is None else list(argv)
    # argparse reads "-1,-1" as an option; split such lists into plain negatives
    argv = [t for tok in argv for t in (tok.split(",") if _INT_LIST.match(tok) else [tok])]
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except (ValidationFailure, ValueError, KeyError) as exc:
        sys.stderr.write(f"error: {exc}\n")
        return 1
    except OSError as exc:
        sys.stderr.write(f"error: {exc}\n")
        return 2


if __name__ == "__main__":
    sys.exit(main())
