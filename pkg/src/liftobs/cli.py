"""Command-line front end.

Exit codes: 0 success, 1 negative finding, 2 inconclusive, 3 input error.
Reports are JSON with sorted keys and no timestamps, so identical inputs give
byte-identical output.
"""
from __future__ import annotations

import argparse
import csv
import json
import os
import sys
from pathlib import Path
from typing import Sequence

import numpy as np

from . import __version__, annulus, catalog
from .actionspec import ActionSpec, SpecError, map_from_json, parse_action_spec
from .circle import Rotation, arithmetic_mode, translation_number
from .heisenberg import heisenberg_normal_form, word_matrix
from .homology import (HomotopyTrackedMap, NotIsotopicError, lebesgue_measure, tau_measure,
                       tau_point_estimate, torus_grid)
from .lifts import (TorsionAbelianizationError, all_obstructions, classify_extension,
                    construct_lift_assignment, search_deck_corrections)
from .maps import as_number, number_json
from .plane import commutator_deck_element
from .words import InvalidWordError, PresentationParseError, abelianization, parse_presentation, parse_word

EXIT_OK, EXIT_NEGATIVE, EXIT_INCONCLUSIVE, EXIT_INPUT = 0, 1, 2, 3


class InputError(ValueError):
    def __init__(self, message: str, position: int | None = None, where: str = ""):
        self.position, self.where = position, where
        super().__init__(message)


def _versions() -> dict:
    return {"liftobs": __version__, "numpy": np.__version__}


def _jsonable(v):
    if isinstance(v, dict):
        return {str(k): _jsonable(x) for k, x in v.items()}
    if isinstance(v, (list, tuple)):
        return [_jsonable(x) for x in v]
    if isinstance(v, (np.floating, np.integer)):
        return v.item()
    if isinstance(v, (int, float, str, bool)) or v is None:
        return v
    return number_json(v)


def _load_spec(args) -> ActionSpec:
    if getattr(args, "catalog", None):
        return parse_action_spec(args.catalog)
    if getattr(args, "spec", None):
        text = Path(args.spec).read_text() if not args.spec.lstrip().startswith("{") else args.spec
        return parse_action_spec(text)
    raise InputError("give --catalog NAME or --spec FILE|JSON")


def _deck_names(spec: ActionSpec) -> list[str]:
    return [d.label() for d in spec.deck]


# -- subcommands ------------------------------------------------------------------------

def cmd_rotnum(args) -> tuple[int, dict]:
    if args.rotation is not None:
        F = Rotation(as_number(args.rotation))
    elif args.map is not None:
        F = map_from_json(json.loads(args.map))
    else:
        spec = _load_spec(args)
        F = spec.generator_maps[args.generator]
    if F.dim != 1:
        raise InputError("rotnum needs a circle map")
    try:
        iv = translation_number(F, args.n)
    except ValueError as exc:
        raise InputError(str(exc)) from exc
    return EXIT_OK, {"map": F.to_json(), "interval": iv.to_dict(), "arithmetic_mode": iv.arithmetic_mode}


def cmd_abel(args) -> tuple[int, dict]:
    p = parse_presentation(args.presentation)
    ab = abelianization(p)
    res = ab.to_dict()
    res["presentation"] = p.to_text()
    res["arithmetic_mode"] = "exact"
    return (EXIT_OK if ab.torsion_free else EXIT_NEGATIVE), res


def cmd_heis_nf(args) -> tuple[int, dict]:
    names = [s.strip() for s in args.names.split(",")]
    w = parse_word(args.word, names)
    h = heisenberg_normal_form(w)
    oracle = word_matrix(w)
    return EXIT_OK, {"word": w.to_text(names), "normal_form": {"a": h.a, "b": h.b, "c": h.c},
                     "text": f"X^{h.a} Y^{h.b} Z^{h.c}", "matrix": oracle.tolist(),
                     "matrix_agrees": h.to_matrix() == oracle, "arithmetic_mode": "exact"}


def cmd_obstruction(args) -> tuple[int, dict]:
    spec = _load_spec(args)
    a = spec.assignment()
    names = list(a.presentation.names or [chr(97 + i) for i in range(a.presentation.generator_count)])
    dn = _deck_names(spec)
    res: dict = {"spec": spec.source or "json", "space": spec.space}
    if a.presentation.generator_count == 2 and len(a.images) == 2:
        m = commutator_deck_element(*a.images, a.deck, bound=args.bound, samples=args.samples,
                                    tol=args.tol, require_commuting=spec.space != "nil3")
        res["commutator"] = m.to_dict(dn)
        res["arithmetic_mode"] = m.arithmetic_mode
        if m.status != "deck":
            return (EXIT_NEGATIVE if m.status == "not_deck" else EXIT_INCONCLUSIVE), res
        if len(a.deck) == 1 and spec.space in ("annulus", "circle"):
            res["extension"] = str(classify_extension(m.exponents[0]))
        return (EXIT_OK if not m.word else EXIT_NEGATIVE), res
    obs = all_obstructions(a, bound=args.bound, samples=args.samples, tol=args.tol)
    res["obstructions"] = [o.to_dict(names, dn) for o in obs]
    res["arithmetic_mode"] = "exact" if a.exact else "float"
    if any(o.status == "inconclusive" for o in obs):
        return EXIT_INCONCLUSIVE, res
    return (EXIT_OK if all(o.status == "trivial" for o in obs) else EXIT_NEGATIVE), res


def cmd_lift_check(args) -> tuple[int, dict]:
    spec = _load_spec(args)
    names = list(spec.presentation.names or [chr(97 + i) for i in range(spec.presentation.generator_count)])
    dn = _deck_names(spec)
    try:
        a, report = construct_lift_assignment(spec.presentation, spec.generator_maps, spec.deck,
                                              space=spec.space, bound=args.bound,
                                              samples=args.samples, tol=args.tol)
    except TorsionAbelianizationError as exc:
        return EXIT_NEGATIVE, {"liftable": False, "refused": "torsion",
                               "torsion_witness": list(exc.coefficients),
                               "abelianization": exc.result.to_dict(), "arithmetic_mode": "exact"}
    res = report.to_dict(names, dn)
    res["arithmetic_mode"] = "exact" if a.exact else "float"
    if len(spec.deck) == 1 and spec.presentation.generator_count == 2 and len(report.obstructions) == 1:
        ob = report.obstructions[0]
        if ob.status in ("trivial", "nontrivial") and ob.match is not None:
            res["extension"] = str(classify_extension(ob.match.exponents[0]))
    if report.liftable:
        return EXIT_OK, res
    if any(o.status == "inconclusive" for o in report.obstructions):
        return EXIT_INCONCLUSIVE, res
    corr = search_deck_corrections(a, bound=args.correction_bound, samples=args.samples, tol=args.tol)
    res["correction"] = corr.to_dict()
    if corr.status == "corrected":
        res["corrected_lifts"] = [m.label() for m in corr.assignment.images]
        return EXIT_OK, res
    return EXIT_NEGATIVE, res


def cmd_homvec(args) -> tuple[int, dict]:
    spec = _load_spec(args)
    if spec.space != "torus":
        raise InputError("homvec works on torus actions")
    surface = torus_grid(args.grid)
    mu = lebesgue_measure(args.nodes)
    out = []
    code = EXIT_OK
    x = tuple(as_number(v) for v in args.x.split(","))
    for i, F in enumerate(spec.generator_maps):
        try:
            f = HomotopyTrackedMap(F, surface)
        except NotIsotopicError as exc:
            out.append({"generator": i, "error": str(exc)})
            code = EXIT_NEGATIVE
            continue
        est = tau_point_estimate(f, x, args.n)
        out.append({"generator": i, "tau_measure": tau_measure(f, mu).to_dict(),
                    "point_estimate": est.to_dict(), "arithmetic_mode": arithmetic_mode(F)})
    return code, {"generators": out, "grid": args.grid, "nodes_per_side": args.nodes,
                  "arithmetic_mode": "float"}


def cmd_sim_annulus(args) -> tuple[int, dict]:
    spec = _load_spec(args)
    if spec.space != "annulus" or len(spec.generator_maps) != 2:
        raise InputError("sim-annulus needs a two-generator annulus action")
    F, G = spec.generator_maps
    res: dict = {"settings": {"N": args.depth, "resolution": args.resolution, "tol": args.tol,
                              "accumulation_tol": args.accumulation_tol, "word_bound": args.word_bound,
                              "escape_y": args.escape_y}}
    u = None
    try:
        u = annulus.build_U(F, args.depth, args.resolution, args.tol, args.accumulation_tol)
        res["region"] = u.to_dict()
    except annulus.IntersectionError as exc:
        res["region"] = {"error": str(exc)}
    if u is not None:
        case = annulus.classify_case(F, G, u=u, tol=args.tol)
        res["classifier"] = case.to_dict()
        img = annulus.image_curve(G, annulus.x_axis(args.resolution))
        try:
            recs = annulus.crossings_with_orientation(img, u)
            res["crossings"] = [r.to_dict() for r in recs]
        except (annulus.InconclusiveRegionError, annulus.TaintedCurveError) as exc:
            res["crossings"] = {"error": str(exc)}
    try:
        tl = annulus.find_translation_like(F, G, args.word_bound, args.depth, args.escape_y,
                                           args.resolution, args.tol, args.accumulation_tol)
        res["translation_like"] = tl.to_dict(("f", "g"))
    except annulus.PreconditionError as exc:
        res["translation_like"] = {"status": "precondition_failed", "error": str(exc)}
        tl = None
    res["arithmetic_mode"] = "float"
    if args.out:
        out = Path(args.out)
        out.mkdir(parents=True, exist_ok=True)
        if u is not None:
            with open(out / "frontier.csv", "w", newline="") as fh:
                w = csv.writer(fh)
                w.writerow(["n", "vertex", "x", "y"])
                w.writerows((n, i, repr(x), repr(y)) for n, i, x, y in u.frontier_rows())
        (out / "crossings.json").write_text(json.dumps(_jsonable(res.get("crossings")), sort_keys=True, indent=2))
        (out / "classifier.json").write_text(json.dumps(
            _jsonable({"classifier": res.get("classifier"), "settings": res["settings"]}), sort_keys=True, indent=2))
    if tl is not None and tl.status == "found":
        return EXIT_OK, res
    return EXIT_NEGATIVE, res


def cmd_catalog(args) -> tuple[int, dict]:
    if args.name:
        spec = parse_action_spec(args.name)
        return EXIT_OK, spec.to_dict()
    return EXIT_OK, {"entries": sorted(catalog.CATALOG)}


# -- parser -----------------------------------------------------------------------------

def _spec_args(p: argparse.ArgumentParser) -> None:
    p.add_argument("--catalog", help="catalog entry, e.g. annulus_basic or lifted_toral(2)")
    p.add_argument("--spec", help="JSON action description, inline or as a file path")


def _check_args(p: argparse.ArgumentParser) -> None:
    p.add_argument("--bound", type=int, default=2, help="deck exponent bound")
    p.add_argument("--samples", type=int, default=32)
    p.add_argument("--tol", type=float, default=1e-9)


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="liftobs", description=__doc__.splitlines()[0])
    ap.add_argument("--out", default=os.environ.get("LIFTOBS_OUT_DIR"), help="directory for report files")
    sub = ap.add_subparsers(dest="command", required=True)

    p = sub.add_parser("rotnum", help="translation number interval of a circle lift")
    p.add_argument("--rotation", help="rotation angle, e.g. 1/3")
    p.add_argument("--map", help="circle map as JSON")
    _spec_args(p)
    p.add_argument("--generator", type=int, default=0)
    p.add_argument("-n", type=int, default=1000)
    p.set_defaults(func=cmd_rotnum)

    p = sub.add_parser("abel", help="abelianization of a presentation")
    p.add_argument("presentation")
    p.set_defaults(func=cmd_abel)

    p = sub.add_parser("heis-nf", help="Heisenberg normal form of a word")
    p.add_argument("word")
    p.add_argument("--names", default="X,Y")
    p.set_defaults(func=cmd_heis_nf)

    p = sub.add_parser("obstruction", help="deck elements of lifted relators")
    _spec_args(p)
    _check_args(p)
    p.set_defaults(func=cmd_obstruction)

    p = sub.add_parser("lift-check", help="does the action lift, possibly after deck corrections")
    _spec_args(p)
    _check_args(p)
    p.add_argument("--correction-bound", type=int, default=1)
    p.set_defaults(func=cmd_lift_check)

    p = sub.add_parser("homvec", help="mean homological translation vectors on the torus")
    _spec_args(p)
    p.add_argument("--nodes", type=int, default=100, help="quadrature nodes per side")
    p.add_argument("--grid", type=int, default=6)
    p.add_argument("--x", default="1/10,1/10", help="base point for the loop estimate")
    p.add_argument("-n", type=int, default=20)
    p.set_defaults(func=cmd_homvec)

    p = sub.add_parser("sim-annulus", help="iterated curves, regions and crossings in the annulus")
    _spec_args(p)
    p.add_argument("--depth", type=int, default=200)
    p.add_argument("--resolution", type=int, default=512)
    p.add_argument("--tol", type=float, default=annulus.DISJOINT_TOL)
    p.add_argument("--accumulation-tol", type=float, default=annulus.ACCUMULATION_TOL)
    p.add_argument("--word-bound", type=int, default=2)
    p.add_argument("--escape-y", type=float, default=10.0)
    p.set_defaults(func=cmd_sim_annulus)

    p = sub.add_parser("catalog", help="list catalog entries or show one")
    p.add_argument("name", nargs="?")
    p.set_defaults(func=cmd_catalog)
    return ap


def run_command(argv: Sequence[str] | None = None, stdout=None) -> int:
    stdout = stdout or sys.stdout
    ap = build_parser()
    try:
        args = ap.parse_args(argv)
    except SystemExit as exc:
        return EXIT_INPUT if exc.code else EXIT_OK
    inputs = {k: v for k, v in sorted(vars(args).items()) if k not in ("func", "out")}
    try:
        code, results = args.func(args)
    except (PresentationParseError, SpecError, InputError, InvalidWordError,
            json.JSONDecodeError, OSError, ValueError, KeyError, IndexError) as exc:
        err = {"error": type(exc).__name__, "message": str(exc)}
        pos = getattr(exc, "position", None)
        if pos is None and isinstance(exc, json.JSONDecodeError):
            pos = exc.pos
        if pos is not None:
            err["position"] = pos
        if getattr(exc, "where", ""):
            err["where"] = exc.where
        code, results = EXIT_INPUT, err
    report = {"command": args.command, "inputs": inputs, "results": results,
              "arithmetic_mode": results.get("arithmetic_mode") if isinstance(results, dict) else None,
              "versions": _versions(), "exit_code": code}
    text = json.dumps(_jsonable(report), sort_keys=True, indent=2)
    print(text, file=stdout)
    if args.out:
        Path(args.out).mkdir(parents=True, exist_ok=True)
        (Path(args.out) / f"{args.command}_report.json").write_text(text + "\n")
    return code


def main() -> None:
    sys.exit(run_command())


if __name__ == "__main__":
    main()
