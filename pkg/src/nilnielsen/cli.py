"""Command-line front end.

    nilnielsen analyze -i map.json [--format json]
    nilnielsen validate -i map.json [--samples N --seed S]
    nilnielsen fixed-points -i torus_map.json [--skip-singular]
    nilnielsen oracle -i setup_or_endomorphism.json [--box B]

Exit status: 0 success, 1 validation or semantic failure, 2 malformed input.
"""
from __future__ import annotations

import argparse
import json
import sys
from typing import Any, List

from . import serialize
from .endomorphism import validate_homomorphism
from .errors import FiltrationError, InputError, SigmaError
from .group import check_group_axioms
from .nvalued import analyze, validate_map
from .report import CheckReport
from .torus import InfiniteFixedSet, brute_force_reidemeister_z_k, enumerate_fixed_points
from .twisted import (
    TwistedSetup, is_infinite, oracle_abelian_classes, oracle_nilpotent_classes,
    reidemeister_abelian, reidemeister_full, reidemeister_product,
)

EXIT_OK, EXIT_FAILED, EXIT_MALFORMED = 0, 1, 2


class _Failure(Exception):
    """Semantic failure carrying a JSON-able report."""

    def __init__(self, payload):
        super().__init__(payload.get("error", "failure"))
        self.payload = payload


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="nilnielsen",
        description="Reidemeister and Nielsen numbers of affine n-valued maps on nilmanifolds.")
    sub = parser.add_subparsers(dest="command", required=True)

    common = argparse.ArgumentParser(add_help=False)
    source = common.add_mutually_exclusive_group(required=True)
    source.add_argument("-i", "--input", help="path to a JSON description")
    source.add_argument("--example", help="name of a bundled example (see --list-examples)")
    common.add_argument("--format", choices=("text", "json"), default="text")
    common.add_argument("--samples", type=int, default=200, help="samples per sampled check")
    common.add_argument("--seed", type=int, default=42)
    common.add_argument("--box", type=int, default=5, help="largest box bound for the nilpotent oracle")

    sub.add_parser("validate", parents=[common], help="run group, homomorphism, disjointness and sigma checks")
    sub.add_parser("analyze", parents=[common], help="Reidemeister and Nielsen numbers with components")
    fp = sub.add_parser("fixed-points", parents=[common], help="enumerate fixed points of a torus map")
    fp.add_argument("--skip-singular", action="store_true", help="ignore lifts with det(I - M) = 0")
    sub.add_parser("oracle", parents=[common], help="brute-force twisted conjugacy class counts")
    sub.add_parser("list-examples", help="list bundled example names")
    return parser


# --------------------------------------------------------------------------
# commands

def _load(args) -> Any:
    if args.example:
        return serialize.bundled_example(args.example)
    try:
        return serialize.load_path(args.input)
    except OSError as exc:
        raise InputError(f"cannot read {args.input}: {exc.strerror}") from exc


def _sigma_failure(exc: SigmaError) -> _Failure:
    return _Failure({"error": exc.kind, "message": str(exc),
                     "generator": str(exc.generator),
                     "lift": None if exc.lift is None else exc.lift + 1})


def cmd_validate(data, args):
    reports: List[CheckReport] = []
    if not isinstance(data, dict) or "group" not in data:
        raise InputError("validate expects an object with a 'group' key")
    group = serialize.presentation_from_json(data["group"])
    reports.append(check_group_axioms(group, args.samples, args.seed))
    if "lifts" in data:
        m = serialize.map_from_json(data)
        reports += validate_map(m, args.samples, args.seed)
    elif "endomorphism" in data:
        phi = serialize.endomorphism_from_json(group, data["endomorphism"])
        reports.append(validate_homomorphism(phi, args.samples, args.seed))
    payload = {"passed": all(reports), "checks": [r.to_json() for r in reports]}
    return payload, (EXIT_OK if payload["passed"] else EXIT_FAILED)


def _setup_payload(setup: TwistedSetup, index):
    layers = [{"layer": n + 1, "R": str(reidemeister_abelian(d))} for n, d in enumerate(setup.layers)]
    payload = {"reidemeister": str(reidemeister_product(setup)), "infinite": is_infinite(setup),
               "layers": layers}
    if index is not None:
        try:
            payload["reidemeister_full"] = str(reidemeister_full(index, setup))
        except ValueError as exc:
            raise _Failure({"error": "index inconsistency", "message": str(exc)}) from exc
    return payload


def cmd_analyze(data, args):
    if isinstance(data, dict) and "layers" in data:
        setup, index = serialize.setup_from_json(data)
        return _setup_payload(setup, index), EXIT_OK
    m = serialize.map_from_json(data)
    try:
        report = analyze(m)
    except SigmaError as exc:
        raise _sigma_failure(exc) from exc
    return serialize.map_report_to_json(report), EXIT_OK


def cmd_fixed_points(data, args):
    m = serialize.map_from_json(data)
    try:
        points = enumerate_fixed_points(m, skip_singular=args.skip_singular)
    except SigmaError as exc:
        raise _sigma_failure(exc) from exc
    except InfiniteFixedSet as exc:
        raise _Failure({"error": "infinite fixed set", "message": str(exc), "lift": exc.lift + 1}) from exc
    except ValueError as exc:
        raise _Failure({"error": "unsupported", "message": str(exc)}) from exc
    return {"count": len(points), "points": [serialize.fixed_point_to_json(p) for p in points]}, EXIT_OK


def cmd_oracle(data, args):
    if isinstance(data, dict) and "layers" in data:
        setup, _ = serialize.setup_from_json(data)
        layers, agree = [], True
        for n, d in enumerate(setup.layers):
            formula = reidemeister_abelian(d)
            entry = {"layer": n + 1, "formula": str(formula)}
            if formula.is_finite:
                try:
                    entry["union_find"] = oracle_abelian_classes(d)
                    entry["residues"] = brute_force_reidemeister_z_k(d.B, d.M)
                except ValueError as exc:
                    raise _Failure({"error": "oracle guard", "message": str(exc)}) from exc
                entry["agree"] = entry["union_find"] == entry["residues"] == formula
                agree = agree and entry["agree"]
            layers.append(entry)
        payload = {"oracle": "abelian", "layers": layers, "agree": agree}
        return payload, (EXIT_OK if agree else EXIT_FAILED)

    if isinstance(data, dict) and "lifts" in data:
        m = serialize.map_from_json(data)
        if m.n != 1:
            raise InputError("the nilpotent oracle takes a single endomorphism (n = 1 map)")
        group, phi = m.group, m.lifts[0].endomorphism
    elif isinstance(data, dict) and "endomorphism" in data:
        group = serialize.presentation_from_json(serialize._get(data, "group", "input"))
        phi = serialize.endomorphism_from_json(group, data["endomorphism"])
    else:
        raise InputError("oracle expects a twisted setup ('layers') or an endomorphism")
    try:
        census = oracle_nilpotent_classes(phi, args.box, min_bound=min(3, args.box))
    except ValueError as exc:
        raise _Failure({"error": "oracle guard", "message": str(exc)}) from exc
    formula = reidemeister_product(TwistedSetup.from_endomorphism(phi))
    counts = [census[b] for b in sorted(census)]
    stable = len(counts) >= 3 and len(set(counts[-3:])) == 1
    payload = {"oracle": "nilpotent", "census": {str(b): c for b, c in sorted(census.items())},
               "formula": str(formula), "stabilized": stable,
               "agree": stable and formula == counts[-1]}
    return payload, EXIT_OK if payload["agree"] or not stable else EXIT_FAILED


COMMANDS = {
    "validate": cmd_validate,
    "analyze": cmd_analyze,
    "fixed-points": cmd_fixed_points,
    "oracle": cmd_oracle,
}


# --------------------------------------------------------------------------
# output

def _render_text(command, payload) -> str:
    if "error" in payload:
        lines = [f"error: {payload['error']}", f"  {payload.get('message', '')}"]
        lines += [f"  {k}: {v}" for k, v in payload.items() if k not in ("error", "message")]
        return "\n".join(lines)
    if command == "analyze" and "components" in payload:
        lines = [f"R(f) = {payload['reidemeister']}", f"N(f) = {payload['nielsen']}", "components:"]
        for c in payload["components"]:
            orbit = ", ".join(map(str, c["orbit"]))
            sign = f"{c['index_sign']:+d}" if c["index_sign"] else "0"
            lines.append(f"  orbit {{{orbit}}}: det(I - phi_*) = {c['det']}, R = {c['R']}, "
                         f"N = {c['N']}, index sign = {sign}")
        return "\n".join(lines)
    if command == "analyze":
        lines = [f"R(phi) = {payload['reidemeister']}"]
        lines += [f"  layer {d['layer']}: R = {d['R']}" for d in payload["layers"]]
        if "reidemeister_full" in payload:
            lines.append(f"[N:H] * |det(I - M)|_inf = {payload['reidemeister_full']}")
        return "\n".join(lines)
    if command == "oracle" and payload["oracle"] == "abelian":
        lines = ["formula and oracles agree" if payload["agree"] else "formula and oracles DISAGREE"]
        for d in payload["layers"]:
            line = f"  layer {d['layer']}: formula {d['formula']}"
            if "union_find" in d:
                line += f", union-find {d['union_find']}, residues {d['residues']}"
            lines.append(line)
        return "\n".join(lines)
    if command == "oracle":
        lines = [f"closed form: {payload['formula']}", "box census:"]
        lines += [f"  bound {b}: {c} classes" for b, c in payload["census"].items()]
        if not payload["stabilized"]:
            lines.append("census has not stabilized over three bounds")
        else:
            lines.append("stabilized, agrees with closed form" if payload["agree"]
                         else "stabilized, DISAGREES with closed form")
        return "\n".join(lines)
    if command == "validate":
        lines = ["all checks passed" if payload["passed"] else "validation FAILED"]
        for c in payload["checks"]:
            status = "ok  " if c["passed"] else "FAIL"
            line = f"  [{status}] {c['check']} ({c['strength']})"
            if not c["passed"]:
                line += f": {c['failure']} " + " ".join(f"{k}={v}" for k, v in c["witness"].items())
            lines.append(line)
        return "\n".join(lines)
    if command == "fixed-points":
        lines = [f"{payload['count']} fixed points"]
        for p in payload["points"]:
            lines.append(f"  ({', '.join(p['point'])})  lift {p['lift']}  z = {tuple(p['witness'])}")
        return "\n".join(lines)
    return "\n".join(f"{k}: {v}" for k, v in payload.items())


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    if args.command == "list-examples":
        print("\n".join(serialize.bundled_example_names()))
        return EXIT_OK
    fmt = args.format
    try:
        data = _load(args)
        payload, status = COMMANDS[args.command](data, args)
    except InputError as exc:
        payload, status = {"error": "malformed input", "message": str(exc)}, EXIT_MALFORMED
    except FiltrationError as exc:
        payload = {"error": "filtration violation", "message": str(exc),
                   "basis": [exc.basis[0] + 1, exc.basis[1] + 1]}
        status = EXIT_FAILED
    except _Failure as exc:
        payload, status = exc.payload, EXIT_FAILED
    out = json.dumps(payload, indent=2) if fmt == "json" else _render_text(args.command, payload)
    print(out, file=sys.stdout if status == EXIT_OK or fmt == "json" else sys.stderr)
    return status


if __name__ == "__main__":
    sys.exit(main())
