"""Command-line front end.

Exit status: 0 when the answer is "true"/verified, 1 when it is false or a
suite finds a counterexample, 2 for usage and input errors.
"""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

from . import planar, skein, smoothing, suites, tangle
from .laurent import NotDivisibleError

EXIT_TRUE, EXIT_FALSE, EXIT_USAGE = 0, 1, 2


class InputError(Exception):
    pass


def _read(path: str) -> str:
    if path == "-":
        return sys.stdin.read()
    try:
        return Path(path).read_text()
    except OSError as exc:
        raise InputError(f"{path}: {exc.strerror}") from None


def _load_json(path: str):
    text = _read(path)
    try:
        return json.loads(text)
    except json.JSONDecodeError as exc:
        raise InputError(f"{path}: line {exc.lineno}, column {exc.colno}: {exc.msg}") from None


def _load_element(path: str, cap: int | None) -> skein.SkeinElement:
    """A skein element from its JSON, or the Jones value of a tangle file."""
    text = _read(path)
    if text.lstrip().startswith("{"):
        obj = json.loads(text)
        if "terms" in obj:
            return skein.SkeinElement.from_json(obj)
    T = tangle.load_tangle(text)
    return tangle.jones(T, cap)


def _dump(obj, fmt: str, text: str) -> None:
    if fmt == "json":
        print(json.dumps(obj, sort_keys=True))
    else:
        print(text)


# -- verbs -----------------------------------------------------------------------

def cmd_jones(args) -> int:
    T = tangle.load_tangle(_read(args.file))
    if T.k == 0:
        hat, J = tangle.evaluate_link(T, args.max_crossings)
        _dump({"unnormalized": hat.to_json(), "normalized": J.to_json()}, args.format,
              f"unnormalized: {hat}\nnormalized: {J}")
        return EXIT_TRUE
    P = tangle.jones(T, args.max_crossings)
    text = P.pretty()
    if T.k == 1 and args.close:
        hat, J = tangle.evaluate_link(T, args.max_crossings)
        text += f"\nclosure unnormalized: {hat}\nclosure normalized: {J}"
    _dump(P.to_json(), args.format, text)
    return EXIT_TRUE


def cmd_check_alt(args) -> int:
    P = _load_element(args.file, args.max_crossings)
    why = skein.alternation_witness(P, strict=args.strict_minmax)
    _dump({"alternating": why is None, "witness": why}, args.format,
          "true" if why is None else f"false\n{why}")
    return EXIT_TRUE if why is None else EXIT_FALSE


def cmd_check_coherent(args) -> int:
    P = _load_element(args.file, args.max_crossings)
    why = skein.alternation_witness(P, strict=args.strict_minmax)
    w = None if why is None else (0, P, why)
    if w is None:
        w = skein.coherence_witness(P)
    if w is None:
        census = skein.closure_census(P)
        _dump({"coherent": True, "census": census}, args.format,
              "true\nclosures per depth: " + " ".join(map(str, census)))
        return EXIT_TRUE
    depth, Q, reason = w
    _dump({"coherent": False, "depth": depth, "closure": Q.to_json(), "reason": reason}, args.format,
          f"false\ndepth {depth}: {reason}\n{Q.pretty()}")
    return EXIT_FALSE


def cmd_compose(args) -> int:
    D = planar.PlanarArcDiagram.from_json(_load_json(args.diagram))
    ts = [tangle.load_tangle(_read(p)) for p in args.tangles]
    T = tangle.compose_tangles(D, ts)
    _dump(T.to_json(), args.format, tangle.format_tangle(T).rstrip())
    return EXIT_TRUE


def cmd_rotation(args) -> int:
    obj = _load_json(args.file)
    if "terms" in obj:
        P = skein.SkeinElement.from_json(obj)
        rows = [(str(s), str(smoothing.rotation_number(s))) for s, _ in P.terms]
        _dump({"rotations": [r for _, r in rows]}, args.format,
              "\n".join(f"{s}  R = {r}" for s, r in rows))
    elif "pairs" in obj:
        s = smoothing.OrientedSmoothing.from_json(obj)
        R = smoothing.rotation_number(s)
        _dump({"rotation": str(R)}, args.format, f"R = {R}")
    else:
        D = planar.PlanarArcDiagram.from_json(obj)
        i_D, w_D = planar.counts(D)
        R = planar.rotation_associated_number(D)
        kind = planar.basic_kind(D)
        _dump({"R_D": str(R), "interior_arcs": i_D, "internal_negative_regions": w_D, "basic": kind},
              args.format, f"R_D = {R}  (interior arcs {i_D}, internal negative regions {w_D}"
              + (f", basic {kind}" if kind else "") + ")")
    return EXIT_TRUE


def cmd_verify(args) -> int:
    f = suites.SUITES[args.suite]
    kwargs = {}
    if args.cases is not None and args.suite not in ("basic-constants", "catalan"):
        kwargs["cases"] = args.cases
    if args.seed is not None and "seed" in f.__code__.co_varnames:
        kwargs["seed"] = args.seed
    res = f(**kwargs)
    payload = {"suite": res.name, "cases": res.cases, "passed": res.passed, "failures": res.failures}
    text = f"{res.passed}/{res.cases} exact"
    if res.failures:
        text += "\ncounterexamples:\n" + "\n".join(json.dumps(x, sort_keys=True) for x in res.failures)
    _dump(payload, args.format, text)
    return EXIT_TRUE if res.ok else EXIT_FALSE


def cmd_enumerate(args) -> int:
    basis = smoothing.enumerate_smoothings(args.k, args.parity)
    rows = [(s, smoothing.rotation_number(s)) for s in basis]
    _dump([s.to_json() for s, _ in rows], args.format,
          "\n".join(f"{s}  R = {r}" for s, r in rows) + f"\n{len(rows)} smoothings")
    return EXIT_TRUE


# -- parser ----------------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--format", choices=("text", "json"), default="text")
    common.add_argument("--max-crossings", type=int, default=None,
                        help="state-sum cap (default: $SKEIN_MAX_CROSSINGS or 16)")
    common.add_argument("--strict-minmax", action="store_true",
                        help="also require terms on the minimal and maximal smoothings")

    ap = argparse.ArgumentParser(prog="altjones", description=__doc__.splitlines()[0])
    sub = ap.add_subparsers(dest="verb", required=True)

    p = sub.add_parser("jones", parents=[common], help="Jones value of a tangle or link file")
    p.add_argument("file")
    p.add_argument("--close", action="store_true", help="also evaluate the closure of a 1-tangle")
    p.set_defaults(func=cmd_jones)

    p = sub.add_parser("check-alt", parents=[common], help="is an element alternating")
    p.add_argument("file", help="skein element JSON or tangle file")
    p.set_defaults(func=cmd_check_alt)

    p = sub.add_parser("check-coherent", parents=[common], help="is an element coherently alternating")
    p.add_argument("file", help="skein element JSON or tangle file")
    p.set_defaults(func=cmd_check_coherent)

    p = sub.add_parser("compose", parents=[common], help="glue tangles into a planar arc diagram")
    p.add_argument("diagram", help="planar arc diagram JSON")
    p.add_argument("tangles", nargs="*")
    p.set_defaults(func=cmd_compose)

    p = sub.add_parser("rotation", parents=[common], help="rotation numbers of a smoothing, element or diagram")
    p.add_argument("file")
    p.set_defaults(func=cmd_rotation)

    p = sub.add_parser("verify", parents=[common], help="run a seeded verification suite")
    p.add_argument("suite", choices=sorted(suites.SUITES))
    p.add_argument("--cases", type=int, default=None)
    p.add_argument("--seed", type=int, default=None)
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("enumerate", parents=[common], help="list a basis of oriented smoothings")
    p.add_argument("what", choices=("smoothings",))
    p.add_argument("k", type=int)
    p.add_argument("--parity", type=int, choices=(0, 1), default=0)
    p.set_defaults(func=cmd_enumerate)
    return ap


def main(argv: list[str] | None = None) -> int:
    ap = build_parser()
    try:
        args = ap.parse_args(argv)
    except SystemExit as exc:
        return EXIT_USAGE if exc.code else EXIT_TRUE
    try:
        return args.func(args)
    except tangle.CrossingCapError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except NotDivisibleError as exc:
        print(f"falsified: {exc}", file=sys.stderr)
        return EXIT_FALSE
    except (InputError, ValueError, KeyError, TypeError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
