"""matrigid command line.

Usage:
    matrigid analyze FILE [--tol T] [--json | --text] [--out PATH]
    matrigid sparsity FILE --k K --l L
    matrigid construct {k6e,k7h,km} [--epsilon E] [--delta D] [--m M] [--space cyl|hcyl] [--seed S] [--out PATH]
    matrigid colour FILE

Exit codes for analyze: 0 rigid, 1 flexible, 2 not well-positioned or
degenerate, 3 input error. For sparsity: 0 tight, 1 sparse but not tight,
2 not sparse, 3 input error.
"""

import argparse
import json
import sys

from . import __version__
from .config import ToleranceConfig
from .constructions import construct_k6_minus_e, construct_k7_hyper, construct_km
from .exceptions import (
    ConstructionError,
    DegenerateFrameworkError,
    FileFormatError,
    NotAdmissibleError,
    SparsityRangeError,
)
from .fileformat import dumps, framework_to_dict, load_framework, load_graph, report_document
from .product import ProductNormSpace, colour_edges, product_analyze
from .rigidity import Verdict, analyze
from .sparsity import pebble_game

EXIT_OK, EXIT_NO, EXIT_DEGENERATE, EXIT_INPUT = 0, 1, 2, 3


def _err(msg):
    print(f"matrigid: {msg}", file=sys.stderr)


def _tolerances(args, file_tol=None) -> ToleranceConfig:
    # defaults < file < environment < command line
    tol = ToleranceConfig().replace(**(file_tol or {}))
    tol = ToleranceConfig.from_env(tol)
    return tol.replace(rank_rel_tol=args.tol, gap_tol=args.gap_tol, colour_tol=args.colour_tol)


def _emit(text, out):
    if out:
        with open(out, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def _text_report(doc):
    lines = [f"verdict: {doc['verdict']}"]
    for key in ("well_positioned", "full", "rank", "flex_dim", "trivial_dim", "motion_dim"):
        lines.append(f"{key}: {doc[key]}")
    if doc["offending_edges"]:
        lines.append("offending edges: " + ", ".join(f"{u}-{v}" for u, v in doc["offending_edges"]))
    mx = doc.get("maxwell")
    if mx:
        note = "" if mx["applicable"] else " (not applicable: placement not full)"
        lines.append(f"maxwell: |E| = {mx['E']}, k|V| - l = {mx['kV_minus_l']}{note}")
    for f in doc.get("factors", []):
        lines.append(f"factor {f['colour']} ({f['factor']['norm']}, dim {f['factor']['dim']}): "
                     f"{len(f['edges'])} edges, rank {f['rank']}, {f['verdict']}")
    tol = doc["tolerances"]
    lines.append("tolerances: " + ", ".join(f"{k}={v!r}" for k, v in tol.items()))
    return "\n".join(lines) + "\n"


def cmd_analyze(args):
    try:
        ff = load_framework(args.path)
        tol = _tolerances(args, ff.tolerances)
        fw = ff.framework
        report = product_analyze(fw, tol) if isinstance(fw.space, ProductNormSpace) else analyze(fw, tol)
    except DegenerateFrameworkError as exc:
        _err(str(exc))
        return EXIT_DEGENERATE
    except (FileFormatError, NotAdmissibleError, OSError, ValueError) as exc:
        _err(str(exc))
        return EXIT_INPUT
    doc = report_document(report, tol)
    _emit(dumps(doc) if args.format == "json" else _text_report(doc), args.out)
    if report.verdict is Verdict.NOT_WELL_POSITIONED:
        return EXIT_DEGENERATE
    return EXIT_OK if report.rigid else EXIT_NO


def cmd_sparsity(args):
    try:
        graph = load_graph(args.path)
        verdict = pebble_game(graph, args.k, args.l)
    except (FileFormatError, SparsityRangeError, OSError, ValueError) as exc:
        _err(str(exc))
        return EXIT_INPUT
    print(json.dumps(verdict.to_dict(), indent=2))
    if not verdict.sparse:
        return EXIT_DEGENERATE
    return EXIT_OK if verdict.tight else EXIT_NO


def _pick(value, default):
    return default if value is None else value


def cmd_construct(args):
    tol = _tolerances(args)
    try:
        if args.kind == "k6e":
            c = construct_k6_minus_e(_pick(args.epsilon, 0.25), _pick(args.delta, 0.25), tol=tol)
        elif args.kind == "k7h":
            c = construct_k7_hyper(_pick(args.epsilon, 0.4), _pick(args.delta, 1.1), seed=args.seed, tol=tol)
        else:
            if args.m is None:
                raise ConstructionError("km needs --m")
            c = construct_km(args.m, args.space, seed=args.seed, tol=tol)
    except ConstructionError as exc:
        _err(str(exc))
        return EXIT_INPUT
    meta = {"construction": args.kind, "params": c.params, "version": __version__}
    doc = framework_to_dict(c.framework, tolerances=tol.as_dict(), certificate=c.certificate, meta=meta)
    _emit(dumps(doc), args.out)
    return EXIT_OK


def cmd_colour(args):
    try:
        ff = load_framework(args.path)
        tol = _tolerances(args, ff.tolerances)
    except DegenerateFrameworkError as exc:
        _err(str(exc))
        return EXIT_DEGENERATE
    except (FileFormatError, OSError, ValueError) as exc:
        _err(str(exc))
        return EXIT_INPUT
    if not isinstance(ff.framework.space, ProductNormSpace):
        _err("colouring needs a product-norm space")
        return EXIT_INPUT
    report = colour_edges(ff.framework, tol)
    for j, cls in enumerate(report.classes, start=1):
        print(f"E_{j} ({len(cls)}): " + " ".join(f"{u}-{v}" for u, v in cls))
    if report.degenerate:
        print("degenerate: " + " ".join(f"{u}-{v}" for u, v in report.degenerate))
        return EXIT_DEGENERATE
    return EXIT_OK


def _add_tol_flags(p):
    p.add_argument("--tol", type=float, default=None, help="relative rank tolerance (overrides MATRIGID_TOL)")
    p.add_argument("--gap-tol", type=float, default=None, help="relative singular-value gap for smoothness")
    p.add_argument("--colour-tol", type=float, default=None, help="absolute slack when colouring edges")


def build_parser():
    parser = argparse.ArgumentParser(prog="matrigid", description="Rigidity of frameworks in normed matrix and product spaces")
    parser.add_argument("--version", action="version", version=f"matrigid {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("analyze", help="rank, flexes and verdict for a framework file")
    p.add_argument("path")
    _add_tol_flags(p)
    fmt = p.add_mutually_exclusive_group()
    fmt.add_argument("--json", dest="format", action="store_const", const="json")
    fmt.add_argument("--text", dest="format", action="store_const", const="text")
    p.set_defaults(format="json")
    p.add_argument("--out", default=None)
    p.set_defaults(func=cmd_analyze)

    p = sub.add_parser("sparsity", help="(k, l) pebble game on a graph file")
    p.add_argument("path")
    p.add_argument("--k", type=int, required=True)
    p.add_argument("--l", type=int, required=True)
    p.set_defaults(func=cmd_sparsity)

    p = sub.add_parser("construct", help="write a rigid construction as a framework file")
    p.add_argument("kind", choices=["k6e", "k7h", "km"])
    p.add_argument("--epsilon", type=float, default=None)
    p.add_argument("--delta", type=float, default=None)
    p.add_argument("--m", type=int, default=None)
    p.add_argument("--space", choices=["cyl", "hcyl"], default="cyl")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--out", default=None)
    _add_tol_flags(p)
    p.set_defaults(func=cmd_construct)

    p = sub.add_parser("colour", help="edge colouring of a product-space framework")
    p.add_argument("path")
    _add_tol_flags(p)
    p.set_defaults(func=cmd_colour)
    return parser


def main(argv=None):
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        # argparse uses 2 for usage errors; keep 2 for geometric failures
        return EXIT_INPUT if exc.code else EXIT_OK
    try:
        return args.func(args)
    except ValueError as exc:
        # e.g. a malformed MATRIGID_TOL
        _err(str(exc))
        return EXIT_INPUT


if __name__ == "__main__":
    sys.exit(main())
