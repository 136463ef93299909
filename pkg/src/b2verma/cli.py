"""Command-line frontend: reduce, weights, maximal and verify."""

from __future__ import annotations

import argparse
import json
import sys

from . import __version__
from .catalog import load_catalog, report, select, verify_many
from .cyclotomic import RootOfUnityConfig
from .errors import B2Error, InvalidRootOfUnity, ParseError
from .expr import eval_weight, parse
from .pbw import NegativePart
from .verma import ModuleModel

EXIT_OK, EXIT_FAIL, EXIT_CONFIG = 0, 1, 2


def _weight(src: str, args):
    s = src.strip()
    if not s.startswith("("):
        s = f"({s})"
    return eval_weight(s, {"l": args.l, "a": args.a, "b": args.b})


def cmd_reduce(args) -> int:
    A = NegativePart.of(args.l)
    x = A.reduce(parse(args.expr, args.l, {"a": args.a, "b": args.b}), divide=True)
    print(x)
    return EXIT_OK


def cmd_weights(args) -> int:
    lam = _weight(args.weight, args)
    m = ModuleModel(lam, args.l)
    for deg in m.degrees:
        print(f"{m.weight_of(deg)}\t{len(m.basis(deg))}")
    print(f"total\t{m.dim}")
    return EXIT_OK


def cmd_maximal(args) -> int:
    lam = _weight(args.weight, args)
    m = ModuleModel(lam, args.l)
    targets = [_weight(args.at, args)] if args.at else [m.weight_of(d) for d in m.degrees]
    found = 0
    for mu in targets:
        for v in m.maximal_vectors(mu).vectors():
            print(f"{mu}\t{m.element_of(v)}")
            found += 1
    if not found and args.at:
        print(f"no maximal vectors at {targets[0]}")
    return EXIT_OK


def cmd_verify(args) -> int:
    claims = select(load_catalog(args.catalog), args.claims)
    if not claims:
        print(f"no claims match {args.claims!r}", file=sys.stderr)
        return EXIT_CONFIG
    params = (args.a, args.b)
    certs = verify_many(claims, args.l, params, jobs=args.jobs, catalog=load_catalog(args.catalog))
    text = json.dumps(report(certs, args.l, params), indent=2, ensure_ascii=False)
    if args.out:
        with open(args.out, "w", encoding="utf-8") as fh:
            fh.write(text + "\n")
    else:
        print(text)
    bad = [c for c in certs if c.status != "pass"]
    for c in bad:
        print(f"{c.status}: {c.id}: {c.witness.get('reason', '')}", file=sys.stderr)
    print(f"{len(certs) - len(bad)}/{len(certs)} claims pass", file=sys.stderr)
    return EXIT_FAIL if bad else EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="b2verma", description="Baby Verma modules of type B2 at a root of unity.")
    p.add_argument("--version", action="version", version=__version__)
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--l", type=int, default=5, help="odd order of the root of unity (>= 5)")
    common.add_argument("--a", type=int, default=0)
    common.add_argument("--b", type=int, default=0)
    sub = p.add_subparsers(dest="command", required=True)

    r = sub.add_parser("reduce", parents=[common], help="print the PBW normal form of an expression")
    r.add_argument("expr")
    r.set_defaults(func=cmd_reduce)

    w = sub.add_parser("weights", parents=[common], help="weight-space dimensions of a baby Verma module")
    w.add_argument("weight", help="highest weight, e.g. '0,0' or '(l-2, 1)'")
    w.set_defaults(func=cmd_weights)

    m = sub.add_parser("maximal", parents=[common], help="list maximal vectors")
    m.add_argument("weight", help="highest weight of the module")
    m.add_argument("--at", help="only this weight")
    m.set_defaults(func=cmd_maximal)

    v = sub.add_parser("verify", parents=[common], help="verify catalog claims and write a JSON report")
    v.add_argument("--claims", default=None, help="comma-separated id globs")
    v.add_argument("--out", default=None, help="report path (default stdout)")
    v.add_argument("--jobs", type=int, default=1)
    v.add_argument("--catalog", default=None, help=argparse.SUPPRESS)
    v.set_defaults(func=cmd_verify)
    return p


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        RootOfUnityConfig(args.l)
        if getattr(args, "jobs", 1) < 1:
            raise ValueError("--jobs must be positive")
    except (InvalidRootOfUnity, ValueError) as e:
        print(f"error: {e}", file=sys.stderr)
        return EXIT_CONFIG
    try:
        return args.func(args)
    except (ParseError, OSError) as e:
        print(f"error: {e}", file=sys.stderr)
        return EXIT_CONFIG
    except B2Error as e:
        print(f"error: {type(e).__name__}: {e}", file=sys.stderr)
        return EXIT_FAIL


if __name__ == "__main__":
    sys.exit(main())
