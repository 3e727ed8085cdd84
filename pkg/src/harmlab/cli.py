"""``harmlab`` command line.

Exit codes: 0 all checks passed, 1 some check failed, 2 usage or input error.
"""
from __future__ import annotations

import argparse
import datetime
import json
import logging
import sys

from . import kernels
from .catalog import catalog_description, catalog_lookup, catalog_names
from .errors import HarmlabError
from .expr import Expr, pretty_print
from .family import FamilyParams, family_member
from .grid import GridSpec
from .harmonic import classify_type, is_sense_preserving
from .report import CheckReport
from .series import PowerSeries, series_from_expr
from .suite import (
    SuiteConfig,
    emit_grid_csv,
    parse_complex,
    parse_map_spec,
    reconstruct_command,
    run_check_suite,
    seed_from_env,
)


def _add_grid_args(p):
    p.add_argument("--rmax", type=float, default=0.7)
    p.add_argument("--nr", type=int, default=21)
    p.add_argument("--na", type=int, default=48)


def _map_arg(p, required=True):
    g = p.add_mutually_exclusive_group(required=required)
    g.add_argument("--map", help='"<h-expr>;<g-expr>" or a catalog name')
    g.add_argument("--catalog", help="catalog entry name")


def build_parser():
    parser = argparse.ArgumentParser(prog="harmlab", description=__doc__.splitlines()[0])
    parser.add_argument("-v", "--verbose", action="store_true")
    sub = parser.add_subparsers(dest="command", required=True)

    sub.add_parser("catalog", help="list built-in maps")

    p = sub.add_parser("check", help="run the verification suite on a map")
    _map_arg(p)
    _add_grid_args(p)
    p.add_argument("--step", type=float, default=1e-3)
    p.add_argument("--seed", type=int, default=None)
    p.add_argument("--params", type=int, default=20)
    p.add_argument("--tol-analytic", type=float, default=1e-10)
    p.add_argument("--tol-family", type=float, default=1e-11)
    p.add_argument("--tol-fd", type=float, default=1e-4)
    p.add_argument("--tol-q", type=float, default=1e-9)
    p.add_argument("--out", help="write the JSON report here")

    p = sub.add_parser("classify", help="print Type1 or Type2")
    _map_arg(p)
    _add_grid_args(p)

    p = sub.add_parser("family", help="print a member of the equal-Jacobian family")
    _map_arg(p)
    p.add_argument("--alpha", type=float, default=0.0)
    p.add_argument("--beta", type=float, default=0.0)
    p.add_argument("--z0", default="0")
    p.add_argument("--C", dest="C", default="0")
    p.add_argument("--emit", choices=["expr", "series"], default="expr")
    p.add_argument("--order", type=int, default=64)

    p = sub.add_parser("reconstruct", help="rebuild the dilatation from Q and fit the automorphism")
    _map_arg(p)
    _add_grid_args(p)
    p.add_argument("--blackbox", action="store_true", help="also estimate Q from Jacobian samples")
    p.add_argument("--inner-step", type=float, default=1e-3)
    p.add_argument("--outer-step", type=float, default=1e-2)
    p.add_argument("--order", type=int, default=64)
    p.add_argument("--tol-blackbox", type=float, default=2e-2)
    p.add_argument("--out")

    p = sub.add_parser("grid", help="export grid samples as CSV")
    _map_arg(p)
    _add_grid_args(p)
    p.add_argument("--out", required=True)
    return parser


def _spec(args):
    return args.map if args.map is not None else args.catalog


def _timestamp():
    return datetime.datetime.now(datetime.timezone.utc).isoformat(timespec="seconds")


def _emit_report(report: CheckReport, out):
    text = report.to_json(_timestamp())
    if out:
        with open(out, "w") as fh:
            fh.write(text + "\n")
        for line in report.summary_lines():
            print(line)
        print(("PASS" if report.passed else "FAIL") + f"  {report.suite_name}")
    else:
        print(text)
    return 0 if report.passed else 1


def _fn_payload(fn, emit, order):
    if emit == "expr" and isinstance(fn, Expr):
        return pretty_print(fn)
    s = fn if isinstance(fn, PowerSeries) else series_from_expr(fn, order)
    return [[c.real, c.imag] for c in s.with_order(order).coeffs]


def cmd_catalog(args):
    for name in catalog_names():
        h, g = catalog_lookup(name)
        g_text = pretty_print(g) if isinstance(g, Expr) else "<series>"
        print(f"{name:14s} h = {pretty_print(h):12s} g = {g_text:24s} {catalog_description(name)}")
    return 0


def cmd_check(args):
    seed = args.seed if args.seed is not None else seed_from_env()
    cfg = SuiteConfig(_spec(args), args.rmax, args.nr, args.na, args.step, seed, args.params,
                      tol_analytic=args.tol_analytic, tol_family=args.tol_family,
                      tol_fd=args.tol_fd, tol_q=args.tol_q)
    return _emit_report(run_check_suite(cfg), args.out)


def cmd_classify(args):
    f = parse_map_spec(_spec(args))
    grid = GridSpec(args.rmax, args.nr, args.na)
    gate = is_sense_preserving(f, grid)
    if not gate.passed:
        print("error: map is not sense-preserving on the grid", file=sys.stderr)
        return 1
    print(classify_type(f, grid))
    return 0


def cmd_family(args):
    f = parse_map_spec(_spec(args))
    params = FamilyParams(args.alpha, args.beta, parse_complex(args.z0), parse_complex(args.C))
    F = family_member(f, params)
    payload = {
        "params": params.as_dict(),
        "h": _fn_payload(F.h, args.emit, args.order),
        "g": _fn_payload(F.g, args.emit, args.order),
        "c": [F.c.real, F.c.imag],
    }
    print(json.dumps(payload, indent=2))
    return 0


def cmd_reconstruct(args):
    cfg = SuiteConfig(_spec(args), args.rmax, args.nr, args.na, inner_step=args.inner_step,
                      outer_step=args.outer_step, series_order=args.order,
                      tol_blackbox=args.tol_blackbox, blackbox=args.blackbox)
    return _emit_report(reconstruct_command(cfg), args.out)


def cmd_grid(args):
    f = parse_map_spec(_spec(args))
    n = emit_grid_csv(f, GridSpec(args.rmax, args.nr, args.na), args.out)
    print(f"wrote {n} rows to {args.out}")
    return 0


COMMANDS = {
    "catalog": cmd_catalog,
    "check": cmd_check,
    "classify": cmd_classify,
    "family": cmd_family,
    "reconstruct": cmd_reconstruct,
    "grid": cmd_grid,
}


def main(argv=None):
    args = build_parser().parse_args(argv)
    logging.basicConfig(level=logging.DEBUG if args.verbose else logging.WARNING,
                        format="%(levelname)s %(name)s: %(message)s")
    logging.getLogger(__name__).debug("kernel backend: %s", kernels.BACKEND)
    try:
        return COMMANDS[args.command](args)
    except HarmlabError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
