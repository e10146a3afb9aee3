"""Command-line interface.

Exit codes: 0 success / valid, 1 invalid certificate or violated axiom,
2 usage error, 3 search budget exhausted.
"""

from __future__ import annotations

import argparse
import csv
import logging
import os
import sys
from pathlib import Path

from . import errors
from .arcs import denniston_arc, nonincident_from_arc, verify_maximal_arc
from .bounds import attained_by_construction, external_line_bound, is_square, stinson_bound
from .certificate import read_certificate, verify_certificate
from .gf import FieldTable, parse_field, prime_power
from .plane import Plane, build_pg2, export_plane, import_plane
from .search import SearchConfig, exact_f, greedy_heuristic

EXIT_OK, EXIT_INVALID, EXIT_USAGE, EXIT_BUDGET = 0, 1, 2, 3

_USAGE_ERRORS = (
    errors.BadParameters,
    errors.NotPrime,
    errors.OrderTooLarge,
    errors.ReducibleModulus,
    errors.OddOrderUnsupported,
    errors.NotPerfectSquare,
    errors.TooLarge,
)


class UsageError(Exception):
    pass


def load_plane(spec: str) -> Plane:
    """A plane from a file path, an order q, or a ``pg2:p=..:k=..:modulus=..`` tag."""
    if Path(spec).is_file():
        return import_plane(spec)
    if spec.isdigit():
        return pg2(int(spec))
    if spec.startswith("pg2:"):
        return build_pg2(parse_field(spec[4:]))
    raise UsageError(f"cannot interpret plane {spec!r}: not a file, an order, or a pg2: tag")


def pg2(q: int) -> Plane:
    pp = prime_power(q)
    if pp is None:
        raise UsageError(f"{q} is not a prime power; no PG(2,{q}) to build")
    return build_pg2(FieldTable(*pp))


def _describe(pl: Plane) -> str:
    return f"q={pl.q} points={pl.n} lines={pl.n} points_per_line={pl.q + 1} origin={pl.origin}"


def cmd_plane(args) -> int:
    if args.import_file:
        try:
            pl = import_plane(args.import_file)
        except errors.AxiomViolation as exc:
            print(f"not a projective plane: {exc} (witness {exc.witness})")
            return EXIT_INVALID
        print(f"imported projective plane of order {pl.q}: {_describe(pl)}")
        return EXIT_OK
    if args.q is None:
        raise UsageError("plane needs --q or --import")
    pl = pg2(args.q)
    print(f"PG(2,{pl.q}): {_describe(pl)}")
    if args.export:
        export_plane(pl, args.export)
        print(f"wrote incidence matrix to {args.export}")
    return EXIT_OK


def cmd_arc(args) -> int:
    arc = denniston_arc(args.v, args.u, max_order=args.max_order)
    pl = arc.plane
    check = verify_maximal_arc(pl, arc.Y)
    print(f"{arc.construction.describe()}")
    print(f"maximal ({arc.s},{arc.beta})-arc in PG(2,{pl.q}): "
          f"{check.external} external lines, {check.secant} secant lines")
    if arc.beta * arc.beta == pl.q:
        cert = nonincident_from_arc(arc)
        print(f"nonincident set: s={cert.s}")
        if args.cert:
            cert.write(args.cert)
            print(f"wrote certificate to {args.cert}")
    elif args.cert:
        print(f"no certificate: beta={arc.beta} is not sqrt({pl.q}), "
              f"{check.external} external lines for {arc.s} points")
        return EXIT_INVALID
    return EXIT_OK


def cmd_bound(args) -> int:
    w = csv.writer(sys.stdout, lineterminator="\n")
    w.writerow(["q", "bound", "is_square", "attained_by_construction"])
    for q in range(2, args.q_max + 1):
        w.writerow([q, stinson_bound(q), str(is_square(q)).lower(),
                    str(attained_by_construction(q)).lower()])
    return EXIT_OK


def _fmt(x) -> str:
    return str(x.numerator) if x.denominator == 1 else f"{x.numerator}/{x.denominator}"


def cmd_figure(args) -> int:
    if args.q < 2:
        raise UsageError("--q must be >= 2")
    w = csv.writer(sys.stdout, lineterminator="\n")
    w.writerow(["s", "external_line_bound", "s_line"])
    for s in range(0, args.s_max + 1):
        w.writerow([s, _fmt(external_line_bound(args.q, s)), s])
    return EXIT_OK


def _workers(args) -> int:
    env = os.environ.get("NONINC_THREADS")
    if env:
        try:
            return max(1, int(env))
        except ValueError:
            raise UsageError(f"NONINC_THREADS={env!r} is not an integer")
    return args.workers


def cmd_search(args) -> int:
    if (args.q is None) == (args.import_file is None):
        raise UsageError("search needs exactly one of --q and --import")
    pl = pg2(args.q) if args.q is not None else import_plane(args.import_file)
    status = EXIT_OK
    if args.heuristic:
        certs = [greedy_heuristic(pl, seed) for seed in range(args.seeds)]
        cert = max(certs, key=lambda c: c.s)
        print(f"f>={cert.s} heuristic ({args.seeds} seeds)")
    else:
        cfg = SearchConfig(budget=args.budget, workers=_workers(args),
                           deterministic=not args.nondeterministic)
        try:
            res = exact_f(pl, cfg)
            print(f"f={res.value} proven")
        except errors.BudgetExhausted as exc:
            res = exc.result
            print(f"f>={res.value} budget_exhausted after {res.nodes} nodes")
            status = EXIT_BUDGET
        cert = res.certificate
    if args.cert:
        cert.write(args.cert)
        print(f"wrote certificate to {args.cert}")
    return status


def cmd_verify(args) -> int:
    pl = load_plane(args.plane)
    cert = read_certificate(args.cert)
    try:
        ok = verify_certificate(pl, cert)
    except errors.PlaneMismatch as exc:
        print(f"invalid: {exc}")
        return EXIT_INVALID
    extra = f" arc: {cert.arc}" if cert.arc else ""
    print(f"{'valid' if ok else 'invalid'}: s={cert.s}{extra}")
    return EXIT_OK if ok else EXIT_INVALID


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="noninc", description="Nonincident points and lines in projective planes.")
    ap.add_argument("-v", "--verbose", action="store_true")
    sub = ap.add_subparsers(dest="command", required=True)

    p = sub.add_parser("plane", help="build, export or validate a projective plane")
    p.add_argument("--q", type=int)
    p.add_argument("--export", metavar="FILE")
    p.add_argument("--import", dest="import_file", metavar="FILE")
    p.set_defaults(func=cmd_plane)

    p = sub.add_parser("arc", help="Denniston maximal arc in PG(2, 2^v)")
    p.add_argument("--v", type=int, required=True)
    p.add_argument("--u", type=int, required=True)
    p.add_argument("--cert", metavar="FILE")
    p.add_argument("--max-order", type=int, default=64)
    p.set_defaults(func=cmd_arc)

    p = sub.add_parser("bound", help="CSV table of the bound on f")
    p.add_argument("--q-max", type=int, required=True)
    p.set_defaults(func=cmd_bound)

    p = sub.add_parser("search", help="compute or bound f for a plane")
    p.add_argument("--q", type=int)
    p.add_argument("--import", dest="import_file", metavar="FILE")
    mode = p.add_mutually_exclusive_group()
    mode.add_argument("--exact", action="store_true", help="branch and bound (default)")
    mode.add_argument("--heuristic", action="store_true")
    p.add_argument("--seeds", type=int, default=10)
    p.add_argument("--budget", type=int, default=10**8)
    p.add_argument("--workers", type=int, default=1)
    p.add_argument("--nondeterministic", action="store_true")
    p.add_argument("--cert", metavar="FILE")
    p.set_defaults(func=cmd_search)

    p = sub.add_parser("verify", help="check a certificate against a plane")
    p.add_argument("--plane", required=True, help="incidence file, order q, or pg2: tag")
    p.add_argument("--cert", required=True, metavar="FILE")
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("figure", help="CSV of the line bound against s")
    p.add_argument("--q", type=int, required=True)
    p.add_argument("--s-max", type=int, required=True)
    p.set_defaults(func=cmd_figure)
    return ap


def main(argv=None) -> int:
    ap = build_parser()
    args = ap.parse_args(argv)
    logging.basicConfig(level=logging.DEBUG if args.verbose else logging.WARNING)
    try:
        return args.func(args)
    except UsageError as exc:
        ap.error(str(exc))
    except _USAGE_ERRORS as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except errors.NonincError as exc:
        print(f"error: {type(exc).__name__}: {exc}", file=sys.stderr)
        return EXIT_INVALID


if __name__ == "__main__":
    sys.exit(main())
