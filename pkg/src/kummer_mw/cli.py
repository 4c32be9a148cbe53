"""Command-line front end: ``kummer-mw <subcommand> [--q Q --b B --c C] ...``.

Exit status is 0 iff every check passes.  Invalid parameters exit with the
code of the first violated hypothesis (see ``report.EXIT_CODES``).
"""

from __future__ import annotations

import argparse
import sys

from .family import PRESETS, ParamError, scan_params, validate_params
from .report import (EXIT_CODES, Report, check_params_report, frobenius_report,
                     heights_report, rank_report, relations_report, search_report,
                     table1_report, torsion_report, verify_iso_report)
from .search import DEFAULT_CAP, SearchCapExceeded

DEFAULT_PRESET = "q7"
DEFAULT_SEED = 42


def _common() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(add_help=False)
    g = p.add_argument_group("parameters")
    g.add_argument("--q", type=int, help="prime field size, q = 1 mod 3")
    g.add_argument("--b", type=int, help="b in F_q, nonzero and not a cube")
    g.add_argument("--c", type=int, help="c in F_q, a cube and not a square")
    g.add_argument("--relaxed", action="store_true", help="allow b to be a cube")
    g.add_argument("--preset", choices=sorted(PRESETS),
                   help=f"named parameter set (default {DEFAULT_PRESET} when q, b, c are omitted)")
    o = p.add_argument_group("output")
    o.add_argument("--format", choices=("json", "csv", "text"), default="json")
    o.add_argument("--output", "-o", help="write the report to this file")
    return p


def build_parser() -> argparse.ArgumentParser:
    common = _common()
    parser = argparse.ArgumentParser(
        prog="kummer-mw",
        description="Fibre types, heights, Frobenius action and Mordell-Weil rank "
                    "for the Kummer surfaces K2 and K6n over F_q(t).")
    sub = parser.add_subparsers(dest="command", required=True)

    sub.add_parser("check-params", parents=[common], help="validate (q, b, c)")
    sub.add_parser("table1", parents=[common], help="fibre configurations of E0, E1, E2, E5")
    sub.add_parser("heights", parents=[common], help="height matrices of L1 and L2")
    sub.add_parser("frobenius", parents=[common], help="Frobenius matrices and cubic symbols")
    sub.add_parser("rank", parents=[common], help="F_q-rank and torsion of MW(K6)")
    sub.add_parser("relations", parents=[common], help="P0+P1+P2 = O, Q0+Q1+Q2 = O, torsion")
    sub.add_parser("torsion", parents=[common], help="the 3-torsion sections at infinity")

    iso = sub.add_parser("verify-iso", parents=[common],
                         help="sampled phi round trip and global minimality")
    iso.add_argument("--n", type=int, action="append",
                     help="base-change index n (repeatable; default 1, 2, 3)")
    iso.add_argument("--samples", type=int, default=1000)
    iso.add_argument("--seed", type=int, default=DEFAULT_SEED)

    srch = sub.add_parser("search", parents=[common], help="exhaustive bounded-degree section search")
    srch.add_argument("--surface", default="K2", help="K2, K6 or K6n<n> (default K2)")
    srch.add_argument("--n", type=int, help="shorthand for --surface K6n<n>")
    srch.add_argument("--max-deg", type=int, default=1)
    srch.add_argument("--rational", action="store_true",
                      help="search reduced fractions instead of polynomials")
    srch.add_argument("--cap", type=int, default=DEFAULT_CAP, help="maximum candidates examined")
    srch.add_argument("--workers", type=int, default=1)

    rep = sub.add_parser("reproduce", parents=[common], help="run every check for one parameter set")
    rep.add_argument("--samples", type=int, default=1000)
    rep.add_argument("--seed", type=int, default=DEFAULT_SEED)
    rep.add_argument("--max-deg", type=int, default=1)

    scan = sub.add_parser("scan", help="list valid (b, c) for a prime q")
    scan.add_argument("--q", type=int, required=True)
    scan.add_argument("--relaxed", action="store_true")

    sub.add_parser("presets", help="list the named parameter sets")
    return parser


def _triple(args, parser) -> tuple[int, int, int, bool]:
    given = [v is not None for v in (args.q, args.b, args.c)]
    if args.preset or not any(given):
        q, b, c, relaxed = PRESETS[args.preset or DEFAULT_PRESET]
        return q, b, c, relaxed or args.relaxed
    if not all(given):
        parser.error("give all of --q, --b, --c (or --preset)")
    return args.q, args.b, args.c, args.relaxed


def _emit(text: str, path: str | None) -> None:
    if path:
        with open(path, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def run(args, parser: argparse.ArgumentParser | None = None) -> Report | None:
    """Build the report for parsed arguments; None for listing commands."""
    if args.command == "scan":
        for q, b, c in scan_params(args.q, args.relaxed):
            print(f"{q} {b} {c}")
        return None
    if args.command == "presets":
        for name, (q, b, c, relaxed) in sorted(PRESETS.items()):
            print(f"{name}: q={q} b={b} c={c}" + (" relaxed" if relaxed else ""))
        return None

    q, b, c, relaxed = _triple(args, parser or build_parser())
    if args.command == "check-params":
        return check_params_report(q, b, c, relaxed)
    params = validate_params(q, b, c, relaxed)
    if args.command == "table1":
        return table1_report(params)
    if args.command == "heights":
        return heights_report(params)
    if args.command == "frobenius":
        return frobenius_report(params)
    if args.command == "rank":
        return rank_report(params)
    if args.command == "relations":
        return relations_report(params)
    if args.command == "torsion":
        return torsion_report(params)
    if args.command == "verify-iso":
        return verify_iso_report(params, tuple(args.n or (1, 2, 3)), args.samples, args.seed)
    if args.command == "search":
        surface = f"K6n{args.n}" if args.n else args.surface
        return search_report(params, surface, args.max_deg, args.rational, args.cap, args.workers)
    if args.command == "reproduce":
        full = Report("reproduce", dict(params.config(), samples=args.samples, seed=args.seed,
                                        max_deg=args.max_deg))
        parts = [table1_report(params), heights_report(params), frobenius_report(params),
                 rank_report(params), relations_report(params),
                 verify_iso_report(params, (1, 2, 3), args.samples, args.seed),
                 search_report(params, "K2", args.max_deg)]
        for part in parts:
            full.extend(part)
        return full
    raise SystemExit(f"unknown command {args.command}")


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        report = run(args, parser)
    except ParamError as err:
        print(f"invalid parameters [{err.code}]: {err}", file=sys.stderr)
        return EXIT_CODES[err.code]
    except SearchCapExceeded as err:
        print(f"refused: {err}", file=sys.stderr)
        return EXIT_CODES["search-cap"]
    if report is None:
        return 0
    _emit(report.render(args.format), args.output)
    return report.status


if __name__ == "__main__":
    sys.exit(main())
