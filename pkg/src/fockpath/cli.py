"""Command-line front end.

Subcommands: decomp (decomposition polynomial of a move), moves (list all
covered moves from a partition), paths (latticed paths / well-nested
collections of a sign sequence), oracle (canonical-basis coefficients and
the level cache), verify (the verification sweeps), render (path drawing).

Exit codes: 0 success, 1 verification failure, 2 usage or scope error.
"""

from __future__ import annotations

import argparse
import json
import os
import sys

from .closedform import (
    MoveSpec,
    admissible_moves,
    decomposition_paths,
    decomposition_polynomial,
    detect_move,
)
from .fockspace import CacheError, ERegularError, get_oracle
from .latticepath import (
    LatticedPath,
    latticed_paths,
    render_ascii,
    render_svg,
    well_nested_collections,
)
from .partitions import format_partition, parse_partition
from .signseq import SignSequence
from . import sweeps

USAGE_ERROR = 2
VERIFY_ERROR = 1


class CliError(Exception):
    def __init__(self, message: str, code: int = USAGE_ERROR):
        super().__init__(message)
        self.code = code


def _parse_positions(text: str) -> frozenset[int]:
    text = text.strip()
    if not text:
        return frozenset()
    return frozenset(int(x) for x in text.split(","))


def _cache_dir(args) -> str | None:
    if getattr(args, "cache", None):
        return args.cache
    return os.environ.get("FOCKPATH_CACHE") or None


def _sign_sequence(args) -> SignSequence:
    return SignSequence(_parse_positions(args.plus), _parse_positions(args.minus))


# -- decomp -----------------------------------------------------------------


def cmd_decomp(args) -> int:
    col = parse_partition(args.col)
    if args.row is not None:
        row = parse_partition(args.row)
        if sum(row) != sum(col):
            raise CliError(f"|{format_partition(row)}| != |{format_partition(col)}|")
        move = detect_move(col, row, args.e)
        if move is None:
            raise CliError(
                "not covered by closed formula: the diagram difference is not a "
                "single-residue move", USAGE_ERROR,
            )
    else:
        if args.r is None:
            raise CliError("need either --row or --r/--add/--remove")
        move = MoveSpec(
            col, args.e, args.r, _parse_positions(args.add or ""), _parse_positions(args.remove or "")
        )
    poly = decomposition_polynomial(move)
    collections = decomposition_paths(move)
    record = {
        "lambda": list(move.target),
        "mu": list(col),
        "e": args.e,
        "r": move.r,
        "A": sorted(move.added),
        "B": sorted(move.removed),
        "poly": poly.to_json(),
        "paths": len(collections),
    }
    if args.json:
        print(json.dumps(record, sort_keys=True))
    else:
        print(f"d[{format_partition(move.target)}, {format_partition(col)}](v) = {poly}")
        print(f"well-nested collections: {len(collections)}")
        if args.show_paths:
            for i, coll in enumerate(collections):
                print(f"-- collection {i} (norm {coll.norm})")
                for a, b, path in coll.entries:
                    label = f"window ({a},{b})"
                    if path.degenerate:
                        print(f"{label}: self-paired")
                    else:
                        print(f"{label}:")
                        drawing = render_ascii(path, overlay=True)
                        print(drawing if drawing else "(empty)")
    return 0


# -- moves --------------------------------------------------------------------


def cmd_moves(args) -> int:
    lam = parse_partition(args.lam)
    residues = [args.r] if args.r is not None else list(range(args.e))
    records = []
    for r in residues:
        for move in admissible_moves(lam, args.e, r):
            if move.is_identity:
                continue
            poly = decomposition_polynomial(move)
            records.append(
                {
                    "lambda": list(move.target),
                    "mu": list(lam),
                    "e": args.e,
                    "r": r,
                    "A": sorted(move.added),
                    "B": sorted(move.removed),
                    "poly": poly.to_json(),
                    "paths": len(decomposition_paths(move)),
                }
            )
    if args.json:
        print(json.dumps(records, sort_keys=True))
    else:
        if not records:
            print("no moves")
        for rec in records:
            target = format_partition(tuple(rec["lambda"]))
            print(
                f"r={rec['r']} add={rec['A']} remove={rec['B']} -> {target}: "
                f"{_poly_from_json(rec['poly'])}"
            )
    return 0


def _poly_from_json(data):
    from .laurent import LaurentPolynomial

    return LaurentPolynomial.from_json(data)


# -- paths --------------------------------------------------------------------


def cmd_paths(args) -> int:
    t = _sign_sequence(args)
    if args.add or args.remove:
        colls = well_nested_collections(
            t, _parse_positions(args.add or ""), _parse_positions(args.remove or "")
        )
        records = [
            {
                "norm": c.norm,
                "windows": [
                    {"opener": a, "closer": b, "flattened": sorted(map(list, p.flattened))}
                    for a, b, p in c.entries
                ],
            }
            for c in colls
        ]
        if args.json:
            print(json.dumps(records, sort_keys=True))
        else:
            print(f"{len(colls)} well-nested collections")
            for rec in records:
                print(f"norm {rec['norm']}: {rec['windows']}")
    else:
        paths = latticed_paths(t)
        records = [
            {"norm": p.norm, "flattened": sorted(map(list, p.flattened))} for p in paths
        ]
        if args.json:
            print(json.dumps(records, sort_keys=True))
        else:
            print(f"{len(paths)} latticed paths")
            for rec in records:
                print(f"norm {rec['norm']}: flattened {rec['flattened']}")
    return 0


# -- oracle --------------------------------------------------------------------


def cmd_oracle(args) -> int:
    if args.n is not None:
        directory = _cache_dir(args)
        if directory is None:
            raise CliError("--n needs a cache directory (--cache or FOCKPATH_CACHE)")
        from .fockspace import cache_roundtrip

        status = cache_roundtrip(directory, args.e, args.n)
        print(
            json.dumps(status)
            if args.json
            else f"wrote {status['entries']} entries to {status['written']}"
        )
        return 0
    oracle = get_oracle(args.e, _cache_dir(args))
    if args.mu is None:
        raise CliError("need --mu (or --n to build a cache level)")
    mu = parse_partition(args.mu)
    try:
        element = oracle.element(mu)
    except ERegularError as exc:
        raise CliError(str(exc), USAGE_ERROR) from exc
    if args.lam is not None:
        lam = parse_partition(args.lam)
        poly = element.coefficient(lam)
        if args.json:
            print(json.dumps({"lambda": list(lam), "mu": list(mu), "poly": poly.to_json()}))
        else:
            print(f"d[{format_partition(lam)}, {format_partition(mu)}](v) = {poly}")
        return 0
    if args.json:
        record = {
            "mu": list(mu),
            "terms": [
                {"lambda": list(p), "poly": c.to_json()} for p, c in element.vector.items()
            ],
        }
        print(json.dumps(record, sort_keys=True))
    else:
        for p, c in element.vector.items():
            print(f"{format_partition(p)}: {c}")
    return 0


# -- verify ---------------------------------------------------------------------


def cmd_verify(args) -> int:
    kind = args.kind
    if kind == "formula":
        budgets = _budgets(args, default=((2, 12), (3, 10), (4, 9)))
        report = sweeps.run_formula_sweep(
            sweeps.FormulaSweepConfig(budgets=budgets, cache_dir=_cache_dir(args))
        )
    elif kind == "branching":
        budgets = _budgets(args, default=((2, 12), (3, 10), (4, 9)))
        report = sweeps.run_branching_sweep(
            sweeps.BranchingSweepConfig(budgets=budgets, cache_dir=_cache_dir(args))
        )
    elif kind == "bijection":
        report = sweeps.run_bijection_sweep(
            sweeps.BijectionSweepConfig(
                max_positions=args.max_positions or 8,
                samples=args.samples if args.samples is not None else 10000,
                seed=args.seed,
            ),
            report_path=args.report,
        )
    elif kind == "construction":
        report = sweeps.run_construction_sweep(
            sweeps.ConstructionSweepConfig(max_positions=args.max_positions or 8)
        )
    elif kind == "consistency":
        e_values = tuple(args.e) if args.e else (2, 3)
        report = sweeps.run_consistency_sweep(
            sweeps.ConsistencySweepConfig(e_values=e_values, max_n=args.max_n or 10)
        )
    else:  # pragma: no cover - argparse restricts choices
        raise CliError(f"unknown verify kind {kind}")
    if args.json:
        print(json.dumps(report.to_json(), sort_keys=True))
    else:
        print(f"{report.kind}: checked {report.checked}, failures {len(report.failures)}")
        for note, value in report.notes.items():
            if note != "construction_failures":
                print(f"  {note}: {value}")
        for failure in report.failures:
            print(f"  FAIL {json.dumps(failure, sort_keys=True)}")
    return 0 if report.ok else VERIFY_ERROR


def _budgets(args, default):
    if args.e and args.max_n:
        return tuple((e, args.max_n) for e in args.e)
    if args.e:
        defaults = dict(default)
        return tuple((e, defaults.get(e, 8)) for e in args.e)
    if args.max_n:
        return tuple((e, args.max_n) for e, _ in default)
    return default


# -- render ------------------------------------------------------------------


def cmd_render(args) -> int:
    t = _sign_sequence(args)
    flattened = set()
    if args.flatten:
        for chunk in args.flatten.split(","):
            u, _, w = chunk.partition(":")
            flattened.add((int(u), int(w)))
    path = LatticedPath(t, frozenset(flattened))
    pairs = set(t.matching().pairs)
    if not flattened <= pairs:
        raise CliError(f"--flatten must name matched pairs of the window; pairs are {sorted(pairs)}")
    if args.format == "ascii":
        text = render_ascii(path, overlay=args.overlay)
    elif args.format == "svg":
        text = render_svg([path])
    else:
        raise CliError(f"unknown format {args.format}")
    if args.out:
        with open(args.out, "w", encoding="utf-8") as fh:
            fh.write(text + "\n")
        print(f"wrote {args.out}")
    else:
        print(text)
    return 0


# -- wiring -------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="fockpath",
        description="Decomposition polynomials from sign sequences and latticed paths",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("decomp", help="decomposition polynomial of a single move")
    p.add_argument("--e", type=int, required=True)
    p.add_argument("--col", required=True, help="base partition (column label)")
    p.add_argument("--row", help="target partition (row label)")
    p.add_argument("--r", type=int, help="residue of an explicit move")
    p.add_argument("--add", help="comma-separated indent columns")
    p.add_argument("--remove", help="comma-separated removable columns")
    p.add_argument("--json", action="store_true")
    p.add_argument("--show-paths", action="store_true")
    p.set_defaults(func=cmd_decomp)

    p = sub.add_parser("moves", help="all covered moves from a partition")
    p.add_argument("--e", type=int, required=True)
    p.add_argument("--lam", required=True)
    p.add_argument("--r", type=int)
    p.add_argument("--json", action="store_true")
    p.set_defaults(func=cmd_moves)

    p = sub.add_parser("paths", help="latticed paths or well-nested collections")
    p.add_argument("--plus", default="")
    p.add_argument("--minus", default="")
    p.add_argument("--add", help="added columns (openers)")
    p.add_argument("--remove", help="removed columns (closers)")
    p.add_argument("--json", action="store_true")
    p.set_defaults(func=cmd_paths)

    p = sub.add_parser("oracle", help="canonical-basis coefficients and cache")
    p.add_argument("--e", type=int, required=True)
    p.add_argument("--mu")
    p.add_argument("--lam")
    p.add_argument("--n", type=int, help="build and write one cache level")
    p.add_argument("--cache")
    p.add_argument("--json", action="store_true")
    p.set_defaults(func=cmd_oracle)

    p = sub.add_parser("verify", help="run a verification sweep")
    p.add_argument(
        "kind", choices=["formula", "branching", "bijection", "construction", "consistency"]
    )
    p.add_argument("--e", type=int, action="append")
    p.add_argument("--max-n", type=int)
    p.add_argument("--max-positions", type=int)
    p.add_argument("--samples", type=int)
    p.add_argument("--seed", type=int, default=2011)
    p.add_argument("--cache")
    p.add_argument("--report", help="write one JSON line per bijection instance")
    p.add_argument("--json", action="store_true")
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("render", help="draw a latticed path")
    p.add_argument("--plus", default="")
    p.add_argument("--minus", default="")
    p.add_argument("--flatten", help="pairs to flatten, e.g. 3:4,2:7")
    p.add_argument("--format", choices=["ascii", "svg"], default="ascii")
    p.add_argument("--out")
    p.add_argument("--overlay", action="store_true")
    p.set_defaults(func=cmd_render)

    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return USAGE_ERROR if exc.code not in (0, None) else 0
    try:
        return args.func(args)
    except CliError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return exc.code
    except (ValueError, CacheError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return USAGE_ERROR


if __name__ == "__main__":
    sys.exit(main())
