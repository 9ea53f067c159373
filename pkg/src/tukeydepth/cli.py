"""Command-line front-end.

``tukeydepth compute`` reads a delimited text file (one point per row,
comma or whitespace separated, ``#`` comments and blank lines ignored,
dimension inferred from the first row) and prints the depth of a query
point.  ``tukeydepth bench`` runs a timing grid and emits CSV.

Exit codes: 0 on success, 2 for input that cannot be parsed (messages name
the offending line and column), 3 for dimension or parameter mismatches.
"""

from __future__ import annotations

import argparse
import json
import sys

import numpy as np

from .algorithms import AUTO, COMB, COMB2, GENERIC, REC, AlgorithmOptions, halfspace_depth
from .bench import BenchPlan, CSV_HEADER, format_record, run_bench
from .core import DepthError, DimensionMismatch, InvalidK, ToleranceParams
from .datagen import GRID, NORMAL

EXIT_OK = 0
EXIT_PARSE = 2
EXIT_DIMENSION = 3


class CliParseError(Exception):
    """Input that could not be parsed; carries a user-facing message."""


def read_points_file(path: str) -> np.ndarray:
    try:
        with open(path, "r", encoding="utf-8") as fh:
            lines = fh.readlines()
    except OSError as exc:
        raise CliParseError(f"cannot read {path}: {exc.strerror}") from exc
    rows: list[list[float]] = []
    width = None
    for lineno, raw in enumerate(lines, start=1):
        text = raw.split("#", 1)[0].strip()
        if not text:
            continue
        tokens = [t for t in text.replace(",", " ").split() if t]
        values: list[float] = []
        for col, token in enumerate(tokens, start=1):
            try:
                values.append(float(token))
            except ValueError:
                raise CliParseError(
                    f"{path}: line {lineno}, column {col}: "
                    f"not a number: {token!r}"
                ) from None
        if width is None:
            width = len(values)
        elif len(values) != width:
            raise CliParseError(
                f"{path}: line {lineno}: expected {width} coordinates, "
                f"got {len(values)}"
            )
        rows.append(values)
    if not rows:
        raise CliParseError(f"{path}: no data rows")
    return np.array(rows, dtype=np.float64)


def parse_vector(text: str, what: str) -> np.ndarray:
    tokens = [t for t in text.replace(",", " ").split() if t]
    try:
        return np.array([float(t) for t in tokens], dtype=np.float64)
    except ValueError:
        raise CliParseError(f"cannot parse {what}: {text!r}") from None


def parse_algorithm(text: str) -> tuple[str, int | None]:
    if text in (REC, COMB2, COMB, AUTO):
        return text, None
    if text.startswith("k="):
        try:
            return GENERIC, int(text[2:])
        except ValueError:
            pass
    raise CliParseError(
        f"unknown algorithm {text!r} (expected rec, comb2, comb, auto, or k=<int>)"
    )


def parse_workers(text: str):
    if text == "auto":
        return "auto"
    try:
        value = int(text)
    except ValueError:
        raise CliParseError(f"cannot parse workers: {text!r}") from None
    if value < 1:
        raise CliParseError("workers must be positive")
    return value


def parse_dims(text: str) -> list[int]:
    dims: list[int] = []
    for part in text.split(","):
        part = part.strip()
        if ".." in part:
            lo, hi = part.split("..", 1)
            dims.extend(range(int(lo), int(hi) + 1))
        elif part:
            dims.append(int(part))
    if not dims:
        raise CliParseError(f"no dimensions in {text!r}")
    return dims


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="tukeydepth",
        description="Exact halfspace (Tukey) depth of query points.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    comp = sub.add_parser("compute", help="depth of a query point from a file")
    comp.add_argument("input", help="point file, one point per row")
    comp.add_argument("--z", help='query point, e.g. --z "0,0,0"')
    comp.add_argument("--z-file", help="file holding the query point")
    comp.add_argument("--algorithm", default="auto",
                      help="rec | comb2 | comb | k=<int> | auto")
    comp.add_argument("--early-exit", action="store_true",
                      help="stop once the depth is known to be zero")
    comp.add_argument("--eps", type=float, default=None,
                      help="zero-classification threshold")
    comp.add_argument("--workers", default=None,
                      help="worker count or 'auto'")
    comp.add_argument("--json", action="store_true",
                      help="emit one JSON record instead of key=value text")
    comp.add_argument("--out", help="also write the record to this file")

    bench = sub.add_parser("bench", help="run a timing grid, emit CSV")
    bench.add_argument("--dist", choices=[NORMAL, GRID], default=NORMAL)
    bench.add_argument("--dims", default="3", help="e.g. 3, or 3..6, or 3,5")
    bench.add_argument("--n0", type=int, default=40)
    bench.add_argument("--reps", type=int, default=10)
    bench.add_argument("--limit", type=float, default=60.0,
                       help="per-cell time budget in seconds")
    bench.add_argument("--seed", type=int, default=1)
    bench.add_argument("--max-n", type=int, default=None)
    bench.add_argument("--variants", default="rec,comb2,comb")
    bench.add_argument("--aggregate", choices=["mean", "median"],
                       default="mean")
    bench.add_argument("--workers", default=None)
    bench.add_argument("--out", help="write CSV here instead of stdout")
    return parser


def _cmd_compute(args) -> int:
    points = read_points_file(args.input)
    if (args.z is None) == (args.z_file is None):
        raise CliParseError("exactly one of --z or --z-file is required")
    if args.z is not None:
        z = parse_vector(args.z, "--z")
    else:
        z_rows = read_points_file(args.z_file)
        if z_rows.shape[0] != 1:
            raise CliParseError(
                f"{args.z_file}: expected exactly one point, got {z_rows.shape[0]}"
            )
        z = z_rows[0]
    variant, k = parse_algorithm(args.algorithm)
    tol = ToleranceParams(eps_zero=args.eps) if args.eps is not None else ToleranceParams()
    workers = parse_workers(args.workers) if args.workers is not None else None
    options = AlgorithmOptions(variant=variant, k=k,
                               early_exit=args.early_exit,
                               tol=tol, workers=workers)
    result = halfspace_depth(points, z, options)

    record = {
        "nhd": result.nhd,
        "hd": result.hd,
        "hd_exact": f"{result.nhd}/{result.n}",
        "n": result.n,
        "d": result.d,
        "variant": result.variant,
        "zeros_absorbed": result.zeros_absorbed,
        "elapsed_seconds": result.elapsed,
    }
    if args.json:
        text = json.dumps(record)
    else:
        text = (
            f"nhd={result.nhd} hd={result.hd} hd_exact={result.nhd}/{result.n} "
            f"n={result.n} d={result.d} "
            f"variant={result.variant} zeros_absorbed={result.zeros_absorbed} "
            f"elapsed={result.elapsed:.6f}s"
        )
    print(text)
    if args.out:
        with open(args.out, "w", encoding="utf-8") as fh:
            fh.write(json.dumps(record) + "\n")
    return EXIT_OK


def _cmd_bench(args) -> int:
    dims = parse_dims(args.dims)
    variants = [v.strip() for v in args.variants.split(",") if v.strip()]
    workers = parse_workers(args.workers) if args.workers is not None else None
    try:
        plan = BenchPlan(
            dims=tuple(dims), n0=args.n0, distributions=(args.dist,),
            variants=tuple(variants), reps=args.reps,
            time_limit_per_cell=args.limit, aggregate=args.aggregate,
            max_n=args.max_n,
            workers=None if workers in (None, "auto") else workers,
        )
    except ValueError as exc:
        raise CliParseError(str(exc)) from exc

    sink = open(args.out, "w", encoding="utf-8") if args.out else sys.stdout
    try:
        sink.write(CSV_HEADER + "\n")
        sink.flush()

        def emit(record):
            sink.write(format_record(record) + "\n")
            sink.flush()

        run_bench(plan, args.seed, on_record=emit)
    finally:
        if args.out:
            sink.close()
    return EXIT_OK


def main(argv: list[str] | None = None) -> int:
    parser = _build_parser()
    args = parser.parse_args(argv)
    try:
        if args.command == "compute":
            return _cmd_compute(args)
        return _cmd_bench(args)
    except CliParseError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_PARSE
    except (DimensionMismatch, InvalidK) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_DIMENSION
    except DepthError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_DIMENSION


if __name__ == "__main__":
    sys.exit(main())
