"""Command-line interface: ``cuboidsearch {search,verify,py,stats}``."""
from __future__ import annotations

import argparse
import logging
import sys

from . import backend
from .errors import CuboidError
from .search import (DEFAULT_START, SearchConfig, format_stats, print_py, search_range, table_stats,
                     verify_table)
from .table_format import read_table, sort_rows, write_table, rows_from_cuboids

EXIT_OK = 0
EXIT_FAIL = 1
EXIT_PERFECT = 3

log = logging.getLogger("cuboidsearch")


def _cmd_search(args) -> int:
    cfg = SearchConfig(
        range_start=args.start,
        range_end=args.end,
        workers=args.workers,
        checkpoint_path=args.checkpoint,
        checkpoint_interval=args.checkpoint_interval,
        chunk_size=args.chunk_size,
        backend=args.backend,
        prefilter=not args.no_prefilter,
    )
    report = search_range(cfg)
    if args.out:
        with open(args.out, "wb") as fh:
            write_table(report.rows, fh, header=args.header)
    else:
        write_table(report.rows, sys.stdout.buffer, header=args.header)
        sys.stdout.flush()
    c = report.counts
    log.info("scanned %d edges in %.2fs: %d cuboids (B %d, e %d, E %d, F %d)",
             report.edges_scanned, report.elapsed, c["total"], c["B"], c["e"], c["E"], c["F"])
    if report.extraordinary:
        for cand in report.extraordinary:
            print(f"EXTRAORDINARY: perfect cuboid candidate at N={cand.n}: "
                  f"{cand.condition.name} {cand.quadruple}", file=sys.stderr)
        return EXIT_PERFECT
    return EXIT_OK


def _cmd_verify(args) -> int:
    problems = verify_table(args.path)
    for p in problems:
        print(p)
    if problems:
        print(f"{len(problems)} violation(s)", file=sys.stderr)
        return EXIT_FAIL
    return EXIT_OK


def _cmd_py(args) -> int:
    print(print_py(args.n))
    return EXIT_OK


def _cmd_stats(args) -> int:
    with open(args.path, "rb") as fh:
        rows = read_table(fh, check=False)
    print(format_stats(table_stats(rows)))
    return EXIT_OK


def _cmd_oracle(args) -> int:
    from .oracle import cuboids_bruteforce

    write_table(rows_from_cuboids(cuboids_bruteforce(args.max_edge)), sys.stdout.buffer)
    sys.stdout.flush()
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="cuboidsearch", description=__doc__)
    p.add_argument("-v", "--verbose", action="store_true", help="log progress to stderr")
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("-v", "--verbose", action="store_true", default=argparse.SUPPRESS,
                        help="log progress to stderr")
    sub = p.add_subparsers(dest="command", required=True, metavar="COMMAND")

    s = sub.add_parser("search", parents=[common], help="search an edge range and write the cuboid table")
    s.add_argument("--from", dest="start", type=int, default=DEFAULT_START, metavar="N",
                   help=f"first edge (default {DEFAULT_START})")
    s.add_argument("--to", dest="end", type=int, required=True, metavar="M", help="last edge, inclusive")
    s.add_argument("--workers", type=int, default=1, metavar="W")
    s.add_argument("--checkpoint", metavar="PATH", help="checkpoint file; resumed if present")
    s.add_argument("--checkpoint-interval", type=int, default=100_000, metavar="EDGES")
    s.add_argument("--chunk-size", type=int, default=1024, metavar="EDGES")
    s.add_argument("--out", metavar="PATH", help="output file (default stdout)")
    s.add_argument("--header", action="store_true", help="emit a header line")
    s.add_argument("--backend", choices=sorted(backend.KERNELS), help="scan kernel")
    s.add_argument("--no-prefilter", action="store_true", help="disable the residue prefilter")
    s.set_defaults(func=_cmd_search)

    s = sub.add_parser("verify", parents=[common], help="audit a cuboid table file")
    s.add_argument("path")
    s.set_defaults(func=_cmd_verify)

    s = sub.add_parser("py", parents=[common], help="print the Pythagorean group of an edge")
    s.add_argument("n", type=int)
    s.set_defaults(func=_cmd_py)

    s = sub.add_parser("stats", parents=[common], help="per-kind counts of a cuboid table file")
    s.add_argument("path")
    s.set_defaults(func=_cmd_stats)

    s = sub.add_parser("oracle", parents=[common], help=argparse.SUPPRESS)
    s.add_argument("max_edge", type=int)
    s.set_defaults(func=_cmd_oracle)
    return p


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING,
                        format="%(levelname)s %(name)s: %(message)s")
    try:
        return args.func(args)
    except (CuboidError, ValueError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_FAIL


if __name__ == "__main__":
    sys.exit(main())
