"""Command-line harness.

Subcommands: gen-tree, gen-queries, query, verify, bench, stats.
Exit codes: 0 success/verified, 1 usage, 2 data error, 3 verification
mismatch.
"""
from __future__ import annotations

import argparse
import sys

from . import bench as _bench
from .corpus import (
    PtwFormatError,
    gen_queries,
    gen_tree,
    parse_ptw,
    parse_queries,
    queries_to_text,
    serialize_ptw,
)
from .registry import INDEX_NAMES

EXIT_OK = 0
EXIT_USAGE = 1
EXIT_DATA = 2
EXIT_MISMATCH = 3


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


def _build_parser() -> _Parser:
    p = _Parser(prog="treepath",
                description="Path median/counting/reporting indexes on weighted trees")
    sub = p.add_subparsers(dest="command", required=True)

    g = sub.add_parser("gen-tree", help="generate a random PTW tree file")
    g.add_argument("--nodes", type=int, required=True)
    g.add_argument("--sigma", type=int, required=True)
    g.add_argument("--shape", choices=["uniform_attach", "long_paths"],
                   default="uniform_attach")
    g.add_argument("--seed", type=int, default=0)
    g.add_argument("-o", "--output", required=True)

    q = sub.add_parser("gen-queries", help="generate a query workload file")
    q.add_argument("--tree", required=True)
    q.add_argument("--kind", choices=["median", "count", "report"], required=True)
    q.add_argument("--k-factor", type=int, default=1, choices=[1, 10, 100])
    q.add_argument("--count", type=int, required=True)
    q.add_argument("--seed", type=int, default=0)
    q.add_argument("-o", "--output", required=True)

    r = sub.add_parser("query", help="answer a query file with one index")
    r.add_argument("--tree", required=True)
    r.add_argument("--queries", required=True)
    r.add_argument("--index", choices=list(INDEX_NAMES), required=True)
    r.add_argument("-o", "--output", default=None)

    v = sub.add_parser("verify", help="check indexes against the nv oracle")
    v.add_argument("--tree", required=True)
    v.add_argument("--queries", required=True)
    v.add_argument("--indexes", required=True,
                   help="comma-separated index names (nv is the reference)")

    b = sub.add_parser("bench", help="time queries and emit a CSV report")
    b.add_argument("--tree", required=True)
    b.add_argument("--queries", required=True)
    b.add_argument("--indexes", required=True)
    b.add_argument("--repeat", type=int, default=1)
    b.add_argument("--by-chains", action="store_true")
    b.add_argument("--k-label", default="-",
                   help="K value recorded in the CSV K column")
    b.add_argument("--csv", required=True)

    s = sub.add_parser("stats", help="print tree statistics")
    s.add_argument("--tree", required=True)
    return p


def _load_tree(path: str):
    with open(path, "r", encoding="utf-8") as f:
        return parse_ptw(f.read())


def _load_queries(path: str):
    with open(path, "r", encoding="utf-8") as f:
        return parse_queries(f.read())


def _parse_indexes(spec: str, parser: _Parser) -> list[str]:
    names = [s.strip() for s in spec.split(",") if s.strip()]
    for name in names:
        if name not in INDEX_NAMES:
            parser.error(f"unknown index {name!r}; choose from {', '.join(INDEX_NAMES)}")
    if not names:
        parser.error("no index names given")
    return names


def main(argv=None) -> int:
    parser = _build_parser()
    args = parser.parse_args(argv)
    try:
        return _dispatch(args, parser)
    except (PtwFormatError, OSError, ValueError) as exc:
        print(f"treepath: {exc}", file=sys.stderr)
        return EXIT_DATA


def _dispatch(args, parser) -> int:
    if args.command == "gen-tree":
        tree = gen_tree(args.nodes, args.sigma, args.shape, args.seed)
        with open(args.output, "w", encoding="utf-8") as f:
            f.write(serialize_ptw(tree))
        return EXIT_OK

    if args.command == "gen-queries":
        tree = _load_tree(args.tree)
        qs = gen_queries(tree, args.kind, args.k_factor, args.count, args.seed)
        with open(args.output, "w", encoding="utf-8") as f:
            f.write(queries_to_text(qs))
        return EXIT_OK

    if args.command == "query":
        tree = _load_tree(args.tree)
        queries = _load_queries(args.queries)
        idx = _bench.build_index(tree, args.index)
        lines = _bench.answer_stream(idx, queries)
        text = "".join(line + "\n" for line in lines)
        if args.output:
            with open(args.output, "w", encoding="utf-8") as f:
                f.write(text)
        else:
            sys.stdout.write(text)
        return EXIT_OK

    if args.command == "verify":
        names = _parse_indexes(args.indexes, parser)
        if len(names) < 2:
            parser.error("verify needs at least two indexes")
        tree = _load_tree(args.tree)
        queries = _load_queries(args.queries)
        res = _bench.verify(tree, queries, names)
        if res.ok:
            print(f"verified {len(names)} indexes on {res.compared} queries: OK")
            return EXIT_OK
        print(f"MISMATCH index={res.mismatch_index} query='{res.mismatch_query}' "
              f"got='{res.got}' want='{res.want}'", file=sys.stderr)
        return EXIT_MISMATCH

    if args.command == "bench":
        names = _parse_indexes(args.indexes, parser)
        tree = _load_tree(args.tree)
        queries = _load_queries(args.queries)
        rows = _bench.bench_csv(tree, queries, names, args.repeat,
                                args.by_chains, args.k_label)
        with open(args.csv, "w", encoding="utf-8") as f:
            f.write(_bench.CSV_HEADER + "\n")
            f.write("".join(r + "\n" for r in rows))
        return EXIT_OK

    if args.command == "stats":
        tree = _load_tree(args.tree)
        for line in _bench.tree_stats(tree).lines():
            print(line)
        return EXIT_OK

    parser.error(f"unknown command {args.command!r}")
    return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
