"""Measurement harness: answer streams, verification, timing, CSV, stats.

Timing is single-threaded wall clock per query; a full warm-up pass runs
first and is excluded.  Construction peak memory is an allocator-level
high-water mark (tracemalloc), not OS RSS, reported in bits per node.
"""
from __future__ import annotations

import time
import tracemalloc
from dataclasses import dataclass

import numpy as np

from .corpus import (
    KIND_COUNT,
    KIND_MEDIAN,
    KIND_REPORT,
    PathQuery,
    check_query_args,
    format_answer,
    format_query,
    gen_queries,
)
from .hpdindex import HpdIndex
from .registry import build_index

CSV_HEADER = ("index,kind,K,chains,n_queries,mean_us,stddev_us,"
              "bits_per_node,build_s,peak_bits_per_node")


def answer_query(idx, q: PathQuery):
    if q.kind == KIND_MEDIAN:
        return idx.median(q.x, q.y)
    if q.kind == KIND_COUNT:
        return idx.count(q.x, q.y, q.a, q.b)
    return idx.report(q.x, q.y, q.a, q.b)


def answer_stream(idx, queries) -> list[str]:
    """One answer line per query; out-of-range arguments yield '!'."""
    n, sigma = idx.n, idx.sigma
    out = []
    for q in queries:
        if not check_query_args(n, sigma, q):
            out.append("!")
        else:
            out.append(format_answer(q, answer_query(idx, q)))
    return out


def build_timed(tree, name: str, measure_peak: bool = False):
    """Build one index; returns (index, build_seconds, peak_bits_per_node)."""
    if measure_peak:
        tracemalloc.start()
    t0 = time.perf_counter()
    idx = build_index(tree, name)
    secs = time.perf_counter() - t0
    peak = None
    if measure_peak:
        _, peak_bytes = tracemalloc.get_traced_memory()
        tracemalloc.stop()
        peak = peak_bytes * 8 / tree.n
    return idx, secs, peak


@dataclass
class VerifyResult:
    ok: bool
    compared: int
    mismatch_index: str | None = None
    mismatch_query: str | None = None
    got: str | None = None
    want: str | None = None


def verify(tree, queries, names) -> VerifyResult:
    """Compare every named index's answer stream against the nv oracle."""
    oracle = build_index(tree, "nv")
    want = answer_stream(oracle, queries)
    for name in names:
        if name == "nv":
            continue
        idx = build_index(tree, name)
        got = answer_stream(idx, queries)
        for qi, (g, w) in enumerate(zip(got, want)):
            if g != w:
                return VerifyResult(False, len(queries), name,
                                    format_query(queries[qi]), g, w)
    return VerifyResult(True, len(queries))


def time_queries(idx, queries, repeat: int = 1):
    """Per-query latencies in microseconds over `repeat` timed passes,
    after one untimed warm-up pass.  Returns (times_us, answers)."""
    answers = answer_stream(idx, queries)      # warm-up, excluded
    runnable = [q for q in queries if check_query_args(idx.n, idx.sigma, q)]
    times = []
    clock = time.perf_counter_ns
    for _ in range(max(1, repeat)):
        for q in runnable:
            t0 = clock()
            answer_query(idx, q)
            times.append((clock() - t0) / 1000.0)
    return times, answers


def chain_counts(tree, queries) -> list[int]:
    """Chain-decomposition size of each (in-range) query path."""
    hpd = HpdIndex(tree, "explicit")
    return [len(hpd.decompose(q.x, q.y)) for q in queries
            if check_query_args(tree.n, tree.sigma, q)]


def _fmt_row(vals) -> str:
    return ",".join(str(v) for v in vals)


def bench_csv(tree, queries, names, repeat: int = 1, by_chains: bool = False,
              k_label: str = "-") -> list[str]:
    """CSV rows (excluding header) for every (index, kind) group."""
    rows = []
    by_kind: dict[str, list[PathQuery]] = {}
    for q in queries:
        by_kind.setdefault(q.kind, []).append(q)
    chains = chain_counts(tree, by_kind[KIND_MEDIAN]) if by_chains and KIND_MEDIAN in by_kind else None
    for name in names:
        idx, build_s, peak = build_timed(tree, name, measure_peak=True)
        bpn = idx.size_in_bits() / tree.n
        for kind, qs in by_kind.items():
            times, _ = time_queries(idx, qs, repeat)
            rows.append(_fmt_row((
                name, kind, k_label, "-", len(times),
                f"{np.mean(times):.3f}", f"{np.std(times):.3f}",
                f"{bpn:.2f}", f"{build_s:.4f}", f"{peak:.2f}")))
            if kind == KIND_MEDIAN and chains is not None:
                per_query = np.asarray(times).reshape(max(1, repeat), -1).mean(axis=0)
                buckets: dict[int, list[float]] = {}
                for c, t in zip(chains, per_query):
                    if c:
                        buckets.setdefault(c, []).append(t)
                for c in sorted(buckets):
                    ts = buckets[c]
                    rows.append(_fmt_row((
                        name, kind, k_label, c, len(ts),
                        f"{np.mean(ts):.3f}", f"{np.std(ts):.3f}",
                        f"{bpn:.2f}", f"{build_s:.4f}", f"{peak:.2f}")))
        del idx
    return rows


@dataclass
class TreeStats:
    n: int
    sigma: int
    avg_depth: float
    max_depth: int
    unary_fraction: float
    num_chains: int
    mean_chains_per_path: float

    def lines(self) -> list[str]:
        return [
            f"nodes            {self.n}",
            f"sigma            {self.sigma}",
            f"avg depth        {self.avg_depth:.2f}",
            f"max depth        {self.max_depth}",
            f"unary fraction   {self.unary_fraction:.4f}",
            f"hpd chains       {self.num_chains}",
            f"chains per path  {self.mean_chains_per_path:.2f}",
        ]


def tree_stats(tree, path_samples: int = 10_000, seed: int = 0) -> TreeStats:
    d = tree.depth_array()
    n = tree.n
    nkids = np.diff(tree._csr_start[1:])
    unary = int((nkids == 1).sum())
    hpd = HpdIndex(tree, "explicit")
    qs = gen_queries(tree, KIND_MEDIAN, 1, path_samples, seed)
    mean_chains = (sum(len(hpd.decompose(q.x, q.y)) for q in qs) / len(qs)) if qs else 0.0
    return TreeStats(n, tree.sigma, float(d.mean()), int(d.max()),
                     unary / n, hpd.num_chains, mean_chains)
