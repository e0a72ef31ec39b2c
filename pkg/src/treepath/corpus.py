"""Weighted-tree data model, PTW text format, tree and workload generators.

PTW files are line-oriented UTF-8:

    line 1: ``<n> <sigma>``
    line 2: BP string, exactly 2n characters over ``(`` / ``)``
    line 3: n space-separated integers in [1..sigma], preorder

Query files hold one query per line: ``M x y``, ``C x y a b`` or
``R x y a b`` (1-based).  Answer streams carry one line per query.
"""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np

KIND_MEDIAN = "median"
KIND_COUNT = "count"
KIND_REPORT = "report"
KINDS = (KIND_MEDIAN, KIND_COUNT, KIND_REPORT)

_KIND_LETTER = {KIND_MEDIAN: "M", KIND_COUNT: "C", KIND_REPORT: "R"}
_LETTER_KIND = {v: k for k, v in _KIND_LETTER.items()}

# long_paths chain-extension probability: expected depth grows like
# ln(n)/(1-p), so 0.999 keeps random query paths thousands of nodes long
# at n = 1e6 while still branching enough for multi-chain decompositions.
LONG_PATHS_CHAIN_P = 0.999


class PtwFormatError(ValueError):
    def __init__(self, msg: str, line: int, col: int = 1):
        super().__init__(f"line {line}, col {col}: {msg}")
        self.line = line
        self.col = col


@dataclass(frozen=True)
class PathQuery:
    kind: str
    x: int
    y: int
    a: int | None = None
    b: int | None = None


class WeightedTree:
    """Ordinal tree in preorder (ids 1..n, root 1) with weights in [1..sigma]."""

    __slots__ = ("n", "sigma", "parent", "depth", "weights", "weight_decode",
                 "_csr_start", "_csr_child", "_sizes", "_depth_np", "_weights_np")

    def __init__(self, parent, weights, sigma, weight_decode=None):
        n = len(parent) - 1
        if n < 1:
            raise ValueError("tree needs at least one node")
        self.n = n
        self.sigma = sigma
        self.parent = list(parent)
        self.weights = list(weights)
        self.weight_decode = weight_decode
        depth = [0] * (n + 1)
        par = self.parent
        for i in range(2, n + 1):
            depth[i] = depth[par[i]] + 1
        self.depth = depth
        pa = np.asarray(self.parent[2:], dtype=np.int64) if n > 1 else np.zeros(0, np.int64)
        counts = np.bincount(pa, minlength=n + 1)
        self._csr_start = np.concatenate([[0], np.cumsum(counts)])
        self._csr_child = (np.argsort(pa, kind="stable") + 2) if n > 1 else pa
        self._sizes = None
        self._depth_np = None
        self._weights_np = None

    def children(self, x: int) -> list[int]:
        s, e = self._csr_start[x], self._csr_start[x + 1]
        return self._csr_child[s:e].tolist()

    def depth_array(self) -> np.ndarray:
        if self._depth_np is None:
            self._depth_np = np.asarray(self.depth[1:], dtype=np.int64)
        return self._depth_np

    def weights_array(self) -> np.ndarray:
        if self._weights_np is None:
            self._weights_np = np.asarray(self.weights[1:], dtype=np.int64)
        return self._weights_np

    def subtree_sizes(self) -> list[int]:
        if self._sizes is None:
            sizes = [1] * (self.n + 1)
            sizes[0] = 0
            par = self.parent
            for i in range(self.n, 1, -1):
                sizes[par[i]] += sizes[i]
            self._sizes = sizes
        return self._sizes

    def bp_string(self) -> str:
        d = self.depth_array()
        bits = np.zeros(2 * self.n, dtype=np.uint8)
        bits[2 * np.arange(self.n, dtype=np.int64) - d] = 1
        return np.where(bits, np.uint8(ord("(")), np.uint8(ord(")"))).tobytes().decode("ascii")


# ---------------------------------------------------------------------------
# PTW parse / serialize
# ---------------------------------------------------------------------------

def serialize_ptw(tree: WeightedTree) -> str:
    weights = " ".join(map(str, tree.weights[1:]))
    return f"{tree.n} {tree.sigma}\n{tree.bp_string()}\n{weights}\n"


def _parse_int_token(tok: str, line: int, col: int, what: str) -> int:
    try:
        return int(tok)
    except ValueError:
        raise PtwFormatError(f"expected integer {what}, got {tok!r}", line, col) from None


def parse_ptw(text: str) -> WeightedTree:
    lines = text.split("\n")
    if len(lines) < 3:
        raise PtwFormatError("expected 3 lines: header, BP string, weights", len(lines))
    head = lines[0].split()
    if len(head) != 2:
        raise PtwFormatError("header must be '<n> <sigma>'", 1)
    n = _parse_int_token(head[0], 1, 1, "n")
    sigma = _parse_int_token(head[1], 1, len(head[0]) + 2, "sigma")
    if n < 1:
        raise PtwFormatError("n must be >= 1", 1)
    if sigma < 1:
        raise PtwFormatError("sigma must be >= 1", 1)

    bp = lines[1]
    if len(bp) != 2 * n:
        raise PtwFormatError(f"BP string length {len(bp)} != 2n = {2 * n}", 2)
    raw = np.frombuffer(bp.encode("ascii", errors="replace"), dtype=np.uint8)
    is_open = raw == ord("(")
    bad = ~(is_open | (raw == ord(")")))
    if bad.any():
        raise PtwFormatError("BP string may contain only '(' and ')'", 2,
                             int(np.argmax(bad)) + 1)
    exc = np.cumsum(np.where(is_open, 1, -1))
    if exc[-1] != 0 or (exc[:-1] <= 0).any():
        col = int(np.argmax(exc <= 0)) + 1 if (exc[:-1] <= 0).any() else 2 * n
        raise PtwFormatError("unbalanced BP string (not a single tree)", 2, col)

    depths = exc[is_open] - 1
    parent = [0] * (n + 1)
    stack = [0] * (int(depths.max()) + 2)
    dlist = depths.tolist()
    for i in range(1, n + 1):
        d = dlist[i - 1]
        if d:
            parent[i] = stack[d - 1]
        stack[d] = i

    toks = lines[2].split()
    if len(toks) != n:
        raise PtwFormatError(f"expected {n} weights, got {len(toks)}", 3)
    weights = [0] * (n + 1)
    col = 1
    for i, tok in enumerate(toks):
        w = _parse_int_token(tok, 3, col, "weight")
        if not 1 <= w <= sigma:
            raise PtwFormatError(f"weight {w} outside [1..{sigma}]", 3, col)
        weights[i + 1] = w
        col += len(tok) + 1
    return WeightedTree(parent, weights, sigma)


# ---------------------------------------------------------------------------
# weight normalization and generators
# ---------------------------------------------------------------------------

def normalize_weights(raw) -> tuple[list[int], list[int]]:
    """Order-preserving dense ranking into [1..#distinct]; returns (ranks, decode)."""
    arr = np.asarray(raw, dtype=np.int64)
    uniq, inv = np.unique(arr, return_inverse=True)
    return (inv + 1).tolist(), uniq.tolist()


def gen_tree(n: int, sigma: int, shape: str = "uniform_attach", seed: int = 0) -> WeightedTree:
    """Random tree, deterministic per (n, sigma, shape, seed).

    uniform_attach: each node's parent is uniform among its predecessors.
    long_paths: parent is the immediately preceding node with probability
    LONG_PATHS_CHAIN_P, else uniform among predecessors.
    """
    if n < 1 or sigma < 1:
        raise ValueError("n and sigma must be >= 1")
    if shape not in ("uniform_attach", "long_paths"):
        raise ValueError(f"unknown tree shape {shape!r}")
    rng = np.random.default_rng(seed)
    if n == 1:
        return WeightedTree([0, 0], [0, int(rng.integers(1, sigma + 1))], sigma)

    idx = np.arange(2, n + 1, dtype=np.int64)
    unif = 1 + (rng.random(n - 1) * (idx - 1)).astype(np.int64)
    if shape == "long_paths":
        chain = rng.random(n - 1) < LONG_PATHS_CHAIN_P
        par_c = np.where(chain, idx - 1, unif)
    else:
        par_c = unif
    weights = rng.integers(1, sigma + 1, n).tolist()

    # relabel construction order to preorder (children in attachment order)
    counts = np.bincount(par_c, minlength=n + 1)
    start = np.concatenate([[0], np.cumsum(counts)]).tolist()
    adj = (np.argsort(par_c, kind="stable") + 2).tolist()
    par_full = [0, 0] + par_c.tolist()
    new_of = [0] * (n + 1)
    parent_new = [0] * (n + 1)
    nid = 0
    stack = [1]
    while stack:
        v = stack.pop()
        nid += 1
        new_of[v] = nid
        parent_new[nid] = new_of[par_full[v]]
        kids = adj[start[v]:start[v + 1]]
        if kids:
            stack.extend(kids[::-1])
    return WeightedTree(parent_new, [0] + weights, sigma)


def gen_queries(tree: WeightedTree, kind: str, k_factor: int = 1,
                count: int = 1000, seed: int = 0) -> list[PathQuery]:
    """Random workload: endpoints uniform; count/report ranges sampled in
    rank space so expected node coverage is proportional to 1/k_factor."""
    if kind not in KINDS:
        raise ValueError(f"unknown query kind {kind!r}")
    if k_factor < 1:
        raise ValueError("k_factor must be >= 1")
    if count < 0:
        raise ValueError("count must be >= 0")
    rng = np.random.default_rng(seed)
    n = tree.n
    xs = rng.integers(1, n + 1, count).tolist()
    ys = rng.integers(1, n + 1, count).tolist()
    if kind == KIND_MEDIAN:
        return [PathQuery(kind, x, y) for x, y in zip(xs, ys)]
    i = rng.integers(1, n + 1, count)
    span = (n - i + k_factor - 1) // k_factor
    j = np.minimum(rng.integers(i, i + span + 1), n)
    ws = sorted(tree.weights[1:])
    return [PathQuery(kind, x, y, ws[ii - 1], ws[jj - 1])
            for x, y, ii, jj in zip(xs, ys, i.tolist(), j.tolist())]


# ---------------------------------------------------------------------------
# query and answer wire formats
# ---------------------------------------------------------------------------

def format_query(q: PathQuery) -> str:
    if q.kind == KIND_MEDIAN:
        return f"M {q.x} {q.y}"
    return f"{_KIND_LETTER[q.kind]} {q.x} {q.y} {q.a} {q.b}"


def queries_to_text(queries) -> str:
    return "".join(format_query(q) + "\n" for q in queries)


def parse_query_line(line: str, lineno: int) -> PathQuery:
    toks = line.split()
    if not toks or toks[0] not in _LETTER_KIND:
        raise PtwFormatError("query must start with M, C or R", lineno)
    kind = _LETTER_KIND[toks[0]]
    want = 3 if kind == KIND_MEDIAN else 5
    if len(toks) != want:
        raise PtwFormatError(f"{toks[0]} query takes {want - 1} arguments", lineno)
    vals = [_parse_int_token(t, lineno, 1, "argument") for t in toks[1:]]
    if kind == KIND_MEDIAN:
        return PathQuery(kind, vals[0], vals[1])
    return PathQuery(kind, vals[0], vals[1], vals[2], vals[3])


def parse_queries(text: str) -> list[PathQuery]:
    out = []
    for lineno, line in enumerate(text.split("\n"), 1):
        if line.strip():
            out.append(parse_query_line(line, lineno))
    return out


def format_answer(q: PathQuery, result) -> str:
    if q.kind == KIND_MEDIAN or q.kind == KIND_COUNT:
        return str(result)
    pairs = ";".join(f"{node}:{w}" for node, w in result)
    return f"{len(result)} {pairs}" if result else "0"


def check_query_args(n: int, sigma: int, q: PathQuery) -> bool:
    """True iff the query's arguments are in range for an (n, sigma) tree."""
    if not (1 <= q.x <= n and 1 <= q.y <= n):
        return False
    if q.kind != KIND_MEDIAN and not (q.a is not None and q.b is not None
                                      and 1 <= q.a <= q.b <= sigma):
        return False
    return True
