"""Naive path-query structures: answer by explicitly traversing the path.

Three variants share one query surface.  "explicit" stores forward-star
arrays and finds the meeting node by climbing (so it walks the query path
twice); "explicit-lca" adds an Euler-tour/sparse-table LCA; "succinct"
navigates a balanced-parentheses tree and unpacks weights from a
fixed-width array.  The explicit variant is the reference oracle for
every other index in the package.
"""
from __future__ import annotations

import numpy as np

from .bptree import BpTree

NAIVE_VARIANTS = ("explicit", "explicit-lca", "succinct")

_SMALL_SELECT = 64          # below this, sorting beats introselect


class EulerLCA:
    """Constant-time LCA from an Euler tour and a sparse argmin table."""

    __slots__ = ("_first", "_euler", "_edepth", "_st", "_log")

    def __init__(self, tree):
        n = tree.n
        dep = tree.depth_array()
        sizes = np.asarray(tree.subtree_sizes()[1:], dtype=np.int64)
        par = np.asarray(tree.parent[1:], dtype=np.int64)
        open_pos = 2 * np.arange(n, dtype=np.int64) - dep
        close_pos = open_pos + 2 * sizes - 1
        m = 2 * n - 1
        euler = np.zeros(m, dtype=np.int32)
        euler[open_pos] = np.arange(1, n + 1, dtype=np.int32)
        inner = close_pos < m
        euler[close_pos[inner]] = par[inner]
        dep_full = np.concatenate([[0], dep])
        edepth = dep_full[euler].astype(np.int32)

        levels = max(1, int(np.frexp(m)[1]))
        st = np.zeros((levels, m), dtype=np.int32)
        st[0] = np.arange(m, dtype=np.int32)
        for k in range(1, levels):
            half = 1 << (k - 1)
            prev = st[k - 1]
            a = prev[: m - 2 * half + 1]
            b = prev[half: m - half + 1]
            st[k, : m - 2 * half + 1] = np.where(edepth[a] <= edepth[b], a, b)
        self._st = st
        self._euler = euler
        self._edepth = edepth
        self._first = [0] + open_pos.tolist()
        self._log = np.frexp(np.arange(1, m + 1))[1].astype(np.int64) - 1

    def lca(self, x: int, y: int) -> int:
        l = self._first[x]
        r = self._first[y]
        if l > r:
            l, r = r, l
        j = int(self._log[r - l])
        st = self._st
        i1 = int(st[j, l])
        i2 = int(st[j, r - (1 << j) + 1])
        ed = self._edepth
        return int(self._euler[i1 if ed[i1] <= ed[i2] else i2])

    def size_in_bits(self) -> int:
        return 32 * (self._st.size + len(self._euler) + len(self._edepth)
                     + len(self._first) + len(self._log))


class PackedArray:
    """Fixed-width array of values in [1..sigma], ceil(lg sigma) bits each."""

    __slots__ = ("n", "width", "_words", "_mask")

    def __init__(self, values, sigma):
        v = np.asarray(values, dtype=np.uint64) - 1
        self.n = len(v)
        self.width = max(sigma - 1, 0).bit_length()
        self._mask = (1 << self.width) - 1
        if self.width == 0 or self.n == 0:
            self._words = []
            return
        bits = np.zeros(self.n * self.width, dtype=np.uint8)
        pos = np.arange(self.n, dtype=np.int64) * self.width
        for j in range(self.width):
            bits[pos + j] = (v >> np.uint64(j)) & np.uint64(1)
        packed = np.packbits(bits, bitorder="little")
        pad = (-len(packed)) % 8
        if pad:
            packed = np.concatenate([packed, np.zeros(pad, dtype=np.uint8)])
        self._words = packed.view(np.uint64).tolist()

    def get(self, i: int) -> int:
        """Value at 0-based index i."""
        if self.width == 0:
            return 1
        p = i * self.width
        k, sh = p >> 6, p & 63
        w = self._words[k] >> sh
        if sh + self.width > 64:
            w |= self._words[k + 1] << (64 - sh)
        return (w & self._mask) + 1

    def size_in_bits(self) -> int:
        return 64 * len(self._words) + 32


class NaiveIndex:
    """Path median/select/count/report by explicit path traversal."""

    def __init__(self, tree, variant: str = "explicit"):
        if variant not in NAIVE_VARIANTS:
            raise ValueError(f"unknown naive variant {variant!r}")
        self.variant = variant
        self.n = tree.n
        self.sigma = tree.sigma
        if variant == "succinct":
            self._bp = BpTree.from_tree(tree)
            self._packed = PackedArray(tree.weights[1:], tree.sigma)
            self._par = self._dep = self._w = None
            self._lca = None
        else:
            self._bp = None
            self._packed = None
            self._par = list(tree.parent)
            self._dep = list(tree.depth)
            self._w = list(tree.weights)
            self._csr_len = len(tree._csr_child) + len(tree._csr_start)
            self._lca = EulerLCA(tree) if variant == "explicit-lca" else None

    # -- internals ----------------------------------------------------------
    def _check_nodes(self, x, y):
        if not (1 <= x <= self.n and 1 <= y <= self.n):
            raise ValueError(f"query nodes ({x},{y}) out of range 1..{self.n}")

    def _check_range(self, a, b):
        if not 1 <= a <= b <= self.sigma:
            raise ValueError(f"weight range [{a},{b}] invalid for sigma={self.sigma}")

    def _meet(self, x: int, y: int) -> int:
        if self.variant == "succinct":
            return self._bp.lca(x, y)
        if self._lca is not None:
            return self._lca.lca(x, y)
        par, dep = self._par, self._dep
        while dep[x] > dep[y]:
            x = par[x]
        while dep[y] > dep[x]:
            y = par[y]
        while x != y:
            x, y = par[x], par[y]
        return x

    def _parent_of(self, v: int) -> int:
        return self._bp.parent(v) if self.variant == "succinct" else self._par[v]

    def _weight_of(self, v: int) -> int:
        return self._packed.get(v - 1) if self.variant == "succinct" else self._w[v]

    # -- spec surface ---------------------------------------------------
    def sparse_lca(self, x: int, y: int) -> int:
        if self._lca is None:
            raise ValueError("sparse_lca is only available on the explicit-lca variant")
        self._check_nodes(x, y)
        return self._lca.lca(x, y)

    def traverse_path(self, x: int, y: int) -> list[int]:
        """Nodes of the x..y path, ordered from x through the meeting node to y."""
        self._check_nodes(x, y)
        z = self._meet(x, y)
        left = []
        cur = x
        while cur != z:
            left.append(cur)
            cur = self._parent_of(cur)
        left.append(z)
        right = []
        cur = y
        while cur != z:
            right.append(cur)
            cur = self._parent_of(cur)
        return left + right[::-1]

    def _path_weights(self, x: int, y: int) -> list[int]:
        z = self._meet(x, y)
        if self.variant == "succinct":
            bp, packed = self._bp, self._packed
            ws = []
            cur = x
            while cur != z:
                ws.append(packed.get(cur - 1))
                cur = bp.parent(cur)
            ws.append(packed.get(z - 1))
            cur = y
            while cur != z:
                ws.append(packed.get(cur - 1))
                cur = bp.parent(cur)
            return ws
        par, w = self._par, self._w
        ws = []
        cur = x
        while cur != z:
            ws.append(w[cur])
            cur = par[cur]
        ws.append(w[z])
        cur = y
        while cur != z:
            ws.append(w[cur])
            cur = par[cur]
        return ws

    def select(self, x: int, y: int, k: int) -> int:
        self._check_nodes(x, y)
        ws = self._path_weights(x, y)
        if not 0 <= k < len(ws):
            raise ValueError(f"rank {k} out of range for path of {len(ws)} nodes")
        if len(ws) < _SMALL_SELECT:
            return sorted(ws)[k]
        return int(np.partition(np.asarray(ws), k)[k])

    def median(self, x: int, y: int) -> int:
        self._check_nodes(x, y)
        ws = self._path_weights(x, y)
        k = len(ws) // 2
        if len(ws) < _SMALL_SELECT:
            return sorted(ws)[k]
        return int(np.partition(np.asarray(ws), k)[k])

    def count(self, x: int, y: int, a: int, b: int) -> int:
        self._check_nodes(x, y)
        self._check_range(a, b)
        z = self._meet(x, y)
        if self.variant == "succinct":
            cnt = 0
            bp, packed = self._bp, self._packed
            cur = x
            while cur != z:
                if a <= packed.get(cur - 1) <= b:
                    cnt += 1
                cur = bp.parent(cur)
            if a <= packed.get(z - 1) <= b:
                cnt += 1
            cur = y
            while cur != z:
                if a <= packed.get(cur - 1) <= b:
                    cnt += 1
                cur = bp.parent(cur)
            return cnt
        par, w = self._par, self._w
        cnt = 0
        cur = x
        while cur != z:
            if a <= w[cur] <= b:
                cnt += 1
            cur = par[cur]
        if a <= w[z] <= b:
            cnt += 1
        cur = y
        while cur != z:
            if a <= w[cur] <= b:
                cnt += 1
            cur = par[cur]
        return cnt

    def report(self, x: int, y: int, a: int, b: int) -> list[tuple[int, int]]:
        self._check_nodes(x, y)
        self._check_range(a, b)
        out = []
        z = self._meet(x, y)
        for cur0 in (x, y):
            cur = cur0
            while cur != z:
                wv = self._weight_of(cur)
                if a <= wv <= b:
                    out.append((cur, wv))
                cur = self._parent_of(cur)
        wz = self._weight_of(z)
        if a <= wz <= b:
            out.append((z, wz))
        out.sort()
        return out

    def size_in_bits(self) -> int:
        if self.variant == "succinct":
            return self._bp.size_in_bits() + self._packed.size_in_bits()
        # forward-star + parent + depth + weights at word width
        bits = 64 * (3 * (self.n + 1) + self._csr_len)
        if self._lca is not None:
            bits += self._lca.size_in_bits()
        return bits


def build_naive(tree, variant: str = "explicit") -> NaiveIndex:
    return NaiveIndex(tree, variant)
