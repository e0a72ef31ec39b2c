"""Path-query index over heavy-path decomposition and a wavelet tree.

The tree is cut into chains by always following the child with the
largest subtree (ties to the leftmost).  Chain lengths sit in unary in a
2n-bit bitmap B = 1 0^rc_1 1 0^rc_2 ...; a transformed tree T' hangs
every non-head under its chain head (preserving preorder ranks) so that
ref(x) is one parent step; the chain-concatenated weight string C is
indexed by a wavelet tree.  A query path decomposes into O(lg n) disjoint
C-intervals answered by multi-range quantile or per-interval 2d search.

Succinct variants navigate bitmaps only; the explicit variant keeps flat
index arrays, the inverse position permutation, a constant-time LCA and a
word-array wavelet tree.
"""
from __future__ import annotations

from array import array
from typing import NamedTuple

import numpy as np

from .baseline import EulerLCA
from .bitvec import build_bitvector
from .bptree import BpTree
from .wavelet import ArrayWaveletTree, WaveletTree

HPD_VARIANTS = ("succinct-plain", "succinct-compressed", "explicit")


class ChainInterval(NamedTuple):
    l: int          # inclusive C-positions
    r: int
    deep: int       # original id of the node at position r


def _hpd_arrays(tree):
    """Chain heads, reference counts, C-positions and T' parents."""
    n = tree.n
    par = tree.parent
    sizes = tree.subtree_sizes()
    heavy = [0] * (n + 1)
    best = [0] * (n + 1)
    for v in range(2, n + 1):
        p = par[v]
        s = sizes[v]
        if s > best[p]:
            best[p] = s
            heavy[p] = v
    head = [0] * (n + 1)
    rc = [0] * (n + 1)
    for v in range(1, n + 1):
        h = v if v == 1 or heavy[par[v]] != v else head[par[v]]
        head[v] = h
        rc[h] += 1
    cum = [0] * (n + 2)           # zeros (chain nodes) before the x-th 1 in B
    for v in range(1, n + 1):
        cum[v + 1] = cum[v] + rc[v]
    dep = tree.depth
    pos = [0] * (n + 1)
    for v in range(1, n + 1):
        h = head[v]
        pos[v] = cum[h] + dep[v] - dep[h] + 1
    tpar = [0] * (n + 1)
    for v in range(2, n + 1):
        tpar[v] = head[v] if head[v] != v else head[par[v]]
    return head, rc, cum, pos, tpar


class HpdIndex:
    """HPD + wavelet-tree path index; variants: succinct-plain,
    succinct-compressed, explicit."""

    def __init__(self, tree, variant: str = "succinct-plain"):
        if variant not in HPD_VARIANTS:
            raise ValueError(f"unknown HPD variant {variant!r}")
        self.variant = variant
        self.n = tree.n
        self.sigma = tree.sigma
        n = tree.n
        head, rc, cum, pos, tpar = _hpd_arrays(tree)
        self.num_chains = sum(1 for v in range(1, n + 1) if rc[v] > 0)
        cseq = [0] * n
        w = tree.weights
        for v in range(1, n + 1):
            cseq[pos[v] - 1] = w[v]

        if variant == "explicit":
            self._head = array("i", head)
            self._rc = array("i", rc)
            self._pos = array("i", pos)
            self._dep = array("i", tree.depth)
            self._par = array("i", tree.parent)
            inv = [0] * (n + 1)
            for v in range(1, n + 1):
                inv[pos[v]] = v
            self._node_of_pos = array("i", inv)
            self._lca = EulerLCA(tree)
            self.wc = ArrayWaveletTree(cseq, tree.sigma)
            self.T = self.Tp = self.B = None
        else:
            enc = "plain" if variant == "succinct-plain" else "compressed"
            bbits = np.zeros(2 * n, dtype=np.uint8)
            bbits[np.arange(n, dtype=np.int64) + np.asarray(cum[1:n + 1])] = 1
            tdep = [0] * (n + 1)
            for v in range(2, n + 1):
                tdep[v] = tdep[tpar[v]] + 1
            self.T = BpTree.from_tree(tree, enc)
            self.Tp = BpTree.from_depths(np.asarray(tdep[1:], dtype=np.int64), enc)
            self.B = build_bitvector(bbits, enc)
            self.wc = WaveletTree(cseq, tree.sigma, enc)
            self._head = self._pos = self._dep = self._par = None
            self._node_of_pos = None
            self._lca = None

    # -- spec surface: reference counts, refs, positions -------------------
    def _check_node(self, x):
        if not 1 <= x <= self.n:
            raise ValueError(f"node {x} out of range 1..{self.n}")

    def ref_count(self, x: int) -> int:
        self._check_node(x)
        if self.variant == "explicit":
            return self._rc[x]
        B = self.B
        s = B.select1_0(x)
        e = B.select1_0(x + 1) if x < self.n else 2 * self.n
        return e - s - 1

    def ref(self, x: int) -> int:
        self._check_node(x)
        if self.variant == "explicit":
            return self._head[x]
        s = self.B.select1_0(x)
        if s + 1 < 2 * self.n and self.B.access0(s + 1) == 0:
            return x
        return self.Tp.parent(x)

    def pos_in_C(self, x: int) -> int:
        self._check_node(x)
        if self.variant == "explicit":
            return self._pos[x]
        h = self.ref(x)
        return self.B.select1_0(h) + 2 - h + self.T.depth(x) - self.T.depth(h)

    # -- decomposition ------------------------------------------------------
    def decompose(self, x: int, y: int) -> list[ChainInterval]:
        self._check_node(x)
        self._check_node(y)
        if self.variant == "explicit":
            return self._decompose_explicit(x, y)
        T, Tp, B = self.T, self.Tp, self.B
        n2 = 2 * self.n

        def refof(v):
            s = B.select1_0(v)
            if s + 1 < n2 and B.access0(s + 1) == 0:
                return v
            return Tp.parent(v)

        z = T.lca(x, y)
        zref = refof(z)
        iv: list[ChainInterval] = []

        def climb(start):
            cur = start
            while True:
                h = refof(cur)
                if h == zref:
                    return cur
                ph = B.select1_0(h) + 2 - h
                dh = T.depth(h)
                iv.append(ChainInterval(ph, ph + T.depth(cur) - dh, cur))
                cur = T.parent(h)

        cx = climb(x)
        cy = climb(y)
        pz = B.select1_0(zref) + 2 - zref + T.depth(z) - T.depth(zref)
        iv.append(ChainInterval(pz, pz + T.depth(cx) - T.depth(z), cx))
        py = pz + T.depth(cy) - T.depth(z)
        if py > pz:
            iv.append(ChainInterval(pz + 1, py, cy))
        return iv

    def _decompose_explicit(self, x, y):
        head, pos, dep, par = self._head, self._pos, self._dep, self._par
        z = self._lca.lca(x, y)
        zref = head[z]
        iv: list[ChainInterval] = []

        def climb(start):
            cur = start
            while True:
                h = head[cur]
                if h == zref:
                    return cur
                iv.append(ChainInterval(pos[h], pos[cur], cur))
                cur = par[h]

        cx = climb(x)
        cy = climb(y)
        pz = pos[z]
        iv.append(ChainInterval(pz, pos[cx], cx))
        if pos[cy] > pz:
            iv.append(ChainInterval(pz + 1, pos[cy], cy))
        return iv

    # -- queries ----------------------------------------------------------
    def _check_range(self, a, b):
        if not 1 <= a <= b <= self.sigma:
            raise ValueError(f"weight range [{a},{b}] invalid for sigma={self.sigma}")

    def select(self, x: int, y: int, k: int) -> int:
        iv = self.decompose(x, y)
        return self.wc.quantile_multi([(c.l, c.r) for c in iv], k)

    def median(self, x: int, y: int) -> int:
        iv = self.decompose(x, y)
        total = sum(c.r - c.l + 1 for c in iv)
        return self.wc.quantile_multi([(c.l, c.r) for c in iv], total // 2)

    def count(self, x: int, y: int, a: int, b: int) -> int:
        self._check_range(a, b)
        return sum(self.wc.count_2d((c.l, c.r), (a, b)) for c in self.decompose(x, y))

    def report(self, x: int, y: int, a: int, b: int) -> list[tuple[int, int]]:
        self._check_range(a, b)
        out = []
        explicit = self.variant == "explicit"
        for c in self.decompose(x, y):
            for p, w in self.wc.report_2d((c.l, c.r), (a, b)):
                if explicit:
                    out.append((self._node_of_pos[p], w))
                else:
                    out.append((self.T.level_anc(c.deep, c.r - p), w))
        out.sort()
        return out

    def size_in_bits(self) -> int:
        if self.variant == "explicit":
            return (32 * (len(self._head) + len(self._rc) + len(self._pos)
                          + len(self._dep) + len(self._par) + len(self._node_of_pos))
                    + self._lca.size_in_bits() + self.wc.size_in_bits() + 64)
        return (self.T.size_in_bits() + self.Tp.size_in_bits()
                + self.B.size_in_bits() + self.wc.size_in_bits() + 64)
