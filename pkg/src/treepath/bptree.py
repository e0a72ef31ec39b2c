"""Succinct ordinal-tree topology over balanced parentheses.

The bitmap stores one 1-bit per opening and one 0-bit per closing
parenthesis in preorder.  Navigation works on the running excess
E[p] = #opens - #closes over the prefix ending at position p; a node's
depth is the excess at its opening parenthesis minus one (root depth 0).

Directories: a minimum-excess entry per 256-bit block, a superblock
minimum every 8 blocks and a sparse table over superblock minima, giving
logarithmic searches with short byte-table scans inside blocks.
"""
from __future__ import annotations

import numpy as np

from .bitvec import DELTA8, MIN8, BitVector, build_bitvector, _as_bit_array

_BLK = 256
_SUP = 8                    # blocks per superblock
_BIG = 1 << 60


class BpTree:
    __slots__ = ("n", "m", "bv", "_blk_min", "_sup_min", "_st", "_word_at")

    def __init__(self, bits, encoding: str = "plain"):
        if isinstance(bits, BitVector):
            a = bits.to_bit_array()
            self.bv = bits
        else:
            if isinstance(bits, str) and "(" in bits:
                bits = bits.replace("(", "1").replace(")", "0")
            a = _as_bit_array(bits)
            self.bv = build_bitvector(a, encoding)
        self.m = len(a)
        self.n = self.bv.count(1)
        if 2 * self.n != self.m:
            raise ValueError("parenthesis sequence must have equal opens and closes")
        if self.m:
            d = np.cumsum(2 * a.astype(np.int64) - 1)
            if d[-1] != 0 or d.min() < 0:
                raise ValueError("unbalanced parenthesis sequence")
            bm = np.minimum.reduceat(d, np.arange(0, self.m, _BLK))
            self._blk_min = bm.tolist()
            sm = np.minimum.reduceat(bm, np.arange(0, len(bm), _SUP))
            self._sup_min = sm.tolist()
            st = [sm]
            k = 1
            while (1 << k) <= len(sm):
                prev = st[-1]
                half = 1 << (k - 1)
                st.append(np.minimum(prev[: len(prev) - half], prev[half:]))
                k += 1
            self._st = [row.tolist() for row in st]
        else:
            self._blk_min = []
            self._sup_min = []
            self._st = []
        words = getattr(self.bv, "_words", None)
        self._word_at = words.__getitem__ if words is not None else self.bv.get_word

    @classmethod
    def from_depths(cls, depths, encoding: str = "plain") -> "BpTree":
        """Build from the preorder depth sequence (root depth 0)."""
        depths = np.asarray(depths, dtype=np.int64)
        n = len(depths)
        bits = np.zeros(2 * n, dtype=np.uint8)
        bits[2 * np.arange(n, dtype=np.int64) - depths] = 1
        return cls(bits, encoding)

    @classmethod
    def from_tree(cls, tree, encoding: str = "plain") -> "BpTree":
        return cls.from_depths(tree.depth_array(), encoding)

    def to_bp_string(self) -> str:
        word_at = self._word_at
        return "".join(
            "(" if (word_at(p >> 6) >> (p & 63)) & 1 else ")" for p in range(self.m)
        )

    # ------------------------------------------------------------------
    # excess primitives (positions 0-based)
    # ------------------------------------------------------------------
    def access0(self, p: int) -> int:
        return (self._word_at(p >> 6) >> (p & 63)) & 1

    def _excess_after(self, p: int) -> int:
        return 2 * self.bv.rank1_0(p + 1) - (p + 1)

    def _e_before(self, p: int) -> int:
        return 0 if p == 0 else 2 * self.bv.rank1_0(p) - p

    def _scan_min(self, lo: int, hi: int, e: int):
        """(min E, first position attaining it) over [lo, hi]; e = E[lo-1]."""
        word_at = self._word_at
        best, bestpos = _BIG, lo
        p = lo
        wk = -1
        w = 0
        while p <= hi:
            if (p & 7) == 0 and hi - p >= 7:
                k = p >> 6
                if k != wk:
                    w = word_at(k)
                    wk = k
                byte = (w >> (p & 56)) & 0xFF
                if e + MIN8[byte] < best:
                    ee = e
                    for j in range(8):
                        ee += 1 if (byte >> j) & 1 else -1
                        if ee < best:
                            best, bestpos = ee, p + j
                e += DELTA8[byte]
                p += 8
            else:
                k = p >> 6
                if k != wk:
                    w = word_at(k)
                    wk = k
                e += 1 if (w >> (p & 63)) & 1 else -1
                if e < best:
                    best, bestpos = e, p
                p += 1
        return best, bestpos

    def _scan_block_min(self, b: int):
        lo = b << 8
        hi = min(lo + _BLK, self.m) - 1
        return self._scan_min(lo, hi, self._e_before(lo))

    def _sup_range_min(self, s1: int, s2: int) -> int:
        k = (s2 - s1 + 1).bit_length() - 1
        row = self._st[k]
        return min(row[s1], row[s2 - (1 << k) + 1])

    def _first_sup_eq(self, s1: int, s2: int, v: int) -> int:
        while s1 < s2:
            mid = (s1 + s2) >> 1
            if self._sup_range_min(s1, mid) == v:
                s2 = mid
            else:
                s1 = mid + 1
        return s1

    def _rmq(self, i: int, j: int):
        """(min E, first position attaining it) over positions [i, j]."""
        bi, bj = i >> 8, j >> 8
        if bi == bj:
            return self._scan_min(i, j, self._e_before(i))
        best, bestpos = self._scan_min(i, ((bi + 1) << 8) - 1, self._e_before(i))
        lob, hib = bi + 1, bj - 1
        blk_min = self._blk_min
        if lob <= hib:
            s1 = (lob + _SUP - 1) // _SUP
            s2 = (hib + 1) // _SUP - 1
            if s1 > s2:
                for b in range(lob, hib + 1):
                    if blk_min[b] < best:
                        best, bestpos = self._scan_block_min(b)
            else:
                for b in range(lob, s1 << 3):
                    if blk_min[b] < best:
                        best, bestpos = self._scan_block_min(b)
                v = self._sup_range_min(s1, s2)
                if v < best:
                    s = self._first_sup_eq(s1, s2, v)
                    for b in range(s << 3, (s + 1) << 3):
                        if blk_min[b] == v:
                            best, bestpos = self._scan_block_min(b)
                            break
                for b in range((s2 + 1) << 3, hib + 1):
                    if blk_min[b] < best:
                        best, bestpos = self._scan_block_min(b)
        lo = bj << 8
        mb, pb = self._scan_min(lo, j, self._e_before(lo))
        if mb < best:
            best, bestpos = mb, pb
        return best, bestpos

    # -- directed searches ------------------------------------------------
    def _scan_fwd(self, lo: int, hi: int, e: int, target: int):
        word_at = self._word_at
        p = lo
        wk = -1
        w = 0
        while p <= hi:
            if (p & 7) == 0 and hi - p >= 7:
                k = p >> 6
                if k != wk:
                    w = word_at(k)
                    wk = k
                byte = (w >> (p & 56)) & 0xFF
                if e + MIN8[byte] <= target:
                    for j in range(8):
                        e += 1 if (byte >> j) & 1 else -1
                        if e == target:
                            return p + j
                else:
                    e += DELTA8[byte]
                p += 8
            else:
                k = p >> 6
                if k != wk:
                    w = word_at(k)
                    wk = k
                e += 1 if (w >> (p & 63)) & 1 else -1
                if e == target:
                    return p
                p += 1
        return None

    def _fwdsearch(self, start: int, e: int, target: int):
        """Smallest p >= start with E[p] == target; e = E[start-1] with the
        excess staying above target until the hit."""
        m = self.m
        if start >= m:
            return None
        b0 = start >> 8
        p = self._scan_fwd(start, min(((b0 + 1) << 8), m) - 1, e, target)
        if p is not None:
            return p
        blk_min = self._blk_min
        nb = len(blk_min)
        s0 = b0 >> 3
        for b in range(b0 + 1, min((s0 + 1) << 3, nb)):
            if blk_min[b] <= target:
                return self._scan_fwd_block(b, target)
        nsup = len(self._sup_min)
        if s0 + 1 < nsup and self._sup_range_min(s0 + 1, nsup - 1) <= target:
            lo, hi = s0 + 1, nsup - 1
            while lo < hi:
                mid = (lo + hi) >> 1
                if self._sup_range_min(lo, mid) <= target:
                    hi = mid
                else:
                    lo = mid + 1
            for b in range(lo << 3, min((lo + 1) << 3, nb)):
                if blk_min[b] <= target:
                    return self._scan_fwd_block(b, target)
            raise AssertionError("superblock minimum promised a hit")
        return None

    def _scan_fwd_block(self, b: int, target: int):
        lo = b << 8
        hi = min(lo + _BLK, self.m) - 1
        return self._scan_fwd(lo, hi, self._e_before(lo), target)

    def _scan_bwd(self, start: int, lo: int, e: int, target: int):
        """Largest p in [lo, start] with E[p] == target; e = E[start]."""
        word_at = self._word_at
        p = start
        wk = -1
        w = 0
        while p >= lo:
            if (p & 7) == 7 and p - lo >= 7:
                k = p >> 6
                if k != wk:
                    w = word_at(k)
                    wk = k
                byte = (w >> (p & 56)) & 0xFF
                if (e - DELTA8[byte]) + MIN8[byte] <= target:
                    for j in range(7, -1, -1):
                        if e == target:
                            return p - (7 - j)
                        e -= 1 if (byte >> j) & 1 else -1
                else:
                    e -= DELTA8[byte]
                p -= 8
            else:
                k = p >> 6
                if k != wk:
                    w = word_at(k)
                    wk = k
                if e == target:
                    return p
                e -= 1 if (w >> (p & 63)) & 1 else -1
                p -= 1
        return None

    def _scan_bwd_block(self, b: int, target: int) -> int:
        hi = min((b << 8) + _BLK, self.m) - 1
        p = self._scan_bwd(hi, b << 8, self._excess_after(hi), target)
        if p is None:
            raise AssertionError("block minimum promised a hit")
        return p

    def _bwdsearch(self, start: int, e: int, target: int) -> int:
        """Largest p <= start with E[p] == target; e = E[start] with the
        excess staying above target back to the hit.  Returns -1 for the
        sentinel E[-1] == 0 when target is 0 and nothing matches."""
        b0 = start >> 8
        p = self._scan_bwd(start, b0 << 8, e, target)
        if p is not None:
            return p
        blk_min = self._blk_min
        s0 = b0 >> 3
        for b in range(b0 - 1, (s0 << 3) - 1, -1):
            if blk_min[b] <= target:
                return self._scan_bwd_block(b, target)
        if s0 > 0 and self._sup_range_min(0, s0 - 1) <= target:
            lo, hi = 0, s0 - 1
            while lo < hi:
                mid = (lo + hi + 1) >> 1
                if self._sup_range_min(mid, hi) <= target:
                    lo = mid
                else:
                    hi = mid - 1
            for b in range(min((lo + 1) << 3, len(blk_min)) - 1, (lo << 3) - 1, -1):
                if blk_min[b] <= target:
                    return self._scan_bwd_block(b, target)
            raise AssertionError("superblock minimum promised a hit")
        if target == 0:
            return -1
        raise AssertionError("backward excess search fell off the sequence")

    # ------------------------------------------------------------------
    # node navigation (1-based preorder ids)
    # ------------------------------------------------------------------
    def _check_node(self, x: int):
        if not 1 <= x <= self.n:
            raise ValueError(f"node {x} out of range 1..{self.n}")

    def node_to_pos(self, x: int) -> int:
        self._check_node(x)
        return self.bv.select1_0(x)

    def pos_to_node(self, p: int) -> int:
        return self.bv.rank1_0(p + 1)

    def depth(self, x: int) -> int:
        self._check_node(x)
        return 2 * x - self.bv.select1_0(x) - 2

    def parent(self, x: int):
        self._check_node(x)
        p = self.bv.select1_0(x)
        if p == 0:
            return None
        e_open = 2 * x - p - 1
        q = self._bwdsearch(p - 1, e_open - 1, e_open - 2)
        return self.pos_to_node(q + 1)

    def lca(self, x: int, y: int) -> int:
        self._check_node(x)
        self._check_node(y)
        if x == y:
            return x
        if x > y:
            x, y = y, x
        px = self.bv.select1_0(x)
        py = self.bv.select1_0(y)
        e_px = 2 * x - px - 1
        mv, mp = self._rmq(px, py)
        if mv >= e_px:
            return x
        q = self._bwdsearch(mp, mv, mv - 1)
        return self.pos_to_node(q + 1)

    def level_anc(self, x: int, i: int) -> int:
        self._check_node(x)
        if i == 0:
            return x
        p = self.bv.select1_0(x)
        e_open = 2 * x - p - 1
        if not 0 <= i <= e_open - 1:
            raise ValueError(f"ancestor distance {i} exceeds depth {e_open - 1}")
        q = self._bwdsearch(p - 1, e_open - 1, e_open - i - 1)
        return self.pos_to_node(q + 1)

    def child(self, x: int, i: int):
        self._check_node(x)
        if i < 1:
            raise ValueError("child index is 1-based")
        p = self.bv.select1_0(x)
        e_child = 2 * x - p
        c = p + 1
        k = 0
        while c < self.m and self.access0(c):
            k += 1
            if k == i:
                return self.pos_to_node(c)
            c = self._fwdsearch(c + 1, e_child, e_child - 1) + 1
        return None

    def size_in_bits(self) -> int:
        return (self.bv.size_in_bits() + 32 * len(self._blk_min)
                + 32 * len(self._sup_min) + 32 * sum(len(r) for r in self._st))
