"""Binary wavelet tree over a weight sequence.

Levelwise layout: exactly ceil(lg sigma) bitmaps of length n with implicit
node boundaries.  A node covering weights [a, b] routes w left iff
w <= floor((a+b)/2); singleton nodes keep routing left (all-zero bits), so
every level bitmap has full length and child extents follow from rank
arithmetic alone.  Supports access, multi-range quantile, and 2d range
counting/reporting over position intervals.
"""
from __future__ import annotations

from bisect import bisect_left

import numpy as np

from .bitvec import build_bitvector


def _build_level_bits(seq, sigma):
    """Yield one uint8 bit array per level, plus nothing else retained."""
    vals = np.asarray(seq, dtype=np.int64)
    n = len(vals)
    if (vals < 1).any() or (vals > sigma).any():
        raise ValueError(f"weights must lie in [1..{sigma}]")
    nlevels = max(sigma - 1, 0).bit_length()
    lo = np.ones(n, dtype=np.int64)
    hi = np.full(n, sigma, dtype=np.int64)
    nid = np.zeros(n, dtype=np.int64)
    out = []
    for _ in range(nlevels):
        c = (lo + hi) >> 1
        bit = vals > c
        out.append(bit.astype(np.uint8))
        lo = np.where(bit, c + 1, lo)
        hi = np.where(bit, hi, c)
        key = nid * 2 + bit
        perm = np.argsort(key, kind="stable")
        vals = vals[perm]
        lo = lo[perm]
        hi = hi[perm]
        nid = key[perm]
    return out


class _WaveletBase:
    """Query algorithms; subclasses provide per-level rank/select/access."""

    n: int
    sigma: int
    nlevels: int

    # -- primitive layer ----------------------------------------------------
    def _rank1(self, d: int, p: int) -> int:
        raise NotImplementedError

    def _access(self, d: int, p: int) -> int:
        raise NotImplementedError

    def _select(self, d: int, t: int, j: int) -> int:
        raise NotImplementedError

    def size_in_bits(self) -> int:
        raise NotImplementedError

    # -- queries --------------------------------------------------------
    def access(self, i: int) -> int:
        if not 1 <= i <= self.n:
            raise ValueError(f"position {i} out of range 1..{self.n}")
        p = i - 1
        lo, hi, a, b = 0, self.n, 1, self.sigma
        for d in range(self.nlevels):
            if a == b:
                break
            c = (a + b) >> 1
            r1_lo = self._rank1(d, lo)
            if self._access(d, p):
                zn = (hi - self._rank1(d, hi)) - (lo - r1_lo)
                p = lo + zn + (self._rank1(d, p) - r1_lo)
                lo, a = lo + zn, c + 1
            else:
                p = lo + (p - lo) - (self._rank1(d, p) - r1_lo)
                hi, b = lo + ((hi - self._rank1(d, hi)) - (lo - r1_lo)), c
        return a

    def quantile_multi(self, intervals, k: int) -> int:
        """k-th smallest (0-based) weight over the union of [l, r] intervals."""
        iv = []
        total = 0
        for l, r in intervals:
            if not 1 <= l <= r <= self.n:
                raise ValueError(f"interval [{l},{r}] out of range")
            iv.append((l - 1, r))            # half-open 0-based
            total += r - l + 1
        if not 0 <= k < total:
            raise ValueError(f"rank {k} out of range for {total} weights")
        lo, hi, a, b = 0, self.n, 1, self.sigma
        d = 0
        while a < b:
            rank1 = self._rank1
            r1_lo = rank1(d, lo)
            z_lo = lo - r1_lo
            zn = (hi - rank1(d, hi)) - z_lo
            zL = []
            zR = []
            tz = 0
            for l, r in iv:
                zl = (l - rank1(d, l)) - z_lo
                zr = (r - rank1(d, r)) - z_lo
                tz += zr - zl
                zL.append(zl)
                zR.append(zr)
            c = (a + b) >> 1
            nxt = []
            if k < tz:
                for (l, r), zl, zr in zip(iv, zL, zR):
                    if zr > zl:
                        nxt.append((lo + zl, lo + zr))
                hi, b = lo + zn, c
            else:
                k -= tz
                base = lo + zn
                for (l, r), zl, zr in zip(iv, zL, zR):
                    ol = (l - lo) - zl
                    on = (r - lo) - zr
                    if on > ol:
                        nxt.append((base + ol, base + on))
                lo, a = base, c + 1
            iv = nxt
            d += 1
        return a

    def count_2d(self, interval, wrange) -> int:
        l, r = interval
        qa, qb = wrange
        self._check_2d(l, r, qa, qb)
        if self.nlevels == 0:
            return r - l + 1
        return self._count(0, 0, self.n, 1, self.sigma, l - 1, r - 1, qa, qb)

    def report_2d(self, interval, wrange) -> list[tuple[int, int]]:
        l, r = interval
        qa, qb = wrange
        self._check_2d(l, r, qa, qb)
        out: list[tuple[int, int]] = []
        if self.nlevels == 0:
            return [(p, 1) for p in range(l, r + 1)]
        self._report(0, 0, self.n, 1, self.sigma, l - 1, r - 1, qa, qb, [], out)
        return out

    def _check_2d(self, l, r, qa, qb):
        if not 1 <= l <= r <= self.n:
            raise ValueError(f"interval [{l},{r}] out of range 1..{self.n}")
        if not 1 <= qa <= qb <= self.sigma:
            raise ValueError(f"weight range [{qa},{qb}] out of range 1..{self.sigma}")

    def _children(self, d, lo, hi, l, r):
        rank1 = self._rank1
        r1_lo = rank1(d, lo)
        z_lo = lo - r1_lo
        zn = (hi - rank1(d, hi)) - z_lo
        zl = (l - rank1(d, l)) - z_lo
        zr = (r + 1 - rank1(d, r + 1)) - z_lo
        mid = lo + zn
        left = (lo, mid, lo + zl, lo + zr - 1)
        right = (mid, hi, mid + (l - lo) - zl, mid + (r + 1 - lo) - zr - 1)
        return left, right

    def _count(self, d, lo, hi, a, b, l, r, qa, qb) -> int:
        if l > r or qb < a or b < qa:
            return 0
        if qa <= a and b <= qb:
            return r - l + 1
        c = (a + b) >> 1
        (llo, lhi, ll, lr), (rlo, rhi, rl, rr) = self._children(d, lo, hi, l, r)
        return (self._count(d + 1, llo, lhi, a, c, ll, lr, qa, qb)
                + self._count(d + 1, rlo, rhi, c + 1, b, rl, rr, qa, qb))

    def _report(self, d, lo, hi, a, b, l, r, qa, qb, path, out):
        if l > r or qb < a or b < qa:
            return
        if qa <= a and b <= qb:
            for p in range(l, r + 1):
                out.append((self._unmap(path, p) + 1, self._value_at(d, lo, hi, a, b, p)))
            return
        c = (a + b) >> 1
        (llo, lhi, ll, lr), (rlo, rhi, rl, rr) = self._children(d, lo, hi, l, r)
        path.append((d, lo, llo, 0))
        self._report(d + 1, llo, lhi, a, c, ll, lr, qa, qb, path, out)
        path[-1] = (d, lo, rlo, 1)
        self._report(d + 1, rlo, rhi, c + 1, b, rl, rr, qa, qb, path, out)
        path.pop()

    def _value_at(self, d, lo, hi, a, b, p) -> int:
        rank1 = self._rank1
        while a < b:
            c = (a + b) >> 1
            r1_lo = rank1(d, lo)
            zn = (hi - rank1(d, hi)) - (lo - r1_lo)
            if self._access(d, p):
                p = lo + zn + (rank1(d, p) - r1_lo)
                lo, a = lo + zn, c + 1
            else:
                p = lo + (p - lo) - (rank1(d, p) - r1_lo)
                hi, b = lo + zn, c
            d += 1
        return a

    def _unmap(self, path, p) -> int:
        """Map a position back to level 0 through the recorded descent path."""
        for d, parent_lo, child_lo, side in reversed(path):
            off = p - child_lo
            if side:
                j = self._rank1(d, parent_lo) + off + 1
            else:
                j = (parent_lo - self._rank1(d, parent_lo)) + off + 1
            p = self._select(d, side, j)
        return p


class WaveletTree(_WaveletBase):
    """Succinct wavelet tree over plain or compressed bitmaps."""

    def __init__(self, seq, sigma: int, encoding: str = "plain"):
        self.sigma = sigma
        if sigma < 1:
            raise ValueError("sigma must be >= 1")
        level_bits = _build_level_bits(seq, sigma)
        self.n = len(seq)
        self.nlevels = len(level_bits)
        self.levels = [build_bitvector(bits, encoding) for bits in level_bits]

    def _rank1(self, d, p):
        return self.levels[d].rank1_0(p)

    def _access(self, d, p):
        return self.levels[d].access0(p)

    def _select(self, d, t, j):
        bv = self.levels[d]
        return bv.select1_0(j) if t else bv.select0_0(j)

    def size_in_bits(self) -> int:
        return sum(bv.size_in_bits() for bv in self.levels) + 64


class ArrayWaveletTree(_WaveletBase):
    """Pointer-style wavelet tree: per-level word arrays of prefix 1-counts
    (rank of zeros follows by subtraction)."""

    def __init__(self, seq, sigma: int):
        self.sigma = sigma
        if sigma < 1:
            raise ValueError("sigma must be >= 1")
        level_bits = _build_level_bits(seq, sigma)
        self.n = len(seq)
        self.nlevels = len(level_bits)
        self.prefix = []
        for bits in level_bits:
            pre = np.zeros(self.n + 1, dtype=np.int64)
            np.cumsum(bits, out=pre[1:])
            self.prefix.append(pre.tolist())

    def _rank1(self, d, p):
        return self.prefix[d][p]

    def _access(self, d, p):
        pre = self.prefix[d]
        return pre[p + 1] - pre[p]

    def _select(self, d, t, j):
        pre = self.prefix[d]
        if t:
            return bisect_left(pre, j) - 1
        lo, hi = 0, self.n
        while lo < hi:                        # first i with i - pre[i] >= j
            mid = (lo + hi) >> 1
            if mid - pre[mid] < j:
                lo = mid + 1
            else:
                hi = mid
        return lo - 1

    def size_in_bits(self) -> int:
        return 32 * sum(len(p) for p in self.prefix) + 64
