"""Bit vectors with rank/select/access in plain and compressed encodings.

Public positions are 1-based and ``rank`` counts strictly preceding
positions, so ``rank(t, 1) == 0`` and ``rank(0, i) + rank(1, i) == i - 1``.
Internally everything is 0-based; the ``*_0`` methods are the fast paths
used by the tree and wavelet layers.

Plain vectors store 64-bit words (LSB-first within a word) plus an
absolute rank sample every 256 bits.  Compressed vectors use class/offset
blocks of 15 bits with a two-level (rank, offset-pointer) directory every
32 blocks; runs and skewed densities shrink, dense random data pays a
small premium.
"""
from __future__ import annotations

from bisect import bisect_right

import numpy as np

# ---------------------------------------------------------------------------
# byte-level lookup tables (LSB-first bit order inside a byte)
# ---------------------------------------------------------------------------

POP8 = tuple(bin(b).count("1") for b in range(256))
DELTA8 = tuple(2 * POP8[b] - 8 for b in range(256))


def _min_prefix(b: int) -> int:
    e, mn = 0, 8
    for j in range(8):
        e += 1 if (b >> j) & 1 else -1
        if e < mn:
            mn = e
    return mn


MIN8 = tuple(_min_prefix(b) for b in range(256))
SEL8 = tuple(tuple(j for j in range(8) if (b >> j) & 1) for b in range(256))

RANK_BLOCK = 256          # bits per rank-directory entry
_WORDS_PER_BLOCK = RANK_BLOCK // 64

# ---------------------------------------------------------------------------
# class/offset tables for the compressed encoding (block size 15)
# ---------------------------------------------------------------------------

RRR_BLOCK = 15
RRR_SUPER = 32            # blocks per directory sample


def _build_rrr_tables():
    pats = np.arange(1 << RRR_BLOCK, dtype=np.uint16)
    classes = np.bitwise_count(pats).astype(np.uint8)
    binom = np.bincount(classes, minlength=RRR_BLOCK + 1)
    base = np.zeros(RRR_BLOCK + 2, dtype=np.int64)
    base[1:] = np.cumsum(binom)
    order = np.argsort(classes, kind="stable")
    pat_of = pats[order]                      # patterns grouped by class, numeric order
    off_of = np.empty(1 << RRR_BLOCK, dtype=np.uint16)
    off_of[pat_of] = (np.arange(1 << RRR_BLOCK) - base[classes[pat_of]]).astype(np.uint16)
    widths = tuple(max(int(np.ceil(np.log2(c))), 0) if c > 1 else 0 for c in binom)
    return classes, off_of, pat_of, base, widths


_RRR_CLASS, _RRR_OFFSET, _RRR_PATTERN, _RRR_BASE, RRR_WIDTH = _build_rrr_tables()
_RRR_BASE_L = tuple(int(x) for x in _RRR_BASE[: RRR_BLOCK + 1])
_RRR_PATTERN_L = tuple(int(x) for x in _RRR_PATTERN)


def _as_bit_array(bits) -> np.ndarray:
    """Coerce a bit string / sequence / ndarray to a uint8 0-1 array."""
    if isinstance(bits, np.ndarray):
        return bits.astype(np.uint8, copy=False)
    if isinstance(bits, str):
        if bits and set(bits) - {"0", "1"}:
            raise ValueError("bit string may contain only 0 and 1")
        return np.frombuffer(bits.encode("ascii"), dtype=np.uint8) - ord("0")
    return np.asarray(list(bits), dtype=np.uint8)


class BitVector:
    """Shared 1-based facade; subclasses supply the 0-based primitives."""

    encoding = "?"

    # -- subclass interface -------------------------------------------------
    def rank1_0(self, p: int) -> int:
        raise NotImplementedError

    def select1_0(self, j: int) -> int:
        raise NotImplementedError

    def select0_0(self, j: int) -> int:
        raise NotImplementedError

    def access0(self, p: int) -> int:
        raise NotImplementedError

    def get_word(self, k: int) -> int:
        """64 logical bits starting at position 64*k (LSB-first)."""
        raise NotImplementedError

    def size_in_bits(self) -> int:
        raise NotImplementedError

    # -- public contract ----------------------------------------------------
    def __len__(self) -> int:
        return self.m

    def count(self, t: int) -> int:
        return self.n_ones if t else self.m - self.n_ones

    def rank(self, t: int, i: int) -> int:
        if not 1 <= i <= self.m + 1:
            raise ValueError(f"rank position {i} out of range 1..{self.m + 1}")
        r = self.rank1_0(i - 1)
        return r if t else (i - 1) - r

    def select(self, t: int, j: int) -> int:
        if not 1 <= j <= self.count(t):
            raise ValueError(f"select({t}, {j}) out of range; only {self.count(t)} such bits")
        return (self.select1_0(j) if t else self.select0_0(j)) + 1

    def access(self, i: int) -> int:
        if not 1 <= i <= self.m:
            raise ValueError(f"access position {i} out of range 1..{self.m}")
        return self.access0(i - 1)

    def to_bit_array(self) -> np.ndarray:
        out = np.zeros(self.m, dtype=np.uint8)
        for p in range(self.m):
            out[p] = self.access0(p)
        return out


class PlainBitVector(BitVector):
    encoding = "plain"

    __slots__ = ("m", "n_ones", "_words", "_brank")

    def __init__(self, bits):
        a = _as_bit_array(bits)
        self.m = len(a)
        packed = np.packbits(a, bitorder="little")
        pad = (-len(packed)) % 8
        if pad:
            packed = np.concatenate([packed, np.zeros(pad, dtype=np.uint8)])
        self._words = packed.view(np.uint64).tolist()
        nblocks = (self.m + RANK_BLOCK - 1) // RANK_BLOCK
        br = [0] * (nblocks + 1)
        if self.m:
            counts = np.add.reduceat(a, np.arange(0, self.m, RANK_BLOCK))
            br[1:] = np.cumsum(counts).tolist()
        self._brank = br
        self.n_ones = br[-1]

    def rank1_0(self, p: int) -> int:
        b = p >> 8
        r = self._brank[b]
        w = b << 2
        last = p >> 6
        words = self._words
        while w < last:
            r += words[w].bit_count()
            w += 1
        rem = p & 63
        if rem:
            r += (words[last] & ((1 << rem) - 1)).bit_count()
        return r

    def select1_0(self, j: int) -> int:
        b = bisect_right(self._brank, j - 1) - 1
        r = j - self._brank[b]
        w = b << 2
        words = self._words
        while True:
            c = words[w].bit_count()
            if r <= c:
                break
            r -= c
            w += 1
        x = words[w]
        pos = w << 6
        while True:
            byte = x & 0xFF
            c = POP8[byte]
            if r <= c:
                return pos + SEL8[byte][r - 1]
            r -= c
            x >>= 8
            pos += 8

    def select0_0(self, j: int) -> int:
        br = self._brank
        m = self.m
        lo, hi = 0, len(br) - 1          # invariant: zeros(lo) < j <= zeros(hi)
        while hi - lo > 1:
            mid = (lo + hi) >> 1
            if min(mid << 8, m) - br[mid] < j:
                lo = mid
            else:
                hi = mid
        r = j - ((lo << 8) - br[lo])
        w = lo << 2
        words = self._words
        while True:
            c = 64 - words[w].bit_count()
            if r <= c:
                break
            r -= c
            w += 1
        x = ~words[w] & 0xFFFFFFFFFFFFFFFF
        pos = w << 6
        while True:
            byte = x & 0xFF
            c = POP8[byte]
            if r <= c:
                return pos + SEL8[byte][r - 1]
            r -= c
            x >>= 8
            pos += 8

    def access0(self, p: int) -> int:
        return (self._words[p >> 6] >> (p & 63)) & 1

    def get_word(self, k: int) -> int:
        return self._words[k]

    def size_in_bits(self) -> int:
        return 64 * len(self._words) + 32 * len(self._brank)


class CompressedBitVector(BitVector):
    """Class/offset blocks of 15 bits (entropy-compressed encoding)."""

    encoding = "compressed"

    __slots__ = ("m", "n_ones", "_classes", "_obits", "_obits_len",
                 "_super_rank", "_super_ptr")

    def __init__(self, bits):
        a = _as_bit_array(bits)
        self.m = len(a)
        pad = (-len(a)) % RRR_BLOCK
        if pad:
            a = np.concatenate([a, np.zeros(pad, dtype=np.uint8)])
        nb = len(a) // RRR_BLOCK
        if nb:
            vals = a.reshape(nb, RRR_BLOCK).astype(np.uint16)
            vals = vals @ (1 << np.arange(RRR_BLOCK, dtype=np.uint16))
            classes = _RRR_CLASS[vals]
            offsets = _RRR_OFFSET[vals]
        else:
            classes = np.zeros(0, dtype=np.uint8)
            offsets = np.zeros(0, dtype=np.uint16)
        self._classes = classes.tolist()
        self.n_ones = int(classes.sum(dtype=np.int64))

        widths = np.array(RRR_WIDTH, dtype=np.int64)[classes] if nb else np.zeros(0, dtype=np.int64)
        ptrs = np.zeros(nb + 1, dtype=np.int64)
        np.cumsum(widths, out=ptrs[1:])
        ranks = np.zeros(nb + 1, dtype=np.int64)
        np.cumsum(classes, dtype=np.int64, out=ranks[1:])
        self._super_rank = ranks[::RRR_SUPER].tolist() + [self.n_ones]
        self._super_ptr = ptrs[::RRR_SUPER].tolist()

        # pack the variable-width offsets into one little-endian bit stream
        total = int(ptrs[-1])
        self._obits_len = total
        buf = [0] * ((total + 63) // 64 + 1)
        off_l = offsets.tolist()
        ptr_l = ptrs.tolist()
        wid_l = widths.tolist()
        for i in range(nb):
            w = wid_l[i]
            if not w:
                continue
            p = ptr_l[i]
            k, sh = p >> 6, p & 63
            buf[k] |= (off_l[i] << sh) & 0xFFFFFFFFFFFFFFFF
            if sh + w > 64:
                buf[k + 1] |= off_l[i] >> (64 - sh)
        self._obits = buf

    # -- block decoding -------------------------------------------------
    def _offset_at(self, ptr: int, width: int) -> int:
        if not width:
            return 0
        k, sh = ptr >> 6, ptr & 63
        v = self._obits[k] >> sh
        if sh + width > 64:
            v |= self._obits[k + 1] << (64 - sh)
        return v & ((1 << width) - 1)

    def _decode_from(self, s: int, b: int):
        """Walk blocks from superblock s up to block b; return (rank, pattern)."""
        classes = self._classes
        r = self._super_rank[s]
        ptr = self._super_ptr[s]
        for i in range(s * RRR_SUPER, b):
            c = classes[i]
            r += c
            ptr += RRR_WIDTH[c]
        c = classes[b]
        pat = _RRR_PATTERN_L[_RRR_BASE_L[c] + self._offset_at(ptr, RRR_WIDTH[c])]
        return r, pat

    def rank1_0(self, p: int) -> int:
        if p <= 0:
            return 0
        if p >= self.m:
            return self.n_ones
        b = p // RRR_BLOCK
        r, pat = self._decode_from(b // RRR_SUPER, b)
        rem = p - b * RRR_BLOCK
        if rem:
            r += (pat & ((1 << rem) - 1)).bit_count()
        return r

    def access0(self, p: int) -> int:
        b = p // RRR_BLOCK
        _, pat = self._decode_from(b // RRR_SUPER, b)
        return (pat >> (p - b * RRR_BLOCK)) & 1

    def _select_scan(self, s: int, j: int, ones: bool) -> int:
        classes = self._classes
        r = self._super_rank[s]
        if not ones:
            r = s * RRR_SUPER * RRR_BLOCK - r
        ptr = self._super_ptr[s]
        i = s * RRR_SUPER
        while True:
            c = classes[i]
            step = c if ones else RRR_BLOCK - c
            if r + step >= j:
                break
            r += step
            ptr += RRR_WIDTH[c]
            i += 1
        c = classes[i]
        pat = _RRR_PATTERN_L[_RRR_BASE_L[c] + self._offset_at(ptr, RRR_WIDTH[c])]
        if not ones:
            pat = ~pat & 0x7FFF
        need = j - r
        pos = i * RRR_BLOCK
        while True:
            byte = pat & 0xFF
            cnt = POP8[byte]
            if need <= cnt:
                return pos + SEL8[byte][need - 1]
            need -= cnt
            pat >>= 8
            pos += 8

    def select1_0(self, j: int) -> int:
        s = bisect_right(self._super_rank, j - 1) - 1
        s = min(s, len(self._super_ptr) - 1)
        return self._select_scan(s, j, True)

    def select0_0(self, j: int) -> int:
        sr = self._super_rank
        nsup = len(self._super_ptr)
        lo, hi = 0, nsup
        while hi - lo > 1:                      # zeros(lo) < j
            mid = (lo + hi) >> 1
            if mid * RRR_SUPER * RRR_BLOCK - sr[mid] < j:
                lo = mid
            else:
                hi = mid
        return self._select_scan(lo, j, False)

    def get_word(self, k: int) -> int:
        start = k << 6
        if start >= self.m:
            return 0
        b = start // RRR_BLOCK
        s = b // RRR_SUPER
        classes = self._classes
        ptr = self._super_ptr[s]
        for i in range(s * RRR_SUPER, b):
            ptr += RRR_WIDTH[classes[i]]
        out = 0
        shift = b * RRR_BLOCK - start           # may be negative for the first block
        nb = len(classes)
        while shift < 64 and b < nb:
            c = classes[b]
            pat = _RRR_PATTERN_L[_RRR_BASE_L[c] + self._offset_at(ptr, RRR_WIDTH[c])]
            if shift >= 0:
                out |= pat << shift
            else:
                out |= pat >> -shift
            ptr += RRR_WIDTH[c]
            shift += RRR_BLOCK
            b += 1
        return out & 0xFFFFFFFFFFFFFFFF

    def size_in_bits(self) -> int:
        return (4 * len(self._classes) + self._obits_len
                + 32 * (len(self._super_rank) + len(self._super_ptr)))


def build_bitvector(bits, encoding: str = "plain") -> BitVector:
    """Build an immutable bit vector; ``encoding`` is ``plain`` or ``compressed``."""
    if encoding == "plain":
        return PlainBitVector(bits)
    if encoding == "compressed":
        return CompressedBitVector(bits)
    raise ValueError(f"unknown bit vector encoding {encoding!r}")
