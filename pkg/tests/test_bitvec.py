import numpy as np
import pytest

from treepath.bitvec import CompressedBitVector, PlainBitVector, build_bitvector

# HPD reference-count bitmap of the worked 10-node tree
WORKED = "10000111101010001110"


def scan_rank(bits, t, i):
    return sum(1 for p in range(i - 1) if int(bits[p]) == t)


def scan_select(bits, t, j):
    seen = 0
    for p, ch in enumerate(bits):
        if int(ch) == t:
            seen += 1
            if seen == j:
                return p + 1
    raise AssertionError("select oracle out of range")


@pytest.mark.parametrize("encoding", ["plain", "compressed"])
def test_empty_vector(encoding):
    bv = build_bitvector("", encoding)
    assert len(bv) == 0
    assert bv.rank(1, 1) == 0
    assert bv.rank(0, 1) == 0


@pytest.mark.parametrize("encoding", ["plain", "compressed"])
def test_worked_bitmap_counts(encoding):
    bv = build_bitvector(WORKED, encoding)
    assert len(bv) == 20
    assert bv.count(1) == 10
    assert bv.rank(1, 6) == 1
    assert bv.select(1, 7) == 13
    assert bv.access(13) == 1
    assert bv.access(2) == 0


def test_rank_select_trivia():
    bv = build_bitvector("1", "plain")
    assert bv.select(1, 1) == 1
    assert build_bitvector("10", "plain").access(2) == 0
    for b in ("0110", "1", "000", WORKED):
        assert build_bitvector(b, "plain").rank(1, 1) == 0


@pytest.mark.parametrize("encoding", ["plain", "compressed"])
def test_exhaustive_small_against_scan(encoding):
    rng = np.random.default_rng(7)
    for m in (1, 2, 15, 16, 63, 64, 65, 255, 256, 257, 480, 481, 1000):
        bits = rng.integers(0, 2, m).astype(np.uint8)
        s = "".join("1" if x else "0" for x in bits)
        bv = build_bitvector(bits, encoding)
        ones = int(bits.sum())
        assert bv.count(1) == ones
        for i in range(1, m + 2):
            assert bv.rank(1, i) == scan_rank(s, 1, i)
            assert bv.rank(0, i) == (i - 1) - bv.rank(1, i)
        for i in range(1, m + 1):
            assert bv.access(i) == int(s[i - 1])
        for j in range(1, ones + 1):
            assert bv.select(1, j) == scan_select(s, 1, j)
        for j in range(1, m - ones + 1):
            assert bv.select(0, j) == scan_select(s, 0, j)


def test_select_rank_inverse_property():
    rng = np.random.default_rng(123)
    for _ in range(20):
        m = int(rng.integers(1, 3000))
        bits = (rng.random(m) < rng.random()).astype(np.uint8)
        bv = build_bitvector(bits, "plain")
        for p in rng.integers(1, m + 1, 50):
            p = int(p)
            t = bv.access(p)
            assert bv.select(t, bv.rank(t, p) + 1) == p


def test_plain_compressed_equivalence_random():
    rng = np.random.default_rng(2024)
    for trial in range(60):
        density = [0.01, 0.5, 0.99][trial % 3]
        m = int(rng.integers(1, 4000))
        bits = (rng.random(m) < density).astype(np.uint8)
        p = PlainBitVector(bits)
        c = CompressedBitVector(bits)
        assert p.count(1) == c.count(1)
        for i in rng.integers(1, m + 2, 40):
            i = int(i)
            assert p.rank(1, i) == c.rank(1, i)
            assert p.rank(0, i) == c.rank(0, i)
        for i in rng.integers(1, m + 1, 20):
            assert p.access(int(i)) == c.access(int(i))
        ones = p.count(1)
        if ones:
            for j in rng.integers(1, ones + 1, 20):
                assert p.select(1, int(j)) == c.select(1, int(j))
        if m - ones:
            for j in rng.integers(1, m - ones + 1, 20):
                assert p.select(0, int(j)) == c.select(0, int(j))


@pytest.mark.parametrize("encoding", ["plain", "compressed"])
def test_word_extraction(encoding):
    rng = np.random.default_rng(5)
    m = 1337
    bits = (rng.random(m) < 0.4).astype(np.uint8)
    bv = build_bitvector(bits, encoding)
    for k in range((m + 63) // 64):
        w = bv.get_word(k)
        for j in range(64):
            p = 64 * k + j
            expect = int(bits[p]) if p < m else 0
            assert (w >> j) & 1 == expect


def test_errors():
    bv = build_bitvector("101", "plain")
    with pytest.raises(ValueError):
        bv.rank(1, 0)
    with pytest.raises(ValueError):
        bv.rank(1, 5)
    with pytest.raises(ValueError):
        bv.select(1, 3)
    with pytest.raises(ValueError):
        bv.select(0, 2)
    with pytest.raises(ValueError):
        bv.access(4)
    with pytest.raises(ValueError):
        build_bitvector("1", "zip")


def test_compressed_smaller_on_sparse_vectors():
    rng = np.random.default_rng(42)
    m = 1 << 16
    for density in (0.01, 0.05, 0.10):
        bits = (rng.random(m) < density).astype(np.uint8)
        p = PlainBitVector(bits)
        c = CompressedBitVector(bits)
        assert c.size_in_bits() <= p.size_in_bits()
        assert p.size_in_bits() <= 1.25 * m + 256
