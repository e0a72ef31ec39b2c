import numpy as np
import pytest

from treepath.wavelet import ArrayWaveletTree, WaveletTree

# the HPD weight string C of the worked 10-node tree
C = [5, 3, 8, 1, 4, 8, 2, 7, 6, 2]


def quantile_oracle(seq, intervals, k):
    pool = []
    for l, r in intervals:
        pool.extend(seq[l - 1:r])
    return sorted(pool)[k]


def count_oracle(seq, l, r, a, b):
    return sum(1 for w in seq[l - 1:r] if a <= w <= b)


def report_oracle(seq, l, r, a, b):
    return sorted((p, seq[p - 1]) for p in range(l, r + 1) if a <= seq[p - 1] <= b)


def build(seq, sigma, flavor):
    if flavor == "array":
        return ArrayWaveletTree(seq, sigma)
    return WaveletTree(seq, sigma, flavor)


FLAVORS = ["plain", "compressed", "array"]


@pytest.mark.parametrize("flavor", FLAVORS)
def test_access_reconstructs_worked_sequence(flavor):
    wt = build(C, 8, flavor)
    assert [wt.access(i) for i in range(1, 11)] == C


@pytest.mark.parametrize("flavor", FLAVORS)
def test_sigma_one(flavor):
    wt = build([1, 1, 1], 1, flavor)
    assert wt.nlevels == 0
    assert wt.access(2) == 1
    assert wt.quantile_multi([(1, 3)], 0) == 1
    assert wt.count_2d((1, 3), (1, 1)) == 3
    assert wt.report_2d((2, 3), (1, 1)) == [(2, 1), (3, 1)]


@pytest.mark.parametrize("flavor", FLAVORS)
def test_worked_examples(flavor):
    wt = build(C, 8, flavor)
    # path-median of the (5,9) query through HPD interval decomposition
    assert wt.quantile_multi([(5, 5), (7, 9), (1, 3)], 3) == 5
    assert wt.quantile_multi([(1, 3)], 0) == 3
    for i in range(1, 11):
        assert wt.quantile_multi([(i, i)], 0) == C[i - 1]
    assert wt.count_2d((1, 10), (2, 7)) == 7
    assert wt.count_2d((3, 6), (1, 8)) == 4
    assert wt.count_2d((1, 4), (6, 7)) == 0
    assert sorted(wt.report_2d((1, 4), (2, 7))) == [(1, 5), (2, 3)]
    assert sorted(wt.report_2d((1, 10), (1, 8))) == [(i + 1, w) for i, w in enumerate(C)]


@pytest.mark.parametrize("flavor", FLAVORS)
def test_quantile_enumerates_sorted_sequence(flavor):
    rng = np.random.default_rng(6)
    seq = rng.integers(1, 50, 300).tolist()
    wt = build(seq, 49, flavor)
    expect = sorted(seq)
    got = [wt.quantile_multi([(1, 300)], k) for k in range(300)]
    assert got == expect


@pytest.mark.parametrize("flavor", FLAVORS)
@pytest.mark.parametrize("sigma", [2, 3, 7, 8, 100, 1024])
def test_random_against_oracles(flavor, sigma):
    rng = np.random.default_rng(sigma)
    n = 400
    seq = rng.integers(1, sigma + 1, n).tolist()
    wt = build(seq, sigma, flavor)
    for i in range(1, n + 1):
        assert wt.access(i) == seq[i - 1]
    for _ in range(150):
        # random disjoint intervals
        cuts = sorted(rng.integers(1, n + 1, 6).tolist())
        ivs = []
        prev = 0
        for a, b in zip(cuts[::2], cuts[1::2]):
            if a > prev and a <= b:
                ivs.append((a, b))
                prev = b
        if not ivs:
            ivs = [(1, n)]
        total = sum(r - l + 1 for l, r in ivs)
        k = int(rng.integers(0, total))
        assert wt.quantile_multi(ivs, k) == quantile_oracle(seq, ivs, k)
    for _ in range(150):
        l = int(rng.integers(1, n + 1))
        r = int(rng.integers(l, n + 1))
        a = int(rng.integers(1, sigma + 1))
        b = int(rng.integers(a, sigma + 1))
        assert wt.count_2d((l, r), (a, b)) == count_oracle(seq, l, r, a, b)
        got = sorted(wt.report_2d((l, r), (a, b)))
        assert got == report_oracle(seq, l, r, a, b)
        assert len(got) == wt.count_2d((l, r), (a, b))


@pytest.mark.parametrize("flavor", FLAVORS)
def test_full_range_is_interval_length(flavor):
    rng = np.random.default_rng(77)
    seq = rng.integers(1, 33, 200).tolist()
    wt = build(seq, 32, flavor)
    assert wt.count_2d((17, 131), (1, 32)) == 115


def test_errors():
    wt = WaveletTree(C, 8)
    with pytest.raises(ValueError):
        wt.quantile_multi([(1, 3)], 3)
    with pytest.raises(ValueError):
        wt.quantile_multi([(0, 3)], 0)
    with pytest.raises(ValueError):
        wt.count_2d((1, 11), (1, 8))
    with pytest.raises(ValueError):
        wt.count_2d((1, 10), (0, 8))
    with pytest.raises(ValueError):
        wt.access(11)
    with pytest.raises(ValueError):
        WaveletTree([9], 8)


def test_plain_vs_compressed_sizes_random_dense():
    rng = np.random.default_rng(9)
    seq = rng.integers(1, 257, 5000).tolist()
    a = WaveletTree(seq, 256, "plain")
    b = WaveletTree(seq, 256, "compressed")
    assert a.size_in_bits() > 0 and b.size_in_bits() > 0
