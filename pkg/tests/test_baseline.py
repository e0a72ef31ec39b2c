import numpy as np
import pytest

from treepath.baseline import NAIVE_VARIANTS, EulerLCA, NaiveIndex, PackedArray
from treepath.corpus import gen_tree, parse_ptw

from oracles import lca_walk, path_count, path_kth, path_median, path_report

WORKED_PTW = "10 8\n(((()())())((())()))\n5 3 8 1 4 8 2 7 6 2\n"


@pytest.fixture(scope="module")
def worked():
    return parse_ptw(WORKED_PTW)


@pytest.mark.parametrize("variant", NAIVE_VARIANTS)
def test_worked_tree_queries(worked, variant):
    idx = NaiveIndex(worked, variant)
    assert idx.traverse_path(5, 9) == [5, 3, 2, 1, 7, 8, 9]
    assert idx.traverse_path(4, 4) == [4]
    assert idx.median(4, 6) == 8
    assert idx.median(5, 9) == 5
    assert idx.median(3, 3) == 8
    assert idx.select(5, 9, 3) == 5
    assert idx.count(4, 6, 2, 7) == 1
    assert idx.count(5, 9, 3, 7) == 5
    assert idx.count(5, 9, 1, 8) == 7
    assert idx.report(4, 6, 2, 7) == [(2, 3)]
    assert idx.report(4, 6, 1, 8) == [(2, 3), (3, 8), (4, 1), (6, 8)]


def test_succinct_weights_decode(worked):
    idx = NaiveIndex(worked, "succinct")
    assert [idx._packed.get(i) for i in range(10)] == [5, 3, 8, 1, 4, 8, 2, 7, 6, 2]


def test_packed_array_random():
    rng = np.random.default_rng(4)
    for sigma in (1, 2, 3, 255, 256, 70000):
        vals = rng.integers(1, sigma + 1, 500).tolist()
        pa = PackedArray(vals, sigma)
        assert [pa.get(i) for i in range(500)] == vals


def test_euler_lca_matches_walk():
    for seed in range(5):
        t = gen_tree(400, 10, "uniform_attach", seed)
        lca = EulerLCA(t)
        rng = np.random.default_rng(seed)
        for _ in range(300):
            x = int(rng.integers(1, 401))
            y = int(rng.integers(1, 401))
            assert lca.lca(x, y) == lca_walk(t.parent, t.depth, x, y)
        assert lca.lca(7, 7) == 7


def test_single_node_tree():
    t = gen_tree(1, 5, "uniform_attach", 3)
    for variant in NAIVE_VARIANTS:
        idx = NaiveIndex(t, variant)
        w = t.weights[1]
        assert idx.median(1, 1) == w
        assert idx.count(1, 1, 1, 5) == 1
        assert idx.report(1, 1, w, w) == [(1, w)]
        assert idx.traverse_path(1, 1) == [1]


def test_variants_agree_and_match_oracle():
    rng = np.random.default_rng(17)
    for seed in range(6):
        n = int(rng.integers(2, 600))
        sigma = int(rng.integers(1, 40))
        shape = "long_paths" if seed % 2 else "uniform_attach"
        t = gen_tree(n, sigma, shape, seed)
        idxs = [NaiveIndex(t, v) for v in NAIVE_VARIANTS]
        for _ in range(60):
            x = int(rng.integers(1, n + 1))
            y = int(rng.integers(1, n + 1))
            a = int(rng.integers(1, sigma + 1))
            b = int(rng.integers(a, sigma + 1))
            med = path_median(t.parent, t.depth, t.weights, x, y)
            cnt = path_count(t.parent, t.depth, t.weights, x, y, a, b)
            rep = path_report(t.parent, t.depth, t.weights, x, y, a, b)
            plen = len(idxs[0].traverse_path(x, y))
            k = int(rng.integers(0, plen))
            kth = path_kth(t.parent, t.depth, t.weights, x, y, k)
            for idx in idxs:
                assert idx.median(x, y) == med
                assert idx.count(x, y, a, b) == cnt
                assert idx.report(x, y, a, b) == rep
                assert idx.select(x, y, k) == kth


def test_path_length_identity():
    t = gen_tree(300, 5, "uniform_attach", 1)
    idx = NaiveIndex(t, "explicit-lca")
    rng = np.random.default_rng(2)
    for _ in range(100):
        x = int(rng.integers(1, 301))
        y = int(rng.integers(1, 301))
        z = idx.sparse_lca(x, y)
        assert len(idx.traverse_path(x, y)) == t.depth[x] + t.depth[y] - 2 * t.depth[z] + 1


def test_errors(worked):
    idx = NaiveIndex(worked, "explicit")
    with pytest.raises(ValueError):
        idx.median(0, 5)
    with pytest.raises(ValueError):
        idx.count(1, 2, 5, 3)
    with pytest.raises(ValueError):
        idx.count(1, 2, 0, 3)
    with pytest.raises(ValueError):
        idx.select(5, 9, 7)
    with pytest.raises(ValueError):
        idx.sparse_lca(1, 2)
    with pytest.raises(ValueError):
        NaiveIndex(worked, "bogus")


def test_succinct_size_bound():
    t = gen_tree(1 << 16, 256, "uniform_attach", 0)
    idx = NaiveIndex(t, "succinct")
    per_node = idx.size_in_bits() / t.n
    assert per_node <= 1.3 * (2 + 8)
    lca_idx = NaiveIndex(t, "explicit-lca")
    plain = NaiveIndex(t, "explicit")
    assert lca_idx.size_in_bits() > plain.size_in_bits()
