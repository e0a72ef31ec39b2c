import numpy as np
import pytest

from treepath.corpus import (
    KIND_COUNT,
    KIND_MEDIAN,
    KIND_REPORT,
    PathQuery,
    PtwFormatError,
    format_answer,
    format_query,
    gen_queries,
    gen_tree,
    normalize_weights,
    parse_ptw,
    parse_queries,
    serialize_ptw,
)

WORKED_PTW = "10 8\n(((()())())((())()))\n5 3 8 1 4 8 2 7 6 2\n"


def test_parse_worked_tree():
    t = parse_ptw(WORKED_PTW)
    assert t.n == 10 and t.sigma == 8
    assert t.weights[1:] == [5, 3, 8, 1, 4, 8, 2, 7, 6, 2]
    assert t.parent[1:] == [0, 1, 2, 3, 3, 2, 1, 7, 8, 7]
    assert t.depth[1:] == [0, 1, 2, 3, 3, 2, 1, 2, 3, 2]
    assert t.children(1) == [2, 7]
    assert t.children(3) == [4, 5]
    assert t.subtree_sizes()[1:] == [10, 5, 3, 1, 1, 1, 4, 2, 1, 1]


def test_single_node_round_trip():
    t = parse_ptw("1 1\n()\n1\n")
    assert t.n == 1 and t.weights[1] == 1
    assert serialize_ptw(t) == "1 1\n()\n1\n"


def test_round_trip_identity():
    assert serialize_ptw(parse_ptw(WORKED_PTW)) == WORKED_PTW
    for seed in range(5):
        t = gen_tree(200, 17, "uniform_attach", seed)
        assert serialize_ptw(parse_ptw(serialize_ptw(t))) == serialize_ptw(t)


@pytest.mark.parametrize("bad,line", [
    ("10 8\n((((\n1\n", 2),                      # wrong BP length
    ("2 8\n()()\n1 2\n", 2),                     # forest, not a tree
    ("2 8\n())(\n1 2\n", 2),                     # unbalanced
    ("2 8\n(())\n1\n", 3),                       # weight count mismatch
    ("2 8\n(())\n1 9\n", 3),                     # weight out of range
    ("2 8\n(())\n1 x\n", 3),                     # non-integer weight
    ("x 8\n(())\n1 1\n", 1),                     # bad header
    ("2 8\n(x))\n1 1\n", 2),                     # bad BP character
])
def test_parse_errors(bad, line):
    with pytest.raises(PtwFormatError) as ei:
        parse_ptw(bad)
    assert ei.value.line == line


def test_normalize_weights():
    ranks, decode = normalize_weights([10, 3, 10, 7])
    assert ranks == [3, 1, 3, 2]
    assert decode == [3, 7, 10]
    assert normalize_weights([1, 2, 3])[0] == [1, 2, 3]
    ranks, decode = normalize_weights([5, 5, 5])
    assert ranks == [1, 1, 1] and decode == [5]


def test_gen_tree_determinism_and_shapes():
    a = gen_tree(500, 9, "long_paths", 3)
    b = gen_tree(500, 9, "long_paths", 3)
    assert a.parent == b.parent and a.weights == b.weights
    c = gen_tree(500, 9, "uniform_attach", 3)
    assert c.parent != a.parent
    single = gen_tree(1, 1, "uniform_attach", 44)
    assert single.n == 1 and single.weights[1] == 1
    with pytest.raises(ValueError):
        gen_tree(0, 1, "uniform_attach", 1)
    with pytest.raises(ValueError):
        gen_tree(5, 5, "star", 1)


def test_gen_tree_parents_precede():
    for shape in ("uniform_attach", "long_paths"):
        t = gen_tree(2000, 50, shape, 12)
        for i in range(2, t.n + 1):
            assert 1 <= t.parent[i] < i


def test_long_paths_is_unary_heavy():
    t = gen_tree(10_000, 100, "long_paths", 7)
    unary = sum(1 for x in range(1, t.n + 1) if len(t.children(x)) == 1)
    frac = unary / t.n
    assert frac >= 0.5
    # regression pin for the fixed generator
    assert abs(frac - 0.9965) < 0.003


def test_gen_queries_shapes():
    t = gen_tree(300, 300, "uniform_attach", 1)
    qs = gen_queries(t, KIND_MEDIAN, 10, 50, 5)
    assert len(qs) == 50
    assert all(q.a is None and q.b is None for q in qs)
    assert gen_queries(t, KIND_COUNT, 1, 0, 5) == []
    qs = gen_queries(t, KIND_REPORT, 10, 200, 5)
    assert all(1 <= q.a <= q.b <= t.sigma for q in qs)
    assert all(1 <= q.x <= t.n and 1 <= q.y <= t.n for q in qs)
    # median ignores the K factor entirely
    assert gen_queries(t, KIND_MEDIAN, 1, 50, 5) == gen_queries(t, KIND_MEDIAN, 100, 50, 5)


def test_gen_queries_coverage_k1():
    # permutation weights: coverage of [a,b] is (b-a+1)/n
    t = gen_tree(1000, 1000, "uniform_attach", 8)
    t.weights[1:] = np.random.default_rng(0).permutation(1000) + 1
    qs = gen_queries(t, KIND_COUNT, 1, 20_000, 9)
    cov = np.mean([(q.b - q.a + 1) / t.n for q in qs])
    assert 0.2 <= cov <= 0.3


def test_query_wire_format():
    q = PathQuery(KIND_COUNT, 4, 6, 2, 7)
    assert format_query(q) == "C 4 6 2 7"
    assert parse_queries("M 5 9\nC 4 6 2 7\nR 1 2 1 8\n") == [
        PathQuery(KIND_MEDIAN, 5, 9),
        PathQuery(KIND_COUNT, 4, 6, 2, 7),
        PathQuery(KIND_REPORT, 1, 2, 1, 8),
    ]
    with pytest.raises(PtwFormatError):
        parse_queries("X 1 2\n")
    with pytest.raises(PtwFormatError):
        parse_queries("M 1\n")
    with pytest.raises(PtwFormatError):
        parse_queries("C 1 2 3\n")


def test_answer_format():
    assert format_answer(PathQuery(KIND_MEDIAN, 5, 9), 5) == "5"
    assert format_answer(PathQuery(KIND_COUNT, 4, 6, 2, 7), 1) == "1"
    assert format_answer(PathQuery(KIND_REPORT, 4, 6, 2, 7), [(2, 3)]) == "1 2:3"
    assert format_answer(PathQuery(KIND_REPORT, 4, 6, 2, 7), [(2, 3), (5, 4)]) == "2 2:3;5:4"
    assert format_answer(PathQuery(KIND_REPORT, 4, 6, 2, 7), []) == "0"
