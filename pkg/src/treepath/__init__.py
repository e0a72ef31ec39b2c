"""Path median, counting and reporting queries on weighted trees.

Nine interchangeable index structures (naive, tree-extraction and
HPD+wavelet-tree families, each in explicit and succinct flavors) behind
one query contract, plus corpus/workload generators and a benchmark CLI.
"""

from .bitvec import BitVector, CompressedBitVector, PlainBitVector, build_bitvector
from .bptree import BpTree
from .corpus import (
    PathQuery,
    PtwFormatError,
    WeightedTree,
    gen_queries,
    gen_tree,
    normalize_weights,
    parse_ptw,
    serialize_ptw,
)
from .wavelet import ArrayWaveletTree, WaveletTree
from .baseline import NaiveIndex, build_naive
from .extindex import ExtIndex
from .hpdindex import HpdIndex
from .registry import INDEX_NAMES, build_index

__all__ = [
    "BitVector",
    "PlainBitVector",
    "CompressedBitVector",
    "build_bitvector",
    "BpTree",
    "WeightedTree",
    "PathQuery",
    "PtwFormatError",
    "parse_ptw",
    "serialize_ptw",
    "normalize_weights",
    "gen_tree",
    "gen_queries",
    "WaveletTree",
    "ArrayWaveletTree",
    "NaiveIndex",
    "build_naive",
    "ExtIndex",
    "HpdIndex",
    "INDEX_NAMES",
    "build_index",
]
