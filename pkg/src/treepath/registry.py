"""Uniform build entry for the nine path-index variants.

Every index answers median(x, y), select(x, y, k), count(x, y, a, b) and
report(x, y, a, b) (id-sorted pairs) and reports size_in_bits().
"""
from __future__ import annotations

from .baseline import NaiveIndex
from .extindex import ExtIndex
from .hpdindex import HpdIndex

_BUILDERS = {
    "nv": lambda t: NaiveIndex(t, "explicit"),
    "nv-lca": lambda t: NaiveIndex(t, "explicit-lca"),
    "nv-suc": lambda t: NaiveIndex(t, "succinct"),
    "ext-un": lambda t: ExtIndex(t, "succinct-plain"),
    "ext-rrr": lambda t: ExtIndex(t, "succinct-compressed"),
    "ext-plain": lambda t: ExtIndex(t, "explicit"),
    "hpd-un": lambda t: HpdIndex(t, "succinct-plain"),
    "hpd-rrr": lambda t: HpdIndex(t, "succinct-compressed"),
    "hpd-plain": lambda t: HpdIndex(t, "explicit"),
}

INDEX_NAMES = tuple(_BUILDERS)


def build_index(tree, name: str):
    try:
        builder = _BUILDERS[name]
    except KeyError:
        raise ValueError(f"unknown index {name!r}; choose from {', '.join(INDEX_NAMES)}") from None
    return builder(tree)
