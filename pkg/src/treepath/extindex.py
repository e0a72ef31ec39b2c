"""Path-query index based on a hierarchy of tree extractions.

Each level holds the subtree-spliced copy of the input restricted to a
weight range [a, b]; a level splits its nodes by weight against
c = floor((a+b)/2) into type-0 / type-1 and extracts one child tree per
type.  Every extracted level gets a dummy root (id 1), which uniformly
absorbs the "no typed ancestor" cases: views of nodes without a typed
ancestor land on the dummy at depth 0 and all depth differences cancel.

Succinct levels store a BP topology bitmap plus a one-bit-per-node type
bitmap (the 3n lg sigma scheme); the explicit variant stores flat int32
arrays of types, views, depths, parents and sources per level and adds a
constant-time LCA over the outermost tree.
"""
from __future__ import annotations

from array import array

import numpy as np

from .baseline import EulerLCA
from .bitvec import build_bitvector
from .bptree import BpTree

EXT_VARIANTS = ("succinct-plain", "succinct-compressed", "explicit")


class _SuccinctLevel:
    __slots__ = ("a", "b", "dummy", "n_nodes", "n_real", "bp", "types",
                 "c0", "c1", "up", "tbit")

    def __init__(self):
        self.c0 = self.c1 = None
        self.types = None

    # -- primitive interface shared with _ExplicitLevel ---------------------
    def depth(self, v: int) -> int:
        return self.bp.depth(v)

    def parent(self, v: int) -> int:
        return self.bp.parent(v)

    def typebit(self, v: int) -> int:
        return self.types.access0(v - 1)

    def _rank_real(self, v: int, t: int) -> int:
        """Real t-typed nodes with id strictly below v."""
        r1 = self.types.rank1_0(v - 1)
        if t:
            return r1
        return (v - 1) - r1 - (1 if self.dummy and v > 1 else 0)

    def _select_real(self, j: int, t: int) -> int:
        """Id of the j-th real t-typed node."""
        if t:
            return self.types.select1_0(j) + 1
        return self.types.select0_0(j + (1 if self.dummy else 0)) + 1

    def view(self, v: int, t: int) -> int:
        """Local id in the type-t child of v's view there (1 = dummy)."""
        if self.dummy and v == 1:
            return 1
        if self.types.access0(v - 1) == t:
            return self._rank_real(v, t) + 2
        lam = self._rank_real(v, t)
        if lam == 0:
            return 1
        u = self._select_real(lam, t)
        z = self.bp.lca(u, v)
        if z == u:
            return lam + 1
        if self.dummy and z == 1:
            return 1
        if self.types.access0(z - 1) == t:
            return self._rank_real(z, t) + 2
        # the first t-descendant of z has t-rank lam_z + 1, so its copy is
        # local id lam_z + 2; v shares its t-parent
        lamz = self._rank_real(z, t)
        child = self.c1 if t else self.c0
        p = child.bp.parent(lamz + 2)
        return p if p is not None else 1

    def source(self, x: int) -> int:
        """Map a local id (not the dummy) to its id at the parent level."""
        return self.up._select_real(x - 1, self.tbit)

    def size_in_bits(self) -> int:
        bits = self.bp.size_in_bits() + 64
        if self.types is not None:
            bits += self.types.size_in_bits()
        return bits


class _ExplicitLevel:
    __slots__ = ("a", "b", "dummy", "n_nodes", "n_real", "type_arr", "view0",
                 "view1", "dep", "par", "src", "c0", "c1", "up", "tbit")

    def __init__(self):
        self.c0 = self.c1 = None
        self.type_arr = self.view0 = self.view1 = self.src = None

    def depth(self, v: int) -> int:
        return self.dep[v]

    def parent(self, v: int) -> int:
        return self.par[v]

    def typebit(self, v: int) -> int:
        return self.type_arr[v]

    def view(self, v: int, t: int) -> int:
        return (self.view1 if t else self.view0)[v]

    def source(self, x: int) -> int:
        return self.src[x]

    def size_in_bits(self) -> int:
        bits = 32 * (len(self.dep) + len(self.par)) + 64
        for arr in (self.type_arr, self.view0, self.view1, self.src):
            if arr is not None:
                bits += 32 * len(arr)
        return bits


def _build_level(par, dep, wts, a, b, dummy, variant, up, tbit):
    m = len(par) - 1
    n_real = m - (1 if dummy else 0)
    explicit = variant == "explicit"
    if explicit:
        L = _ExplicitLevel()
        L.dep = array("i", dep)
        L.par = array("i", par)
    else:
        L = _SuccinctLevel()
        L.bp = BpTree.from_depths(np.asarray(dep[1:], dtype=np.int64),
                                  "plain" if variant == "succinct-plain" else "compressed")
    L.a, L.b = a, b
    L.dummy = dummy
    L.n_nodes = m
    L.n_real = n_real
    L.up = up
    L.tbit = tbit
    if a == b or n_real == 0:
        return L

    c = (a + b) >> 1
    bits = bytearray(m)
    near0 = [0] * (m + 1)
    near1 = [0] * (m + 1)
    cnt0 = [0] * (m + 1)
    cnt1 = [0] * (m + 1)
    vs0: list[int] = []
    vs1: list[int] = []
    app0 = vs0.append
    app1 = vs1.append
    for v in range(2 if dummy else 1, m + 1):
        p = par[v]
        if wts[v] <= c:
            near0[v] = v
            near1[v] = near1[p]
            cnt0[v] = cnt0[p] + 1
            cnt1[v] = cnt1[p]
            app0(v)
        else:
            bits[v - 1] = 1
            near1[v] = v
            near0[v] = near0[p]
            cnt1[v] = cnt1[p] + 1
            cnt0[v] = cnt0[p]
            app1(v)

    if explicit:
        tl = [0]
        tl.extend(bits)
        L.type_arr = array("i", tl)
    else:
        L.types = build_bitvector(np.frombuffer(bytes(bits), dtype=np.uint8),
                                  "plain" if variant == "succinct-plain" else "compressed")

    for t, vs, near, cnt, (ca, cb) in ((0, vs0, near0, cnt0, (a, c)),
                                       (1, vs1, near1, cnt1, (c + 1, b))):
        if not vs:
            child = None
        else:
            k = len(vs)
            rk = [0] * (m + 1)
            for i, v in enumerate(vs):
                rk[v] = i + 2                 # local ids start after the dummy
            par_c = [0] * (k + 2)
            dep_c = [0] * (k + 2)
            wts_c = [0] * (k + 2)
            for i, v in enumerate(vs):
                anc = near[par[v]]
                par_c[i + 2] = 1 if anc == 0 else rk[anc]
                dep_c[i + 2] = cnt[v]
                wts_c[i + 2] = wts[v]
            child = _build_level(par_c, dep_c, wts_c, ca, cb, True, variant, L, t)
            if explicit:
                child.src = array("i", [0, 0] + vs)
                view = array("i", bytes(4 * (m + 1)))
                for v in range(1, m + 1):
                    anc = near[v]
                    view[v] = 1 if anc == 0 else rk[anc]
                if t:
                    L.view1 = view
                else:
                    L.view0 = view
        if t:
            L.c1 = child
        else:
            L.c0 = child
    if explicit:
        # a side with no nodes still needs all-dummy views
        if L.view0 is None:
            L.view0 = array("i", [1] * (m + 1))
        if L.view1 is None:
            L.view1 = array("i", [1] * (m + 1))
    return L


class ExtIndex:
    """Tree-extraction path index; variants: succinct-plain,
    succinct-compressed, explicit."""

    def __init__(self, tree, variant: str = "succinct-plain"):
        if variant not in EXT_VARIANTS:
            raise ValueError(f"unknown extraction variant {variant!r}")
        self.variant = variant
        self.n = tree.n
        self.sigma = tree.sigma
        self.root = _build_level(list(tree.parent), list(tree.depth),
                                 list(tree.weights), 1, tree.sigma, False,
                                 variant, None, 0)
        self._euler = EulerLCA(tree) if variant == "explicit" else None

    # -- helpers ----------------------------------------------------------
    def levels(self):
        stack = [self.root]
        while stack:
            L = stack.pop()
            yield L
            if L.c0 is not None:
                stack.append(L.c0)
            if L.c1 is not None:
                stack.append(L.c1)

    def _check_nodes(self, x, y):
        if not (1 <= x <= self.n and 1 <= y <= self.n):
            raise ValueError(f"query nodes ({x},{y}) out of range 1..{self.n}")

    def _check_range(self, a, b):
        if not 1 <= a <= b <= self.sigma:
            raise ValueError(f"weight range [{a},{b}] invalid for sigma={self.sigma}")

    def _lca0(self, x, y):
        if self._euler is not None:
            return self._euler.lca(x, y)
        return self.root.bp.lca(x, y)

    def _weight_from(self, L, v) -> int:
        while L.a < L.b:
            t = L.typebit(v)
            v = L.view(v, t)
            L = L.c1 if t else L.c0
        return L.a

    def _orig_id(self, L, v) -> int:
        while L.up is not None:
            v = L.source(v)
            L = L.up
        return v

    # -- queries ----------------------------------------------------------
    def select(self, x: int, y: int, k: int) -> int:
        self._check_nodes(x, y)
        z = self._lca0(x, y)
        root = self.root
        plen = root.depth(x) + root.depth(y) - 2 * root.depth(z) + 1
        if not 0 <= k < plen:
            raise ValueError(f"rank {k} out of range for path of {plen} nodes")
        w = self._weight_from(root, z)
        L, u, v, zz = root, x, y, z
        while L.a < L.b:
            acc = 0
            moved = False
            for t in (0, 1):
                child = L.c1 if t else L.c0
                if child is None:
                    continue
                iu = L.view(u, t)
                iv = L.view(v, t)
                iz = L.view(zz, t)
                dw = child.depth(iu) + child.depth(iv) - 2 * child.depth(iz)
                if child.a <= w <= child.b:
                    dw += 1
                if acc + dw > k:
                    u, v, zz, k, L = iu, iv, iz, k - acc, child
                    moved = True
                    break
                acc += dw
            if not moved:
                raise AssertionError("path rank escaped the weight hierarchy")
        return L.a

    def median(self, x: int, y: int) -> int:
        self._check_nodes(x, y)
        z = self._lca0(x, y)
        root = self.root
        plen = root.depth(x) + root.depth(y) - 2 * root.depth(z) + 1
        return self.select(x, y, plen // 2)

    def count(self, x: int, y: int, a: int, b: int) -> int:
        self._check_nodes(x, y)
        self._check_range(a, b)
        z = self._lca0(x, y)
        w = self._weight_from(self.root, z)
        return self._countrep(self.root, x, y, z, w, a, b, z, None)

    def report(self, x: int, y: int, a: int, b: int) -> list[tuple[int, int]]:
        self._check_nodes(x, y)
        self._check_range(a, b)
        z = self._lca0(x, y)
        w = self._weight_from(self.root, z)
        out: list[tuple[int, int]] = []
        self._countrep(self.root, x, y, z, w, a, b, z, out)
        out.sort()
        return out

    def _countrep(self, L, u, v, zz, w, qa, qb, zorig, out) -> int:
        a, b = L.a, L.b
        if qa <= a and b <= qb:
            cnt = L.depth(u) + L.depth(v) - 2 * L.depth(zz)
            if a <= w <= b:
                cnt += 1
                if out is not None:
                    out.append((zorig, w))
            if out is not None:
                for start in (u, v):
                    cur = start
                    while cur != zz:
                        out.append((self._orig_id(L, cur), self._weight_from(L, cur)))
                        cur = L.parent(cur)
            return cnt
        if b < qa or qb < a:
            return 0
        res = 0
        for t in (0, 1):
            child = L.c1 if t else L.c0
            if child is None or child.b < qa or qb < child.a:
                continue
            res += self._countrep(child, L.view(u, t), L.view(v, t),
                                  L.view(zz, t), w, qa, qb, zorig, out)
        return res

    def size_in_bits(self) -> int:
        bits = sum(L.size_in_bits() for L in self.levels())
        if self._euler is not None:
            bits += self._euler.size_in_bits()
        return bits
