"""Dynamic programming over tree decompositions, reading tables from the
blocker.

A problem plugs into ``run_dp`` as a BlockerReadable: tables are indexed by
p-tuples of traces of maximal independent sets, and the four operations
(leaf initialisation from i(H), restriction to a smaller base, adding an
isolated vertex, and merging across a separator) are enough to evaluate the
root table of any valid decomposition.  Three instances are provided:
maximum weighted independent set, k-colouring and uniform hypergraph
homomorphism.  All vertex sets are ambient bitmasks of the input hypergraph.
"""

from __future__ import annotations

from fractions import Fraction

from ._bits import bits
from .blocker import BranchCaps, enumerate_mis, trace_blocker
from .decomposition import TreeDecomposition, validate
from .errors import InputError, ResourceError
from .hypergraph import Hypergraph, complement_trace, induced

DEFAULT_TABLE_CAP = 200_000
DEFAULT_MIS_CAP = 25


def _lift(mask: int, back: list[int]) -> int:
    out = 0
    for b in bits(mask):
        out |= 1 << back[b]
    return out


def _mis_of(h: Hypergraph, vmask: int, mis_cap: int) -> list[int]:
    """Maximal independent sets of H[vmask], as ambient masks."""
    sub, _ = induced(h, vmask)
    back = list(bits(vmask))
    return [_lift(m, back) for m in enumerate_mis(sub, mis_cap)]


def _mis_trace(h: Hypergraph, vmask: int, smask: int,
               caps: BranchCaps) -> frozenset[int]:
    """tr_S(i(H[vmask])) member masks (ambient), via the blocker trace."""
    sub, remap = induced(h, vmask)
    back = list(bits(vmask))
    s_local = 0
    for v in bits(smask):
        s_local |= 1 << remap[v]
    res = trace_blocker(sub, s_local, caps)
    mis_traces = complement_trace(res.traces)
    return frozenset(_lift(m, back) for m in mis_traces.members)


class BlockerReadable:
    """Operational contract of a function that can be read from the blocker."""

    arity: int = 1

    def leaf_init(self, mis: list[int], s: int):
        raise NotImplementedError

    def restrict(self, table, s_old: int, s_new: int):
        raise NotImplementedError

    def add_isolated(self, table, s: int, v: int):
        raise NotImplementedError

    def merge(self, trace: frozenset[int], t1, t2, s: int):
        raise NotImplementedError

    def table_size(self, table) -> int:
        return len(table)


def run_dp(h: Hypergraph, t: TreeDecomposition, f: BlockerReadable,
           trace_caps: BranchCaps = BranchCaps(),
           table_cap: int = DEFAULT_TABLE_CAP,
           mis_cap: int = DEFAULT_MIS_CAP):
    """Table of f over the empty base set, computed bottom-up over T.

    The tree is rooted at node 0; each node's hypergraph is the subhypergraph
    of H induced by its descendant bags, and child tables are restricted to
    the shared bag part, padded with isolated vertices and merged in
    increasing child order.
    """
    ok = validate(h, t)
    if not ok:
        raise InputError(f"invalid decomposition: {ok.reason}")
    k = t.node_count
    parent = [-1] * k
    order = [0]
    seen = {0}
    for node in order:
        for nb in t.neighbors(node):
            if nb not in seen:
                seen.add(nb)
                parent[nb] = node
                order.append(nb)
    children = [[] for _ in range(k)]
    for node in range(1, k):
        children[parent[node]].append(node)

    tables: dict[int, object] = {}
    subtree_v: dict[int, int] = {}
    for node in reversed(order):
        bag = t.bags[node]
        acc = f.leaf_init(_mis_of(h, bag, mis_cap), bag)
        acc_v = bag
        for c in sorted(children[node]):
            tbl = f.restrict(tables.pop(c), t.bags[c], bag & t.bags[c])
            s = bag & t.bags[c]
            for v in bits(bag & ~t.bags[c]):
                tbl = f.add_isolated(tbl, s, v)
                s |= 1 << v
            acc_v |= subtree_v[c]
            try:
                trace = _mis_trace(h, acc_v, bag, trace_caps)
            except ResourceError as exc:
                raise ResourceError(f"trace cap exceeded at bag {node}",
                                    bag=node, **exc.stats) from exc
            acc = f.merge(trace, acc, tbl, bag)
            if f.table_size(acc) > table_cap:
                raise ResourceError(f"table cap exceeded at bag {node}",
                                    bag=node, size=f.table_size(acc))
        subtree_v[node] = acc_v
        tables[node] = acc
    return f.restrict(tables[0], t.bags[0], 0)


# ---------------------------------------------------------------------------
# Maximum Weighted Independent Set


class MwisDP(BlockerReadable):
    """Arity-1 tables mapping a trace A to (best weight, witness set)."""

    arity = 1

    def __init__(self, weights):
        self.w = [Fraction(x) for x in weights]

    def wsum(self, mask: int) -> Fraction:
        return sum((self.w[v] for v in bits(mask)), Fraction(0))

    def leaf_init(self, mis, s):
        table = {}
        for j in mis:
            val = self.wsum(j)
            if j not in table or table[j][0] < val:
                table[j] = (val, j)
        return table

    def restrict(self, table, s_old, s_new):
        out = {}
        for a, (val, wit) in table.items():
            key = a & s_new
            if key not in out or out[key][0] < val:
                out[key] = (val, wit)
        return out

    def add_isolated(self, table, s, v):
        bv = 1 << v
        return {a | bv: (val + self.w[v], wit | bv)
                for a, (val, wit) in table.items()}

    def merge(self, trace, t1, t2, s):
        out = {}
        for a1, (v1, w1) in t1.items():
            for a2, (v2, w2) in t2.items():
                a = a1 & a2
                if a not in trace:
                    continue
                val = v1 + v2 - self.wsum(a1) - self.wsum(a2) + self.wsum(a)
                if a not in out or out[a][0] < val:
                    out[a] = (val, (w1 & ~s) | (w2 & ~s) | a)
        return out


def mwis(h: Hypergraph, weights, t: TreeDecomposition,
         trace_caps: BranchCaps = BranchCaps(),
         table_cap: int = DEFAULT_TABLE_CAP) -> tuple[Fraction, int]:
    """Max weight of an independent set of H and a witness set."""
    w = [Fraction(x) for x in weights] if weights is not None else \
        ([Fraction(x) for x in h.weights] if h.weights is not None
         else [Fraction(1)] * h.n)
    if len(w) != h.n:
        raise InputError("weight vector length differs from vertex count")
    neg = 0
    for v in range(h.n):
        if w[v] < 0:
            neg |= 1 << v
    h2 = Hypergraph(h.n, (e for e in h.edges if not e & neg))
    w2 = [x if x >= 0 else Fraction(0) for x in w]
    final = run_dp(h2, t, MwisDP(w2), trace_caps, table_cap)
    if not final:
        return Fraction(0), 0
    val, wit = final[0]
    return val, wit & ~neg


# ---------------------------------------------------------------------------
# covering-style boolean tables (k-colouring, homomorphism)


class CoverDP(BlockerReadable):
    """Arity-k boolean tables compressed as antichains of dominating tuples.

    A tuple (A_1..A_k) evaluates true iff it is componentwise below some
    stored tuple and its coverage (cover_fn) contains the base set; merging
    intersects tuples pairwise and refilters against the base.
    """

    def __init__(self, arity: int, cover_fn, full_mask: int, bound_fn=None):
        self.arity = arity
        self.cover_fn = cover_fn
        self.full = full_mask
        # optimistic coverage of any completion of a prefix; used to prune
        # the leaf product, which antichain compression alone cannot shrink
        self.bound_fn = bound_fn

    def _compress(self, tuples):
        kept: list[tuple[int, ...]] = []
        for t in sorted(set(tuples), key=lambda tt: sum(x.bit_count() for x in tt),
                        reverse=True):
            if not any(all(a & b == a for a, b in zip(t, g)) for g in kept):
                kept.append(t)
        return kept

    def leaf_init(self, mis, s):
        out = []
        prefix: list[int] = []

        def rec():
            if len(prefix) == self.arity:
                if self.cover_fn(tuple(prefix)) & s == s:
                    out.append(tuple(prefix))
                return
            for j in mis:
                prefix.append(j)
                if self.bound_fn is None or self.bound_fn(prefix) & s == s:
                    rec()
                prefix.pop()

        rec()
        return self._compress(out)

    def restrict(self, table, s_old, s_new):
        return self._compress(tuple(a & s_new for a in t) for t in table)

    def add_isolated(self, table, s, v):
        bv = 1 << v
        return [tuple(a | bv for a in t) for t in table]

    def merge(self, trace, t1, t2, s):
        out = []
        for d1 in t1:
            for d2 in t2:
                c = tuple(a & b for a, b in zip(d1, d2))
                if self.cover_fn(c) & s == s:
                    out.append(c)
        return self._compress(out)


def chromatic_decide(h: Hypergraph, k: int, t: TreeDecomposition,
                     trace_caps: BranchCaps = BranchCaps(),
                     table_cap: int = DEFAULT_TABLE_CAP) -> bool:
    """True iff H has a colouring with k colours and no monochromatic edge."""
    if k < 1:
        raise InputError("k must be positive")

    def cover(tup):
        out = 0
        for a in tup:
            out |= a
        return out

    final = run_dp(h, t, CoverDP(k, cover, h.vertex_mask),
                   trace_caps, table_cap)
    return bool(final)


def hom_decide(h: Hypergraph, f: Hypergraph, t: TreeDecomposition,
               trace_caps: BranchCaps = BranchCaps(),
               table_cap: int = DEFAULT_TABLE_CAP,
               target_cap: int = 10) -> bool:
    """True iff there is a homomorphism from H to F (both r-uniform)."""
    ranks_h = {e.bit_count() for e in h.edges}
    ranks_f = {e.bit_count() for e in f.edges}
    if len(ranks_h) > 1 or len(ranks_f) > 1:
        raise InputError("hypergraphs must be uniform")
    if ranks_h and ranks_f and ranks_h != ranks_f:
        raise InputError("hypergraphs must be uniform of the same rank")
    if f.n > target_cap:
        raise ResourceError(f"target cap {target_cap} exceeded (n={f.n})", n=f.n)
    if h.n == 0:
        return True
    if f.n == 0:
        return False
    target_mis = sorted(enumerate_mis(f, target_cap))
    arity = len(target_mis)
    if arity == 0:
        # F has an empty edge: no independent sets at all, and any map sends
        # edges of H nowhere useful; only edgeless H maps (vacuously) -- but
        # an r-uniform F with an empty edge forces r=0 for H too
        return not h.edges
    incidence = [[i for i, mi in enumerate(target_mis) if (mi >> x) & 1]
                 for x in range(f.n)]
    full = h.vertex_mask

    def cover(tup):
        out = 0
        for idxs in incidence:
            c = full
            for i in idxs:
                c &= tup[i]
            out |= c
            if out == full:
                break
        return out

    def bound(prefix):
        # intersections can only shrink as the prefix grows
        j = len(prefix)
        out = 0
        for idxs in incidence:
            c = full
            for i in idxs:
                if i < j:
                    c &= prefix[i]
            out |= c
            if out == full:
                break
        return out

    final = run_dp(h, t, CoverDP(arity, cover, full, bound),
                   trace_caps, table_cap)
    return bool(final)
