"""Exhaustive reference algorithms.

Everything here is exponential-time and only meant for small instances; the
rest of the package is tested against these oracles.  The lambda-treewidth
oracle is a subset DP over elimination orderings, exact for any monotone bag
measure because optimal decompositions can be taken as clique trees of
triangulations.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Callable, Optional

from ._bits import bits
from .blocker import enumerate_mis
from .decomposition import TreeDecomposition, from_elimination_order, _fill_neighborhood
from .errors import InputError, ResourceError
from .hypergraph import Hypergraph

Measure = Callable[[int], object]


def independent_in(h: Hypergraph, s: int) -> bool:
    """True iff no edge of H is fully contained in s."""
    return not any(e and e & s == e for e in h.edges)


def mwis_bruteforce(h: Hypergraph, weights=None, cap: int = 20) -> tuple[Fraction, int]:
    """Max weight of an independent set and one witness mask.

    Vertices of negative weight are deleted first (edges through them are
    dropped), after which the optimum is attained at a maximal independent set.
    """
    w = [Fraction(x) for x in weights] if weights is not None else \
        ([Fraction(x) for x in h.weights] if h.weights is not None else
         [Fraction(1)] * h.n)
    if len(w) != h.n:
        raise InputError("weight vector length differs from vertex count")
    neg = 0
    for v in range(h.n):
        if w[v] < 0:
            neg |= 1 << v
    kept = Hypergraph(h.n, (e for e in h.edges if not e & neg))
    best, witness = Fraction(0), 0
    for m in enumerate_mis(kept, cap):
        m &= ~neg
        total = sum((w[v] for v in bits(m)), Fraction(0))
        if total > best:
            best, witness = total, m
    return best, witness


def chromatic_bruteforce(h: Hypergraph, k: int) -> bool:
    """Is there a k-colouring with no monochromatic edge?  Backtracking."""
    if k < 1:
        raise InputError("k must be positive")
    n = h.n
    color = [-1] * n
    by_last = [[] for _ in range(n)]
    for e in h.edges:
        if e.bit_count() >= 2:
            by_last[max(bits(e))].append(e)
    singleton = any(e.bit_count() == 1 for e in h.edges)
    if singleton:
        return False
    if any(e == 0 for e in h.edges):
        return False

    def assign(v: int, used: int) -> bool:
        if v == n:
            return True
        # colours beyond the first unused one are interchangeable
        for c in range(min(used + 1, k)):
            color[v] = c
            ok = True
            for e in by_last[v]:
                it = bits(e)
                first = color[next(it)]
                if first == c and all(color[u] == c for u in it):
                    ok = False
                    break
            if ok and assign(v + 1, max(used, c + 1)):
                return True
        color[v] = -1
        return False

    return assign(0, 0)


def hom_bruteforce(h: Hypergraph, f: Hypergraph) -> bool:
    """Is there a map V(H) -> V(F) sending every edge of H onto an edge of F?"""
    if f.n == 0:
        return h.n == 0
    n = h.n
    f_edges = set(f.edges)
    image = [-1] * n
    by_last = [[] for _ in range(n)] if n else []
    for e in h.edges:
        if e == 0:
            return False
        by_last[max(bits(e))].append(e)

    def assign(v: int) -> bool:
        if v == n:
            return True
        for x in range(f.n):
            image[v] = x
            ok = True
            for e in by_last[v]:
                img = 0
                for u in bits(e):
                    img |= 1 << image[u]
                if img not in f_edges:
                    ok = False
                    break
            if ok and assign(v + 1):
                return True
        image[v] = -1
        return False

    return assign(0)


def lambda_tw_exact(h: Hypergraph, lam: Measure,
                    cap: int = 18) -> tuple[object, TreeDecomposition]:
    """Exact lambda-treewidth and a witness decomposition.

    Subset DP over elimination orderings of the Gaifman graph; cost of
    eliminating v after the set E is lam({v} union fill-neighborhood).
    """
    n = h.n
    if n > cap:
        raise ResourceError(f"exact lambda-tw cap {cap} exceeded (n={n})", n=n)
    if n == 0:
        return lam(0), TreeDecomposition([0], [])
    adj = h.gaifman_adj()
    lam_memo: dict[int, object] = {}

    def lam_of(mask: int):
        got = lam_memo.get(mask)
        if got is None:
            got = lam_memo[mask] = lam(mask)
        return got

    full = (1 << n) - 1
    cost: list = [None] * (full + 1)
    choice = [0] * (full + 1)
    for mask in range(1, full + 1):
        best = None
        best_v = 0
        for v in bits(mask):
            rest = mask & ~(1 << v)
            # v eliminated last among mask; survivors are outside mask plus v
            bag = (1 << v) | (_fill_neighborhood(adj, v, rest) & ~mask)
            val = lam_of(bag)
            prev = cost[rest]
            if prev is not None and prev > val:
                val = prev
            if best is None or val < best:
                best, best_v = val, v
        cost[mask] = best
        choice[mask] = best_v
    order = []
    mask = full
    while mask:
        v = choice[mask]
        order.append(v)
        mask &= ~(1 << v)
    order.reverse()
    return cost[full], from_elimination_order(h, order)


def separator_exists_bruteforce(h: Hypergraph, a: int, b: int, lam: Measure,
                                k, cap: int = 18) -> Optional[int]:
    """Some S with lam(S) <= k whose removal disconnects a from b, or None.

    a and b are vertex masks; S may intersect them.  Exhaustive over subsets.
    """
    n = h.n
    if n > cap:
        raise ResourceError(f"separator search cap {cap} exceeded (n={n})", n=n)
    adj = h.gaifman_adj()
    for s in range(1 << n):
        try:
            if lam(s) > k:
                continue
        except TypeError:
            continue
        if _separates(adj, n, s, a & ~s, b & ~s):
            return s
    return None


def _separates(adj, n: int, s: int, a: int, b: int) -> bool:
    if a & b:
        return False
    seen = a
    frontier = a
    while frontier:
        nxt = 0
        for u in bits(frontier):
            nxt |= adj[u]
        nxt &= ~(seen | s)
        if nxt & b:
            return False
        seen |= nxt
        frontier = nxt
    return True
