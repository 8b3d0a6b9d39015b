"""Approximation pipeline for well-behaved width measures.

Given a hypergraph H, a budget k and a well-behaved measure lambda, the
entry point ``approx_decomposition`` either builds a tree decomposition of
lambda-width at most 2k^3 + 2k^2 + 3k + 3 or correctly concludes that
lambda-tw(H) > k.  The machinery: a saturated "closure" supergraph of the
Gaifman graph, clique-separator atoms from a minimal triangulation, a 2-SAT
driven (A,B)-separator search, and a balanced split of a working set W.
"""

from __future__ import annotations

import heapq
from dataclasses import dataclass
from fractions import Fraction
from itertools import product
from typing import Optional

from ._bits import bits
from .decomposition import TreeDecomposition
from .errors import InputError, ResourceError
from .hypergraph import Hypergraph, induced
from .measures import MeasureContext, WellBehavedMeasure

DEFAULT_GUESS_CAP = 5_000_000


@dataclass(frozen=True)
class ClosureGraph:
    """Gaifman graph saturated with edges between vertices whose common
    neighborhood (at insertion time) has measure above k."""

    h: Hypergraph
    k: int
    adj: tuple[int, ...]
    added: tuple[int, ...]  # pair masks, insertion order


def closure(h: Hypergraph, k: int, m: WellBehavedMeasure) -> ClosureGraph:
    """Add uv (lex-first, repeated passes) while lambda_H(N(u) cap N(v)) > k.

    The measure is always evaluated against the original H.
    """
    if k < 1:
        raise InputError("k must be at least 1")
    adj = list(h.gaifman_adj())
    added = []
    changed = True
    while changed:
        changed = False
        for u in range(h.n):
            for v in range(u + 1, h.n):
                if (adj[u] >> v) & 1:
                    continue
                common = adj[u] & adj[v]
                if not m.decide(h, common, k):
                    adj[u] |= 1 << v
                    adj[v] |= 1 << u
                    added.append((1 << u) | (1 << v))
                    changed = True
    return ClosureGraph(h, k, tuple(adj), tuple(added))


# ---------------------------------------------------------------------------
# clique-separator atoms


def _mcs_m(adj, universe: int):
    """Minimal triangulation by MCS-M.

    Returns (fill adjacency masks, position map alpha) where alpha numbers
    vertices 1..n and alpha(x) < alpha(y) means x is eliminated before y.
    """
    vs = list(bits(universe))
    n = len(vs)
    weight = {v: 0 for v in vs}
    fill = {v: adj[v] & universe for v in vs}
    alpha = {}
    unnumbered = set(vs)
    for number in range(n, 0, -1):
        x = max(sorted(unnumbered), key=weight.__getitem__)
        unnumbered.discard(x)
        # minimax internal weight of unnumbered paths from x
        dist: dict[int, int] = {}
        heap = []
        for u in bits(adj[x] & universe):
            if u in unnumbered:
                dist[u] = -1
                heapq.heappush(heap, (-1, u))
        while heap:
            d, u = heapq.heappop(heap)
            if d > dist.get(u, n):
                continue
            through = max(d, weight[u])
            for u2 in bits(adj[u] & universe):
                if u2 in unnumbered and through < dist.get(u2, n):
                    dist[u2] = through
                    heapq.heappush(heap, (through, u2))
        reached = [u for u, d in dist.items() if d < weight[u]]
        for u in reached:
            weight[u] += 1
            fill[x] |= 1 << u
            fill[u] |= 1 << x
        alpha[x] = number
    return fill, alpha


def _is_clique(adj, mask: int) -> bool:
    for v in bits(mask):
        if mask & ~(adj[v] | (1 << v)):
            return False
    return True


def _component_of(adj, start: int, allowed: int) -> int:
    comp = 1 << start
    frontier = comp
    while frontier:
        nxt = 0
        for u in bits(frontier):
            nxt |= adj[u]
        nxt &= allowed & ~comp
        comp |= nxt
        frontier = nxt
    return comp


def _components(adj, allowed: int):
    rest = allowed
    while rest:
        v = (rest & -rest).bit_length() - 1
        comp = _component_of(adj, v, allowed)
        yield comp
        rest &= ~comp


def atoms(adj, universe: int) -> list[int]:
    """Clique-separator decomposition leaves of the graph on ``universe``.

    At most |universe| sets; every clique lies inside some member, and for
    every member K and clique C, K minus C stays within one component of the
    graph minus C.
    """
    if universe == 0:
        return [0]
    fill, alpha = _mcs_m(adj, universe)
    meo = sorted(alpha, key=alpha.__getitem__)
    vprime = universe
    out = []
    for x in meo[:-1]:
        higher = 0
        for y in bits(fill[x]):
            if alpha[y] > alpha[x]:
                higher |= 1 << y
        if not _is_clique(adj, higher):
            continue
        if not (vprime >> x) & 1:
            continue
        comp = _component_of(adj, x, (vprime & ~higher) & universe)
        if vprime & ~(higher | comp) == 0:
            continue  # the clique does not separate what remains
        out.append(higher | comp)
        vprime &= ~comp
    out.append(vprime)
    return out


# ---------------------------------------------------------------------------
# 2-SAT


@dataclass
class TwoSatFormula:
    """Variables 0..nvars-1; literals are (var, polarity) pairs."""

    nvars: int
    clauses: list
    forced_true: set


def two_sat_solve(f: TwoSatFormula) -> Optional[list[bool]]:
    """A satisfying assignment respecting forced-true variables, or None."""
    n = f.nvars
    for var, _ in (lit for cl in f.clauses for lit in cl):
        if not 0 <= var < n:
            raise InputError("clause references an undeclared variable")
    # implication graph: node 2v = v true, 2v+1 = v false
    size = 2 * n
    graph: list[list[int]] = [[] for _ in range(size)]

    def node(var: int, pol: bool) -> int:
        return 2 * var + (0 if pol else 1)

    def add_clause(a, b):
        # (a or b): not a -> b, not b -> a
        graph[node(a[0], not a[1])].append(node(*b))
        graph[node(b[0], not b[1])].append(node(*a))

    for cl in f.clauses:
        add_clause(cl[0], cl[1])
    for v in f.forced_true:
        add_clause((v, True), (v, True))

    comp = _tarjan_scc(graph)
    assignment = []
    for v in range(n):
        if comp[2 * v] == comp[2 * v + 1]:
            return None
        # reverse topological order: larger comp id first; literal whose
        # component comes later in topological order is set true
        assignment.append(comp[2 * v] < comp[2 * v + 1])
    return assignment


def _tarjan_scc(graph) -> list[int]:
    """Component ids in reverse topological order (sources get larger ids)."""
    n = len(graph)
    index = [0] * n
    low = [0] * n
    comp = [-1] * n
    on_stack = [False] * n
    stack: list[int] = []
    counter = [1]
    ncomp = [0]

    for root in range(n):
        if index[root]:
            continue
        work = [(root, 0)]
        while work:
            v, pi = work[-1]
            if pi == 0:
                index[v] = low[v] = counter[0]
                counter[0] += 1
                stack.append(v)
                on_stack[v] = True
            recurse = False
            for i in range(pi, len(graph[v])):
                w = graph[v][i]
                if not index[w]:
                    work[-1] = (v, i + 1)
                    work.append((w, 0))
                    recurse = True
                    break
                if on_stack[w]:
                    low[v] = min(low[v], index[w])
            if recurse:
                continue
            work.pop()
            if low[v] == index[v]:
                while True:
                    w = stack.pop()
                    on_stack[w] = False
                    comp[w] = ncomp[0]
                    if w == v:
                        break
                ncomp[0] += 1
            if work:
                u, _ = work[-1]
                low[u] = min(low[u], low[v])
    return comp


# ---------------------------------------------------------------------------
# separator search


@dataclass(frozen=True)
class SeparatorResult:
    separator: Optional[int] = None
    lam_value: object = None
    refutation: Optional[str] = None  # "lambda-tw exceeded" | "not separable"

    @property
    def ok(self) -> bool:
        return self.separator is not None


@dataclass(frozen=True)
class Refutation:
    message: str = "lambda-tw exceeds k"


def _independent_sets_upto(adj, universe: int, size: int):
    """All independent sets of the graph with at most ``size`` vertices,
    lexicographically by smallest added vertex; includes the empty set."""
    out = [0]

    def grow(current: int, count: int, candidates: int):
        rest = candidates
        while rest:
            low = rest & -rest
            rest ^= low
            v = low.bit_length() - 1
            nxt = current | low
            out.append(nxt)
            if count + 1 < size:
                grow(nxt, count + 1, rest & ~adj[v])

    if size >= 1:
        grow(0, 0, universe)
    return out


def _reach_avoiding(adj, seeds: int, avoid: int) -> int:
    seen = seeds & ~avoid
    frontier = seen
    while frontier:
        nxt = 0
        for u in bits(frontier):
            nxt |= adj[u]
        nxt &= ~(seen | avoid)
        seen |= nxt
        frontier = nxt
    return seen


def _is_separator(adj, s: int, a: int, b: int) -> bool:
    """S separates A from B: A cap B inside S, no A\\S -- B\\S path avoiding S."""
    if a & b & ~s:
        return False
    reach = _reach_avoiding(adj, a & ~s, s)
    return not reach & (b & ~s)


def find_separator(h: Hypergraph, a: int, b: int, k: int,
                   m: WellBehavedMeasure,
                   ctx: Optional[MeasureContext] = None,
                   guess_cap: int = DEFAULT_GUESS_CAP) -> SeparatorResult:
    """(A,B)-separator with lambda at most C(k+1,2)*k, or a refutation.

    The refutation is the disjunction "no separator with lambda <= k exists,
    or lambda-tw(H) > k"; the two causes are not distinguished, except that
    the early-exit clique check reports "lambda-tw exceeded" on its own.
    """
    if k < 1:
        raise InputError("k must be at least 1")
    if (a | b) & ~h.vertex_mask:
        raise InputError("A or B contains an unknown vertex id")
    ctx = ctx or MeasureContext(h, m)
    cg = closure(h, k, m)
    adj2 = cg.adj
    gaif = h.gaifman_adj()
    guesses = 0

    for i_set in _independent_sets_upto(adj2, h.vertex_mask, k):
        members = list(bits(i_set))
        x_mask = 0
        for ii, u in enumerate(members):
            for v in members[ii + 1:]:
                x_mask |= adj2[u] & adj2[v]
        n_v = {v: ((adj2[v] & ~x_mask) | (1 << v)) for v in members}
        atom_choices = [atoms(tuple(av & n_v[v] for av in adj2), n_v[v])
                        for v in members]
        for combo in product(*atom_choices) if members else [()]:
            k_v = dict(zip(members, combo))
            z = x_mask
            for km in combo:
                z |= km
            for j1_bits in range(1 << len(members)):
                guesses += 1
                if guesses > guess_cap:
                    raise ResourceError("separator guess cap exceeded",
                                        guesses=guesses)
                j1 = {members[i] for i in range(len(members))
                      if (j1_bits >> i) & 1}
                result = _try_branch(h, gaif, adj2, a, b, k, ctx,
                                     members, j1, k_v, x_mask, z)
                if result is not None:
                    return result
    return SeparatorResult(refutation="not separable")


def _try_branch(h, gaif, adj2, a, b, k, ctx, members, j1, k_v, x_mask, z):
    reach_a = _reach_avoiding(adj2, a, z)
    reach_b = _reach_avoiding(adj2, b, z)
    bad = 0
    for v in members:
        side_seed, side_set = (b, reach_b) if v in j1 else (a, reach_a)
        for u in bits(k_v[v]):
            bu = 1 << u
            if side_seed & bu or adj2[u] & side_set:
                bad |= bu
    # bad pairs across J1/J2 atoms, connected outside Z or directly adjacent
    free_comps = list(_components(adj2, h.vertex_mask & ~z))
    k1 = 0
    k2 = 0
    for v in members:
        if v in j1:
            k1 |= k_v[v]
        else:
            k2 |= k_v[v]
    var_mask = z & ~x_mask
    var_of = {v: i for i, v in enumerate(bits(var_mask))}
    clauses = []
    for u in bits(k1):
        for v in bits(k2):
            if u == v:
                continue
            linked = bool((adj2[u] >> v) & 1)
            if not linked:
                for comp in free_comps:
                    if adj2[u] & comp and adj2[v] & comp:
                        linked = True
                        break
            if linked:
                clauses.append(((var_of[u], True), (var_of[v], True)))
    for v in members:
        km = k_v[v]
        for u1 in bits(km):
            for u2 in bits(km & ~((1 << (u1 + 1)) - 1)):
                if not (adj2[u1] >> u2) & 1:
                    clauses.append(((var_of[u1], False), (var_of[u2], False)))
    formula = TwoSatFormula(len(var_of), clauses,
                            {var_of[u] for u in bits(bad)})
    assignment = two_sat_solve(formula)
    if assignment is None:
        return None
    s_prime = 0
    for v, i in var_of.items():
        if assignment[i]:
            s_prime |= 1 << v
    for v in members:
        if not ctx.at_most(s_prime & k_v[v], k):
            return SeparatorResult(refutation="lambda-tw exceeded")
    sep = s_prime | x_mask
    if not _is_separator(gaif, sep, a, b):
        return None
    return SeparatorResult(separator=sep, lam_value=ctx.value(sep))


# ---------------------------------------------------------------------------
# balanced split and the recursive decomposition


@dataclass(frozen=True)
class SplitResult:
    a: int = 0
    b: int = 0
    separator: int = 0
    refutation: Optional[str] = None

    @property
    def ok(self) -> bool:
        return self.refutation is None


def balanced_split(h: Hypergraph, w: int, k: int, m: WellBehavedMeasure,
                   r=None, ctx: Optional[MeasureContext] = None,
                   guess_cap: int = DEFAULT_GUESS_CAP) -> SplitResult:
    """Partition (A,B) of W plus an (A,B)-separator S with lambda(S) bounded
    by C(k+1,2)*k and lambda(A\\S), lambda(B\\S) at most (2/3)r + k; or the
    refutation lambda-tw(H) > k."""
    if k < 1:
        raise InputError("k must be at least 1")
    if w & ~h.vertex_mask:
        raise InputError("W contains an unknown vertex id")
    ctx = ctx or MeasureContext(h, m)
    if r is None:
        r = ctx.value(w)
    side_cap = Fraction(2 * r, 3) + k if r != float("inf") else float("inf")
    gaif = h.gaifman_adj()
    max_i = int(Fraction(2 * r, 3)) if r != float("inf") else h.n
    for i_set in _independent_sets_upto(gaif, h.vertex_mask, max_i):
        gamma = i_set
        for v in bits(i_set):
            gamma |= gaif[v]
        a = gamma & w
        b = w & ~gamma
        if not ctx.at_most(a, side_cap) or not ctx.at_most(b, side_cap):
            continue
        res = find_separator(h, a, b, k, m, ctx, guess_cap)
        if res.ok:
            return SplitResult(a=a, b=b, separator=res.separator)
        if res.refutation == "lambda-tw exceeded":
            return SplitResult(refutation="lambda-tw exceeded")
    return SplitResult(refutation="lambda-tw exceeded")


def width_bound(k: int) -> int:
    return 2 * k ** 3 + 2 * k ** 2 + 3 * k + 3


def _grow_wstar(ctx: MeasureContext, w: int, big_k: int, full: int):
    """Greedy min-id growth of W until lambda hits big_k or W covers V.

    Returns (W*, overshoot) where overshoot means a single vertex pushed the
    measure past big_k (only possible for measures with infinite jumps)."""
    wstar = w
    while wstar != full and ctx.value(wstar) < big_k:
        rest = full & ~wstar
        wstar |= rest & -rest
        if ctx.value(wstar) > big_k:
            return wstar, True
    return wstar, False


def approx_decomposition(h: Hypergraph, k: int, m: WellBehavedMeasure,
                         w: int = 0,
                         guess_cap: int = DEFAULT_GUESS_CAP):
    """Tree decomposition of lambda-width <= 2k^3+2k^2+3k+3 with W inside one
    bag, or a Refutation that lambda-tw(H) > k."""
    if k < 1:
        raise InputError("k must be at least 1")
    if w & ~h.vertex_mask:
        raise InputError("W contains an unknown vertex id")
    big_k = (3 * (k ** 3 + k ** 2)) // 2 + 3 * k + 3
    ctx = MeasureContext(h, m)
    if ctx.value(w) > big_k:
        raise InputError("lambda(W) exceeds the admissible bound")
    out = _recurse(h, k, m, w, big_k, guess_cap)
    if isinstance(out, Refutation):
        return out
    td, _ = out
    return td


def _recurse(h: Hypergraph, k: int, m: WellBehavedMeasure, w: int,
             big_k: int, guess_cap: int):
    """Returns (TreeDecomposition, index of a bag containing w) or Refutation."""
    ctx = MeasureContext(h, m)
    full = h.vertex_mask
    if ctx.at_most(full, big_k):
        return TreeDecomposition([full], []), 0
    wstar, overshoot = _grow_wstar(ctx, w, big_k, full)
    if overshoot:
        # a single vertex has unbounded measure; no decomposition of width k
        return Refutation()
    split = balanced_split(h, wstar, k, m, r=big_k, ctx=ctx,
                           guess_cap=guess_cap)
    if not split.ok:
        return Refutation()
    sep = split.separator
    gaif = h.gaifman_adj()
    v1 = 0
    for comp in _components(gaif, full & ~sep):
        if comp & split.a:
            v1 |= comp
    v2 = full & ~(v1 | sep)
    root_bag = wstar | sep
    bags = [root_bag]
    tree = []
    for vi, ai in ((v1, split.a), (v2, split.b)):
        if vi & ~ai == 0:
            continue
        sub, remap = induced(h, vi | sep)
        back = {new: old for old, new in remap.items()}
        wi = 0
        for old, new in remap.items():
            if (ai | sep) >> old & 1:
                wi |= 1 << new
        out = _recurse(sub, k, m, wi, big_k, guess_cap)
        if isinstance(out, Refutation):
            return out
        td, attach = out
        offset = len(bags)
        for bmask in td.bags:
            lifted = 0
            for nb in bits(bmask):
                lifted |= 1 << back[nb]
            bags.append(lifted)
        tree.extend((x + offset, y + offset) for x, y in td.tree_edges)
        tree.append((0, attach + offset))
    return TreeDecomposition(bags, tree), 0
