"""Tree decompositions: representation, validation, width evaluation, and the
exhaustive oracles for alpha(G[S]), the S-intersecting induced matching number
of graphs and the S-intersecting minor-matching number of hypergraphs."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Optional, Sequence

from ._bits import bits, to_set
from .errors import InputError, ResourceError
from .hypergraph import Graph, Hypergraph, _minimal_masks, gaifman

MEASURE_NAMES = ("kappa", "alpha", "rho", "mu")
DEFAULT_ORACLE_CAP = 2_000_000


class TreeDecomposition:
    """A tree plus one bag (vertex mask) per node.

    Nodes are 0..len(bags)-1.  The constructor checks tree-ness and merges
    adjacent nodes with equal bags (merging only adjacent duplicates keeps
    every valid decomposition valid; bags are not forced into an antichain).
    """

    __slots__ = ("bags", "tree_edges", "_adj")

    def __init__(self, bags: Iterable[int], tree_edges: Iterable[tuple[int, int]]):
        bags = list(bags)
        edges = {tuple(sorted(e)) for e in tree_edges}
        k = len(bags)
        if k == 0:
            raise InputError("decomposition needs at least one node")
        for a, b in edges:
            if a == b or not (0 <= a < k and 0 <= b < k):
                raise InputError(f"bad tree edge ({a}, {b})")
        if len(edges) != k - 1:
            raise InputError("tree edge count must be node count minus one")
        adj = [set() for _ in range(k)]
        for a, b in edges:
            adj[a].add(b)
            adj[b].add(a)
        seen = [False] * k
        stack = [0]
        seen[0] = True
        while stack:
            t = stack.pop()
            for u in adj[t]:
                if not seen[u]:
                    seen[u] = True
                    stack.append(u)
        if not all(seen):
            raise InputError("tree edges do not connect all nodes")
        bags, edges = _merge_adjacent_equal(bags, edges)
        self.bags = tuple(bags)
        self.tree_edges = tuple(sorted(edges))
        adj2: list[int] = [0] * len(self.bags)
        for a, b in self.tree_edges:
            adj2[a] |= 1 << b
            adj2[b] |= 1 << a
        self._adj = tuple(adj2)

    @property
    def node_count(self) -> int:
        return len(self.bags)

    def neighbors(self, t: int) -> Iterable[int]:
        return bits(self._adj[t])

    def __eq__(self, other):
        return (isinstance(other, TreeDecomposition)
                and self.bags == other.bags and self.tree_edges == other.tree_edges)

    def __hash__(self):
        return hash((self.bags, self.tree_edges))

    def __repr__(self):
        return (f"TreeDecomposition(bags={[sorted(to_set(b)) for b in self.bags]}, "
                f"tree={list(self.tree_edges)})")


def _merge_adjacent_equal(bags, edges):
    parent = list(range(len(bags)))

    def find(a):
        while parent[a] != a:
            parent[a] = parent[parent[a]]
            a = parent[a]
        return a

    for a, b in edges:
        if bags[a] == bags[b]:
            parent[find(a)] = find(b)
    reps = sorted({find(i) for i in range(len(bags))})
    index = {r: i for i, r in enumerate(reps)}
    new_bags = [bags[r] for r in reps]
    new_edges = set()
    for a, b in edges:
        ra, rb = index[find(a)], index[find(b)]
        if ra != rb:
            new_edges.add((min(ra, rb), max(ra, rb)))
    return new_bags, new_edges


@dataclass(frozen=True)
class Validity:
    ok: bool
    reason: str = ""
    bad_vertex: Optional[int] = None
    bad_edge: Optional[tuple[int, int]] = None

    def __bool__(self):
        return self.ok


def validate(h: Hypergraph, t: TreeDecomposition) -> Validity:
    """Check connectivity of every vertex's node set and Gaifman edge coverage."""
    for bag in t.bags:
        if bag & ~h.vertex_mask:
            raise InputError("bag contains a vertex outside the hypergraph")
    k = t.node_count
    for v in range(h.n):
        nodes = [i for i in range(k) if (t.bags[i] >> v) & 1]
        if not nodes:
            return Validity(False, f"vertex {v} appears in no bag", bad_vertex=v)
        seen = {nodes[0]}
        stack = [nodes[0]]
        node_set = set(nodes)
        while stack:
            a = stack.pop()
            for b in t.neighbors(a):
                if b in node_set and b not in seen:
                    seen.add(b)
                    stack.append(b)
        if len(seen) != len(nodes):
            return Validity(False, f"bags containing vertex {v} are disconnected",
                            bad_vertex=v)
    adj = h.gaifman_adj()
    for u in range(h.n):
        for v in bits(adj[u]):
            if v <= u:
                continue
            pair = (1 << u) | (1 << v)
            if not any(bag & pair == pair for bag in t.bags):
                return Validity(False, f"edge ({u}, {v}) covered by no bag",
                                bad_edge=(u, v))
    return Validity(True)


# ---------------------------------------------------------------------------
# per-set oracles


def alpha_set(g: Graph | Hypergraph, s: int, cap: int = DEFAULT_ORACLE_CAP) -> int:
    """alpha(G[S]) for the (Gaifman) graph, by independent-set extension search."""
    adj = g.adj if isinstance(g, Graph) else gaifman(g).adj
    return _alpha_mask(adj, s, cap)


def _alpha_mask(adj, s: int, cap: int = DEFAULT_ORACLE_CAP) -> int:
    best = 0
    steps = 0

    def grow(chosen_count: int, candidates: int):
        nonlocal best, steps
        best = max(best, chosen_count)
        rest = candidates
        while rest:
            steps += 1
            if steps > cap:
                raise ResourceError("alpha oracle cap exceeded", best=best)
            low = rest & -rest
            rest ^= low
            v = low.bit_length() - 1
            grow(chosen_count + 1, rest & ~adj[v])

    grow(0, s)
    return best


def _alpha_at_least(adj, s: int, target: int, cap: int = DEFAULT_ORACLE_CAP) -> bool:
    """Is there an independent subset of ``s`` of size ``target``?"""
    if target <= 0:
        return True
    steps = 0

    def grow(chosen_count: int, candidates: int) -> bool:
        nonlocal steps
        if chosen_count >= target:
            return True
        if chosen_count + candidates.bit_count() < target:
            return False
        rest = candidates
        while rest:
            steps += 1
            if steps > cap:
                raise ResourceError("alpha decide cap exceeded")
            low = rest & -rest
            rest ^= low
            v = low.bit_length() - 1
            if grow(chosen_count + 1, rest & ~adj[v]):
                return True
        return False

    return grow(0, s)


def induced_matching_intersecting(g: Graph, s: int, cap: int = DEFAULT_ORACLE_CAP) -> int:
    """Maximum induced matching of G with every matched edge meeting S."""
    closed = [g.adj[v] | (1 << v) for v in range(g.n)]
    edges = [e for e in g.edges if e & s]
    blockers = []
    for e in edges:
        u, v = bits(e)
        blockers.append(closed[u] | closed[v])
    best = 0
    steps = 0

    def grow(count: int, start: int, blocked: int):
        nonlocal best, steps
        best = max(best, count)
        for i in range(start, len(edges)):
            if edges[i] & blocked:
                continue
            steps += 1
            if steps > cap:
                raise ResourceError("induced matching cap exceeded", best=best)
            grow(count + 1, i + 1, blocked | blockers[i])

    grow(0, 0, 0)
    return best


def minor_matching_intersecting(h: Hypergraph, s: int,
                                cap: int = DEFAULT_ORACLE_CAP) -> int:
    """mu_H(S): the largest matching minor of cl(H) with every edge meeting S.

    Exhaustive delete/contract/keep search over vertices, memoized on the
    partially reduced clutter.  Exact, exponential; meant for desk scale.
    """
    edges = _minimal_masks(h.edges)
    n = h.n
    best = 0
    steps = 0
    memo: dict[tuple, int] = {}

    def final_value(es) -> int:
        # es is over kept vertices only: a matching iff all edges have size 2
        # and are pairwise disjoint and each meets S
        used = 0
        for e in es:
            if e.bit_count() != 2 or e & used or not e & s:
                return -1
            used |= e
        return len(es)

    def search(es: tuple[int, ...], v: int) -> int:
        nonlocal steps
        key = (es, v)
        got = memo.get(key)
        if got is not None:
            return got
        steps += 1
        if steps > cap:
            raise ResourceError("minor matching cap exceeded", best=best)
        if any(e == 0 for e in es):
            memo[key] = -1
            return -1
        if v == n:
            r = final_value(es)
            memo[key] = r
            return r
        if len(es) == 0:
            memo[key] = 0
            return 0
        bv = 1 << v
        # keep v untouched
        r = search(es, v + 1)
        # delete v
        r = max(r, search(tuple(e for e in es if not e & bv), v + 1))
        # contract v
        r = max(r, search(_minimal_masks(e & ~bv for e in es), v + 1))
        memo[key] = r
        return r

    return max(0, search(edges, 0))


def mu_intersecting(h: Hypergraph, s: int, cap: int = DEFAULT_ORACLE_CAP) -> int:
    """mu_H(S); graphs take the induced-matching fast path."""
    if s & ~h.vertex_mask:
        raise InputError("S contains an unknown vertex id")
    if all(e.bit_count() == 2 for e in h.edges):
        adj_graph = Graph(h.n, _minimal_masks(h.edges))
        return induced_matching_intersecting(adj_graph, s, cap)
    return minor_matching_intersecting(h, s, cap)


def rho_set(h: Hypergraph, s: int, cap: int = 64) -> float | int:
    """Minimum number of edges of H covering S; inf if some vertex is uncoverable."""
    for v in bits(s):
        if not any(e & (1 << v) for e in h.edges):
            return float("inf")
    best: list[float] = [float("inf")]

    def branch(uncovered: int, used: int):
        if used >= best[0] or used > cap:
            return
        if uncovered == 0:
            best[0] = used
            return
        v = (uncovered & -uncovered).bit_length() - 1
        for e in h.edges:
            if e & (1 << v):
                branch(uncovered & ~e, used + 1)

    branch(s, 0)
    return int(best[0]) if best[0] != float("inf") else float("inf")


# ---------------------------------------------------------------------------
# width


@dataclass(frozen=True)
class WidthReport:
    measure: str
    per_bag: tuple
    width: float | int
    witness_bag: int


def width(h: Hypergraph, t: TreeDecomposition, measure: str,
          cap: int = DEFAULT_ORACLE_CAP) -> WidthReport:
    """Per-bag measure values and their maximum over the decomposition."""
    if measure not in MEASURE_NAMES:
        raise InputError(f"unknown measure {measure!r}; pick one of {MEASURE_NAMES}")
    ok = validate(h, t)
    if not ok:
        raise InputError(f"invalid decomposition: {ok.reason}")
    adj = h.gaifman_adj()
    values = []
    for i, bag in enumerate(t.bags):
        try:
            if measure == "kappa":
                values.append(bag.bit_count() - 1)
            elif measure == "alpha":
                values.append(_alpha_mask(adj, bag, cap))
            elif measure == "mu":
                values.append(mu_intersecting(h, bag, cap))
            else:
                values.append(rho_set(h, bag))
        except ResourceError as exc:
            raise ResourceError(f"width oracle cap exceeded on bag {i}",
                                bag=i, **exc.stats) from exc
    w = max(values)
    return WidthReport(measure, tuple(values), w, values.index(w))


def single_bag(h: Hypergraph) -> TreeDecomposition:
    return TreeDecomposition([h.vertex_mask], [])


def _fill_neighborhood(adj, v: int, eliminated: int) -> int:
    """Non-eliminated vertices reachable from v via eliminated-internal paths."""
    seen = 1 << v
    frontier = 1 << v
    out = 0
    while frontier:
        nxt = 0
        for u in bits(frontier):
            nxt |= adj[u] & ~seen
        seen |= nxt
        out |= nxt & ~eliminated
        frontier = nxt & eliminated
    return out & ~(1 << v)


def from_elimination_order(h: Hypergraph, order: Sequence[int]) -> TreeDecomposition:
    """Tree decomposition whose bags are the elimination neighborhoods.

    Bag of v is {v} plus the later-eliminated vertices reachable from v through
    already-eliminated ones; the bag's parent is the bag of the member of that
    neighborhood eliminated first, with a fallback link for empty neighborhoods.
    """
    n = h.n
    if sorted(order) != list(range(n)):
        raise InputError("order must be a permutation of the vertices")
    if n == 0:
        return TreeDecomposition([0], [])
    adj = h.gaifman_adj()
    pos = {v: i for i, v in enumerate(order)}
    bags = []
    tree = []
    eliminated = 0
    for i, v in enumerate(order):
        q = _fill_neighborhood(adj, v, eliminated)
        bags.append((1 << v) | q)
        if q:
            u = min(bits(q), key=pos.__getitem__)
            tree.append((i, pos[u]))
        elif i + 1 < n:
            tree.append((i, i + 1))
        eliminated |= 1 << v
    return TreeDecomposition(bags, tree)
