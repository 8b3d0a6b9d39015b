"""DP solvers over tree decompositions vs exhaustive oracles."""

from fractions import Fraction

import pytest

from mmtw._bits import bits, mask_of
from mmtw.blocker import enumerate_mis
from mmtw.decomposition import TreeDecomposition, single_bag
from mmtw.dp import (CoverDP, MwisDP, chromatic_decide, hom_decide, mwis,
                     run_dp)
from mmtw.errors import InputError, ResourceError
from mmtw.generate import (complete_graph, cycle_graph, path_graph,
                           random_decomposition, random_graph,
                           random_hypergraph, random_weights, rng_from_seed)
from mmtw.hypergraph import Hypergraph
from mmtw.oracles import (chromatic_bruteforce, hom_bruteforce, independent_in,
                          mwis_bruteforce)


def wsum(w, mask):
    return sum((Fraction(w[v]) for v in bits(mask)), Fraction(0))


def test_mwis_examples():
    p3 = path_graph(3)
    t = TreeDecomposition([0b011, 0b110], [(0, 1)])
    assert mwis(p3, [1, 1, 1], t) == (2, mask_of((0, 2)))
    k5 = complete_graph(5)
    assert mwis(k5, [1, 2, 3, 4, 5], single_bag(k5)) == (5, 1 << 4)
    assert mwis(p3, [-1, -2, -3], t) == (0, 0)


def test_single_bag_equals_direct():
    rng = rng_from_seed(50)
    for _ in range(30):
        n = rng.randrange(1, 9)
        h = random_hypergraph(rng, n, rng.randrange(0, n + 2))
        w = random_weights(rng, n, lo=0)
        best = max((wsum(w, j) for j in enumerate_mis(h)), default=Fraction(0))
        assert mwis(h, w, single_bag(h))[0] == best


def test_mwis_random_vs_oracle():
    rng = rng_from_seed(51)
    for it in range(100):
        n = rng.randrange(2, 11)
        if it % 2:
            h = random_graph(rng, n, rng.uniform(0.2, 0.7))
        else:
            h = random_hypergraph(rng, n, rng.randrange(1, n + 3), rank=3)
        w = random_weights(rng, n)
        t = random_decomposition(rng, h)
        val, wit = mwis(h, w, t)
        assert val == mwis_bruteforce(h, w)[0]
        assert independent_in(h, wit)
        assert wsum(w, wit) == val


def test_chromatic_examples():
    k3 = complete_graph(3)
    assert chromatic_decide(k3, 3, single_bag(k3))
    assert not chromatic_decide(k3, 2, single_bag(k3))
    tri = Hypergraph(3, [0b111])
    assert chromatic_decide(tri, 2, single_bag(tri))
    c5 = cycle_graph(5)
    assert not chromatic_decide(c5, 2, single_bag(c5))
    assert chromatic_decide(c5, 3, single_bag(c5))
    with pytest.raises(InputError):
        chromatic_decide(k3, 0, single_bag(k3))


def test_chromatic_random_vs_oracle():
    rng = rng_from_seed(52)
    for it in range(80):
        n = rng.randrange(2, 11)
        if it % 2:
            h = random_graph(rng, n, rng.uniform(0.2, 0.7))
        else:
            h = random_hypergraph(rng, n, rng.randrange(1, n + 3), rank=3)
        t = random_decomposition(rng, h)
        k = rng.randrange(1, 5)
        assert chromatic_decide(h, k, t) == chromatic_bruteforce(h, k)


def test_hom_examples():
    p3, k2, c5 = path_graph(3), complete_graph(2), cycle_graph(5)
    assert hom_decide(p3, k2, single_bag(p3))
    assert not hom_decide(c5, k2, single_bag(c5))
    with pytest.raises(InputError):
        hom_decide(Hypergraph(3, [0b111]), k2, single_bag(Hypergraph(3, [0b111])))
    with pytest.raises(ResourceError):
        hom_decide(p3, complete_graph(11), single_bag(p3))


def test_hom_random_vs_oracle():
    rng = rng_from_seed(53)
    for name, f in (("K2", complete_graph(2)), ("K3", complete_graph(3)),
                    ("C5", cycle_graph(5))):
        for _ in range(30):
            n = rng.randrange(2, 11)
            h = random_graph(rng, n, rng.uniform(0.15, 0.6))
            t = random_decomposition(rng, h)
            assert hom_decide(h, f, t) == hom_bruteforce(h, f), name


def test_hom_k3_matches_chromatic():
    rng = rng_from_seed(54)
    k3 = complete_graph(3)
    for _ in range(40):
        g = random_graph(rng, rng.randrange(2, 9), 0.5)
        t = random_decomposition(rng, g)
        assert hom_decide(g, k3, t) == chromatic_decide(g, 3, t)


def test_decomposition_invariance():
    rng = rng_from_seed(55)
    for it in range(30):
        n = rng.randrange(2, 9)
        h = random_hypergraph(rng, n, rng.randrange(1, n + 2)) if it % 2 \
            else random_graph(rng, n, 0.4)
        w = random_weights(rng, n)
        t1 = random_decomposition(rng, h)
        t2 = random_decomposition(rng, h)
        assert mwis(h, w, t1)[0] == mwis(h, w, t2)[0]
        k = rng.randrange(1, 4)
        assert chromatic_decide(h, k, t1) == chromatic_decide(h, k, t2)


def test_run_dp_rejects_invalid_decomposition():
    p3 = path_graph(3)
    bad = TreeDecomposition([0b001, 0b110], [(0, 1)])
    with pytest.raises(InputError):
        mwis(p3, [1, 1, 1], bad)


def test_table_cap():
    rng = rng_from_seed(56)
    h = random_graph(rng, 9, 0.3)
    t = random_decomposition(rng, h)
    with pytest.raises(ResourceError):
        chromatic_decide(h, 4, t, table_cap=0)


# framework property checks, on the concrete instances


def _leaf_table(h, dp, s):
    sub_mis = [m for m in enumerate_mis(h) if True]
    return dp.leaf_init(sub_mis, s)


def test_restrict_composes():
    rng = rng_from_seed(57)
    for _ in range(30):
        n = rng.randrange(2, 9)
        h = random_hypergraph(rng, n, rng.randrange(1, n + 2))
        w = random_weights(rng, n, lo=0)
        dp = MwisDP(w)
        full = h.vertex_mask
        s1 = rng.getrandbits(n) & full
        s2 = s1 & rng.getrandbits(n)
        tab = _leaf_table(h, dp, full)
        a = dp.restrict(dp.restrict(tab, full, s1), s1, s2)
        b = dp.restrict(tab, full, s2)
        assert {k: v[0] for k, v in a.items()} == {k: v[0] for k, v in b.items()}


def test_add_isolated_commutes_with_restrict():
    rng = rng_from_seed(58)
    for _ in range(30):
        n = rng.randrange(2, 8)
        h = random_hypergraph(rng, n, rng.randrange(1, n + 2))
        w = random_weights(rng, n + 1, lo=0)
        dp = MwisDP(w)
        full = h.vertex_mask
        s1 = rng.getrandbits(n) & full
        v = n  # a fresh vertex, disjoint from the restriction
        tab = _leaf_table(h, dp, full)
        a = dp.add_isolated(dp.restrict(tab, full, s1), s1, v)
        b = dp.restrict(dp.add_isolated(tab, full, v), full | (1 << v),
                        s1 | (1 << v))
        assert {k: v[0] for k, v in a.items()} == {k: v[0] for k, v in b.items()}


def test_merge_associative_in_value():
    # three leaves over the same base set; merge order must not matter
    rng = rng_from_seed(59)
    for _ in range(25):
        n = rng.randrange(2, 7)
        h1 = random_hypergraph(rng, n, rng.randrange(1, n + 1))
        h2 = random_hypergraph(rng, n, rng.randrange(1, n + 1))
        h3 = random_hypergraph(rng, n, rng.randrange(1, n + 1))
        w = random_weights(rng, n, lo=0)
        dp = MwisDP(w)
        full = (1 << n) - 1
        tabs = [_leaf_table(h, dp, full) for h in (h1, h2, h3)]
        union = Hypergraph(n, h1.edges + h2.edges + h3.edges)
        tr = frozenset(enumerate_mis(union))
        tr12 = frozenset(enumerate_mis(Hypergraph(n, h1.edges + h2.edges)))
        tr23 = frozenset(enumerate_mis(Hypergraph(n, h2.edges + h3.edges)))
        left = dp.merge(tr, dp.merge(tr12, tabs[0], tabs[1], full), tabs[2], full)
        right = dp.merge(tr, tabs[0], dp.merge(tr23, tabs[1], tabs[2], full), full)
        lv = {k: v[0] for k, v in left.items()}
        rv = {k: v[0] for k, v in right.items()}
        assert lv == rv
