from itertools import combinations

import pytest
from hypothesis import given
from hypothesis import strategies as st

from bkvc.bigraph import BipartiteGraph, generate_semiregular
from bkvc.exact import InstanceTooLarge, brute_force_opt

from .strategies import bipartite_graphs

K22 = BipartiteGraph(2, 2, [(0, 0), (0, 1), (1, 0), (1, 1)])


def direct_opt(graph, k):
    # independent oracle: enumerate subsets, count by edge scan
    n = graph.n1 + graph.n2
    best = 0
    for sub in combinations(range(n), min(k, n)):
        v1 = {g for g in sub if g < graph.n1}
        v2 = {g - graph.n1 for g in sub if g >= graph.n1}
        best = max(best, sum(1 for (u, v) in graph.edges if u in v1 or v in v2))
    return best


def test_k22_single_vertex():
    assert brute_force_opt(K22, 1).opt_value == 2


def test_saturation_covers_everything():
    g = BipartiteGraph(3, 2, [(0, 0), (1, 0), (2, 1), (0, 1)])
    for k in (2, 3, 5, 9):
        assert brute_force_opt(g, k).opt_value == g.m


def test_two_path_plus_pendant():
    # edges (a0,b0), (a0,b1), (a1,b1), (a2,b2); all 15 2-subsets enumerated by hand
    g = BipartiteGraph(3, 3, [(0, 0), (0, 1), (1, 1), (2, 2)])
    res = brute_force_opt(g, 2)
    assert res.opt_value == 4
    assert res.opt_value == direct_opt(g, 2)


def test_canonical_optimum_is_lexicographically_smallest():
    # both {a0} and {b0} cover the single edge; a0 is globally smaller
    g = BipartiteGraph(1, 1, [(0, 0)])
    res = brute_force_opt(g, 1)
    assert res.opt_set.members == (0,)
    assert (res.k1, res.k2) == (1, 0)


def test_guard_refuses_large_instances():
    g = BipartiteGraph(20, 20, [])
    with pytest.raises(InstanceTooLarge):
        brute_force_opt(g, 1)
    assert brute_force_opt(g, 1, max_vertices=40).opt_value == 0


def test_k_zero_and_k_everything():
    g = BipartiteGraph(2, 3, [(0, 0), (1, 2)])
    assert brute_force_opt(g, 0).opt_value == 0
    assert brute_force_opt(g, 5).opt_value == g.m


@given(bipartite_graphs(max_n1=4, max_n2=3), st.integers(0, 7))
def test_matches_direct_enumeration(g, k):
    res = brute_force_opt(g, k)
    assert res.opt_value == direct_opt(g, k)
    assert len(res.opt_set) <= k
    assert res.k1 + res.k2 == len(res.opt_set)


@given(bipartite_graphs(max_n1=4, max_n2=3))
def test_monotone_in_k(g):
    vals = [brute_force_opt(g, k).opt_value for k in range(g.n1 + g.n2 + 1)]
    assert vals == sorted(vals)
    assert vals[0] == 0 and vals[-1] == g.m


@given(st.integers(0, 2**31), st.integers(1, 4))
def test_semiregular_one_class_choice_is_optimal(seed, k):
    # both classes regular: picking k vertices of the max-degree class is exact
    g = generate_semiregular(6, 4, 2, 3, seed)
    d_max_class = 3
    expected = min(k, 4) * d_max_class if k <= 4 else g.m
    assert brute_force_opt(g, k).opt_value == max(expected, 0)
