"""Shared hypothesis strategies for small bipartite instances."""

from hypothesis import strategies as st

from bkvc.bigraph import BipartiteGraph


@st.composite
def bipartite_graphs(draw, max_n1=5, max_n2=5, min_n1=1, min_n2=1):
    n1 = draw(st.integers(min_n1, max_n1))
    n2 = draw(st.integers(min_n2, max_n2))
    pairs = [(u, v) for u in range(n1) for v in range(n2)]
    edges = draw(st.lists(st.sampled_from(pairs), unique=True, max_size=len(pairs)))
    return BipartiteGraph(n1, n2, edges)


@st.composite
def graphs_with_k(draw, max_n1=4, max_n2=4):
    g = draw(bipartite_graphs(max_n1=max_n1, max_n2=max_n2))
    k = draw(st.integers(0, g.n1 + g.n2))
    return g, k
